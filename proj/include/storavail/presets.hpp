#pragma once

#include <optional>
#include <string_view>

#include "storavail/raid_models.hpp"

namespace storavail::presets {

/// Rate set used throughout the experiment suite: a 3+1 array with
/// mu_df = 0.1, mu_ddf = 0.03, mu_s = 1, mu_he = 1, lambda_crash = 0.01,
/// lambda = 1e-5, hep = 0.001.
RaidParameters paper_sec5();

std::optional<RaidParameters> by_name(std::string_view name);

// Human error probability per action, as measured across HRA studies
// (NASA, EUROCONTROL, NUREG collections). The wide range covers all
// applications; the enterprise band is typical for trained operators
// following checklists.
inline constexpr double kHepRangeLow = 0.001;
inline constexpr double kHepRangeHigh = 0.1;
inline constexpr double kHepEnterpriseLow = 0.001;
inline constexpr double kHepEnterpriseHigh = 0.01;

// Default Weibull shape for disk time-to-failure when a decreasing hazard is
// wanted; pair with weibull_with_mean to pick the scale.
inline constexpr double kWeibullShapeDefault = 0.71;

}  // namespace storavail::presets
