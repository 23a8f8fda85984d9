#pragma once

#include <span>
#include <string>
#include <vector>

namespace storavail {

struct ArrayGeometry {
  std::string name;
  int data_disks = 1;
  int parity_disks = 1;
};

struct PlanEntry {
  std::string name;
  int data_disks = 0;
  int total_disks_per_array = 0;
  int array_count = 0;
  double erf = 0.0;  // total disks / data disks
};

/// Configurations normalized to the same usable (logical) capacity, measured
/// in disk-equivalents.
struct ComparisonPlan {
  int usable_units = 0;
  std::vector<PlanEntry> entries;
};

/// array_count = usable_units / data_disks per config; errors when the
/// division is not exact.
ComparisonPlan plan_equivalent(std::span<const ArrayGeometry> configs, int usable_units);

enum class Aggregation {
  Series,   // subsystem is up only when every array is up: A^count
  Weighted  // capacity-weighted average availability: A
};

double subsystem_availability(double per_array_availability, int array_count,
                              Aggregation aggregation = Aggregation::Series);

/// ERF rounded to two decimals for reports, trailing zeros trimmed
/// (2, 1.33, 1.14).
std::string format_erf(double erf);

}  // namespace storavail
