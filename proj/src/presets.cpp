#include "storavail/presets.hpp"

namespace storavail::presets {

RaidParameters paper_sec5() {
  RaidParameters p;
  p.data_disks = 3;
  p.parity_disks = 1;
  p.lambda = 1e-5;
  p.mu_df = 0.1;
  p.mu_ddf = 0.03;
  p.mu_s = 1.0;
  p.mu_he = 1.0;
  p.lambda_crash = 0.01;
  p.hep = 0.001;
  return p;
}

std::optional<RaidParameters> by_name(std::string_view name) {
  if (name == "paper-sec5") return paper_sec5();
  return std::nullopt;
}

}  // namespace storavail::presets
