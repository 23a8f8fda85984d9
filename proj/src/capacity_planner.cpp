#include "storavail/capacity_planner.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace storavail {

ComparisonPlan plan_equivalent(std::span<const ArrayGeometry> configs, int usable_units) {
  if (usable_units < 1) throw std::invalid_argument("usable_units must be >= 1");
  if (configs.empty()) throw std::invalid_argument("no configurations given");
  ComparisonPlan plan;
  plan.usable_units = usable_units;
  for (const auto& c : configs) {
    if (c.data_disks < 1 || c.parity_disks < 1) {
      throw std::invalid_argument("configuration " + c.name + " has an invalid geometry");
    }
    if (usable_units % c.data_disks != 0) {
      throw std::invalid_argument("usable_units " + std::to_string(usable_units) +
                                  " is not divisible by data_disks of " + c.name);
    }
    const int total = c.data_disks + c.parity_disks;
    plan.entries.push_back({c.name, c.data_disks, total, usable_units / c.data_disks,
                            static_cast<double>(total) / c.data_disks});
  }
  return plan;
}

double subsystem_availability(double per_array_availability, int array_count,
                              Aggregation aggregation) {
  if (!(per_array_availability >= 0.0 && per_array_availability <= 1.0)) {
    throw std::invalid_argument("per-array availability must lie in [0, 1]");
  }
  if (array_count < 1) throw std::invalid_argument("array_count must be >= 1");
  if (aggregation == Aggregation::Weighted) return per_array_availability;
  return std::pow(per_array_availability, array_count);
}

std::string format_erf(double erf) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", erf);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace storavail
