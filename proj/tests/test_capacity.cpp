#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "storavail/capacity_planner.hpp"

using namespace storavail;

namespace {
const std::vector<ArrayGeometry> kPaperConfigs{
    {"R1(1+1)", 1, 1}, {"R5(3+1)", 3, 1}, {"R5(7+1)", 7, 1}};
}

TEST_CASE("equal-capacity plan for the three standard configurations") {
  const ComparisonPlan plan = plan_equivalent(kPaperConfigs, 21);
  REQUIRE(plan.entries.size() == 3);
  CHECK(plan.entries[0].array_count == 21);
  CHECK(plan.entries[1].array_count == 7);
  CHECK(plan.entries[2].array_count == 3);
  CHECK(format_erf(plan.entries[0].erf) == "2");
  CHECK(format_erf(plan.entries[1].erf) == "1.33");
  CHECK(format_erf(plan.entries[2].erf) == "1.14");
  for (const auto& e : plan.entries) {
    CHECK(e.array_count * e.data_disks == plan.usable_units);
    CHECK(e.erf == doctest::Approx(static_cast<double>(e.total_disks_per_array) / e.data_disks));
  }
}

TEST_CASE("single-config plan") {
  const std::vector<ArrayGeometry> one{{"R5(3+1)", 3, 1}};
  const ComparisonPlan plan = plan_equivalent(one, 3);
  CHECK(plan.entries[0].array_count == 1);
  CHECK(format_erf(plan.entries[0].erf) == "1.33");
}

TEST_CASE("indivisible capacity is rejected") {
  const std::vector<ArrayGeometry> one{{"R5(3+1)", 3, 1}};
  CHECK_THROWS_WITH_AS(plan_equivalent(one, 20), doctest::Contains("not divisible"),
                       std::invalid_argument);
  CHECK_THROWS_AS(plan_equivalent(one, 0), std::invalid_argument);
  CHECK_THROWS_AS(plan_equivalent(std::vector<ArrayGeometry>{}, 21), std::invalid_argument);
}

TEST_CASE("series subsystem availability") {
  CHECK(subsystem_availability(1.0, 17) == 1.0);
  CHECK(subsystem_availability(0.99, 2) == doctest::Approx(0.9801).epsilon(1e-15));
  const double u = 1e-6;
  const double unavailability = 1.0 - subsystem_availability(1.0 - u, 21);
  CHECK(std::fabs(unavailability - 2.1e-5) <= 1e-9);
  CHECK_THROWS_AS(subsystem_availability(1.2, 3), std::invalid_argument);
  CHECK_THROWS_AS(subsystem_availability(0.5, 0), std::invalid_argument);
}

TEST_CASE("weighted aggregation returns the per-array value") {
  CHECK(subsystem_availability(0.97, 40, Aggregation::Weighted) == 0.97);
}

TEST_CASE("subsystem availability is monotone in count and per-array unavailability") {
  double previous = 1.0;
  for (int count : {1, 2, 5, 20, 100}) {
    const double a = subsystem_availability(1.0 - 1e-4, count);
    CHECK(a <= previous);
    previous = a;
  }
  previous = 1.0;
  for (double u : {1e-8, 1e-6, 1e-4, 1e-2}) {
    const double a = subsystem_availability(1.0 - u, 7);
    CHECK(a < previous);
    previous = a;
  }
}

TEST_CASE("first-order series bound") {
  for (double u : {1e-8, 1e-6, 1e-4}) {
    for (int k : {1, 3, 21, 100}) {
      const double exact = 1.0 - subsystem_availability(1.0 - u, k);
      CHECK(std::fabs(exact - k * u) <= static_cast<double>(k) * k * u * u);
    }
  }
}
