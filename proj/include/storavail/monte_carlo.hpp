#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "storavail/failure_distribution.hpp"
#include "storavail/raid_models.hpp"
#include "storavail/random_stream.hpp"

namespace storavail {

/// How long a disk replacement takes: exponential at rate mu_df, or a fixed
/// number of hours (e.g. a 10 h rebuild).
struct RepairTimeModel {
  enum class Kind { Exponential, Fixed };
  Kind kind = Kind::Exponential;
  double fixed_hours = 10.0;

  static RepairTimeModel exponential() { return {Kind::Exponential, 0.0}; }
  static RepairTimeModel fixed(double hours) { return {Kind::Fixed, hours}; }
};

struct SimConfig {
  double mission_time_hours = 87600.0;  // 10 years
  std::int64_t iterations = 100000;
  double confidence_level = 0.99;
  std::uint64_t master_seed = 20086;
  RepairTimeModel repair_time = RepairTimeModel::exponential();
  /// Time-to-failure law; defaults to exponential(lambda) of the array
  /// parameters when unset.
  std::optional<FailureDistribution> ttf;

  void validate() const;  // throws std::invalid_argument
};

/// One iteration's outcome: fraction of the mission spent serving, plus the
/// downtime split by root cause.
struct IterationOutcome {
  double uptime_fraction = 1.0;
  double downtime_double_failure_hours = 0.0;
  double downtime_human_error_hours = 0.0;
};

struct SimulationResult {
  double availability_mean = 1.0;
  double ci_half_width = 0.0;
  double downtime_double_failure_hours = 0.0;  // summed over iterations
  double downtime_human_error_hours = 0.0;
  std::int64_t iterations_run = 0;
};

/// Event-driven walk of one array lifetime over [0, mission_time] under the
/// conventional replacement policy.
IterationOutcome simulate_iteration(const RaidParameters& p, const SimConfig& cfg,
                                    RandomStream& stream);

/// Runs cfg.iterations independent iterations on the available OpenMP
/// workers. Per-iteration streams derive from (master_seed, index) and the
/// reduction runs in index order, so the result is bit-identical for a given
/// master_seed regardless of worker count.
SimulationResult run(const RaidParameters& p, const SimConfig& cfg);

/// Single-threaded reference implementation; must produce bit-identical
/// results to run().
SimulationResult run_serial(const RaidParameters& p, const SimConfig& cfg);

/// t-distribution confidence half-width: t(level, n-1) * stddev / sqrt(n).
double confidence_half_width(std::span<const double> samples, double level);

}  // namespace storavail
