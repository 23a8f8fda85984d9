#include "storavail/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace storavail {
namespace {

/// Neumaier-compensated accumulator; the reduction must not lose the tiny
/// downtime terms against the bulk of near-1 uptime fractions.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double sample_exponential(RandomStream& s, double rate) {
  return -std::log(s.uniform01()) / rate;
}

struct Walk {
  const RaidParameters& p;
  const SimConfig& cfg;
  RandomStream& rng;
  const std::optional<FailureDistribution>& ttf;  // nullopt = disks never fail
  double mission;

  std::vector<double> fail_at;  // absolute next-failure time per disk
  double down_df = 0.0;
  double down_he = 0.0;

  double draw_repair() {
    if (cfg.repair_time.kind == RepairTimeModel::Kind::Fixed) return cfg.repair_time.fixed_hours;
    return sample_exponential(rng, p.mu_df);
  }

  /// Adds the part of [from, to) that falls inside the mission window.
  void down(double from, double to, double& bucket) {
    bucket += std::max(0.0, std::min(to, mission) - std::min(from, mission));
  }

  double next_failure(double now) {
    if (!ttf) return std::numeric_limits<double>::infinity();
    return now + ttf->sample(rng);
  }

  void redraw_all(double now) {
    for (auto& f : fail_at) f = next_failure(now);
  }

  /// Wrong-disk replacement at time t0: the array is unreachable until the
  /// error is undone. Recovery attempts at mu_he race the crash of the
  /// wrongly removed disk; a failed attempt (probability hep) starts over,
  /// a crash turns the episode into a restore from backup. All of it is
  /// charged to the human-error bucket. Returns the recovery completion time.
  double human_error_episode(double t0) {
    double t = t0;
    for (;;) {
      const double recover = sample_exponential(rng, p.mu_he);
      const double crash = sample_exponential(rng, p.lambda_crash);
      if (crash < recover) {
        down(t, t + crash, down_he);
        t += crash;
        const double restore = sample_exponential(rng, p.mu_ddf);
        down(t, t + restore, down_he);
        return t + restore;
      }
      down(t, t + recover, down_he);
      t += recover;
      if (!rng.bernoulli(p.hep)) return t;
    }
  }

  IterationOutcome run() {
    const int n = p.total_disks();
    fail_at.resize(n);
    redraw_all(0.0);

    for (;;) {
      int first = 0;
      for (int i = 1; i < n; ++i) {
        if (fail_at[i] < fail_at[first]) first = i;
      }
      const double t1 = fail_at[first];
      if (t1 >= mission) break;

      const double repair_done = t1 + draw_repair();

      if (n == 1) {
        // Degenerate no-redundancy array: the failure itself takes the data
        // down until the disk is replaced. No wrong-disk branch exists.
        down(t1, repair_done, down_df);
        if (repair_done >= mission) break;
        fail_at[0] = next_failure(repair_done);
        continue;
      }

      double second = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        if (i != first) second = std::min(second, fail_at[i]);
      }

      if (second < repair_done) {
        // Double disk failure: data lost, restore from backup. The system is
        // backed up, so this is an unavailability episode, not a terminal one.
        const double restore = sample_exponential(rng, p.mu_ddf);
        down(second, second + restore, down_df);
        const double t = second + restore;
        if (t >= mission) break;
        redraw_all(t);
        continue;
      }

      // Replacement completed while still degraded-but-serving.
      if (rng.bernoulli(p.hep)) {
        const double t = human_error_episode(repair_done);
        if (t >= mission) break;
        redraw_all(t);  // error undone, array as good as new
      } else {
        fail_at[first] = next_failure(repair_done);
      }
    }

    IterationOutcome out;
    out.downtime_double_failure_hours = down_df;
    out.downtime_human_error_hours = down_he;
    out.uptime_fraction = std::clamp((mission - down_df - down_he) / mission, 0.0, 1.0);
    return out;
  }
};

SimulationResult reduce(const RaidParameters& p, const SimConfig& cfg,
                        const std::vector<IterationOutcome>& outcomes) {
  (void)p;
  const auto n = static_cast<std::int64_t>(outcomes.size());
  CompensatedSum up, df, he;
  for (const auto& o : outcomes) {
    up.add(o.uptime_fraction);
    df.add(o.downtime_double_failure_hours);
    he.add(o.downtime_human_error_hours);
  }
  const double mean = up.value() / static_cast<double>(n);

  CompensatedSum sq;
  for (const auto& o : outcomes) {
    const double d = o.uptime_fraction - mean;
    sq.add(d * d);
  }
  const double variance = sq.value() / static_cast<double>(n - 1);

  SimulationResult r;
  r.availability_mean = mean;
  r.downtime_double_failure_hours = df.value();
  r.downtime_human_error_hours = he.value();
  r.iterations_run = n;
  if (variance > 0.0) {
    const boost::math::students_t dist(static_cast<double>(n - 1));
    const double t = boost::math::quantile(dist, 0.5 + cfg.confidence_level / 2.0);
    r.ci_half_width = t * std::sqrt(variance) / std::sqrt(static_cast<double>(n));
  }
  return r;
}

std::vector<IterationOutcome> collect(const RaidParameters& p, const SimConfig& cfg,
                                      bool parallel) {
  p.validate();
  cfg.validate();
  std::optional<FailureDistribution> ttf = cfg.ttf;
  if (!ttf && p.lambda > 0.0) ttf = FailureDistribution::exponential(p.lambda);
  const std::int64_t n = cfg.iterations;
  std::vector<IterationOutcome> outcomes(static_cast<std::size_t>(n));

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      RandomStream stream =
          RandomStream::for_iteration(cfg.master_seed, static_cast<std::uint64_t>(i));
      Walk walk{p, cfg, stream, ttf, cfg.mission_time_hours, {}};
      outcomes[static_cast<std::size_t>(i)] = walk.run();
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      RandomStream stream =
          RandomStream::for_iteration(cfg.master_seed, static_cast<std::uint64_t>(i));
      Walk walk{p, cfg, stream, ttf, cfg.mission_time_hours, {}};
      outcomes[static_cast<std::size_t>(i)] = walk.run();
    }
  }
  return outcomes;
}

}  // namespace

void SimConfig::validate() const {
  if (!(mission_time_hours > 0.0) || !std::isfinite(mission_time_hours)) {
    throw std::invalid_argument("mission_time_hours must be positive");
  }
  if (iterations < 2) throw std::invalid_argument("iterations must be >= 2");
  if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
    throw std::invalid_argument("confidence_level must lie in (0, 1)");
  }
  if (repair_time.kind == RepairTimeModel::Kind::Fixed &&
      !(repair_time.fixed_hours > 0.0 && std::isfinite(repair_time.fixed_hours))) {
    throw std::invalid_argument("fixed repair time must be positive");
  }
}

IterationOutcome simulate_iteration(const RaidParameters& p, const SimConfig& cfg,
                                    RandomStream& stream) {
  p.validate();
  cfg.validate();
  std::optional<FailureDistribution> ttf = cfg.ttf;
  if (!ttf && p.lambda > 0.0) ttf = FailureDistribution::exponential(p.lambda);
  Walk walk{p, cfg, stream, ttf, cfg.mission_time_hours, {}};
  return walk.run();
}

SimulationResult run(const RaidParameters& p, const SimConfig& cfg) {
  return reduce(p, cfg, collect(p, cfg, /*parallel=*/true));
}

SimulationResult run_serial(const RaidParameters& p, const SimConfig& cfg) {
  return reduce(p, cfg, collect(p, cfg, /*parallel=*/false));
}

double confidence_half_width(std::span<const double> samples, double level) {
  if (samples.size() < 2) {
    throw std::invalid_argument("confidence_half_width needs at least 2 samples");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  const auto n = static_cast<double>(samples.size());
  CompensatedSum sum;
  for (double v : samples) sum.add(v);
  const double mean = sum.value() / n;
  CompensatedSum sq;
  for (double v : samples) sq.add((v - mean) * (v - mean));
  const double variance = sq.value() / (n - 1.0);
  if (!(variance > 0.0)) return 0.0;
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  return t * std::sqrt(variance) / std::sqrt(n);
}

}  // namespace storavail
