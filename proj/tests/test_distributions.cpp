#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "storavail/failure_distribution.hpp"
#include "support/oracles.hpp"

using storavail::FailureDistribution;
using storavail::RandomStream;

namespace {

std::vector<double> draw(const FailureDistribution& dist, std::uint64_t seed, std::size_t n) {
  RandomStream stream(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = dist.sample(stream);
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Kolmogorov-Smirnov statistic against an analytic CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace

TEST_CASE("invalid parameters are rejected at construction") {
  CHECK_THROWS_AS(FailureDistribution::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FailureDistribution::exponential(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FailureDistribution::exponential(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(FailureDistribution::weibull(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FailureDistribution::weibull(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FailureDistribution::weibull(-2.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(FailureDistribution::weibull_with_mean(0.71, -1.0), std::invalid_argument);
}

TEST_CASE("mean") {
  CHECK(FailureDistribution::exponential(0.03).mean() == doctest::Approx(1.0 / 0.03).epsilon(1e-15));
  CHECK(FailureDistribution::weibull(1.0, 50.0).mean() == doctest::Approx(50.0).epsilon(1e-12));
  // 100 * gamma(1.5), gamma(1.5) = sqrt(pi)/2
  CHECK(FailureDistribution::weibull(2.0, 100.0).mean() ==
        doctest::Approx(88.62269254527581).epsilon(1e-12));
  CHECK(FailureDistribution::weibull(2.0, 100.0).mean() ==
        doctest::Approx(100.0 * oracles::lanczos_gamma(1.5)).epsilon(1e-10));
}

TEST_CASE("weibull_with_mean hits the requested mean") {
  const auto dist = FailureDistribution::weibull_with_mean(0.71, 1e6);
  CHECK(dist.mean() == doctest::Approx(1e6).epsilon(1e-12));
  // scale derived independently from the Lanczos gamma
  CHECK(dist.scale() == doctest::Approx(1e6 / oracles::lanczos_gamma(1.0 + 1.0 / 0.71)).epsilon(1e-10));
}

TEST_CASE("exponential sample mean converges to 1/rate") {
  const auto dist = FailureDistribution::exponential(0.1);
  const auto samples = draw(dist, 101, 200000);
  CHECK(mean_of(samples) == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("weibull with shape 1 behaves like the matching exponential") {
  const auto weibull = FailureDistribution::weibull(1.0, 100.0);
  const auto exponential = FailureDistribution::exponential(0.01);
  CHECK(weibull.mean() == doctest::Approx(exponential.mean()).epsilon(1e-12));

  const auto samples = draw(weibull, 202, 100000);
  CHECK(mean_of(samples) == doctest::Approx(100.0).epsilon(0.02));
  const double d = ks_statistic(samples, [](double t) { return 1.0 - std::exp(-0.01 * t); });
  CHECK(d < 1.628 / std::sqrt(100000.0));  // 1% critical value
}

TEST_CASE("heavy-tailed weibull empirical mean matches gamma-derived value") {
  const auto dist = FailureDistribution::weibull_with_mean(0.71, 1e6);
  const auto samples = draw(dist, 303, 1000000);
  CHECK(mean_of(samples) == doctest::Approx(1e6).epsilon(0.02));
}

TEST_CASE("KS statistic of exponential samples stays below the 1% critical value") {
  const double rate = 1e-5;
  const auto dist = FailureDistribution::exponential(rate);
  const auto samples = draw(dist, 404, 100000);
  const double d = ks_statistic(samples, [&](double t) { return 1.0 - std::exp(-rate * t); });
  CHECK(d < 1.628 / std::sqrt(100000.0));
}

TEST_CASE("same seed reproduces the sample sequence exactly") {
  const auto dist = FailureDistribution::weibull(0.71, 1000.0);
  const auto a = draw(dist, 515, 100);
  const auto b = draw(dist, 515, 100);
  const auto c = draw(dist, 516, 100);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("samples are always strictly positive and finite") {
  RandomStream stream(606);
  const FailureDistribution dists[] = {
      FailureDistribution::exponential(1e-7),
      FailureDistribution::exponential(1e3),
      FailureDistribution::weibull(0.71, 1e6),
      FailureDistribution::weibull(5.0, 1.0),
      FailureDistribution::weibull(0.05, 1.0),  // extreme shape, exercises underflow clamp
  };
  for (const auto& dist : dists) {
    for (int i = 0; i < 200000; ++i) {
      const double v = dist.sample(stream);
      if (!(v > 0.0) || !std::isfinite(v)) {
        FAIL("bad sample ", v, " from ", dist.describe());
      }
    }
  }
}
