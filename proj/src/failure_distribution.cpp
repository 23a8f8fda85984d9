#include "storavail/failure_distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace storavail {

FailureDistribution FailureDistribution::exponential(double rate_per_hour) {
  if (!(rate_per_hour > 0.0) || !std::isfinite(rate_per_hour)) {
    throw std::invalid_argument("exponential distribution requires rate > 0, got " +
                                std::to_string(rate_per_hour));
  }
  return FailureDistribution(Kind::Exponential, rate_per_hour, 0.0, 0.0);
}

FailureDistribution FailureDistribution::weibull(double shape, double scale_hours) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("weibull distribution requires shape > 0, got " +
                                std::to_string(shape));
  }
  if (!(scale_hours > 0.0) || !std::isfinite(scale_hours)) {
    throw std::invalid_argument("weibull distribution requires scale > 0, got " +
                                std::to_string(scale_hours));
  }
  return FailureDistribution(Kind::Weibull, 0.0, shape, scale_hours);
}

FailureDistribution FailureDistribution::weibull_with_mean(double shape, double mean_hours) {
  if (!(mean_hours > 0.0) || !std::isfinite(mean_hours)) {
    throw std::invalid_argument("weibull distribution requires mean > 0, got " +
                                std::to_string(mean_hours));
  }
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("weibull distribution requires shape > 0, got " +
                                std::to_string(shape));
  }
  return weibull(shape, mean_hours / std::tgamma(1.0 + 1.0 / shape));
}

double FailureDistribution::sample(RandomStream& stream) const {
  // Inverse transform: u in (0,1) strictly, so -log(u) is positive and finite.
  const double u = stream.uniform01();
  const double e = -std::log(u);
  double t;
  if (kind_ == Kind::Exponential) {
    t = e / rate_;
  } else {
    t = scale_ * std::pow(e, 1.0 / shape_);
  }
  // pow can underflow for extreme shapes; keep the draw strictly positive.
  return t > 0.0 ? t : std::numeric_limits<double>::min();
}

double FailureDistribution::mean() const {
  if (kind_ == Kind::Exponential) return 1.0 / rate_;
  return scale_ * std::tgamma(1.0 + 1.0 / shape_);
}

std::string FailureDistribution::describe() const {
  if (kind_ == Kind::Exponential) return "exponential(rate=" + std::to_string(rate_) + ")";
  return "weibull(shape=" + std::to_string(shape_) + ",scale=" + std::to_string(scale_) + ")";
}

}  // namespace storavail
