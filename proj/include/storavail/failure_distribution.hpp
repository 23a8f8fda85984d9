#pragma once

#include <string>

#include "storavail/random_stream.hpp"

namespace storavail {

/// Time-to-event law for failure and repair processes. Immutable after
/// construction; parameters are validated up front so sampling never fails.
///
/// Units are hours throughout: rates are events per hour, scales and means
/// are hours.
class FailureDistribution {
 public:
  enum class Kind { Exponential, Weibull };

  static FailureDistribution exponential(double rate_per_hour);
  static FailureDistribution weibull(double shape, double scale_hours);
  /// Weibull parameterized by its mean: scale = mean / gamma(1 + 1/shape).
  static FailureDistribution weibull_with_mean(double shape, double mean_hours);

  Kind kind() const { return kind_; }
  double rate() const { return rate_; }
  double shape() const { return shape_; }
  double scale() const { return scale_; }

  /// Inverse-CDF draw. Always strictly positive and finite.
  double sample(RandomStream& stream) const;

  /// Exponential: 1/rate. Weibull: scale * gamma(1 + 1/shape).
  double mean() const;

  std::string describe() const;

 private:
  FailureDistribution(Kind kind, double rate, double shape, double scale)
      : kind_(kind), rate_(rate), shape_(shape), scale_(scale) {}

  Kind kind_;
  double rate_ = 0.0;   // exponential only
  double shape_ = 0.0;  // weibull only
  double scale_ = 0.0;  // weibull only
};

}  // namespace storavail
