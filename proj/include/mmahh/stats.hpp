#pragma once

// Scaling-exponent fits on log-transformed sweep data. pure_power fits
// T ~ C n^alpha by OLS of ln T on ln n; power_times_log fits
// T ~ C n^alpha ln n by regressing (ln T - ln ln n) on ln n.

#include <cstddef>
#include <cstdint>
#include <span>

namespace mmahh {

enum class ScalingModel : std::uint8_t { pure_power, power_times_log };

struct FitPoint {
  double n = 0;
  double t = 0;  // measured mean runtime at size n
};

struct FitResult {
  double exponent = 0;
  double intercept = 0;       // ln C
  double residual_norm = 0;   // sqrt of the sum of squared log-residuals
  std::size_t points = 0;
  ScalingModel model = ScalingModel::pure_power;
};

// Requires >= 3 points with positive t, n >= 2, and at least two distinct n.
FitResult fit_exponent(std::span<const FitPoint> points, ScalingModel model);

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0;
  double sd = 0;      // sample standard deviation (0 for a single value)
  double ci95_lo = 0;
  double ci95_hi = 0;
};

SummaryStats summarize(std::span<const double> xs);

}  // namespace mmahh
