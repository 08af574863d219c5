#include "mmahh/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace mmahh {

FitResult fit_exponent(std::span<const FitPoint> points, ScalingModel model) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_exponent: need at least 3 points for a residual check");
  double sx = 0, sy = 0;
  for (const FitPoint& pt : points) {
    if (!(pt.n >= 2.0)) throw std::invalid_argument("fit_exponent: sizes must be at least 2");
    if (!(pt.t > 0.0)) throw std::invalid_argument("fit_exponent: runtimes must be positive");
  }
  const auto xy = [&](const FitPoint& pt) {
    const double x = std::log(pt.n);
    double y = std::log(pt.t);
    if (model == ScalingModel::power_times_log) y -= std::log(std::log(pt.n));
    return std::pair<double, double>{x, y};
  };
  const auto count = static_cast<double>(points.size());
  for (const FitPoint& pt : points) {
    const auto [x, y] = xy(pt);
    sx += x;
    sy += y;
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0, sxy = 0;
  for (const FitPoint& pt : points) {
    const auto [x, y] = xy(pt);
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent: need at least two distinct sizes");

  FitResult r;
  r.model = model;
  r.points = points.size();
  r.exponent = sxy / sxx;
  r.intercept = my - r.exponent * mx;
  double ss = 0;
  for (const FitPoint& pt : points) {
    const auto [x, y] = xy(pt);
    const double res = y - (r.intercept + r.exponent * x);
    ss += res * res;
  }
  r.residual_norm = std::sqrt(ss);
  return r;
}

SummaryStats summarize(std::span<const double> xs) {
  SummaryStats s;
  s.count = xs.size();
  if (xs.empty()) {
    s.mean = s.sd = s.ci95_lo = s.ci95_hi = std::nan("");
    return s;
  }
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.sd = (xs.size() > 1) ? std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0)) : 0.0;
  const double half = 1.959963984540054 * s.sd / std::sqrt(static_cast<double>(xs.size()));
  s.ci95_lo = s.mean - half;
  s.ci95_hi = s.mean + half;
  return s;
}

}  // namespace mmahh
