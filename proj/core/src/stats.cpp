#include "splidar/stats.hpp"

#include <algorithm>
#include <cmath>

namespace splidar {

double poisson_sf(std::uint64_t k, double lambda) {
  if (lambda < 0.0 || !std::isfinite(lambda)) throw InputError("poisson_sf: lambda must be finite and >= 0");
  if (k == 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  // Sum e^{-l} l^i / i! for i >= k in log space until terms are negligible.
  double log_l = std::log(lambda);
  double log_term = -lambda + static_cast<double>(k) * log_l - std::lgamma(static_cast<double>(k) + 1.0);
  double sum = 0.0;
  double term = std::exp(log_term);
  for (std::uint64_t i = k;; ++i) {
    sum += term;
    double ratio = lambda / static_cast<double>(i + 1);
    term *= ratio;
    if (term < sum * 1e-17 + 1e-320) break;
    if (i > k + 10000000) break; // unreachable for the lambdas used here
  }
  return std::min(sum, 1.0);
}

std::uint64_t poisson_upper_quantile(double lambda, double alpha) {
  if (!(alpha > 0.0) || alpha >= 1.0) throw InputError("poisson_upper_quantile: alpha must be in (0,1)");
  // P(X > q) = sf(q+1); walk up from a mean-based start.
  std::uint64_t q = static_cast<std::uint64_t>(lambda);
  while (q > 0 && poisson_sf(q + 1, lambda) <= alpha) --q;
  while (poisson_sf(q + 1, lambda) > alpha) ++q;
  return q;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double circular_mean_ps(std::span<const Picos> times, Picos period) {
  if (times.empty()) throw InputError("circular_mean_ps: empty input");
  if (period <= 0) throw InputError("circular_mean_ps: period must be > 0");
  double s = 0.0, c = 0.0;
  const double w = 2.0 * M_PI / static_cast<double>(period);
  for (Picos t : times) {
    double a = w * static_cast<double>(fold_ps(t, period));
    s += std::sin(a);
    c += std::cos(a);
  }
  double ang = std::atan2(s, c);
  if (ang < 0.0) ang += 2.0 * M_PI;
  double m = ang / w;
  if (m >= static_cast<double>(period)) m -= static_cast<double>(period);
  return m;
}

double ks_statistic(std::span<const double> sorted, double (*cdf)(double, double, double),
                    double p0, double p1) {
  if (sorted.empty()) throw InputError("ks_statistic: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = cdf(sorted[i], p0, p1);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

double gaussian_cdf_param(double x, double mu, double sigma) {
  return normal_cdf((x - mu) / sigma);
}

}  // namespace splidar
