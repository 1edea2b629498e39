#pragma once

#include <cstdint>
#include <span>

#include "splidar/common.hpp"

namespace splidar {

/// P(X >= k) for X ~ Poisson(lambda). Computed by a log-space upper-tail sum,
/// accurate for the tiny tail probabilities used in significance tests.
double poisson_sf(std::uint64_t k, double lambda);

/// Smallest q with P(X > q) <= alpha for X ~ Poisson(lambda).
std::uint64_t poisson_upper_quantile(double lambda, double alpha);

/// Standard normal CDF.
double normal_cdf(double z);

/// Circular mean of fold times on [0, period), by vector averaging.
/// Returns a value in [0, period); input must be non-empty.
double circular_mean_ps(std::span<const Picos> times, Picos period);

/// Two-sided Kolmogorov-Smirnov statistic of `sorted` against `cdf`.
double ks_statistic(std::span<const double> sorted, double (*cdf)(double, double, double),
                    double p0, double p1);

/// CDF adapter for N(mu, sigma), usable with ks_statistic.
double gaussian_cdf_param(double x, double mu, double sigma);

}  // namespace splidar
