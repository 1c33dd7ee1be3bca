#pragma once

// Distribution of the number of distinct values u among t uniform draws with
// replacement from {1..t}: the unique-column count of a bootstrap replicate.

#include <cstddef>
#include <span>
#include <vector>

namespace bootcorr {

inline constexpr std::size_t kMaxOccupancyT = 100'000;

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

struct OccupancyDistribution {
  std::size_t t = 0;
  /// pmf[u - 1] = P(u) for u in [1, t]. Entries that underflow are stored as 0.
  std::vector<double> pmf;
  /// Closed-form mean and variance (see exact_moments).
  double mean = 0.0;
  double variance = 0.0;

  double probability(std::size_t u) const noexcept {
    return (u >= 1 && u <= t) ? pmf[u - 1] : 0.0;
  }
  /// P(U <= u)
  double cdf(std::size_t u) const noexcept;
};

/// Normal model of the zero-eigenvalue count of one replicate:
/// z ~ N(n + 1 - mu(t), sigma(t)), without clamping at zero (valid for n >> t).
struct ZeroEigenModel {
  std::size_t n = 0;
  std::size_t t = 0;
  double mean_z = 0.0;
  double sd_z = 0.0;
};

/// Exact PMF via the occupancy recurrence
///   P_{j+1}(u) = P_j(u) * u/t + P_j(u-1) * (t-u+1)/t.
/// Throws DomainError for t == 0 or t > kMaxOccupancyT.
OccupancyDistribution occupancy_pmf(std::size_t t);

/// Closed-form mean t[1 - (1-1/t)^t] and variance of the unique count.
Moments exact_moments(std::size_t t);

/// Large-t expansions: mean (1-1/e)t + 1/(2e), variance (e-2)/e^2 t + (3-e)/(2e^2).
Moments approx_moments(std::size_t t);

/// Zero eigenvalues of a replicate correlation matrix with u unique columns: max(n + 1 - u, 0).
constexpr std::size_t zero_count(std::size_t n, std::size_t u) noexcept {
  return n + 1 > u ? n + 1 - u : 0;
}

ZeroEigenModel zero_eigen_model(std::size_t n, std::size_t t);

/// Kolmogorov-Smirnov distance between the samples and N(mu(t), sigma(t)).
///
/// Unique counts are discrete, so the empirical CDF is taken at mid-step:
/// at each distinct sample value x the statistic compares
/// (F(x-) + F(x)) / 2 against the normal CDF, and the distance is the
/// maximum over sample points. Requires t >= 2 and a nonempty sample.
double occupancy_cdf_vs_normal(std::size_t t, std::span<const double> samples);
double occupancy_cdf_vs_normal(std::size_t t, std::span<const std::size_t> unique_counts);

/// Standard normal CDF.
double normal_cdf(double z) noexcept;

}  // namespace bootcorr
