#include "bootcorr/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bootcorr/error.hpp"
#include "bootcorr/kernels.hpp"

namespace bootcorr {
namespace {

// (1 - c/t)^t, through log1p where the base is in (0, 1].
double pow_one_minus(double c, double t) {
  const double x = c / t;
  if (x < 1.0) return std::exp(t * std::log1p(-x));
  return std::pow(1.0 - x, t);
}

}  // namespace

double OccupancyDistribution::cdf(std::size_t u) const noexcept {
  const std::size_t last = std::min(u, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < last; ++i) acc += pmf[i];
  return std::min(acc, 1.0);
}

OccupancyDistribution occupancy_pmf(std::size_t t) {
  if (t == 0 || t > kMaxOccupancyT)
    throw DomainError("occupancy_pmf: t must be in [1, " + std::to_string(kMaxOccupancyT) +
                      "], got " + std::to_string(t));

  const double td = static_cast<double>(t);
  // Index u in [0, t + 1]; slots 0 and t + 1 stay zero as recurrence borders.
  std::vector<double> stay(t + 2, 0.0), move(t + 2, 0.0);
  for (std::size_t u = 1; u <= t; ++u) {
    stay[u] = static_cast<double>(u) / td;
    move[u] = static_cast<double>(t - u + 1) / td;
  }

  std::vector<double> cur(t + 2, 0.0), next(t + 2, 0.0);
  cur[1] = 1.0;
  // [lo, hi] brackets the nonzero entries of `cur`.
  std::size_t lo = 1, hi = 1;
  for (std::size_t draw = 2; draw <= t; ++draw) {
    const std::size_t top = std::min(hi + 1, t);
    next[lo - 1] = 0.0;
    next[top + 1] = 0.0;
    const std::size_t width = top - lo + 1;
    kernels::weighted_sum2(std::span<const double>(cur).subspan(lo, width),
                           std::span<const double>(stay).subspan(lo, width),
                           std::span<const double>(cur).subspan(lo - 1, width),
                           std::span<const double>(move).subspan(lo, width),
                           std::span<double>(next).subspan(lo, width));
    hi = top;
    while (lo < hi && next[lo] == 0.0) ++lo;
    while (hi > lo && next[hi] == 0.0) --hi;
    std::swap(cur, next);
  }

  OccupancyDistribution dist;
  dist.t = t;
  dist.pmf.assign(t, 0.0);
  for (std::size_t u = lo; u <= hi; ++u) dist.pmf[u - 1] = cur[u];
  const Moments m = exact_moments(t);
  dist.mean = m.mean;
  dist.variance = m.variance;
  return dist;
}

Moments exact_moments(std::size_t t) {
  if (t == 0) throw DomainError("exact_moments: t must be positive");
  const double td = static_cast<double>(t);
  const double p1 = pow_one_minus(1.0, td);  // (1 - 1/t)^t
  const double p2 = pow_one_minus(2.0, td);  // (1 - 2/t)^t
  Moments m;
  m.mean = td * (1.0 - p1);
  m.variance = td * p1 + td * td * (1.0 - 1.0 / td) * p2 - td * td * p1 * p1;
  // Cancellation can leave a tiny negative residue at t = 1.
  m.variance = std::max(m.variance, 0.0);
  return m;
}

Moments approx_moments(std::size_t t) {
  if (t == 0) throw DomainError("approx_moments: t must be positive");
  constexpr double e = std::numbers::e;
  const double td = static_cast<double>(t);
  return {(1.0 - 1.0 / e) * td + 1.0 / (2.0 * e),
          ((e - 2.0) / (e * e)) * td + (3.0 - e) / (2.0 * e * e)};
}

ZeroEigenModel zero_eigen_model(std::size_t n, std::size_t t) {
  if (n == 0) throw DomainError("zero_eigen_model: n must be positive");
  const Moments m = exact_moments(t);
  return {n, t, static_cast<double>(n) + 1.0 - m.mean, std::sqrt(m.variance)};
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double occupancy_cdf_vs_normal(std::size_t t, std::span<const double> samples) {
  if (samples.empty()) throw DomainError("occupancy_cdf_vs_normal: empty sample set");
  if (t < 2) throw DomainError("occupancy_cdf_vs_normal: t must be >= 2 (sigma(1) = 0)");
  if (!std::all_of(samples.begin(), samples.end(), [](double x) { return std::isfinite(x); }))
    throw DomainError("occupancy_cdf_vs_normal: non-finite sample");

  const Moments m = exact_moments(t);
  const double sd = std::sqrt(m.variance);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const double count = static_cast<double>(sorted.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double mid_ecdf = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) / count;
    distance = std::max(distance, std::abs(mid_ecdf - normal_cdf((sorted[i] - m.mean) / sd)));
    i = j;
  }
  return distance;
}

double occupancy_cdf_vs_normal(std::size_t t, std::span<const std::size_t> unique_counts) {
  std::vector<double> samples;
  samples.reserve(unique_counts.size());
  for (const std::size_t u : unique_counts) {
    if (u < 1 || u > t)
      throw DomainError("occupancy_cdf_vs_normal: unique count " + std::to_string(u) +
                        " outside [1, " + std::to_string(t) + "]");
    samples.push_back(static_cast<double>(u));
  }
  return occupancy_cdf_vs_normal(t, samples);
}

}  // namespace bootcorr
