#include "bootcorr/predictor.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "bootcorr/error.hpp"
#include "bootcorr/occupancy.hpp"

namespace bootcorr {
namespace {

Moments moments_for(std::size_t t, MomentSource source) {
  if (t < 2) throw DomainError("predictions need t >= 2, got t = " + std::to_string(t));
  return source == MomentSource::exact ? exact_moments(t) : approx_moments(t);
}

}  // namespace

double pd_erf_argument(std::size_t n, std::size_t t, double k, MomentSource source) {
  if (n < 1) throw DomainError("predictions need n >= 1");
  if (!(k > 0.0)) throw DomainError("predictions need k > 0");
  const Moments m = moments_for(t, source);
  return ((m.mean - 1.0) * k - static_cast<double>(n)) / (std::sqrt(m.variance) * std::sqrt(2.0 * k));
}

double prob_pd(std::size_t n, std::size_t t, double k, MomentSource source) {
  const double p = 0.5 * (1.0 + std::erf(pd_erf_argument(n, t, k, source)));
  return std::clamp(p, 0.0, 1.0);
}

double k_for_argument(std::size_t n, std::size_t t, double a, MomentSource source) {
  if (n < 1) throw DomainError("predictions need n >= 1");
  const Moments m = moments_for(t, source);
  const double drift = m.mean - 1.0;
  if (!(drift > 0.0)) throw DomainError("mu(t) must exceed 1");
  const double a2s2 = a * a * m.variance;
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(a2s2 * a2s2 + 2.0 * a2s2 * drift * nd);
  return (a2s2 + drift * nd + std::copysign(root, a)) / (drift * drift);
}

double k_plus(std::size_t n, std::size_t t, double a, MomentSource source) {
  if (!(a > 0.0)) throw DomainError("k_plus needs a > 0");
  return k_for_argument(n, t, a, source);
}

double k_star(double n, double q) {
  constexpr double e = std::numbers::e;
  const double denom = 2.0 * (e - 1.0) * n + (1.0 - 2.0 * e) * q;
  if (!(denom > 0.0) || !(q > 0.0)) throw DomainError("k_star: denominator must be positive");
  return 2.0 * e * n * q / denom;
}

double k_limit(double q) {
  if (!(q > 0.0)) throw DomainError("k_limit needs q > 0");
  constexpr double e = std::numbers::e;
  return e / (e - 1.0) * q;
}

double argument_for_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  return boost::math::erf_inv(1.0 - alpha);
}

double alpha_for_argument(double a) { return std::erfc(a); }

BootstrapBudget bootstrap_budget(std::size_t n, std::size_t t, double a, MomentSource source) {
  BootstrapBudget b;
  b.n = n;
  b.t = t;
  b.a = a;
  b.k_plus = k_plus(n, t, a, source);
  const double q = static_cast<double>(n) / static_cast<double>(t);
  b.k_star = k_star(static_cast<double>(n), q);
  b.k_limit = k_limit(q);
  b.k_upper = n;
  const double ceiling = std::ceil(b.k_plus);
  b.recommended = std::max<std::size_t>(
      1, ceiling >= static_cast<double>(n) ? n : static_cast<std::size_t>(ceiling));
  return b;
}

}  // namespace bootcorr
