#pragma once

// Normal-approximation analytics for the positive-definiteness of the mean of
// k bootstrap correlation matrices.

#include <cstddef>

namespace bootcorr {

/// Which moments of the unique-count distribution feed the predictions.
enum class MomentSource { exact, approximate };

/// Argument of erf in P(lambda_0 > 0):  ((mu - 1) k - n) / (sigma sqrt(2k)).
double pd_erf_argument(std::size_t n, std::size_t t, double k,
                       MomentSource source = MomentSource::exact);

/// P(lambda_0 > 0) = (1 + erf(argument)) / 2, clamped to [0, 1].
/// Real k is accepted for plotting. Throws DomainError for t < 2, n < 1 or k <= 0.
double prob_pd(std::size_t n, std::size_t t, double k, MomentSource source = MomentSource::exact);

/// Replicates needed for P(lambda_0 > 0) >= (1 + erf(a)) / 2: the positive root
/// of the erf argument set equal to a. Defined for any real a (negative a
/// gives the lower side of the transition); the user-facing budget uses a > 0.
double k_for_argument(std::size_t n, std::size_t t, double a,
                      MomentSource source = MomentSource::exact);

/// k_plus(a). Throws DomainError unless a > 0 and t >= 2.
double k_plus(std::size_t n, std::size_t t, double a, MomentSource source = MomentSource::exact);

/// Inflection point of the transition with the large-t moments substituted:
/// 2 e n q / (2 (e - 1) n + (1 - 2e) q). Throws DomainError if the denominator is <= 0.
double k_star(double n, double q);

/// Large-system limit e / (e - 1) * q of both k_star and k_plus.
double k_limit(double q);

/// Erf-scale confidence argument for tail probability alpha: a = erfinv(1 - alpha).
double argument_for_alpha(double alpha);
/// alpha = 1 - erf(a).
double alpha_for_argument(double a);

struct BootstrapBudget {
  std::size_t n = 0;
  std::size_t t = 0;
  double a = 0.0;
  double k_plus = 0.0;
  double k_star = 0.0;
  double k_limit = 0.0;
  /// Sufficient count from the intersection argument: always n.
  std::size_t k_upper = 0;
  /// min(ceil(k_plus), n), at least 1.
  std::size_t recommended = 0;
};

BootstrapBudget bootstrap_budget(std::size_t n, std::size_t t, double a,
                                 MomentSource source = MomentSource::exact);

}  // namespace bootcorr
