#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bootcorr/corr.hpp"
#include "bootcorr/matrix.hpp"

namespace bootcorr {

/// An eigenvalue is treated as zero when |lambda| <= factor * n * max|lambda|.
inline constexpr double kZeroToleranceFactor = 1e-12;

struct Spectrum {
  /// Ascending.
  std::vector<double> eigenvalues;
  double zero_tolerance = 0.0;
  std::size_t zero_count = 0;
  /// Smallest eigenvalue, lambda_0.
  double smallest = 0.0;
};

/// All eigenvalues of a symmetric matrix: Householder reduction to
/// tridiagonal form followed by implicit-shift QL. Throws NotSymmetric when
/// some |a_ij - a_ji| exceeds 1e-12 (or the matrix is not square).
Spectrum symmetric_eigenvalues(const Matrix& a, double tolerance_factor = kZeroToleranceFactor);

inline Spectrum eigenvalues(const CorrelationMatrix& m,
                            double tolerance_factor = kZeroToleranceFactor) {
  return symmetric_eigenvalues(m.values, tolerance_factor);
}

struct PdVerdict {
  bool positive_definite = false;
  double smallest = 0.0;
};

/// Positive definite iff lambda_0 > zero tolerance; lambda_0 inside the
/// tolerance band counts as not positive definite.
PdVerdict is_positive_definite(const CorrelationMatrix& m,
                               double tolerance_factor = kZeroToleranceFactor);

enum class PdMethod { factorization, eigensolver };

struct PdCertificate {
  bool positive_definite = false;
  /// Present only when the eigensolver was needed.
  std::optional<double> smallest;
  PdMethod method = PdMethod::factorization;
};

/// Cheaper certification: a Cholesky factorisation of A - s I with
/// s = factor * n * ||A||_inf >= the zero tolerance proves lambda_0 exceeds
/// the tolerance. If the factorisation breaks down, the eigensolver decides.
PdCertificate certify_positive_definite(const CorrelationMatrix& m,
                                        double tolerance_factor = kZeroToleranceFactor);

/// True when the Cholesky factorisation of a - shift * I succeeds with
/// strictly positive pivots.
bool cholesky_succeeds(const Matrix& a, double shift = 0.0);

}  // namespace bootcorr
