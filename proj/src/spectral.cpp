#include "bootcorr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "bootcorr/error.hpp"
#include "bootcorr/kernels.hpp"

namespace bootcorr {
namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_symmetric(const Matrix& a) {
  if (a.rows() != a.cols())
    throw NotSymmetric("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                       ", not square");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!(std::abs(a(i, j) - a(j, i)) <= kSymmetryTolerance))
        throw NotSymmetric("entries (" + std::to_string(i) + "," + std::to_string(j) +
                           ") and their transpose differ");
}

// Reduces the symmetric matrix `a` (destroyed) to tridiagonal form:
// diag receives the diagonal, off[i] couples diag[i] and diag[i + 1].
void tridiagonalize(Matrix& a, std::vector<double>& diag, std::vector<double>& off) {
  const std::size_t n = a.rows();
  diag.assign(n, 0.0);
  off.assign(n, 0.0);
  std::vector<double> v(n), p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const auto x = a.row(k).subspan(k + 1);
    diag[k] = a(k, k);
    double scale = 0.0;
    for (const double xi : x) scale = std::max(scale, std::abs(xi));
    if (scale == 0.0) {
      off[k] = 0.0;
      continue;
    }
    // Reflector built from x / scale, so tiny columns cannot underflow.
    std::span<double> vs(v.data(), m), ps(p.data(), m), ws(w.data(), m);
    double ss = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      vs[j] = x[j] / scale;
      ss += vs[j] * vs[j];
    }
    const double norm = std::sqrt(ss);
    const double alpha = -std::copysign(norm, vs[0]);
    const double beta = 1.0 / (norm * (norm + std::abs(vs[0])));
    vs[0] -= alpha;

    // p = beta * A22 v, accumulated row by row (A22 is symmetric).
    std::fill(ps.begin(), ps.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j)
      kernels::axpy(beta * vs[j], a.row(k + 1 + j).subspan(k + 1), ps);
    double pv = 0.0;
    for (std::size_t j = 0; j < m; ++j) pv += ps[j] * vs[j];
    const double half = 0.5 * beta * pv;
    for (std::size_t j = 0; j < m; ++j) ws[j] = ps[j] - half * vs[j];

    // A22 -= v w' + w v'
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = a.row(k + 1 + i).subspan(k + 1);
      kernels::axpy(-vs[i], ws, row);
      kernels::axpy(-ws[i], vs, row);
    }
    off[k] = alpha * scale;
  }
  if (n >= 2) {
    diag[n - 2] = a(n - 2, n - 2);
    off[n - 2] = a(n - 2, n - 1);
  }
  if (n >= 1) diag[n - 1] = a(n - 1, n - 1);
  if (n >= 1) off[n - 1] = 0.0;
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues land in diag.
// An off-diagonal entry is dropped when it is negligible relative to its
// neighbours or to eps * ||T||.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
  const int max_iterations = 60;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double norm = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i)
    norm = std::max(norm, std::abs(diag[i]) + std::abs(off[i]) + (i > 0 ? std::abs(off[i - 1]) : 0.0));
  const double floor = eps * norm;
  for (std::ptrdiff_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::ptrdiff_t m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= eps * dd || std::abs(off[m]) <= floor) break;
      }
      if (m == l) break;
      if (++iterations > max_iterations)
        throw std::runtime_error("tridiagonal QL failed to converge");

      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      std::ptrdiff_t i = m - 1;
      for (; i >= l; --i) {
        const double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    } while (m != l);
  }
}

double inf_norm(const Matrix& a) {
  double norm = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (const double v : a.row(i)) s += std::abs(v);
    norm = std::max(norm, s);
  }
  return norm;
}

}  // namespace

Spectrum symmetric_eigenvalues(const Matrix& a, double tolerance_factor) {
  require_symmetric(a);
  Matrix work = a;
  std::vector<double> diag, off;
  tridiagonalize(work, diag, off);
  tridiagonal_ql(diag, off);
  std::sort(diag.begin(), diag.end());

  Spectrum s;
  s.eigenvalues = std::move(diag);
  if (s.eigenvalues.empty()) return s;
  const double max_abs =
      std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
  s.zero_tolerance = tolerance_factor * static_cast<double>(a.rows()) * max_abs;
  s.zero_count = static_cast<std::size_t>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [&](double l) { return std::abs(l) <= s.zero_tolerance; }));
  s.smallest = s.eigenvalues.front();
  return s;
}

PdVerdict is_positive_definite(const CorrelationMatrix& m, double tolerance_factor) {
  const Spectrum s = eigenvalues(m, tolerance_factor);
  return {!s.eigenvalues.empty() && s.smallest > s.zero_tolerance, s.smallest};
}

bool cholesky_succeeds(const Matrix& a, double shift) {
  const std::size_t n = a.rows();
  Matrix u = a;
  for (std::size_t i = 0; i < n; ++i) u(i, i) -= shift;
  // Right-looking, upper-triangular: A = U'U.
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = u(k, k);
    if (!(pivot > 0.0)) return false;
    const double diag = std::sqrt(pivot);
    const auto row = u.row(k).subspan(k);
    for (double& v : row) v /= diag;
    for (std::size_t i = k + 1; i < n; ++i)
      kernels::axpy(-u(k, i), u.row(k).subspan(i), u.row(i).subspan(i));
  }
  return true;
}

PdCertificate certify_positive_definite(const CorrelationMatrix& m, double tolerance_factor) {
  require_symmetric(m.values);
  const double shift = tolerance_factor * static_cast<double>(m.n()) * inf_norm(m.values);
  if (m.n() > 0 && cholesky_succeeds(m.values, shift)) return {true, std::nullopt, PdMethod::factorization};
  const PdVerdict v = is_positive_definite(m, tolerance_factor);
  return {v.positive_definite, v.smallest, PdMethod::eigensolver};
}

}  // namespace bootcorr
