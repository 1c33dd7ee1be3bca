#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's numerical paths.

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "bootcorr/matrix.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using hp_float = boost::multiprecision::cpp_bin_float_50;

/// Unique-count PMF by enumerating all t^t draw sequences; pmf[u - 1].
inline std::vector<double> enumerate_occupancy(std::size_t t) {
  std::vector<std::size_t> counts(t + 1, 0);
  std::vector<std::size_t> seq(t, 0);
  for (;;) {
    std::set<std::size_t> distinct(seq.begin(), seq.end());
    ++counts[distinct.size()];
    std::size_t pos = 0;
    while (pos < t && ++seq[pos] == t) seq[pos++] = 0;
    if (pos == t) break;
  }
  double total = std::pow(static_cast<double>(t), static_cast<double>(t));
  std::vector<double> pmf(t);
  for (std::size_t u = 1; u <= t; ++u) pmf[u - 1] = static_cast<double>(counts[u]) / total;
  return pmf;
}

/// P(u) = S2(t, u) t! / (t^t (t - u)!) in exact integer arithmetic.
inline std::vector<double> stirling_occupancy(std::size_t t) {
  // s2[k] holds S2(m, k) for the current m.
  std::vector<cpp_int> s2(t + 1, 0);
  s2[0] = 1;
  for (std::size_t m = 1; m <= t; ++m) {
    for (std::size_t k = m; k >= 1; --k) s2[k] = cpp_int(k) * s2[k] + s2[k - 1];
    s2[0] = 0;
  }
  cpp_int t_pow = 1, t_fact = 1;
  for (std::size_t i = 0; i < t; ++i) t_pow *= cpp_int(t);
  for (std::size_t i = 2; i <= t; ++i) t_fact *= cpp_int(i);
  std::vector<double> pmf(t);
  for (std::size_t u = 1; u <= t; ++u) {
    cpp_int falling = t_fact;  // t! / (t - u)!
    for (std::size_t i = 2; i <= t - u; ++i) falling /= cpp_int(i);
    const hp_float num(s2[u] * falling);
    const hp_float den(t_pow);
    pmf[u - 1] = static_cast<double>(num / den);
  }
  return pmf;
}

/// erf by its Maclaurin series in 50-digit arithmetic.
inline double erf_series(double x) {
  const hp_float hx(x);
  if (std::abs(x) > 3.0) {
    // Maclaurin cancels badly out here; use the erfc continued fraction,
    // evaluated bottom-up.
    const hp_float ax = abs(hx);
    hp_float frac = ax;
    for (int m = 4000; m >= 1; --m) frac = ax + hp_float(m) / 2 / frac;
    const hp_float pi = boost::math::constants::pi<hp_float>();
    const hp_float erfc = exp(-ax * ax) / sqrt(pi) / frac;
    return static_cast<double>(x > 0 ? 1 - erfc : erfc - 1);
  }
  hp_float term = hx, sum = hx;
  const hp_float x2 = hx * hx;
  for (int n = 1; n < 400; ++n) {
    term *= -x2 / n;
    const hp_float add = term / (2 * n + 1);
    sum += add;
    if (abs(add) < hp_float(1e-45) * abs(sum)) break;
  }
  const hp_float pi = boost::math::constants::pi<hp_float>();
  return static_cast<double>(2 * sum / sqrt(pi));
}

/// Textbook Pearson: sample covariance over sample standard deviations.
inline bootcorr::Matrix textbook_pearson(const bootcorr::Matrix& x) {
  const std::size_t n = x.rows(), t = x.cols();
  std::vector<double> mean(n, 0.0), sd(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < t; ++j) mean[i] += x(i, j);
    mean[i] /= static_cast<double>(t);
    for (std::size_t j = 0; j < t; ++j) sd[i] += (x(i, j) - mean[i]) * (x(i, j) - mean[i]);
    sd[i] = std::sqrt(sd[i] / static_cast<double>(t - 1));
  }
  bootcorr::Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      double cov = 0.0;
      for (std::size_t j = 0; j < t; ++j) cov += (x(i, j) - mean[i]) * (x(l, j) - mean[l]);
      c(i, l) = cov / static_cast<double>(t - 1) / (sd[i] * sd[l]);
    }
  return c;
}

/// Rank by Gaussian elimination with full pivoting; pivots below
/// rel_tol * (largest pivot) count as zero.
inline std::size_t row_reduction_rank(bootcorr::Matrix a, double rel_tol = 1e-9) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t rank = 0;
  double first_pivot = 0.0;
  for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
    std::size_t pr = step, pc = step;
    double best = 0.0;
    for (std::size_t i = step; i < rows; ++i)
      for (std::size_t j = step; j < cols; ++j)
        if (std::abs(a(i, j)) > best) best = std::abs(a(i, j)), pr = i, pc = j;
    if (step == 0) first_pivot = best;
    if (best <= rel_tol * first_pivot || best == 0.0) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(step, j), a(pr, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, step), a(i, pc));
    for (std::size_t i = step + 1; i < rows; ++i) {
      const double f = a(i, step) / a(step, step);
      for (std::size_t j = step; j < cols; ++j) a(i, j) -= f * a(step, j);
    }
    ++rank;
  }
  return rank;
}

/// Ascending eigenvalues from Eigen's self-adjoint solver.
inline std::vector<double> eigen_eigenvalues(const bootcorr::Matrix& a) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return ev;
}

}  // namespace oracle
