// AVX2 kernels: 4 doubles per lane group, scalar tails. Compiled with -mavx2
// only (no FMA) so the rounding sequence matches scalar.cpp exactly.

#include <immintrin.h>

#include "variants.hpp"

namespace bootcorr::kernels::detail {
namespace {

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = alpha * x[i];
    y[i] = y[i] + prod;
  }
}

void weighted_sum2(const double* a, const double* wa, const double* b, const double* wb,
                   double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(wa + i));
    const __m256d q = _mm256_mul_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(wb + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(p, q));
  }
  for (; i < n; ++i) {
    const double p = a[i] * wa[i];
    const double q = b[i] * wb[i];
    out[i] = p + q;
  }
}

void kahan_add(double* sum, double* comp, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(sum + i);
    const __m256d y = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(comp + i));
    const __m256d t = _mm256_add_pd(s, y);
    _mm256_storeu_pd(comp + i, _mm256_sub_pd(_mm256_sub_pd(t, s), y));
    _mm256_storeu_pd(sum + i, t);
  }
  for (; i < n; ++i) {
    const double y = x[i] - comp[i];
    const double t = sum[i] + y;
    comp[i] = (t - sum[i]) - y;
    sum[i] = t;
  }
}

void divide(double* x, double d, std::size_t n) {
  const __m256d vd = _mm256_set1_pd(d);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_loadu_pd(x + i), vd));
  for (; i < n; ++i) x[i] = x[i] / d;
}

}  // namespace

const Table avx2_table{Isa::avx2, axpy, weighted_sum2, kahan_add, divide};

}  // namespace bootcorr::kernels::detail
