// Reference kernels. Plain loops; the AVX2 variants must match these bit for bit.

#include "variants.hpp"

namespace bootcorr::kernels::detail {
namespace {

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = alpha * x[i];
    y[i] = y[i] + prod;
  }
}

void weighted_sum2(const double* a, const double* wa, const double* b, const double* wb,
                   double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = a[i] * wa[i];
    const double q = b[i] * wb[i];
    out[i] = p + q;
  }
}

void kahan_add(double* sum, double* comp, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double y = x[i] - comp[i];
    const double t = sum[i] + y;
    comp[i] = (t - sum[i]) - y;
    sum[i] = t;
  }
}

void divide(double* x, double d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] / d;
}

}  // namespace

const Table scalar_table{Isa::scalar, axpy, weighted_sum2, kahan_add, divide};

}  // namespace bootcorr::kernels::detail
