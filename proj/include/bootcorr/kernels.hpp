#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and
// an AVX2 version; the active table is picked at runtime from the CPU's
// capabilities. All kernels are elementwise (no reductions) and avoid fused
// multiply-add, so every variant produces bit-identical results.

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>

namespace bootcorr::kernels {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa) noexcept;

struct Table {
  Isa isa;
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// out[i] = a[i] * wa[i] + b[i] * wb[i]
  void (*weighted_sum2)(const double* a, const double* wa, const double* b, const double* wb,
                        double* out, std::size_t n);
  /// Kahan-compensated sum[i] += x[i], compensation carried in comp[i].
  void (*kahan_add)(double* sum, double* comp, const double* x, std::size_t n);
  /// x[i] /= d
  void (*divide)(double* x, double d, std::size_t n);
};

bool supported(Isa isa) noexcept;
/// Kernel table for `isa`; the caller must check `supported(isa)` first.
const Table& table(Isa isa) noexcept;
/// The widest ISA the running CPU supports.
Isa best_supported() noexcept;

const Table& active() noexcept;
/// Switches the process-wide active table. Throws DomainError if the CPU
/// lacks the requested ISA.
void use(Isa isa);

/// Restores the previously active ISA on destruction.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active().isa) { use(isa); }
  ~ScopedIsa() { use(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void weighted_sum2(std::span<const double> a, std::span<const double> wa,
                          std::span<const double> b, std::span<const double> wb,
                          std::span<double> out) {
  assert(a.size() == out.size() && wa.size() == out.size());
  assert(b.size() == out.size() && wb.size() == out.size());
  active().weighted_sum2(a.data(), wa.data(), b.data(), wb.data(), out.data(), out.size());
}

inline void kahan_add(std::span<double> sum, std::span<double> comp, std::span<const double> x) {
  assert(sum.size() == x.size() && comp.size() == x.size());
  active().kahan_add(sum.data(), comp.data(), x.data(), x.size());
}

inline void divide(std::span<double> x, double d) { active().divide(x.data(), d, x.size()); }

}  // namespace bootcorr::kernels
