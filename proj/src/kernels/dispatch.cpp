#include <atomic>

#include "bootcorr/error.hpp"
#include "variants.hpp"

namespace bootcorr::kernels {
namespace {

std::atomic<const Table*>& active_slot() {
  static std::atomic<const Table*> slot{&table(best_supported())};
  return slot;
}

}  // namespace

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(BOOTCORR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) noexcept {
#if defined(BOOTCORR_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table;
#endif
  (void)isa;
  return detail::scalar_table;
}

Isa best_supported() noexcept { return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const Table& active() noexcept { return *active_slot().load(std::memory_order_acquire); }

void use(Isa isa) {
  if (!supported(isa))
    throw DomainError("kernel ISA '" + std::string(name(isa)) + "' not supported on this CPU");
  active_slot().store(&table(isa), std::memory_order_release);
}

}  // namespace bootcorr::kernels
