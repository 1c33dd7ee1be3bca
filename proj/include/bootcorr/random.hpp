#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bootcorr {

/// Derives an independent 64-bit seed from a master seed and a path of
/// ordinals (trial, replicate, ...) with the SplitMix64 finalizer. Stable
/// across platforms and releases.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Deterministic random stream, generator "mt19937_64/lemire/polar" v1.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random>, since the standard leaves their algorithms to the vendor and
/// results would differ between standard libraries.
class Stream {
 public:
  static constexpr int kVersion = 1;

  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound), unbiased (Lemire's multiply-shift with rejection).
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal draw (Marsaglia polar method; the spare value is cached).
  double standard_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bootcorr
