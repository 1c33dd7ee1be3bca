#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bootcorr/matrix.hpp"
#include "bootcorr/random.hpp"

namespace bootcorr {

/// n x t data: n objects (rows) observed over t features (columns).
/// Immutable after construction; safe to share across threads.
class DataMatrix {
 public:
  /// Throws DomainError unless n >= 2, t >= 2 and all values are finite;
  /// throws ZeroVarianceRow for a constant row.
  explicit DataMatrix(Matrix values, std::vector<std::string> row_labels = {});

  std::size_t n() const noexcept { return values_.rows(); }
  std::size_t t() const noexcept { return values_.cols(); }
  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& row_labels() const noexcept { return labels_; }

 private:
  Matrix values_;
  std::vector<std::string> labels_;
};

struct BootstrapIndex {
  /// t column indices in [0, t), drawn with replacement.
  std::vector<std::size_t> indices;
  /// Number of distinct entries of `indices`.
  std::size_t unique_count = 0;
};

enum class CorrelationSource { plain, bootstrap_replicate, bootstrap_average };

struct CorrelationMatrix {
  Matrix values;
  CorrelationSource source = CorrelationSource::plain;
  /// Replicates averaged; 1 for plain and single replicates.
  std::size_t k = 1;

  std::size_t n() const noexcept { return values.rows(); }
};

/// Pairwise Pearson correlations between rows (mean-centred, population
/// normalisation). Diagonal is exactly 1 and the result exactly symmetric.
CorrelationMatrix pearson(const DataMatrix& data);

BootstrapIndex draw_bootstrap_index(std::size_t t, Stream& stream);

/// Pearson correlation of the column-resampled matrix x_{i, index_j}.
/// Throws ZeroVarianceRow when a resampled row is constant.
CorrelationMatrix bootstrap_replicate(const DataMatrix& data, const BootstrapIndex& index);

struct Replicate {
  CorrelationMatrix matrix;
  BootstrapIndex index;
  /// Degenerate draws rejected before this one succeeded.
  std::size_t redraws = 0;
};

/// Replicate number `ordinal` of the bootstrap family keyed by `seed`. Draws
/// from the stream derive_seed(seed, {ordinal}); a degenerate index is
/// redrawn from the same stream. Throws TooManyDegenerateRedraws after
/// `max_redraws` rejections.
Replicate draw_replicate(const DataMatrix& data, std::uint64_t seed, std::size_t ordinal,
                         std::size_t max_redraws);

/// Running entrywise mean of correlation matrices, with Kahan-compensated
/// sums. Adding the same matrices in the same order gives the same bits.
class CorrelationAccumulator {
 public:
  explicit CorrelationAccumulator(std::size_t n);

  void add(const CorrelationMatrix& m);
  std::size_t count() const noexcept { return count_; }
  /// Mean of everything added so far; requires count() >= 1.
  CorrelationMatrix mean() const;

 private:
  Matrix sum_;
  Matrix comp_;
  std::size_t count_ = 0;
};

struct BootstrapAverage {
  CorrelationMatrix matrix;
  /// Unique column count u_b of each averaged replicate, in ordinal order.
  std::vector<std::size_t> unique_counts;
  std::size_t redraws = 0;
};

inline constexpr std::size_t kRedrawsPerReplicate = 100;

/// Mean of k bootstrap replicates (ordinals 0..k-1 of `seed`). The result
/// depends only on (data, k, seed), whatever `threads` is. Throws
/// TooManyDegenerateRedraws if more than 100 k redraws are needed.
BootstrapAverage average_correlation(const DataMatrix& data, std::size_t k, std::uint64_t seed,
                                     unsigned threads = 1);

}  // namespace bootcorr
