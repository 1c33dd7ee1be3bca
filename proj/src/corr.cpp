#include "bootcorr/corr.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "bootcorr/error.hpp"
#include "bootcorr/kernels.hpp"
#include "parallel.hpp"

namespace bootcorr {
namespace {

struct WeightedColumn {
  std::size_t column;
  std::size_t weight;  // multiplicity in the resample
};

std::vector<WeightedColumn> all_columns(std::size_t t) {
  std::vector<WeightedColumn> cols(t);
  for (std::size_t j = 0; j < t; ++j) cols[j] = {j, 1};
  return cols;
}

std::vector<WeightedColumn> columns_of(const BootstrapIndex& index, std::size_t t) {
  std::vector<std::size_t> counts(t, 0);
  for (const std::size_t j : index.indices) ++counts[j];
  std::vector<WeightedColumn> cols;
  cols.reserve(index.unique_count);
  for (std::size_t j = 0; j < t; ++j)
    if (counts[j] > 0) cols.push_back({j, counts[j]});
  return cols;
}

// Correlation of the data with column j repeated weight_j times. A repeated
// column contributes weight_j identical terms to every sum, so it enters the
// Gram product once, scaled by sqrt(weight_j). Returns the first constant
// row instead of a matrix when the weighted data is degenerate.
std::optional<std::size_t> weighted_correlation(const Matrix& x,
                                                std::span<const WeightedColumn> cols,
                                                Matrix& out) {
  const std::size_t n = x.rows();
  const double t = static_cast<double>(x.cols());

  // Standardised data, stored column by column: z(j, i) for object i.
  Matrix z(cols.size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.row(i);
    const double first = row[cols.front().column];
    bool constant = true;
    double sum = 0.0;
    for (const auto& c : cols) {
      constant = constant && row[c.column] == first;
      sum += static_cast<double>(c.weight) * row[c.column];
    }
    if (constant) return i;
    const double mean = sum / t;
    double ss = 0.0;
    for (const auto& c : cols) {
      const double d = row[c.column] - mean;
      ss += static_cast<double>(c.weight) * (d * d);
    }
    const double norm = std::sqrt(ss);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const double d = row[cols[j].column] - mean;
      z(j, i) = std::sqrt(static_cast<double>(cols[j].weight)) * (d / norm);
    }
  }

  out = Matrix(n, n);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto zj = z.row(j);
    for (std::size_t i = 0; i < n; ++i)
      kernels::axpy(zj[i], zj.subspan(i), out.row(i).subspan(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = 1.0;
    for (std::size_t l = i + 1; l < n; ++l) {
      const double v = std::clamp(out(i, l), -1.0, 1.0);
      out(i, l) = v;
      out(l, i) = v;
    }
  }
  return std::nullopt;
}

}  // namespace

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> row_labels)
    : values_(std::move(values)), labels_(std::move(row_labels)) {
  if (values_.rows() < 2 || values_.cols() < 2)
    throw DomainError("data matrix needs n >= 2 rows and t >= 2 columns, got " +
                      std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()));
  if (!labels_.empty() && labels_.size() != values_.rows())
    throw DomainError("row label count does not match row count");
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    const auto row = values_.row(i);
    if (!std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); }))
      throw DomainError("non-finite value in row " + std::to_string(i));
    if (std::all_of(row.begin(), row.end(), [&](double v) { return v == row[0]; }))
      throw ZeroVarianceRow(i);
  }
}

CorrelationMatrix pearson(const DataMatrix& data) {
  CorrelationMatrix result;
  const auto cols = all_columns(data.t());
  if (const auto bad = weighted_correlation(data.values(), cols, result.values))
    throw ZeroVarianceRow(*bad);
  return result;
}

BootstrapIndex draw_bootstrap_index(std::size_t t, Stream& stream) {
  BootstrapIndex index;
  index.indices.resize(t);
  std::vector<bool> seen(t, false);
  for (auto& j : index.indices) {
    j = static_cast<std::size_t>(stream.uniform_index(t));
    if (!seen[j]) {
      seen[j] = true;
      ++index.unique_count;
    }
  }
  return index;
}

CorrelationMatrix bootstrap_replicate(const DataMatrix& data, const BootstrapIndex& index) {
  if (index.indices.size() != data.t())
    throw DomainError("bootstrap index length " + std::to_string(index.indices.size()) +
                      " does not match t = " + std::to_string(data.t()));
  if (std::any_of(index.indices.begin(), index.indices.end(),
                  [&](std::size_t j) { return j >= data.t(); }))
    throw DomainError("bootstrap index entry out of range");
  CorrelationMatrix result;
  result.source = CorrelationSource::bootstrap_replicate;
  const auto cols = columns_of(index, data.t());
  if (const auto bad = weighted_correlation(data.values(), cols, result.values))
    throw ZeroVarianceRow(*bad);
  return result;
}

Replicate draw_replicate(const DataMatrix& data, std::uint64_t seed, std::size_t ordinal,
                         std::size_t max_redraws) {
  Stream stream(derive_seed(seed, {ordinal}));
  Replicate rep;
  rep.matrix.source = CorrelationSource::bootstrap_replicate;
  for (;;) {
    rep.index = draw_bootstrap_index(data.t(), stream);
    const auto cols = columns_of(rep.index, data.t());
    if (!weighted_correlation(data.values(), cols, rep.matrix.values)) return rep;
    if (++rep.redraws > max_redraws) throw TooManyDegenerateRedraws(rep.redraws, ordinal + 1);
  }
}

CorrelationAccumulator::CorrelationAccumulator(std::size_t n) : sum_(n, n), comp_(n, n) {}

void CorrelationAccumulator::add(const CorrelationMatrix& m) {
  if (m.n() != sum_.rows()) throw DomainError("correlation matrix size mismatch in accumulator");
  kernels::kahan_add(sum_.flat(), comp_.flat(), m.values.flat());
  ++count_;
}

CorrelationMatrix CorrelationAccumulator::mean() const {
  if (count_ == 0) throw DomainError("mean of an empty accumulator");
  CorrelationMatrix result;
  result.values = sum_;
  kernels::divide(result.values.flat(), static_cast<double>(count_));
  result.source = CorrelationSource::bootstrap_average;
  result.k = count_;
  return result;
}

BootstrapAverage average_correlation(const DataMatrix& data, std::size_t k, std::uint64_t seed,
                                     unsigned threads) {
  if (k == 0) throw DomainError("average_correlation: k must be positive");
  const std::size_t budget = kRedrawsPerReplicate * k;

  BootstrapAverage result;
  result.unique_counts.reserve(k);
  CorrelationAccumulator acc(data.n());
  // Replicates are built in parallel in batches and merged in ordinal order.
  const std::size_t batch = std::max<std::size_t>(threads, 1) * 4;
  std::vector<Replicate> reps;
  for (std::size_t start = 0; start < k; start += batch) {
    const std::size_t count = std::min(batch, k - start);
    reps.assign(count, Replicate{});
    detail::parallel_for(count, threads, [&](std::size_t i) {
      reps[i] = draw_replicate(data, seed, start + i, budget);
    });
    for (const auto& rep : reps) {
      result.redraws += rep.redraws;
      if (result.redraws > budget) throw TooManyDegenerateRedraws(result.redraws, k);
      acc.add(rep.matrix);
      result.unique_counts.push_back(rep.index.unique_count);
    }
  }
  result.matrix = acc.mean();
  return result;
}

}  // namespace bootcorr
