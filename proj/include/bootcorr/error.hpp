#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace bootcorr {

/// Argument outside the mathematical domain of an operation (t = 0, a <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Row `row` of a (possibly resampled) data matrix is constant, so its
/// Pearson correlation is undefined.
class ZeroVarianceRow : public DomainError {
 public:
  explicit ZeroVarianceRow(std::size_t row)
      : DomainError("ZeroVarianceRow: row " + std::to_string(row) + " is constant"), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class TooManyDegenerateRedraws : public std::runtime_error {
 public:
  TooManyDegenerateRedraws(std::size_t redraws, std::size_t k)
      : std::runtime_error("too many degenerate bootstrap redraws (" + std::to_string(redraws) +
                           " for k=" + std::to_string(k) + ")"),
        redraws_(redraws),
        k_(k) {}
  /// Same failure inside a simulation sweep, tagged with the trial ordinal.
  TooManyDegenerateRedraws(std::size_t redraws, std::size_t k, std::size_t trial)
      : std::runtime_error("too many degenerate bootstrap redraws (" + std::to_string(redraws) +
                           " for k=" + std::to_string(k) + " in trial " + std::to_string(trial) +
                           ")"),
        redraws_(redraws),
        k_(k),
        trial_(trial) {}

  std::size_t redraws() const noexcept { return redraws_; }
  std::size_t k() const noexcept { return k_; }
  std::optional<std::size_t> trial() const noexcept { return trial_; }

 private:
  std::size_t redraws_;
  std::size_t k_;
  std::optional<std::size_t> trial_;
};

class NotSymmetric : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace bootcorr
