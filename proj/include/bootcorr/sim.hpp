#pragma once

// Monte Carlo harness: empirical positive-definiteness of bootstrap-averaged
// correlation matrices against the analytic prediction, and empirical
// occupancy CDFs against their normal approximation.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bootcorr/corr.hpp"

namespace bootcorr {

/// n x t matrix of i.i.d. standard normal entries from Stream(derive_seed(seed, {})).
DataMatrix generate_data(std::size_t n, std::size_t t, std::uint64_t seed);

struct SimulationConfig {
  std::size_t n = 0;
  std::size_t t = 0;
  /// Nonempty, strictly increasing, each in [1, 4n].
  std::vector<std::size_t> k_values;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  /// Worker threads; never affects results.
  unsigned threads = 1;

  /// Throws DomainError describing the first violated constraint.
  void validate() const;
};

struct PdRecord {
  std::size_t k = 0;
  double empirical_pd_frequency = 0.0;
  double predicted = 0.0;
  double mean_lambda0 = 0.0;
  /// Degenerate redraws over the first k replicates, summed over trials.
  std::size_t redraws = 0;

  friend bool operator==(const PdRecord&, const PdRecord&) = default;
};

struct SimulationReport {
  SimulationConfig config;
  std::vector<PdRecord> per_k;
  std::chrono::duration<double> elapsed{};
};

/// Trial r draws fresh data from derive_seed(seed, {r, 0}) and a single
/// replicate sequence keyed by derive_seed(seed, {r, 1}); the mean of its
/// first k replicates is exactly average_correlation(data, k, that key).
SimulationReport run_pd_sweep(const SimulationConfig& config);

struct OccupancySweep {
  std::size_t t = 0;
  std::size_t samples = 0;
  /// Drawn unique counts, in draw order.
  std::vector<std::size_t> unique_counts;
  /// empirical_cdf[u - 1] = fraction of samples with unique count <= u.
  std::vector<double> empirical_cdf;
  double ks_distance = 0.0;
};

/// `samples` bootstrap index vectors over t columns, all from Stream(derive_seed(seed, {})).
OccupancySweep run_occupancy_sweep(std::size_t t, std::size_t samples, std::uint64_t seed);

struct ZetaCheck {
  /// Sum of replicate zero-eigenvalue counts.
  std::size_t zeta = 0;
  /// (k - 1) n
  std::size_t bound = 0;
  bool condition_holds = false;
  bool pd_observed = false;
  double smallest = 0.0;
  std::vector<std::size_t> unique_counts;
  std::vector<std::size_t> zero_counts;
};

/// Builds the same replicates as average_correlation(data, k, seed), counts
/// each replicate's zero eigenvalues, and certifies the mean.
ZetaCheck check_zeta_condition(const DataMatrix& data, std::size_t k, std::uint64_t seed);

}  // namespace bootcorr
