#include "bootcorr/sim.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "bootcorr/error.hpp"
#include "bootcorr/occupancy.hpp"
#include "bootcorr/predictor.hpp"
#include "bootcorr/random.hpp"
#include "bootcorr/spectral.hpp"
#include "parallel.hpp"

namespace bootcorr {
namespace {

struct TrialOutcome {
  std::vector<char> pd;
  std::vector<double> lambda0;
  std::vector<std::size_t> redraws;
};

TrialOutcome run_trial(const SimulationConfig& config, std::size_t trial) {
  const DataMatrix data = generate_data(config.n, config.t, derive_seed(config.seed, {trial, 0}));
  const std::uint64_t boot_seed = derive_seed(config.seed, {trial, 1});
  const std::size_t k_max = config.k_values.back();

  TrialOutcome out;
  out.pd.reserve(config.k_values.size());
  CorrelationAccumulator acc(config.n);
  std::size_t redraws = 0;
  auto next_k = config.k_values.begin();
  for (std::size_t ordinal = 0; ordinal < k_max; ++ordinal) {
    Replicate rep;
    try {
      rep = draw_replicate(data, boot_seed, ordinal, kRedrawsPerReplicate * k_max);
    } catch (const TooManyDegenerateRedraws& e) {
      throw TooManyDegenerateRedraws(redraws + e.redraws(), *next_k, trial);
    }
    redraws += rep.redraws;
    acc.add(rep.matrix);
    if (ordinal + 1 != *next_k) continue;

    const std::size_t k = *next_k;
    if (redraws > kRedrawsPerReplicate * k) throw TooManyDegenerateRedraws(redraws, k, trial);
    const PdVerdict verdict = is_positive_definite(acc.mean());
    out.pd.push_back(verdict.positive_definite ? 1 : 0);
    out.lambda0.push_back(verdict.smallest);
    out.redraws.push_back(redraws);
    ++next_k;
  }
  return out;
}

}  // namespace

DataMatrix generate_data(std::size_t n, std::size_t t, std::uint64_t seed) {
  if (n < 2 || t < 2) throw DomainError("generate_data needs n >= 2 and t >= 2");
  Stream stream(derive_seed(seed, {}));
  Matrix values(n, t);
  for (double& v : values.flat()) v = stream.standard_normal();
  return DataMatrix(std::move(values));
}

void SimulationConfig::validate() const {
  if (n < 2 || t < 2) throw DomainError("simulation needs n >= 2 and t >= 2");
  if (trials < 1) throw DomainError("simulation needs at least one trial");
  if (k_values.empty()) throw DomainError("simulation needs at least one k value");
  if (k_values.front() < 1) throw DomainError("k values must be positive");
  if (std::adjacent_find(k_values.begin(), k_values.end(), std::greater_equal<>()) !=
      k_values.end())
    throw DomainError("k values must be strictly increasing");
  if (k_values.back() > 4 * n)
    throw DomainError("largest k (" + std::to_string(k_values.back()) + ") exceeds 4n = " +
                      std::to_string(4 * n));
}

SimulationReport run_pd_sweep(const SimulationConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(config.trials);
  detail::parallel_for(config.trials, config.threads,
                       [&](std::size_t r) { outcomes[r] = run_trial(config, r); });

  SimulationReport report;
  report.config = config;
  const double trials = static_cast<double>(config.trials);
  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    PdRecord rec;
    rec.k = config.k_values[i];
    std::size_t pd_count = 0;
    double lambda_sum = 0.0;
    for (const auto& o : outcomes) {
      pd_count += static_cast<std::size_t>(o.pd[i]);
      lambda_sum += o.lambda0[i];
      rec.redraws += o.redraws[i];
    }
    rec.empirical_pd_frequency = static_cast<double>(pd_count) / trials;
    rec.mean_lambda0 = lambda_sum / trials;
    rec.predicted = prob_pd(config.n, config.t, static_cast<double>(rec.k));
    report.per_k.push_back(rec);
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

OccupancySweep run_occupancy_sweep(std::size_t t, std::size_t samples, std::uint64_t seed) {
  if (t < 1) throw DomainError("run_occupancy_sweep needs t >= 1");
  if (samples < 1) throw DomainError("run_occupancy_sweep needs samples >= 1");
  OccupancySweep sweep;
  sweep.t = t;
  sweep.samples = samples;
  sweep.unique_counts.reserve(samples);
  Stream stream(derive_seed(seed, {}));
  std::vector<std::size_t> histogram(t + 1, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t u = draw_bootstrap_index(t, stream).unique_count;
    sweep.unique_counts.push_back(u);
    ++histogram[u];
  }
  sweep.empirical_cdf.resize(t);
  std::size_t running = 0;
  for (std::size_t u = 1; u <= t; ++u) {
    running += histogram[u];
    sweep.empirical_cdf[u - 1] = static_cast<double>(running) / static_cast<double>(samples);
  }
  sweep.ks_distance = t >= 2 ? occupancy_cdf_vs_normal(t, sweep.unique_counts) : 0.0;
  return sweep;
}

ZetaCheck check_zeta_condition(const DataMatrix& data, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw DomainError("check_zeta_condition: k must be positive");
  const std::size_t n = data.n();
  ZetaCheck check;
  check.bound = (k - 1) * n;
  CorrelationAccumulator acc(n);
  std::size_t redraws = 0;
  for (std::size_t ordinal = 0; ordinal < k; ++ordinal) {
    Replicate rep = draw_replicate(data, seed, ordinal, kRedrawsPerReplicate * k);
    redraws += rep.redraws;
    if (redraws > kRedrawsPerReplicate * k) throw TooManyDegenerateRedraws(redraws, k);
    const std::size_t z = eigenvalues(rep.matrix).zero_count;
    check.zeta += z;
    check.zero_counts.push_back(z);
    check.unique_counts.push_back(rep.index.unique_count);
    acc.add(rep.matrix);
  }
  check.condition_holds = check.zeta <= check.bound;
  const PdVerdict verdict = is_positive_definite(acc.mean());
  check.pd_observed = verdict.positive_definite;
  check.smallest = verdict.smallest;
  return check;
}

}  // namespace bootcorr
