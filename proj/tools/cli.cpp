#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "bootcorr/corr.hpp"
#include "bootcorr/csv.hpp"
#include "bootcorr/kernels.hpp"
#include "bootcorr/occupancy.hpp"
#include "bootcorr/predictor.hpp"
#include "bootcorr/sim.hpp"
#include "bootcorr/spectral.hpp"

namespace bootcorr::cli {
namespace {

constexpr double kReferenceArgument = 1.82;

// Where a command sends its CSV and its key=value summary. Without --out the
// CSV takes stdout and the summary moves to stderr.
struct Sinks {
  std::ostream& csv;
  std::ostream& summary;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& out, std::ostream& err) : path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
    csv_ = path.empty() ? &out : &file_;
    summary_ = path.empty() ? &err : &out;
  }
  Sinks sinks() { return {*csv_, *summary_}; }
  void close() {
    if (!file_.is_open()) return;
    file_.flush();
    if (!file_) throw IoError("error writing '" + path_ + "'");
    file_.close();
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* csv_ = nullptr;
  std::ostream* summary_ = nullptr;
};

void kv(std::ostream& os, std::string_view key, double v) { os << key << '=' << format_double(v) << '\n'; }
void kv(std::ostream& os, std::string_view key, std::size_t v) { os << key << '=' << v << '\n'; }
void kv(std::ostream& os, std::string_view key, std::string_view v) { os << key << '=' << v << '\n'; }
void kv(std::ostream& os, std::string_view key, bool v) { os << key << '=' << (v ? "true" : "false") << '\n'; }

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct OccupancyArgs {
  std::size_t t = 0;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_occupancy(const OccupancyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.t < 2) throw DomainError("occupancy needs t >= 2 (sigma(1) = 0)");
  const OccupancyDistribution dist = occupancy_pmf(a.t);
  const Moments approx = approx_moments(a.t);
  const double sd = std::sqrt(dist.variance);
  std::optional<OccupancySweep> sweep;
  if (a.samples > 0) sweep = run_occupancy_sweep(a.t, a.samples, a.seed);

  Output output(a.out, out, err);
  auto [csv, summary] = output.sinks();
  csv << "u,exact_pmf,normal_cdf" << (sweep ? ",empirical_cdf" : "") << '\n';
  for (std::size_t u = 1; u <= a.t; ++u) {
    csv << u << ',' << format_double(dist.probability(u)) << ','
        << format_double(normal_cdf((static_cast<double>(u) - dist.mean) / sd));
    if (sweep) csv << ',' << format_double(sweep->empirical_cdf[u - 1]);
    csv << '\n';
  }
  output.close();

  kv(summary, "t", a.t);
  kv(summary, "exact_mean", dist.mean);
  kv(summary, "exact_variance", dist.variance);
  kv(summary, "approx_mean", approx.mean);
  kv(summary, "approx_variance", approx.variance);
  kv(summary, "samples", a.samples);
  if (sweep) {
    kv(summary, "seed", static_cast<std::size_t>(a.seed));
    kv(summary, "ks_distance", sweep->ks_distance);
  }
  return kOk;
}

struct PredictArgs {
  std::size_t n = 0;
  std::size_t t = 0;
  std::optional<double> k;
  std::optional<double> alpha;
  std::string moments = "exact";
};

int cmd_predict(const PredictArgs& a, std::ostream& out) {
  if (a.n < 1 || a.t < 2) throw DomainError("predict needs n >= 1 and t >= 2");
  const MomentSource source = a.moments == "approx" ? MomentSource::approximate : MomentSource::exact;
  kv(out, "n", a.n);
  kv(out, "t", a.t);
  kv(out, "moments", a.moments);
  if (a.k) {
    kv(out, "k", *a.k);
    kv(out, "erf_argument", pd_erf_argument(a.n, a.t, *a.k, source));
    kv(out, "prob_pd", prob_pd(a.n, a.t, *a.k, source));
    return kOk;
  }
  const double arg = argument_for_alpha(*a.alpha);
  const BootstrapBudget b = bootstrap_budget(a.n, a.t, arg, source);
  kv(out, "alpha", *a.alpha);
  kv(out, "a", arg);
  kv(out, "k_plus", b.k_plus);
  kv(out, "k_plus_ceil", std::ceil(b.k_plus));
  kv(out, "k_star", b.k_star);
  kv(out, "k_limit", b.k_limit);
  kv(out, "k_upper", b.k_upper);
  kv(out, "recommended_k", b.recommended);
  return kOk;
}

struct RegularizeArgs {
  std::string input;
  std::optional<std::size_t> k;
  bool auto_k = false;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  std::string out;
  bool transpose = false;
  unsigned threads = 1;
};

int cmd_regularize(const RegularizeArgs& a, std::ostream& out, std::ostream& err) {
  CsvMatrixFile file = read_csv_matrix(a.input);
  std::vector<std::string> labels = a.transpose ? file.header : file.row_labels;
  const DataMatrix data(a.transpose ? file.values.transposed() : std::move(file.values),
                        std::move(labels));

  std::size_t k = 0;
  if (a.auto_k) {
    k = bootstrap_budget(data.n(), data.t(), argument_for_alpha(a.alpha)).recommended;
  } else {
    k = *a.k;
    if (k < 1) throw DomainError("--k must be at least 1");
  }

  const BootstrapAverage avg = average_correlation(data, k, a.seed, a.threads);
  const Spectrum spectrum = eigenvalues(avg.matrix);
  const bool pd = spectrum.smallest > spectrum.zero_tolerance;

  Output output(a.out, out, err);
  auto [csv, summary] = output.sinks();
  CsvMatrixFile result;
  result.values = avg.matrix.values;
  if (!data.row_labels().empty()) {
    result.header = data.row_labels();
    result.row_labels = data.row_labels();
  }
  write_csv_matrix(csv, result);
  output.close();

  kv(summary, "n", data.n());
  kv(summary, "t", data.t());
  kv(summary, "k", k);
  kv(summary, "auto_k", a.auto_k);
  kv(summary, "seed", static_cast<std::size_t>(a.seed));
  kv(summary, "smallest_eigenvalue", spectrum.smallest);
  kv(summary, "zero_tolerance", spectrum.zero_tolerance);
  kv(summary, "positive_definite", pd);
  kv(summary, "degenerate_redraws", avg.redraws);
  return pd ? kOk : kNotPositiveDefinite;
}

struct SimulateArgs {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t k_min = 1;
  std::size_t k_max = 0;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = default_threads();
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.k_min < 1 || a.k_max < a.k_min) throw DomainError("need 1 <= k-min <= k-max");
  SimulationConfig config;
  config.n = a.n;
  config.t = a.t;
  for (std::size_t k = a.k_min; k <= a.k_max; ++k) config.k_values.push_back(k);
  config.trials = a.trials;
  config.seed = a.seed;
  config.threads = a.threads;
  config.validate();
  const SimulationReport report = run_pd_sweep(config);

  Output output(a.out, out, err);
  auto [csv, summary] = output.sinks();
  csv << "k,empirical_pd_frequency,predicted_prob,mean_lambda0,redraws\n";
  for (const PdRecord& r : report.per_k)
    csv << r.k << ',' << format_double(r.empirical_pd_frequency) << ','
        << format_double(r.predicted) << ',' << format_double(r.mean_lambda0) << ',' << r.redraws
        << '\n';
  output.close();

  const double q = static_cast<double>(a.n) / static_cast<double>(a.t);
  kv(summary, "n", a.n);
  kv(summary, "t", a.t);
  kv(summary, "trials", a.trials);
  kv(summary, "seed", static_cast<std::size_t>(a.seed));
  kv(summary, "a", kReferenceArgument);
  kv(summary, "k_plus", k_plus(a.n, a.t, kReferenceArgument));
  kv(summary, "k_star", k_star(static_cast<double>(a.n), q));
  kv(summary, "k_limit", k_limit(q));
  kv(summary, "elapsed_seconds", report.elapsed.count());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bootstrap-averaged correlation matrices: regularisation and PD predictions",
               "bootcorr"};
  app.require_subcommand(1);
  std::string kernels_opt = "auto";
  app.add_option("--kernels", kernels_opt, "Kernel ISA: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  OccupancyArgs occ;
  auto* occupancy = app.add_subcommand("occupancy", "Exact unique-count PMF against its normal approximation");
  occupancy->add_option("t", occ.t, "Number of features")->required();
  occupancy->add_option("--samples", occ.samples, "Monte Carlo draws (0 disables the empirical column)");
  occupancy->add_option("--seed", occ.seed, "Random seed");
  occupancy->add_option("--out", occ.out, "CSV output path (default: stdout)");

  PredictArgs pred;
  auto* predict = app.add_subcommand("predict", "Analytic probability and bootstrap budget");
  predict->add_option("--n", pred.n, "Number of objects")->required();
  predict->add_option("--t", pred.t, "Number of features")->required();
  auto* k_opt = predict->add_option("--k", pred.k, "Replicate count (real allowed)");
  auto* alpha_opt = predict->add_option("--alpha", pred.alpha, "Tail probability alpha");
  k_opt->excludes(alpha_opt);
  predict->add_option("--moments", pred.moments, "exact or approx")
      ->check(CLI::IsMember({"exact", "approx"}));

  RegularizeArgs reg;
  auto* regularize = app.add_subcommand("regularize", "Average k bootstrap correlation matrices of a CSV");
  regularize->add_option("input", reg.input, "Input CSV (rows = objects)")->required()->check(CLI::ExistingFile);
  auto* reg_k = regularize->add_option("--k", reg.k, "Number of bootstrap replicates");
  auto* reg_auto = regularize->add_flag("--auto-k", reg.auto_k, "k = min(ceil(k_plus), n)");
  reg_k->excludes(reg_auto);
  regularize->add_option("--alpha", reg.alpha, "Tail probability for --auto-k")
      ->check(CLI::Range(0.0, 1.0));
  regularize->add_option("--seed", reg.seed, "Random seed");
  regularize->add_option("--out", reg.out, "CSV output path (default: stdout)");
  regularize->add_flag("--transpose", reg.transpose, "Input rows are features, columns objects");
  regularize->add_option("--threads", reg.threads, "Worker threads")->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo PD frequency sweep over k");
  simulate->add_option("--n", sim.n, "Number of objects")->required();
  simulate->add_option("--t", sim.t, "Number of features")->required();
  simulate->add_option("--k-min", sim.k_min, "Smallest k");
  simulate->add_option("--k-max", sim.k_max, "Largest k")->required();
  simulate->add_option("--trials", sim.trials, "Trials per k");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--out", sim.out, "CSV output path (default: stdout)");
  simulate->add_option("--threads", sim.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (predict->parsed() && !pred.k && !pred.alpha)
      throw CLI::RequiredError("predict needs exactly one of --k or --alpha");
    if (regularize->parsed() && !reg.k && !reg.auto_k)
      throw CLI::RequiredError("regularize needs --k or --auto-k");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    std::optional<kernels::ScopedIsa> isa;
    if (kernels_opt == "scalar") isa.emplace(kernels::Isa::scalar);
    if (kernels_opt == "avx2") isa.emplace(kernels::Isa::avx2);
    if (occupancy->parsed()) return cmd_occupancy(occ, out, err);
    if (predict->parsed()) return cmd_predict(pred, out);
    if (regularize->parsed()) return cmd_regularize(reg, out, err);
    return cmd_simulate(sim, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const TooManyDegenerateRedraws& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace bootcorr::cli
