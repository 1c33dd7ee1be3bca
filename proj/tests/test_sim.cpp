#include <doctest.h>

#include <cmath>

#include "bootcorr/error.hpp"
#include "bootcorr/occupancy.hpp"
#include "bootcorr/predictor.hpp"
#include "bootcorr/sim.hpp"
#include "bootcorr/spectral.hpp"

using namespace bootcorr;

namespace {

SimulationConfig make_config(std::size_t n, std::size_t t, std::size_t k_min, std::size_t k_max,
                             std::size_t trials, std::uint64_t seed) {
  SimulationConfig c;
  c.n = n;
  c.t = t;
  for (std::size_t k = k_min; k <= k_max; ++k) c.k_values.push_back(k);
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("generate_data") {
  CHECK(generate_data(5, 7, 1).values() == generate_data(5, 7, 1).values());
  CHECK(generate_data(5, 7, 1).values() != generate_data(5, 7, 2).values());
  CHECK_THROWS_AS(generate_data(1, 7, 1), DomainError);

  const auto big = generate_data(1000, 1000, 3);
  double sum = 0.0, sq = 0.0;
  for (const double v : big.values().flat()) sum += v, sq += v * v;
  const double count = 1e6;
  const double mean = sum / count;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(count));
  CHECK(std::abs(sq / count - mean * mean - 1.0) <= 0.02);
}

TEST_CASE("SimulationConfig validation") {
  auto c = make_config(10, 5, 1, 5, 3, 0);
  CHECK_NOTHROW(c.validate());
  c.k_values = {};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.k_values = {3, 3};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.k_values = {0, 1};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.k_values = {1, 41};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.k_values = {1, 40};
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("run_pd_sweep") {
  SUBCASE("t >> n is positive definite from k = 1") {
    const auto r = run_pd_sweep(make_config(10, 200, 1, 5, 30, 4));
    for (const auto& rec : r.per_k) CHECK(rec.empirical_pd_frequency == 1.0);
  }
  SUBCASE("one trial yields 0/1 frequencies") {
    const auto r = run_pd_sweep(make_config(30, 6, 1, 12, 1, 9));
    REQUIRE(r.per_k.size() == 12);
    for (const auto& rec : r.per_k)
      CHECK((rec.empirical_pd_frequency == 0.0 || rec.empirical_pd_frequency == 1.0));
  }
  SUBCASE("reports are identical across runs and thread counts") {
    auto c = make_config(25, 5, 2, 14, 24, 77);
    const auto a = run_pd_sweep(c);
    c.threads = 4;
    const auto b = run_pd_sweep(c);
    CHECK(a.per_k == b.per_k);
    CHECK(run_pd_sweep(c).per_k == a.per_k);
  }
  SUBCASE("frequency is nondecreasing in k and reaches 1 at k = n") {
    const std::size_t trials = 100;
    const auto r = run_pd_sweep(make_config(20, 5, 1, 20, trials, 5));
    for (std::size_t i = 1; i < r.per_k.size(); ++i)
      CHECK(r.per_k[i].empirical_pd_frequency >=
            r.per_k[i - 1].empirical_pd_frequency - 2.0 / std::sqrt(double(trials)));
    CHECK(r.per_k.back().empirical_pd_frequency == 1.0);
    for (const auto& rec : r.per_k) CHECK(rec.predicted == prob_pd(20, 5, double(rec.k)));
  }
}

TEST_CASE("a sweep trial reproduces average_correlation exactly") {
  // Trial 0 of the sweep uses data seed derive(seed, {0, 0}) and replicate key derive(seed, {0, 1}).
  const std::uint64_t seed = 12;
  const auto data = generate_data(15, 4, derive_seed(seed, {0, 0}));
  auto config = make_config(15, 4, 7, 7, 1, seed);
  const auto report = run_pd_sweep(config);
  const auto avg = average_correlation(data, 7, derive_seed(seed, {0, 1}));
  const auto verdict = is_positive_definite(avg.matrix);
  CHECK(report.per_k[0].mean_lambda0 == verdict.smallest);
  CHECK(report.per_k[0].empirical_pd_frequency == (verdict.positive_definite ? 1.0 : 0.0));
  CHECK(report.per_k[0].redraws == avg.redraws);
}

TEST_CASE("run_occupancy_sweep") {
  const auto one = run_occupancy_sweep(30, 1, 2);
  REQUIRE(one.unique_counts.size() == 1);
  const std::size_t u = one.unique_counts[0];
  for (std::size_t v = 1; v <= 30; ++v) CHECK(one.empirical_cdf[v - 1] == (v >= u ? 1.0 : 0.0));

  const auto two = run_occupancy_sweep(2, 100000, 6);
  CHECK(std::abs(two.empirical_cdf[0] - 0.5) <= 0.005);

  const auto hundred = run_occupancy_sweep(100, 10000, 7);
  CHECK(hundred.ks_distance < 0.05);
  CHECK(run_occupancy_sweep(100, 500, 7).unique_counts == run_occupancy_sweep(100, 500, 7).unique_counts);
  CHECK_THROWS_AS(run_occupancy_sweep(10, 0, 1), DomainError);
}

TEST_CASE("check_zeta_condition") {
  SUBCASE("k = 1 is the full-rank test of a single replicate") {
    const auto small_t = generate_data(8, 4, 1);
    const auto z1 = check_zeta_condition(small_t, 1, 3);
    CHECK(z1.bound == 0);
    CHECK(z1.zeta > 0);
    CHECK_FALSE(z1.condition_holds);
    CHECK_FALSE(z1.pd_observed);

    const auto wide = generate_data(5, 60, 1);
    const auto z2 = check_zeta_condition(wide, 1, 3);
    CHECK(z2.zeta == 0);
    CHECK(z2.condition_holds);
    CHECK(z2.pd_observed);
  }
  SUBCASE("replicate zero counts follow the unique counts, and the mean matches average_correlation") {
    const auto data = generate_data(30, 8, 2);
    const auto z = check_zeta_condition(data, 6, 41);
    REQUIRE(z.zero_counts.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(z.zero_counts[i] == zero_count(30, z.unique_counts[i]));
    const auto avg = average_correlation(data, 6, 41);
    CHECK(z.unique_counts == avg.unique_counts);
    CHECK(z.smallest == is_positive_definite(avg.matrix).smallest);
  }
}
