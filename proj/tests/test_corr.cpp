#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

#include "bootcorr/corr.hpp"
#include "bootcorr/error.hpp"
#include "bootcorr/occupancy.hpp"
#include "bootcorr/sim.hpp"
#include "bootcorr/spectral.hpp"
#include "oracles.hpp"

using namespace bootcorr;

namespace {

void check_correlation_invariants(const CorrelationMatrix& c) {
  const std::size_t n = c.n();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(c.values(i, i) - 1.0) <= 1e-12);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(c.values(i, j) - c.values(j, i)) <= 1e-12);
      CHECK(std::abs(c.values(i, j)) <= 1.0 + 1e-12);
    }
  }
  const auto ev = oracle::eigen_eigenvalues(c.values);
  CHECK(ev.front() >= -1e-9);
}

}  // namespace

TEST_CASE("DataMatrix validation") {
  CHECK_THROWS_AS(DataMatrix(Matrix(1, 5, 1.0)), DomainError);
  CHECK_THROWS_AS(DataMatrix(Matrix(3, 1, 1.0)), DomainError);
  Matrix m(2, 3);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
  m(1, 0) = m(1, 1) = m(1, 2) = 4;
  try {
    DataMatrix d(m);
    FAIL("constant row accepted");
  } catch (const ZeroVarianceRow& e) {
    CHECK(e.row() == 1);
  }
  m(1, 2) = NAN;
  CHECK_THROWS_AS(DataMatrix{m}, DomainError);
  m(1, 2) = 5;
  CHECK_THROWS_AS(DataMatrix(m, {"only one label"}), DomainError);
}

TEST_CASE("pearson examples") {
  Matrix x(3, 4);
  const double r0[] = {1.0, 3.0, 2.0, 7.0}, r2[] = {0.5, -1.0, 4.0, 2.0};
  for (std::size_t j = 0; j < 4; ++j) x(0, j) = r0[j], x(1, j) = r0[j], x(2, j) = r2[j];
  CHECK(std::abs(pearson(DataMatrix(x)).values(0, 1) - 1.0) <= 1e-15);
  for (std::size_t j = 0; j < 4; ++j) x(1, j) = -r0[j];
  CHECK(std::abs(pearson(DataMatrix(x)).values(0, 1) + 1.0) <= 1e-15);

  const DataMatrix g = generate_data(3, 4, 99);
  const auto c = pearson(g);
  const auto ref = oracle::textbook_pearson(g.values());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(c.values(i, j) - ref(i, j)) <= 1e-12);
  CHECK(c.source == CorrelationSource::plain);
}

TEST_CASE("pearson and bootstrap replicates satisfy correlation invariants") {
  Stream pick(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + pick.uniform_index(30);
    const std::size_t t = 2 + pick.uniform_index(30);
    CAPTURE(n);
    CAPTURE(t);
    const DataMatrix data = generate_data(n, t, 1000 + trial);
    const auto c = pearson(data);
    check_correlation_invariants(c);
    CHECK(eigenvalues(c).zero_count == (n + 1 > t ? n + 1 - t : 0));
    const auto rep = draw_replicate(data, trial, 0, 1000);
    check_correlation_invariants(rep.matrix);
  }
}

TEST_CASE("draw_bootstrap_index") {
  Stream s1(7);
  const auto one = draw_bootstrap_index(1, s1);
  CHECK(one.indices == std::vector<std::size_t>{0});
  CHECK(one.unique_count == 1);

  Stream a(123), b(123);
  const auto ia = draw_bootstrap_index(50, a), ib = draw_bootstrap_index(50, b);
  CHECK(ia.indices == ib.indices);
  for (const auto j : ia.indices) CHECK(j < 50);
  CHECK(ia.unique_count == std::set<std::size_t>(ia.indices.begin(), ia.indices.end()).size());

  Stream s(8);
  double sum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) sum += static_cast<double>(draw_bootstrap_index(100, s).unique_count);
  const auto m = exact_moments(100);
  CHECK(std::abs(sum / draws - m.mean) <= 4.0 * std::sqrt(m.variance) / 100.0);
}

TEST_CASE("bootstrap_replicate") {
  const DataMatrix data = generate_data(40, 15, 17);
  SUBCASE("identity index reproduces pearson exactly") {
    BootstrapIndex id;
    for (std::size_t j = 0; j < 15; ++j) id.indices.push_back(j);
    id.unique_count = 15;
    CHECK(bootstrap_replicate(data, id).values == pearson(data).values);
  }
  SUBCASE("replicate rank follows the unique count") {
    Stream s(5);
    for (int i = 0; i < 20; ++i) {
      const auto idx = draw_bootstrap_index(15, s);
      if (idx.unique_count < 2) continue;
      CHECK(eigenvalues(bootstrap_replicate(data, idx)).zero_count ==
            zero_count(40, idx.unique_count));
    }
  }
  SUBCASE("a single repeated column is degenerate") {
    BootstrapIndex zeros{std::vector<std::size_t>(15, 0), 1};
    CHECK_THROWS_AS(bootstrap_replicate(data, zeros), ZeroVarianceRow);
  }
  SUBCASE("index length must match") {
    BootstrapIndex short_index{{0, 1}, 2};
    CHECK_THROWS_AS(bootstrap_replicate(data, short_index), DomainError);
  }
}

TEST_CASE("average_correlation") {
  const DataMatrix data = generate_data(12, 6, 3);
  SUBCASE("k = 1 is one replicate") {
    const auto avg = average_correlation(data, 1, 77);
    const auto rep = draw_replicate(data, 77, 0, 100);
    CHECK(avg.matrix.values == rep.matrix.values);
    CHECK(avg.matrix.k == 1);
    CHECK(avg.unique_counts == std::vector<std::size_t>{rep.index.unique_count});
  }
  SUBCASE("invariants and bit-identical results across thread counts") {
    const auto serial = average_correlation(data, 9, 4, 1);
    check_correlation_invariants(serial.matrix);
    CHECK(serial.matrix.k == 9);
    CHECK(serial.unique_counts.size() == 9);
    for (unsigned threads : {2u, 3u, 8u}) {
      const auto par = average_correlation(data, 9, 4, threads);
      CHECK(par.matrix.values == serial.matrix.values);
      CHECK(par.unique_counts == serial.unique_counts);
      CHECK(par.redraws == serial.redraws);
    }
    CHECK(average_correlation(data, 9, 4).matrix.values == serial.matrix.values);
    CHECK(average_correlation(data, 9, 5).matrix.values != serial.matrix.values);
  }
  SUBCASE("k = 0 is rejected") { CHECK_THROWS_AS(average_correlation(data, 0, 1), DomainError); }
}

TEST_CASE("degenerate replicates are redrawn and counted") {
  // Binary rows: some resamples make a row constant.
  Matrix x(3, 3);
  const double v[3][3] = {{0, 0, 1}, {1, 0, 0}, {0, 1, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = v[i][j];
  const DataMatrix data(x);
  const auto avg = average_correlation(data, 200, 9);
  CHECK(avg.redraws > 0);
  for (const auto u : avg.unique_counts) CHECK(u >= 2);
  check_correlation_invariants(avg.matrix);
}

TEST_CASE("too many degenerate redraws") {
  // Row i is the indicator of column i, so a replicate is valid only when all
  // 7 columns are drawn: probability 7!/7^7 ~ 0.006, about 160 redraws per
  // success, beyond the budget of 100 per replicate.
  const DataMatrix data(Matrix::identity(7));
  try {
    average_correlation(data, 20, 1);
    FAIL("expected TooManyDegenerateRedraws");
  } catch (const TooManyDegenerateRedraws& e) {
    CHECK(e.redraws() > 100 * 20);
  }
}

TEST_CASE("k = n replicates give a positive definite mean") {
  int pd = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DataMatrix data = generate_data(50, 25, derive_seed(31, {static_cast<std::uint64_t>(trial)}));
    pd += is_positive_definite(average_correlation(data, 50, trial).matrix).positive_definite;
  }
  CHECK(pd >= 999);
}

TEST_CASE("replicate unique counts follow the occupancy distribution") {
  const std::size_t t = 10;
  const DataMatrix data = generate_data(3, t, 12);
  std::vector<double> observed(t + 1, 0.0);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) observed[draw_replicate(data, 5150, i, 100).index.unique_count] += 1;

  // Redraws reject u = 1 (and rarely others), so compare against the PMF
  // conditioned on u >= 2.
  const auto pmf = occupancy_pmf(t);
  const double mass = 1.0 - pmf.probability(1);
  double chi2 = 0.0, pooled_obs = 0.0, pooled_exp = 0.0;
  int bins = 0;
  for (std::size_t u = 2; u <= t; ++u) {
    pooled_obs += observed[u];
    pooled_exp += draws * pmf.probability(u) / mass;
    if (pooled_exp >= 5.0) {
      chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
      pooled_obs = pooled_exp = 0.0;
      ++bins;
    }
  }
  const boost::math::chi_squared dist(bins - 1);
  CHECK(chi2 < boost::math::quantile(dist, 0.99));
}

TEST_CASE("CorrelationAccumulator keeps an exact unit diagonal") {
  const DataMatrix data = generate_data(7, 5, 1);
  CorrelationAccumulator acc(7);
  for (std::size_t k = 0; k < 49; ++k) acc.add(draw_replicate(data, 2, k, 100).matrix);
  const auto mean = acc.mean();
  for (std::size_t i = 0; i < 7; ++i) CHECK(mean.values(i, i) == 1.0);
  CHECK(mean.values == mean.values.transposed());
  CHECK_THROWS_AS(CorrelationAccumulator(3).mean(), DomainError);
}
