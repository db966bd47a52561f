#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles/normal_equations.hpp"
#include "sbsflow/causality.hpp"
#include "sbsflow/stats.hpp"
#include "support.hpp"

using namespace sbsflow;

namespace {

using Series = std::vector<double>;

Series noise(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z(0.0, 1.0);
  Series s(n);
  for (auto& v : s) v = z(rng);
  return s;
}

// y_t = a*y_{t-1} + b*x_{t-lag} + e_t
Series driven(std::mt19937_64& rng, const Series& x, double a, double b, std::size_t lag) {
  std::normal_distribution<double> z(0.0, 1.0);
  Series y(x.size(), 0.0);
  for (std::size_t t = 1; t < x.size(); ++t) y[t] = a * y[t - 1] + (t >= lag ? b * x[t - lag] : 0.0) + z(rng);
  return y;
}

Series affine(const Series& s, double a, double b) {
  Series out;
  for (double v : s) out.push_back(a * v + b);
  return out;
}

struct GridPoint {
  double f, d1, d2, tail;
};

std::vector<GridPoint> f_grid() {
  std::ifstream in(testing::data("f_tail_grid.txt"));
  std::vector<GridPoint> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream s(line);
    GridPoint p{};
    s >> p.f >> p.d1 >> p.d2 >> p.tail;
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("ols exact fit") {
  Eigen::MatrixXd x(20, 2);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = 1;
    x(i, 1) = 0.37 * i - 2;
    y(i) = 1.5 - 2.25 * x(i, 1);
  }
  auto fit = ols_fit(x, y);
  CHECK(fit.rss < 1e-18);
  CHECK(std::abs(fit.coefficients(0) - 1.5) < 1e-9);
  CHECK(std::abs(fit.coefficients(1) + 2.25) < 1e-9);
  CHECK(fit.t_effective == 20);
  CHECK(fit.k == 2);
}

TEST_CASE("ols intercept only") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(6, 1);
  Eigen::VectorXd y(6);
  y << 1, 4, 2, 8, 5, 7;
  auto fit = ols_fit(x, y);
  CHECK(std::abs(fit.rss - (y.array() - y.mean()).square().sum()) < 1e-12);
}

TEST_CASE("ols matches the normal-equations oracle") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd x(50, 4);
    Eigen::VectorXd y(50);
    for (int i = 0; i < 50; ++i) {
      x(i, 0) = 1;
      for (int j = 1; j < 4; ++j) x(i, j) = z(rng);
      y(i) = z(rng);
    }
    auto fit = ols_fit(x, y);
    auto ref = oracle::normal_equations(x, y);
    CHECK((fit.coefficients - ref).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(fit.rss - (y - x * ref).squaredNorm()) < 1e-8);
  }
}

TEST_CASE("ols rank deficiency names the offending columns") {
  Eigen::MatrixXd x(10, 3);
  Eigen::VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    x(i, 0) = 1;
    x(i, 1) = i;
    x(i, 2) = 2 * i + 1;
    y(i) = i % 3;
  }
  try {
    ols_fit(x, y);
    FAIL("expected rank deficiency");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  CHECK_THROWS_AS(ols_fit(Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(2)), NumericError);
}

TEST_CASE("f_upper_tail reference points") {
  CHECK(f_upper_tail(0, 3, 10) == 1.0);
  CHECK(std::abs(f_upper_tail(4.9646, 1, 10) - 0.05) < 5e-4);
  CHECK(std::abs(f_upper_tail(3.4928, 2, 20) - 0.05) < 5e-4);
}

TEST_CASE("f_upper_tail matches the high-precision grid") {
  auto grid = f_grid();
  REQUIRE(grid.size() == 50);
  for (const auto& p : grid) CHECK(std::abs(f_upper_tail(p.f, p.d1, p.d2) - p.tail) <= 1e-8);
}

TEST_CASE("invariant: causality: chi-square limit") {
  for (double d1 = 1; d1 <= 10; d1 += 1) {
    for (double q : {0.1, 0.5, 1.0, 1.7, 2.5, 4.0, 8.0}) {
      CHECK(std::abs(f_upper_tail(q, d1, 1e6) - chi2_upper_tail(d1 * q, d1)) <= 1e-4);
    }
  }
}

TEST_CASE("invariant: causality: stars function") {
  CHECK(stars(0.2) == "");
  CHECK(stars(0.10) == "");
  CHECK(stars(0.0999) == "*");
  CHECK(stars(0.05) == "*");
  CHECK(stars(0.0499) == "**");
  CHECK(stars(0.01) == "**");
  CHECK(stars(0.0099) == "***");
  CHECK(stars(0.0) == "***");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = u(rng) * u(rng);
    const auto s = stars(p);
    CHECK((s.empty() == (p >= 0.10)));
    CHECK((s == "*") == (p >= 0.05 && p < 0.10));
    CHECK((s == "**") == (p >= 0.01 && p < 0.05));
    CHECK((s == "***") == (p < 0.01));
  }
}

TEST_CASE("lag selection") {
  std::mt19937_64 rng(7);
  auto x = noise(rng, 100), y = noise(rng, 100);
  CHECK(select_lag_bic(y, x, 1) == 1);
  CHECK_THROWS_AS(select_lag_bic(Series(20, 0.0), Series(20, 0.0), 8), PairError);

  // Independent white noise: parsimony wins in most seeds.
  int ones = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 r(1000 + static_cast<std::uint64_t>(seed));
    auto a = noise(r, 500), b = noise(r, 500);
    ones += select_lag_bic(a, b, 8) == 1;
  }
  CHECK(ones > 50);
}

TEST_CASE("granger test on a driven pair and on degenerate input") {
  std::mt19937_64 rng(11);
  auto x = noise(rng, 300);
  auto y = driven(rng, x, 0.5, 0.8, 1);
  auto core = granger_test(y, x, 1);
  CHECK(core.p_value < 0.01);
  CHECK(core.df1 == 1);
  CHECK(core.df2 == 299 - 3);

  Series lagged(300, 0.0);
  for (std::size_t t = 1; t < 300; ++t) lagged[t] = x[t - 1];
  try {
    granger_test(lagged, x, 1);
    FAIL("expected a degenerate fit");
  } catch (const PairError& e) {
    CHECK(e.status() == PairStatus::DegenerateFit);
  }
  try {
    granger_test(Series(300, 1.0), x, 1);
    FAIL("expected a constant series error");
  } catch (const PairError& e) {
    CHECK(e.status() == PairStatus::ConstantSeries);
  }
}

TEST_CASE("cross-correlation sign") {
  std::mt19937_64 rng(13);
  auto x = noise(rng, 200);
  auto same = cross_correlation_sign(x, x, 8);
  CHECK(same.sign == '+');
  CHECK(same.lag == 0);
  CHECK(std::abs(same.r - 1) < 1e-12);
  auto flip = cross_correlation_sign(affine(x, -1, 0), x, 8);
  CHECK(flip.sign == '-');
  CHECK(flip.lag == 0);
  CHECK(std::abs(flip.r + 1) < 1e-12);

  std::normal_distribution<double> small(0.0, 0.05);
  Series y(200, 0.0);
  for (std::size_t t = 3; t < 200; ++t) y[t] = x[t - 3] + small(rng);
  auto shifted = cross_correlation_sign(y, x, 8);
  CHECK(shifted.sign == '+');
  CHECK(shifted.lag == 3);

  // Direct per-lag correlation agrees with the reported coefficient.
  const std::size_t l = shifted.lag, n = 200 - l;
  double mx = 0, my = 0;
  for (std::size_t t = l; t < 200; ++t) mx += x[t - l], my += y[t];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t t = l; t < 200; ++t) {
    sxy += (x[t - l] - mx) * (y[t] - my);
    sxx += (x[t - l] - mx) * (x[t - l] - mx);
    syy += (y[t] - my) * (y[t] - my);
  }
  CHECK(std::abs(shifted.r - sxy / std::sqrt(sxx * syy)) < 1e-12);

  CHECK_THROWS_AS(cross_correlation_sign(x, Series(200, 2.0), 8), PairError);
  CHECK_THROWS_AS(cross_correlation_sign(Series(x.begin(), x.begin() + 20), Series(x.begin(), x.begin() + 20), 5),
                  NumericError);
}

TEST_CASE("battery shape, ordering and status flags") {
  std::mt19937_64 rng(17);
  std::vector<WeeklySeries> keywords, targets;
  keywords.push_back({"k1", 0, noise(rng, 60)});
  keywords.push_back({"flat", 0, Series(60, 0.5)});
  targets.push_back({"t1", 2, noise(rng, 58)});
  targets.push_back({"t2", 0, noise(rng, 60)});
  targets.push_back({"t3", 0, noise(rng, 61)});

  auto one = run_battery({keywords[0]}, {targets[1]});
  CHECK(one.size() == 1);

  auto r = run_battery(keywords, targets);
  REQUIRE(r.size() == 6);
  CHECK(r[0].keyword == "k1");
  CHECK(r[0].target == "t1");
  CHECK(r[2].target == "t3");
  CHECK(r[3].keyword == "flat");
  CHECK(r[0].observations == 58);  // windows 2..59
  CHECK(r[3].status == PairStatus::ConstantSeries);
  CHECK(r[3].stars.empty());
  CHECK(r[0].status == PairStatus::Ok);

  BatteryOptions rev;
  rev.reverse = true;
  rev.workers = 4;
  auto both = run_battery(keywords, targets, rev);
  REQUIRE(both.size() == 12);
  CHECK(!both[0].reverse);
  CHECK(both[6].reverse);
  CHECK(both[6].keyword == "k1");

  BatteryOptions diff;
  diff.difference = true;
  CHECK(run_battery(keywords, targets, diff)[0].observations == 57);

  CHECK_THROWS_AS(run_battery({{"a", 0, noise(rng, 10)}}, {{"b", 20, noise(rng, 10)}}), InputError);
  CHECK(run_battery({{"a", 0, noise(rng, 10)}}, {{"b", 0, noise(rng, 10)}})[0].status == PairStatus::InsufficientData);
}

TEST_CASE("planted lag-1 pair earns three stars") {
  int hits = 0, decoys = 0;
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(500 + static_cast<std::uint64_t>(seed));
    auto sbs = noise(rng, 150), decoy = noise(rng, 150);
    Series target(150, 0.0);
    std::normal_distribution<double> e(0.0, 0.5);
    for (std::size_t t = 1; t < 150; ++t) target[t] = 0.9 * sbs[t - 1] + e(rng);
    auto r = run_battery({{"planted", 0, sbs}, {"decoy", 0, decoy}}, {{"target", 0, target}});
    hits += r[0].stars == "***" && r[0].cc_sign == '+' && r[0].cc_lag == 1;
    decoys += !r[1].stars.empty();
  }
  CHECK(hits == 50);
  CHECK(decoys <= 10);
}

TEST_CASE("invariant: causality: F non-negativity") {
  for (int seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(2000 + static_cast<std::uint64_t>(seed));
    auto x = noise(rng, 80), y = noise(rng, 80);
    for (std::size_t p = 1; p <= 4; ++p) {
      auto c = granger_test(y, x, p);
      CHECK(c.rss_restricted >= c.rss_unrestricted);
      CHECK(c.f_stat >= 0);
      CHECK(std::isfinite(c.f_stat));
      CHECK(c.p_value >= 0);
      CHECK(c.p_value <= 1);
    }
  }
}

TEST_CASE("invariant: causality: nesting identity") {
  for (double d1 : {1.0, 2.0, 5.0, 8.0}) {
    for (double d2 : {5.0, 30.0, 200.0}) {
      double prev = 1.0;
      for (double f = 0.0; f <= 30.0; f += 0.05) {
        const double p = f_upper_tail(f, d1, d2);
        CHECK(p <= prev);
        prev = p;
      }
    }
  }
  // Across pairs tested with the same lag and sample, larger F means smaller p.
  std::vector<GrangerCore> cores;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(3000 + static_cast<std::uint64_t>(seed));
    auto x = noise(rng, 100), y = driven(rng, x, 0.3, 0.2 * (seed % 3), 1);
    cores.push_back(granger_test(y, x, 2));
  }
  for (const auto& a : cores) {
    for (const auto& b : cores) {
      if (a.f_stat > b.f_stat) CHECK(a.p_value <= b.p_value);
    }
  }
}

TEST_CASE("invariant: causality: scale invariance") {
  std::uniform_real_distribution<double> mag(0.01, 100.0), shift(-1000.0, 1000.0);
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(4000 + static_cast<std::uint64_t>(seed));
    auto x = noise(rng, 120);
    auto y = driven(rng, x, 0.4, 0.3, 1 + seed % 3);
    BatteryOptions opt;
    opt.p_max = 4;
    auto base = test_pair(y, x, opt);
    REQUIRE(base.status == PairStatus::Ok);
    for (double sign : {1.0, -1.0}) {
      const double a = sign * mag(rng), b = shift(rng);
      auto ry = test_pair(affine(y, a, b), x, opt);
      auto rx = test_pair(y, affine(x, a, b), opt);
      for (const auto* r : {&ry, &rx}) {
        CHECK(r->lags == base.lags);
        CHECK(std::abs(r->f_stat - base.f_stat) <= 1e-8 * std::max(1.0, base.f_stat));
        CHECK(std::abs(r->p_value - base.p_value) <= 1e-8);
        CHECK(r->cc_sign == (sign > 0 ? base.cc_sign : (base.cc_sign == '+' ? '-' : '+')));
      }
    }
  }
}
