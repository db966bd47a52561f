#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles/dense_spline.hpp"
#include "sbsflow/error.hpp"
#include "sbsflow/series.hpp"
#include "support.hpp"

using namespace sbsflow;

namespace {

std::vector<MonthlySeries> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_monthly(in, "m.csv");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::vector<TimeWindow> weeks(const char* start, int count) {
  const Date s = *parse_date(start);
  return make_windows(s, s + std::chrono::days(7 * count));
}

MonthlySeries monthly(const std::string& name, YearMonth start, std::vector<double> values) {
  return MonthlySeries{name, start, std::move(values)};
}

}  // namespace

TEST_CASE("load monthly series") {
  auto s = parse("month,climate,personal\n2017-01,110.2,105\n2017-02,111.5,104.5\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "climate");
  CHECK(s[0].size() == 2);
  CHECK(s[1].values == std::vector<double>{105, 104.5});
  CHECK(s[0].month(1) == YearMonth{2017, 2});
}

TEST_CASE("monthly file errors carry locations") {
  CHECK(error_of("month,a\n2017-01,1\n2017-03,2\n").find("m.csv:3") != std::string::npos);
  CHECK(error_of("month,a\n2017-01,1\n2017-03,2\n").find("gap") != std::string::npos);
  CHECK(error_of("month,a\n2017-01,1\n2017-01,2\n").find("duplicate") != std::string::npos);
  CHECK(error_of("month,a\n2017-02,1\n2017-01,2\n").find("order") != std::string::npos);
  CHECK(error_of("month,a\n2017-01,x\n").find("m.csv:2") != std::string::npos);
  CHECK(!error_of("month,a\n2017-01,nan\n").empty());
  CHECK(!error_of("month,a\n2017-01,1,2\n").empty());
  CHECK(!error_of("date,a\n2017-01,1\n").empty());
  CHECK(!error_of("month,a,a\n2017-01,1,2\n").empty());
  CHECK(!error_of("month,a\n2017-13,1\n").empty());
  CHECK_THROWS_AS(load_monthly("/nonexistent.csv"), InputError);
}

TEST_CASE("44-month file spanning 2017-01 to 2020-08") {
  std::string text = "month,climate,economic\n";
  YearMonth m{2017, 1};
  for (int i = 0; i < 44; ++i, m = m.next()) text += format_year_month(m) + "," + std::to_string(100 + i) + ",1.5\n";
  auto s = parse(text);
  CHECK(s[0].size() == 44);
  CHECK(s[1].size() == 44);
  CHECK(s[0].month(43) == YearMonth{2020, 8});
}

TEST_CASE("knots anchor at the first window starting in each month") {
  auto w = weeks("2019-01-07", 10);  // starts on 01-07, 02-04, 03-04 ...
  auto knots = anchor_knots(monthly("x", {2019, 1}, {1, 2, 3}), w);
  REQUIRE(knots.size() == 3);
  CHECK(knots[0].window == 0);
  CHECK(knots[1].window == 4);   // 2019-02-04
  CHECK(knots[2].window == 8);   // 2019-03-04
  CHECK(knots[2].value == 3);
}

TEST_CASE("disaggregation errors") {
  auto w = weeks("2019-01-07", 10);
  CHECK_THROWS_AS(disaggregate(monthly("x", {2019, 2}, {1, 2, 3}), w), InputError);  // January missing
  CHECK_THROWS_AS(disaggregate(monthly("x", {2019, 1}, {1, 2}), w), InputError);     // March missing
  CHECK_THROWS_AS(disaggregate(monthly("x", {2019, 1}, {1, 2, 3}), weeks("2019-01-07", 6)), InputError);  // 2 knots
}

TEST_CASE("constant and collinear monthly series") {
  auto w = weeks("2019-01-07", 52);
  auto c = disaggregate(monthly("c", {2019, 1}, std::vector<double>(12, 97.25)), w);
  for (double v : c.values) CHECK(v == 97.25);

  // Values linear in the knot window index are reproduced on the same line.
  auto knots = anchor_knots(monthly("l", {2019, 1}, std::vector<double>(12, 0.0)), w);
  std::vector<double> values;
  for (const auto& k : knots) values.push_back(3.0 - 0.4 * static_cast<double>(k.window));
  for (auto bc : {SplineBoundary::Natural, SplineBoundary::NotAKnot}) {
    auto l = disaggregate(monthly("l", {2019, 1}, values), w, bc);
    for (std::size_t i = 0; i < l.values.size(); ++i) {
      CHECK(std::abs(l.values[i] - (3.0 - 0.4 * static_cast<double>(i))) < 1e-9);
    }
  }
}

TEST_CASE("natural spline through (0,1), (4,2), (9,0.5)") {
  CubicSpline s({0, 4, 9}, {1.0, 2.0, 0.5});
  oracle::DenseSpline ref({0, 4, 9}, {1.0, 2.0, 0.5}, oracle::Boundary::Natural);
  CHECK(s(0) == 1.0);
  CHECK(s(4) == 2.0);
  CHECK(s(9) == 0.5);
  // Reference values from an established natural cubic spline implementation.
  const double expected[] = {1.0, 1.3645833333333333, 1.6833333333333333, 1.9104166666666669, 2.0,
                             1.92, 1.6933333333333334, 1.3566666666666665, 0.9466666666666665, 0.49999999999999967};
  for (int t = 0; t <= 9; ++t) {
    CHECK(std::abs(s(t) - ref(t)) < 1e-9);
    CHECK(std::abs(s(t) - expected[t]) < 1e-9);
  }
}

TEST_CASE("not-a-knot spline through five knots") {
  const std::vector<double> x{0, 4, 9, 13, 17}, y{1, 2, 0.5, 0.7, 1.9};
  CubicSpline s(x, y, SplineBoundary::NotAKnot);
  oracle::DenseSpline ref(x, y, oracle::Boundary::NotAKnot);
  const double expected[] = {1.0, 1.6597840755735491, 2.0086369770580297, 2.1031713900134954, 2.0, 1.7557354925775979,
                             1.4269905533063427, 1.0703778677462887, 0.74251012145749, 0.5, 0.38671347840755743,
                             0.39552968960863705, 0.5065810560053982, 0.7, 0.9559189439946016, 1.2544703103913628,
                             1.5757865215924425, 1.9};
  for (int t = 0; t <= 17; ++t) {
    CHECK(std::abs(s(t) - expected[t]) < 1e-9);
    CHECK(std::abs(s(t) - ref(t)) < 1e-9);
  }
}

TEST_CASE("not-a-knot with three knots is the interpolating parabola") {
  CubicSpline s({0, 4, 9}, {1.0, 2.0, 0.5}, SplineBoundary::NotAKnot);
  oracle::DenseSpline ref({0, 4, 9}, {1.0, 2.0, 0.5}, oracle::Boundary::NotAKnot);
  for (int t = 0; t <= 9; ++t) CHECK(std::abs(s(t) - ref(t)) < 1e-9);
}

TEST_CASE("spline matches the dense oracle on random knots") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> gap(3, 6), count(3, 15);
  std::normal_distribution<double> value(100.0, 5.0);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x{0}, y{value(rng)};
    for (int i = count(rng) - 1; i > 0; --i) {
      x.push_back(x.back() + gap(rng));
      y.push_back(value(rng));
    }
    for (auto bc : {SplineBoundary::Natural, SplineBoundary::NotAKnot}) {
      CubicSpline s(x, y, bc);
      oracle::DenseSpline ref(x, y, bc == SplineBoundary::Natural ? oracle::Boundary::Natural : oracle::Boundary::NotAKnot);
      for (double t = 0; t <= x.back(); t += 1) CHECK(std::abs(s(t) - ref(t)) < 1e-9);
    }
  }
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));
}

TEST_CASE("natural spline extends linearly past the end knots") {
  CubicSpline s({0, 4, 9}, {1.0, 2.0, 0.5});
  const auto& last = s.segments().back();
  const double h = 9.0 - last.x0;
  const double end_slope = last.b + 2 * last.c * h + 3 * last.d * h * h;
  for (double t : {10.0, 11.5, 14.0}) CHECK(std::abs(s(t) - (0.5 + end_slope * (t - 9))) < 1e-12);
  const double start_slope = s.segments().front().b;
  CHECK(std::abs(s(-2) - (1.0 - 2 * start_slope)) < 1e-12);
}

TEST_CASE("difference shortens by one and shifts the first window") {
  auto d = difference(WeeklySeries{"x", 3, {1, 4, 9, 16}});
  CHECK(d.first_window == 4);
  CHECK(d.values == std::vector<double>{3, 5, 7});
}

TEST_CASE("invariant: econo_series: interpolation property") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> value(100.0, 8.0);
  auto w = weeks("2017-01-02", 190);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(44);
    for (auto& x : v) x = value(rng);
    auto m = monthly("s", {2017, 1}, v);
    for (auto bc : {SplineBoundary::Natural, SplineBoundary::NotAKnot}) {
      auto out = disaggregate(m, w, bc);
      for (const auto& k : anchor_knots(m, w)) CHECK(std::abs(out.values[k.window] - k.value) <= 1e-9);
    }
  }
}

TEST_CASE("invariant: econo_series: smoothness") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> value(0.0, 3.0);
  std::uniform_int_distribution<int> gap(4, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x{0}, y{value(rng)};
    for (int i = 0; i < 11; ++i) {
      x.push_back(x.back() + gap(rng));
      y.push_back(value(rng));
    }
    for (auto bc : {SplineBoundary::Natural, SplineBoundary::NotAKnot}) {
      CubicSpline s(x, y, bc);
      const auto& seg = s.segments();
      for (std::size_t k = 1; k + 1 < x.size(); ++k) {
        CHECK(std::abs(s.second_derivative_end(k - 1) - s.second_derivative_start(k)) <= 1e-9);
        // First derivative continuity from the same coefficients.
        const double h = x[k] - x[k - 1];
        const double left = seg[k - 1].b + 2 * seg[k - 1].c * h + 3 * seg[k - 1].d * h * h;
        CHECK(std::abs(left - seg[k].b) <= 1e-9);
      }
      if (bc == SplineBoundary::Natural) {
        CHECK(std::abs(s.second_derivative_start(0)) <= 1e-12);
        CHECK(std::abs(s.second_derivative_end(x.size() - 2)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("invariant: econo_series: affine equivariance") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> value(100.0, 8.0);
  std::uniform_real_distribution<double> scale(-3.0, 3.0), shift(-50.0, 50.0);
  auto w = weeks("2019-01-07", 52);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(12);
    for (auto& x : v) x = value(rng);
    const double a = scale(rng), b = shift(rng);
    std::vector<double> t;
    for (double x : v) t.push_back(a * x + b);
    for (auto bc : {SplineBoundary::Natural, SplineBoundary::NotAKnot}) {
      auto base = disaggregate(monthly("s", {2019, 1}, v), w, bc);
      auto moved = disaggregate(monthly("s", {2019, 1}, t), w, bc);
      for (std::size_t i = 0; i < base.values.size(); ++i) {
        CHECK(std::abs(moved.values[i] - (a * base.values[i] + b)) <= 1e-9 * std::max(1.0, std::abs(moved.values[i])));
      }
    }
  }
}
