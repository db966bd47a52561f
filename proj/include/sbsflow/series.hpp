#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sbsflow/calendar.hpp"
#include "sbsflow/corpus.hpp"

namespace sbsflow {

/// Consecutive monthly observations starting at `start`.
struct MonthlySeries {
  std::string name;
  YearMonth start;
  std::vector<double> values;

  YearMonth month(std::size_t i) const;
  std::size_t size() const noexcept { return values.size(); }
};

/// Series on the weekly window grid; values[k] belongs to window
/// first_window + k.
struct WeeklySeries {
  std::string name;
  std::size_t first_window = 0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// CSV with header `month,series1,series2,...` and `YYYY-MM` months. A gap,
/// duplicate or out-of-order month, a non-numeric cell or a ragged row is
/// fatal and reported with its line.
std::vector<MonthlySeries> load_monthly(const std::string& path);
std::vector<MonthlySeries> parse_monthly(std::istream& in, const std::string& origin = "<monthly>");

enum class SplineBoundary { Natural, NotAKnot };

/// Interpolating cubic spline over strictly increasing knots.
class CubicSpline {
 public:
  /// y = a + b*dx + c*dx^2 + d*dx^3 with dx = x - x0 on [x0, next knot].
  struct Segment {
    double x0, a, b, c, d;
  };

  /// Needs at least 3 knots. Throws NumericError otherwise.
  CubicSpline(std::vector<double> x, std::vector<double> y, SplineBoundary boundary = SplineBoundary::Natural);

  /// Exact at knots. Past the last knot a natural spline continues linearly
  /// and a not-a-knot spline continues its last cubic; likewise before the
  /// first knot.
  double operator()(double t) const;

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<double>& knots_x() const noexcept { return x_; }
  const std::vector<double>& knots_y() const noexcept { return y_; }
  SplineBoundary boundary() const noexcept { return boundary_; }

  /// Second derivative at the right end of segment k (k + 1 is the knot).
  double second_derivative_end(std::size_t k) const;
  /// Second derivative at the left end of segment k.
  double second_derivative_start(std::size_t k) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  SplineBoundary boundary_;
  std::vector<Segment> segments_;
};

struct Knot {
  std::size_t window = 0;
  double value = 0;
};

/// One knot per month of the window grid, at the first window whose start
/// date falls in that month. Months of `m` outside the grid are ignored.
/// Throws InputError when a month of the grid has no value.
std::vector<Knot> anchor_knots(const MonthlySeries& m, const std::vector<TimeWindow>& windows);

/// Spline through the anchored knots evaluated at every window index.
/// Throws InputError when fewer than 3 knots are available or the series
/// does not cover the grid.
WeeklySeries disaggregate(const MonthlySeries& m, const std::vector<TimeWindow>& windows,
                          SplineBoundary boundary = SplineBoundary::Natural);

/// First differences; the result starts one window later.
WeeklySeries difference(const WeeklySeries& s);

}  // namespace sbsflow
