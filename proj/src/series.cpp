#include "sbsflow/series.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <fstream>
#include <set>

#include "sbsflow/csv.hpp"
#include "sbsflow/error.hpp"

namespace sbsflow {

YearMonth MonthlySeries::month(std::size_t i) const {
  YearMonth ym = start;
  for (std::size_t k = 0; k < i; ++k) ym = ym.next();
  return ym;
}

std::vector<MonthlySeries> parse_monthly(std::istream& in, const std::string& origin) {
  csv::Reader reader(in);
  auto where = [&](std::size_t line) { return origin + ":" + std::to_string(line); };

  auto header = reader.next();
  if (!header) throw InputError(origin + ": empty monthly file");
  const auto& names = header->fields;
  if (names.empty() || names[0] != "month") throw InputError(where(header->line) + ": first column must be 'month'");
  if (names.size() < 2) throw InputError(where(header->line) + ": no series columns");
  std::set<std::string> seen;
  std::vector<MonthlySeries> series;
  for (std::size_t c = 1; c < names.size(); ++c) {
    if (names[c].empty()) throw InputError(where(header->line) + ": empty series name in column " + std::to_string(c + 1));
    if (!seen.insert(names[c]).second) throw InputError(where(header->line) + ": duplicate series '" + names[c] + "'");
    series.push_back({names[c], {}, {}});
  }

  std::optional<YearMonth> previous;
  while (auto row = reader.next()) {
    const auto& f = row->fields;
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != names.size()) {
      throw InputError(where(row->line) + ": expected " + std::to_string(names.size()) + " fields, found " +
                       std::to_string(f.size()));
    }
    auto ym = parse_year_month(f[0]);
    if (!ym) throw InputError(where(row->line) + ": invalid month '" + f[0] + "'");
    if (previous) {
      if (*ym == *previous) throw InputError(where(row->line) + ": duplicate month " + f[0]);
      if (*ym < *previous) throw InputError(where(row->line) + ": month " + f[0] + " out of order");
      if (*ym != previous->next()) {
        throw InputError(where(row->line) + ": gap between " + format_year_month(*previous) + " and " + f[0]);
      }
    } else {
      for (auto& s : series) s.start = *ym;
    }
    previous = ym;
    for (std::size_t c = 1; c < f.size(); ++c) {
      auto v = csv::parse_double(f[c]);
      if (!v) {
        throw InputError(where(row->line) + ": non-numeric value '" + f[c] + "' for series '" + names[c] + "'");
      }
      series[c - 1].values.push_back(*v);
    }
  }
  return series;
}

std::vector<MonthlySeries> load_monthly(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read monthly file " + path);
  return parse_monthly(in, path);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, SplineBoundary boundary)
    : x_(std::move(x)), y_(std::move(y)), boundary_(boundary) {
  const std::size_t n = x_.size();
  if (n != y_.size()) throw NumericError("spline knot vectors differ in length");
  if (n < 3) throw NumericError("cubic spline needs at least 3 knots, got " + std::to_string(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) throw NumericError("spline knots must be strictly increasing");
  }
  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  // Second derivatives at the knots.
  std::vector<double> m(n, 0.0);
  if (boundary_ == SplineBoundary::Natural) {
    // Thomas algorithm on the interior equations.
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      diag[i] = 2.0 * (h[i] + h[i + 1]);
      upper[i] = h[i + 1];
      rhs[i] = 6.0 * (slope[i + 1] - slope[i]);
    }
    for (std::size_t i = 1; i < k; ++i) {
      const double w = h[i] / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i >= 1; --i) m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
  } else {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a(at(i), at(i - 1)) = h[i - 1];
      a(at(i), at(i)) = 2.0 * (h[i - 1] + h[i]);
      a(at(i), at(i + 1)) = h[i];
      b(at(i)) = 6.0 * (slope[i] - slope[i - 1]);
    }
    if (n == 3) {
      // A single parabola: constant second derivative.
      a(0, 0) = 1.0;
      a(0, 1) = -1.0;
      a(2, 1) = 1.0;
      a(2, 2) = -1.0;
    } else {
      // Continuous third derivative at the second and second-to-last knots.
      a(0, 0) = -1.0 / h[0];
      a(0, 1) = 1.0 / h[0] + 1.0 / h[1];
      a(0, 2) = -1.0 / h[1];
      a(at(n - 1), at(n - 3)) = -1.0 / h[n - 3];
      a(at(n - 1), at(n - 2)) = 1.0 / h[n - 3] + 1.0 / h[n - 2];
      a(at(n - 1), at(n - 1)) = -1.0 / h[n - 2];
    }
    Eigen::VectorXd sol = a.partialPivLu().solve(b);
    for (std::size_t i = 0; i < n; ++i) m[i] = sol(at(i));
  }

  segments_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    segments_[i] = {x_[i], y_[i], slope[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0, m[i] / 2.0,
                    (m[i + 1] - m[i]) / (6.0 * h[i])};
  }
}

double CubicSpline::operator()(double t) const {
  const std::size_t n = x_.size();
  if (t == x_[n - 1]) return y_[n - 1];
  auto eval = [](const Segment& s, double dx) { return s.a + dx * (s.b + dx * (s.c + dx * s.d)); };
  if (boundary_ == SplineBoundary::Natural) {
    if (t > x_[n - 1]) {
      const auto& s = segments_.back();
      const double h = x_[n - 1] - s.x0;
      return y_[n - 1] + (t - x_[n - 1]) * (s.b + h * (2.0 * s.c + 3.0 * h * s.d));
    }
    if (t < x_[0]) return y_[0] + (t - x_[0]) * segments_.front().b;
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  k = std::min(k, segments_.size() - 1);
  return eval(segments_[k], t - segments_[k].x0);
}

double CubicSpline::second_derivative_end(std::size_t k) const {
  const auto& s = segments_.at(k);
  return 2.0 * s.c + 6.0 * s.d * (x_[k + 1] - s.x0);
}

double CubicSpline::second_derivative_start(std::size_t k) const { return 2.0 * segments_.at(k).c; }

std::vector<Knot> anchor_knots(const MonthlySeries& m, const std::vector<TimeWindow>& windows) {
  std::vector<Knot> knots;
  std::optional<YearMonth> current;
  for (const auto& w : windows) {
    YearMonth ym = year_month_of(w.start_date);
    if (current && ym == *current) continue;
    current = ym;
    int offset = m.start.months_until(ym);
    if (offset < 0 || static_cast<std::size_t>(offset) >= m.size()) {
      throw InputError("series '" + m.name + "' has no value for " + format_year_month(ym) +
                       ", a month of the window grid (series covers " + format_year_month(m.start) + " to " +
                       (m.size() ? format_year_month(m.month(m.size() - 1)) : std::string("nothing")) + ")");
    }
    knots.push_back({w.index, m.values[static_cast<std::size_t>(offset)]});
  }
  return knots;
}

WeeklySeries disaggregate(const MonthlySeries& m, const std::vector<TimeWindow>& windows, SplineBoundary boundary) {
  auto knots = anchor_knots(m, windows);
  if (knots.size() < 3) {
    throw InputError("series '" + m.name + "': the window grid spans " + std::to_string(knots.size()) +
                     " month(s); spline disaggregation needs at least 3");
  }
  std::vector<double> x, y;
  for (const auto& k : knots) {
    x.push_back(static_cast<double>(k.window));
    y.push_back(k.value);
  }
  CubicSpline spline(std::move(x), std::move(y), boundary);
  WeeklySeries out{m.name, windows.front().index, {}};
  out.values.reserve(windows.size());
  for (const auto& w : windows) out.values.push_back(spline(static_cast<double>(w.index)));
  return out;
}

WeeklySeries difference(const WeeklySeries& s) {
  WeeklySeries out{s.name, s.first_window + 1, {}};
  for (std::size_t i = 1; i < s.values.size(); ++i) out.values.push_back(s.values[i] - s.values[i - 1]);
  return out;
}

}  // namespace sbsflow
