#include "sbsflow/causality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sbsflow/parallel.hpp"
#include "sbsflow/stats.hpp"

namespace sbsflow {

std::string_view status_name(PairStatus s) noexcept {
  switch (s) {
    case PairStatus::Ok: return "ok";
    case PairStatus::ConstantSeries: return "constant_series";
    case PairStatus::DegenerateFit: return "degenerate_fit";
    case PairStatus::RankDeficient: return "rank_deficient";
    case PairStatus::InsufficientData: return "insufficient_data";
  }
  return "unknown";
}

namespace {

bool constant(const std::vector<double>& v) {
  if (v.empty()) return true;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo == *hi;
}

// Rows t = t0..T-1; columns 1, y_{t-1..t-p} and, if `with_x`, x_{t-1..t-p}.
Eigen::MatrixXd lag_design(const std::vector<double>& y, const std::vector<double>& x, std::size_t p,
                           std::size_t t0, bool with_x) {
  const auto rows = static_cast<Eigen::Index>(y.size() - t0);
  const auto cols = static_cast<Eigen::Index>(1 + p + (with_x ? p : 0));
  Eigen::MatrixXd d(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = t0 + static_cast<std::size_t>(r);
    d(r, 0) = 1.0;
    for (std::size_t l = 1; l <= p; ++l) {
      d(r, static_cast<Eigen::Index>(l)) = y[t - l];
      if (with_x) d(r, static_cast<Eigen::Index>(p + l)) = x[t - l];
    }
  }
  return d;
}

Eigen::VectorXd response(const std::vector<double>& y, std::size_t t0) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(y.size() - t0));
  for (std::size_t t = t0; t < y.size(); ++t) r(static_cast<Eigen::Index>(t - t0)) = y[t];
  return r;
}

RegressionFit fit_or_throw(const Eigen::MatrixXd& d, const Eigen::VectorXd& r) {
  try {
    return ols_fit(d, r);
  } catch (const PairError&) {
    throw;
  } catch (const NumericError& e) {
    throw PairError(PairStatus::RankDeficient, e.what());
  }
}

void check_inputs(const std::vector<double>& y, const std::vector<double>& x) {
  if (y.size() != x.size()) throw NumericError("series lengths differ");
  if (constant(y)) throw PairError(PairStatus::ConstantSeries, "response series is constant");
  if (constant(x)) throw PairError(PairStatus::ConstantSeries, "predictor series is constant");
}

}  // namespace

std::size_t select_lag_bic(const std::vector<double>& y, const std::vector<double>& x, std::size_t p_max) {
  if (p_max < 1) throw NumericError("p_max must be at least 1");
  if (y.size() != x.size()) throw NumericError("series lengths differ");
  const std::size_t T = y.size();
  if (T <= p_max || T - p_max <= 2 * p_max + 1) {
    throw PairError(PairStatus::InsufficientData, "lag selection with p_max=" + std::to_string(p_max) + " needs more than " +
                                                      std::to_string(3 * p_max + 1) + " observations, got " +
                                                      std::to_string(T));
  }
  if (p_max == 1) return 1;
  const Eigen::VectorXd r = response(y, p_max);
  const double t_eff = static_cast<double>(T - p_max);
  std::size_t best = 1;
  double best_bic = std::numeric_limits<double>::infinity();
  for (std::size_t p = 1; p <= p_max; ++p) {
    auto fit = fit_or_throw(lag_design(y, x, p, p_max, true), r);
    const double k = static_cast<double>(2 * p + 1);
    const double bic = fit.rss > 0 ? t_eff * std::log(fit.rss / t_eff) + k * std::log(t_eff)
                                   : -std::numeric_limits<double>::infinity();
    if (bic < best_bic) {
      best_bic = bic;
      best = p;
    }
  }
  return best;
}

GrangerCore granger_test(const std::vector<double>& y, const std::vector<double>& x, std::size_t p) {
  if (p < 1) throw NumericError("lag count must be at least 1");
  check_inputs(y, x);
  const std::size_t T = y.size();
  if (T <= p || T - p <= 2 * p + 1) {
    throw PairError(PairStatus::InsufficientData, "granger test with " + std::to_string(p) + " lag(s) needs more than " +
                                                      std::to_string(3 * p + 1) + " observations, got " +
                                                      std::to_string(T));
  }
  const Eigen::VectorXd r = response(y, p);
  auto unrestricted = fit_or_throw(lag_design(y, x, p, p, true), r);
  auto restricted = fit_or_throw(lag_design(y, x, p, p, false), r);
  const double tss = (r.array() - r.mean()).square().sum();
  if (!(unrestricted.rss > 1e-20 * tss)) {
    throw PairError(PairStatus::DegenerateFit, "unrestricted model fits exactly (RSS = " +
                                                   std::to_string(unrestricted.rss) + ")");
  }
  GrangerCore core;
  core.lags = p;
  core.df1 = p;
  core.df2 = (T - p) - 2 * p - 1;
  core.rss_restricted = restricted.rss;
  core.rss_unrestricted = unrestricted.rss;
  const double num = std::max(0.0, restricted.rss - unrestricted.rss) / static_cast<double>(core.df1);
  const double den = unrestricted.rss / static_cast<double>(core.df2);
  core.f_stat = num / den;
  core.p_value = f_upper_tail(core.f_stat, static_cast<double>(core.df1), static_cast<double>(core.df2));
  return core;
}

std::string stars(double p_value, const StarThresholds& t) {
  if (p_value < t.three) return "***";
  if (p_value < t.two) return "**";
  if (p_value < t.one) return "*";
  return "";
}

CrossCorrelation cross_correlation_sign(const std::vector<double>& y, const std::vector<double>& x,
                                        std::size_t max_lag) {
  check_inputs(y, x);
  const std::size_t T = y.size();
  if (4 * max_lag >= T) {
    throw NumericError("cross-correlation max_lag " + std::to_string(max_lag) + " must be below T/4 (T = " +
                       std::to_string(T) + ")");
  }
  CrossCorrelation best;
  double best_abs = -1.0;
  for (std::size_t l = 0; l <= max_lag; ++l) {
    const std::size_t n = T - l;
    double mx = 0, my = 0;
    for (std::size_t t = l; t < T; ++t) {
      mx += x[t - l];
      my += y[t];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t t = l; t < T; ++t) {
      const double dx = x[t - l] - mx, dy = y[t] - my;
      sxy += dx * dy;
      sxx += dx * dx;
      syy += dy * dy;
    }
    const double r = sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
    if (std::abs(r) > best_abs) {
      best_abs = std::abs(r);
      best = {r < 0 ? '-' : '+', l, r};
    }
  }
  return best;
}

GrangerResult test_pair(const std::vector<double>& y, const std::vector<double>& x, const BatteryOptions& options) {
  GrangerResult out;
  out.observations = y.size();
  try {
    check_inputs(y, x);
    out.lags = select_lag_bic(y, x, options.p_max);
    auto core = granger_test(y, x, out.lags);
    out.f_stat = core.f_stat;
    out.p_value = core.p_value;
    out.stars = stars(core.p_value, options.thresholds);
    const std::size_t quarter = (y.size() + 3) / 4;
    auto cc = cross_correlation_sign(y, x, std::min(options.p_max, quarter - 1));
    out.cc_sign = cc.sign;
    out.cc_lag = cc.lag;
    out.cc_r = cc.r;
  } catch (const PairError& e) {
    out.status = e.status();
    out.message = e.what();
    out.f_stat = 0;
    out.p_value = 1;
    out.stars.clear();
  }
  return out;
}

std::vector<GrangerResult> run_battery(const std::vector<WeeklySeries>& keywords,
                                       const std::vector<WeeklySeries>& targets, const BatteryOptions& options) {
  if (keywords.empty() || targets.empty()) return {};
  std::size_t lo = 0, hi = std::numeric_limits<std::size_t>::max();
  for (const auto* group : {&keywords, &targets}) {
    for (const auto& s : *group) {
      lo = std::max(lo, s.first_window);
      hi = std::min(hi, s.first_window + s.size());
    }
  }
  if (lo >= hi) throw InputError("keyword and target series share no windows");

  auto cut = [&](const WeeklySeries& s) {
    WeeklySeries c{s.name, lo, {}};
    c.values.assign(s.values.begin() + static_cast<std::ptrdiff_t>(lo - s.first_window),
                    s.values.begin() + static_cast<std::ptrdiff_t>(hi - s.first_window));
    return options.difference ? difference(c) : c;
  };
  std::vector<WeeklySeries> k_cut, t_cut;
  for (const auto& s : keywords) k_cut.push_back(cut(s));
  for (const auto& s : targets) t_cut.push_back(cut(s));

  const std::size_t pairs = keywords.size() * targets.size();
  const std::size_t total = options.reverse ? 2 * pairs : pairs;
  std::vector<GrangerResult> results(total);
  parallel_for(total, options.workers, [&](std::size_t idx) {
    const bool reverse = idx >= pairs;
    const std::size_t pair = reverse ? idx - pairs : idx;
    const auto& k = k_cut[pair / targets.size()];
    const auto& t = t_cut[pair % targets.size()];
    GrangerResult r = reverse ? test_pair(k.values, t.values, options) : test_pair(t.values, k.values, options);
    r.keyword = k.name;
    r.target = t.name;
    r.reverse = reverse;
    results[idx] = std::move(r);
  });
  return results;
}

}  // namespace sbsflow
