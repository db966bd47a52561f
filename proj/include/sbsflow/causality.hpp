#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sbsflow/error.hpp"
#include "sbsflow/series.hpp"

namespace sbsflow {

enum class PairStatus { Ok, ConstantSeries, DegenerateFit, RankDeficient, InsufficientData };

std::string_view status_name(PairStatus s) noexcept;

/// A test that cannot be carried out for one pair of series.
class PairError : public NumericError {
 public:
  PairError(PairStatus status, const std::string& what) : NumericError(what), status_(status) {}
  PairStatus status() const noexcept { return status_; }

 private:
  PairStatus status_;
};

struct GrangerCore {
  std::size_t lags = 0;
  double f_stat = 0;
  double p_value = 1;
  std::size_t df1 = 0;
  std::size_t df2 = 0;
  double rss_restricted = 0;
  double rss_unrestricted = 0;
};

/// Lag count in 1..p_max minimizing T_eff*ln(RSS/T_eff) + k*ln(T_eff) for the
/// model y_t ~ 1 + p lags of y + p lags of x, every candidate fitted on the
/// sample t = p_max..T-1. Ties go to the smaller lag. Needs
/// T - p_max > 2*p_max + 1.
std::size_t select_lag_bic(const std::vector<double>& y, const std::vector<double>& x, std::size_t p_max);

/// F test of the x lags in y_t ~ 1 + y_{t-1..t-p} + x_{t-1..t-p} on the
/// sample t = p..T-1. Throws PairError for constant series, too few
/// observations, rank deficiency or an exact fit.
GrangerCore granger_test(const std::vector<double>& y, const std::vector<double>& x, std::size_t p);

/// p < three -> "***", p < two -> "**", p < one -> "*".
struct StarThresholds {
  double one = 0.10;
  double two = 0.05;
  double three = 0.01;
};

std::string stars(double p_value, const StarThresholds& t = {});

struct CrossCorrelation {
  char sign = '+';
  std::size_t lag = 0;
  double r = 0;
};

/// r_l = corr(x_{t-l}, y_t) for l = 0..max_lag; the lag with the largest
/// |r_l| wins, the smaller lag on ties. Requires max_lag < T/4.
CrossCorrelation cross_correlation_sign(const std::vector<double>& y, const std::vector<double>& x,
                                        std::size_t max_lag);

struct GrangerResult {
  std::string keyword;
  std::string target;
  bool reverse = false;  // target -> keyword
  std::size_t lags = 0;
  double f_stat = 0;
  double p_value = 1;
  std::string stars;
  char cc_sign = '+';
  std::size_t cc_lag = 0;
  double cc_r = 0;
  std::size_t observations = 0;
  PairStatus status = PairStatus::Ok;
  std::string message;
};

struct BatteryOptions {
  std::size_t p_max = 8;
  StarThresholds thresholds;
  bool reverse = false;     // also test target -> keyword
  bool difference = false;  // first-difference both series before testing
  unsigned workers = 1;
};

/// One result per (keyword, target) pair in keyword-major input order,
/// followed by the reverse direction when enabled. All series are cut to the
/// windows they have in common; an empty intersection is fatal.
std::vector<GrangerResult> run_battery(const std::vector<WeeklySeries>& keywords,
                                       const std::vector<WeeklySeries>& targets, const BatteryOptions& options = {});

/// Test of one aligned pair: lag selection, F test, stars, phase sign.
GrangerResult test_pair(const std::vector<double>& y, const std::vector<double>& x, const BatteryOptions& options);

}  // namespace sbsflow
