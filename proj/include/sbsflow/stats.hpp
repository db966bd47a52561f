#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace sbsflow {

struct RegressionFit {
  Eigen::VectorXd coefficients;
  double rss = 0;
  std::size_t t_effective = 0;  // rows
  std::size_t k = 0;            // columns
};

/// Least squares via column-pivoted Householder QR. Requires rows > columns.
/// Throws NumericError naming the dependent columns when the design is
/// rank deficient.
RegressionFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

/// P(F > f) for F ~ F(d1, d2), through the regularized incomplete beta.
double f_upper_tail(double f, double d1, double d2);

/// P(X > x) for X ~ chi-square(k).
double chi2_upper_tail(double x, double k);

}  // namespace sbsflow
