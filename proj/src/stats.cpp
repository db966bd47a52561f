#include "sbsflow/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <string>

#include "sbsflow/error.hpp"

namespace sbsflow {

RegressionFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
  const auto rows = design.rows();
  const auto cols = design.cols();
  if (rows != response.size()) throw NumericError("design and response differ in length");
  if (rows <= cols) {
    throw NumericError("ols needs more rows than columns (" + std::to_string(rows) + " <= " + std::to_string(cols) + ")");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols) {
    std::string which;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < cols; ++i) {
      if (!which.empty()) which += ", ";
      which += std::to_string(perm(i));
    }
    throw NumericError("rank-deficient design (rank " + std::to_string(qr.rank()) + " of " + std::to_string(cols) +
                       "); linearly dependent column(s): " + which);
  }
  RegressionFit fit;
  fit.coefficients = qr.solve(response);
  fit.rss = (response - design * fit.coefficients).squaredNorm();
  fit.t_effective = static_cast<std::size_t>(rows);
  fit.k = static_cast<std::size_t>(cols);
  return fit;
}

double f_upper_tail(double f, double d1, double d2) {
  if (!(f > 0.0)) return 1.0;
  if (std::isinf(f)) return 0.0;
  // Pick the form whose argument is not close to 1.
  const double denom = d1 * f + d2;
  const double x = d1 * f / denom;
  if (x < 0.5) return boost::math::ibetac(d1 / 2.0, d2 / 2.0, x);
  return boost::math::ibeta(d2 / 2.0, d1 / 2.0, d2 / denom);
}

double chi2_upper_tail(double x, double k) {
  if (!(x > 0.0)) return 1.0;
  return boost::math::gamma_q(k / 2.0, x / 2.0);
}

}  // namespace sbsflow
