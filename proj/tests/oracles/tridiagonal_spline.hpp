#pragma once

// Natural cubic spline in first-derivative (Hermite) form. The knot slopes
// k_i solve the tridiagonal system
//   2 k_0 + k_1                                         = 3 s_0
//   h_i k_{i-1} + 2 (h_{i-1} + h_i) k_i + h_{i-1} k_{i+1} = 3 (h_i s_{i-1} + h_{i-1} s_i)
//   k_{n-2} + 2 k_{n-1}                                 = 3 s_{n-2}
// by the Thomas algorithm, and each segment is evaluated as a Hermite cubic.

#include <cstddef>
#include <vector>

namespace oracle {

class TridiagonalSpline {
 public:
  TridiagonalSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), s(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      s[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0), rhs(n);
    diag[0] = 2;
    sup[0] = 1;
    rhs[0] = 3 * s[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h[i];
      diag[i] = 2 * (h[i - 1] + h[i]);
      sup[i] = h[i - 1];
      rhs[i] = 3 * (h[i] * s[i - 1] + h[i - 1] * s[i]);
    }
    sub[n - 1] = 1;
    diag[n - 1] = 2;
    rhs[n - 1] = 3 * s[n - 2];
    for (std::size_t i = 1; i < n; ++i) {
      const double f = sub[i] / diag[i - 1];
      diag[i] -= f * sup[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
    k_.assign(n, 0.0);
    k_[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) k_[i] = (rhs[i] - sup[i] * k_[i + 1]) / diag[i];
  }

  // Valid on [x_0, x_{n-1}].
  double operator()(double t) const {
    std::size_t i = 0;
    while (i + 2 < x_.size() && t > x_[i + 1]) ++i;
    const double h = x_[i + 1] - x_[i], u = (t - x_[i]) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y_[i] + (u3 - 2 * u2 + u) * h * k_[i] + (3 * u2 - 2 * u3) * y_[i + 1] +
           (u3 - u2) * h * k_[i + 1];
  }

 private:
  std::vector<double> x_, y_, k_;
};

}  // namespace oracle
