// Log-log slope fitting for convergence and scaling studies.
#pragma once

#include <vector>

namespace fulldisp {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;   // log-space intercept
  double r2 = 0.0;
  double slope_stderr = 0.0;  // 95% band is slope +- 2 * slope_stderr
};

// Least-squares fit of log(y) against log(x). Requires at least four points
// with strictly positive x and y; values at or below the roundoff floor are
// rejected with a distinct message since their slope is meaningless.
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                   double floor = 1e-14);

// Collapse a row-major table err(mu_i, eps_j) onto one axis by taking the
// geometric mean over the other axis, then fit the slope along the surviving
// axis.
SlopeFit fit_slope_mu(const std::vector<double>& mus,
                      const std::vector<double>& eps,
                      const std::vector<double>& table, double floor = 1e-14);
SlopeFit fit_slope_eps(const std::vector<double>& mus,
                       const std::vector<double>& eps,
                       const std::vector<double>& table, double floor = 1e-14);

}  // namespace fulldisp
