#include "fulldisp/slopes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fulldisp {

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                   double floor) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit_slope: xs and ys differ in length");
  }
  const size_t n = xs.size();
  if (n < 4) {
    throw std::invalid_argument("fit_slope: need at least four points");
  }
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0)) {
      std::ostringstream msg;
      msg << "fit_slope: nonpositive abscissa x[" << i << "] = " << xs[i];
      throw std::invalid_argument(msg.str());
    }
    if (!(ys[i] > 0.0)) {
      std::ostringstream msg;
      msg << "fit_slope: nonpositive value y[" << i << "] = " << ys[i];
      throw std::invalid_argument(msg.str());
    }
    if (ys[i] <= floor) {
      std::ostringstream msg;
      msg << "fit_slope: y[" << i << "] = " << ys[i]
          << " is at the roundoff floor (" << floor
          << "); the slope of floored data is meaningless";
      throw std::invalid_argument(msg.str());
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("fit_slope: degenerate abscissae");
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  const double dof = static_cast<double>(n) - 2.0;
  fit.slope_stderr = dof > 0.0 ? std::sqrt(ss_res / dof / sxx) : 0.0;
  return fit;
}

namespace {

SlopeFit fit_collapsed(const std::vector<double>& axis,
                       const std::vector<double>& mus,
                       const std::vector<double>& eps,
                       const std::vector<double>& table, bool along_mu,
                       double floor) {
  const size_t nm = mus.size();
  const size_t ne = eps.size();
  if (table.size() != nm * ne) {
    throw std::invalid_argument("fit_slope: table size does not match grids");
  }
  std::vector<double> collapsed(axis.size(), 0.0);
  const size_t other = along_mu ? ne : nm;
  for (size_t i = 0; i < axis.size(); ++i) {
    double acc = 0.0;
    for (size_t j = 0; j < other; ++j) {
      const double v = along_mu ? table[i * ne + j] : table[j * ne + i];
      if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "fit_slope: nonpositive table entry at ("
            << (along_mu ? i : j) << ", " << (along_mu ? j : i) << ")";
        throw std::invalid_argument(msg.str());
      }
      acc += std::log(v);
    }
    collapsed[i] = std::exp(acc / static_cast<double>(other));
  }
  return fit_slope(axis, collapsed, floor);
}

}  // namespace

SlopeFit fit_slope_mu(const std::vector<double>& mus,
                      const std::vector<double>& eps,
                      const std::vector<double>& table, double floor) {
  return fit_collapsed(mus, mus, eps, table, true, floor);
}

SlopeFit fit_slope_eps(const std::vector<double>& mus,
                       const std::vector<double>& eps,
                       const std::vector<double>& table, double floor) {
  return fit_collapsed(eps, mus, eps, table, false, floor);
}

}  // namespace fulldisp
