// Chebyshev collocation machinery on the vertical interval [-1, 0]:
// Gauss-Lobatto nodes, the spectral differentiation matrix, Clenshaw-Curtis
// quadrature weights, and barycentric interpolation to off-grid depths.
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fulldisp {

class ChebyshevGrid {
 public:
  // nz collocation nodes; node 0 sits at the surface z = 0 and node nz-1 at
  // the bottom z = -1.
  explicit ChebyshevGrid(int nz);

  int size() const { return nz_; }
  double node(int m) const { return z_[m]; }
  const std::vector<double>& nodes() const { return z_; }

  // First-derivative collocation matrix d/dz.
  const Eigen::MatrixXd& diff() const { return d_; }
  // Second derivative, cached product diff()*diff().
  const Eigen::MatrixXd& diff2() const { return d2_; }

  // Quadrature weights for integrals over [-1, 0]; exact for polynomials of
  // degree nz-1.
  const std::vector<double>& weights() const { return w_; }
  double integrate(const std::vector<double>& values) const;

  // Barycentric evaluation of the interpolant through (node(m), values[m])
  // at z in [-1, 0].
  double interpolate(const std::vector<double>& values, double z) const;

 private:
  int nz_;
  std::vector<double> z_;
  std::vector<double> w_;
  std::vector<double> bary_;
  Eigen::MatrixXd d_;
  Eigen::MatrixXd d2_;
};

}  // namespace fulldisp
