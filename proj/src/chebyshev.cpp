#include "fulldisp/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace fulldisp {

ChebyshevGrid::ChebyshevGrid(int nz) : nz_(nz) {
  if (nz < 4) throw std::invalid_argument("ChebyshevGrid: need at least 4 nodes");
  const int N = nz - 1;

  // Gauss-Lobatto nodes y_m = cos(pi m / N) on [-1, 1], mapped affinely to
  // z = (y - 1)/2 on [-1, 0].
  std::vector<double> y(nz);
  z_.resize(nz);
  for (int m = 0; m <= N; ++m) {
    y[m] = std::cos(M_PI * m / N);
    z_[m] = 0.5 * (y[m] - 1.0);
  }

  // Differentiation matrix on y; the affine map contributes d/dz = 2 d/dy.
  d_.resize(nz, nz);
  std::vector<double> c(nz, 1.0);
  c[0] = c[N] = 2.0;
  for (int i = 0; i <= N; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d_(i, j) = (c[i] / c[j]) * sign / (y[i] - y[j]);
      row_sum += d_(i, j);
    }
    // Negative-sum trick keeps the matrix exact on constants.
    d_(i, i) = -row_sum;
  }
  d_ *= 2.0;
  d2_ = d_ * d_;

  // Clenshaw-Curtis weights on [-1, 1], halved for the unit-length interval.
  w_.assign(nz, 0.0);
  if (N % 2 == 0) {
    w_[0] = w_[N] = 1.0 / (N * N - 1);
    for (int i = 1; i < N; ++i) {
      double theta = M_PI * i / N;
      double v = 1.0;
      for (int k = 1; k <= N / 2 - 1; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      v -= std::cos(N * theta) / (N * N - 1.0);
      w_[i] = 2.0 * v / N;
    }
  } else {
    w_[0] = w_[N] = 1.0 / (N * N);
    for (int i = 1; i < N; ++i) {
      double theta = M_PI * i / N;
      double v = 1.0;
      for (int k = 1; k <= (N - 1) / 2; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      w_[i] = 2.0 * v / N;
    }
  }
  for (double& w : w_) w *= 0.5;

  // Barycentric weights of the Gauss-Lobatto family.
  bary_.resize(nz);
  for (int m = 0; m <= N; ++m) {
    bary_[m] = (m % 2 == 0) ? 1.0 : -1.0;
    if (m == 0 || m == N) bary_[m] *= 0.5;
  }
}

double ChebyshevGrid::integrate(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != nz_)
    throw std::invalid_argument("ChebyshevGrid::integrate: size mismatch");
  double s = 0.0;
  for (int m = 0; m < nz_; ++m) s += w_[m] * values[m];
  return s;
}

double ChebyshevGrid::interpolate(const std::vector<double>& values, double z) const {
  if (static_cast<int>(values.size()) != nz_)
    throw std::invalid_argument("ChebyshevGrid::interpolate: size mismatch");
  double num = 0.0, den = 0.0;
  for (int m = 0; m < nz_; ++m) {
    double diff = z - z_[m];
    if (diff == 0.0) return values[m];
    double t = bary_[m] / diff;
    num += t * values[m];
    den += t;
  }
  return num / den;
}

}  // namespace fulldisp
