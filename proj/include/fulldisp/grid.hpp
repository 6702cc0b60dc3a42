// Uniform periodic grid on [0, L) used by the pseudo-spectral transforms.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fulldisp {

struct Grid1D {
  int n = 0;
  double length = 0.0;

  Grid1D() = default;
  Grid1D(int n_, double length_) : n(n_), length(length_) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("Grid1D: n must be even and at least 8");
    if (!(length > 0.0) || !std::isfinite(length))
      throw std::invalid_argument("Grid1D: length must be positive and finite");
  }

  double dx() const { return length / n; }
  double x(int j) const { return length * j / n; }
  // Wavenumber of the k-th nonnegative Fourier mode, k = 0 .. n/2.
  double xi(int k) const { return 2.0 * M_PI * k / length; }
  int num_modes() const { return n / 2 + 1; }
  // Largest mode index untouched by the 2/3-rule dealiasing mask.
  int dealias_cutoff() const { return n / 3; }

  std::vector<double> nodes() const {
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = x(j);
    return out;
  }

  bool operator==(const Grid1D& o) const { return n == o.n && length == o.length; }
  bool operator!=(const Grid1D& o) const { return !(*this == o); }
};

}  // namespace fulldisp
