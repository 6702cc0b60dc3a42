// Real and half-spectrum field types plus the FFT-based calculus on them:
// transforms, derivatives, Fourier-multiplier application, dealiased
// products, and integrals over the periodic domain.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fulldisp/grid.hpp"

namespace fulldisp {

struct SpectralField;

// Point values on the uniform periodic grid.
struct RealField {
  Grid1D grid;
  std::vector<double> v;

  RealField() = default;
  explicit RealField(const Grid1D& g) : grid(g), v(g.n, 0.0) {}
  RealField(const Grid1D& g, std::vector<double> values);

  double& operator[](int j) { return v[j]; }
  double operator[](int j) const { return v[j]; }
  int size() const { return grid.n; }

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double a);
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double a, RealField f);

// Coefficients c_k, k = 0 .. n/2, of the corresponding real field with the
// convention v_j = sum_k c_k exp(i xi_k x_j) extended Hermitianly; c_0 and
// (for even n) c_{n/2} are real-valued.
struct SpectralField {
  Grid1D grid;
  std::vector<std::complex<double>> c;

  SpectralField() = default;
  explicit SpectralField(const Grid1D& g) : grid(g), c(g.num_modes(), 0.0) {}

  std::complex<double>& operator[](int k) { return c[k]; }
  std::complex<double> operator[](int k) const { return c[k]; }
  int num_modes() const { return grid.num_modes(); }
};

// Forward transform, normalized so coefficients are mode amplitudes.
SpectralField forward(const RealField& f);
// Inverse transform; exact round trip with forward up to roundoff.
RealField inverse(const SpectralField& s);

// Spectral derivative of the given order. Odd orders zero the Nyquist mode,
// whose derivative has no real-valued representative on the grid.
SpectralField derivative(const SpectralField& s, int order = 1);
RealField derivative(const RealField& f, int order = 1);

// Apply a real Fourier multiplier m(|xi|) mode by mode.
SpectralField apply_multiplier(const SpectralField& s,
                               const std::function<double(double)>& symbol);
RealField apply_multiplier(const RealField& f,
                           const std::function<double(double)>& symbol);

// Zero all modes with index above n/3 (the 2/3 rule).
void dealias(SpectralField& s);
RealField dealias(const RealField& f);

// Pointwise product, optionally followed by the dealiasing mask.
RealField product(const RealField& a, const RealField& b, bool dealias_result);

// Pointwise quotient a/b, optionally followed by the dealiasing mask; the
// callers guarantee b is bounded away from zero (non-cavitation).
RealField quotient(const RealField& a, const RealField& b,
                   bool dealias_result);

// Integral over one period, L times the mean mode.
double integrate(const RealField& f);
// L2 inner product over one period.
double inner(const RealField& a, const RealField& b);
double norm_l2(const RealField& f);
double norm_inf(const RealField& f);

// Field with values g(x_j).
RealField sample(const Grid1D& g, const std::function<double(double)>& fn);

}  // namespace fulldisp
