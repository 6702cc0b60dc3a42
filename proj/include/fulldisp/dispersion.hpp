// Fourier multipliers of the full-dispersion models. With x = sqrt(mu)|xi|:
//   F1 = tanh(x)/x            (squared phase speed of the linearized system)
//   F2 = (3/x^2) (1 - tanh(x)/x)
//   F3 = (3/x^2) (x/tanh(x) - 1)
//   F0 = cosh((z+1)x)/cosh(x) (vertical profile of the flat-bottom potential)
// All are evaluated with small-x series branches so that the exact algebraic
// relations between them survive in floating point.
#pragma once

#include <functional>

#include "fulldisp/spectral.hpp"

namespace fulldisp {

double eval_F1(double mu, double xi);
double eval_F2(double mu, double xi);
double eval_F3(double mu, double xi);
double eval_sqrtF3(double mu, double xi);
double eval_F0(double z, double mu, double xi);

// Weight |xi| / sqrt(1 + sqrt(mu)|xi|) that measures the strength of the
// dispersive smoothing in the energy-space estimates.
double eval_P(double mu, double xi);

// Linear phase frequency omega(xi) = |xi| sqrt(F1(sqrt(mu)|xi|)).
double eval_omega(double mu, double xi);

RealField apply_F1(const RealField& f, double mu);
RealField apply_F2(const RealField& f, double mu);
RealField apply_F3(const RealField& f, double mu);
RealField apply_sqrtF3(const RealField& f, double mu);

// Small-x envelope constants and global bounds of the multipliers, measured
// numerically on log-spaced grids. Fitted constants are maxima of
// |f(x) - p(x)| / x^rate over x in [1e-3, 1]; bound margins are signed
// maxima of the bound violation over x in [1e-3, 1e3], so a positive margin
// means the corresponding inequality is false.
struct TaylorBoundsReport {
  double c2_f1;              // |F1 - 1| / x^2, expected near 1/3
  double c4_f1;              // |F1 - 1 + x^2/3| / x^4, expected near 2/15
  double c2_f2;              // |F2 - 1| / x^2, expected near 2/5
  double c2_f3;              // |F3 - 1| / x^2, expected near 1/15
  double unit_margin_f1;     // max(F1 - 1, -F1), claimed <= 0
  double unit_margin_f2;     // max(F2 - 1, -F2), claimed <= 0
  double unit_margin_f3;     // max(F3 - 1, -F3), claimed <= 0
  double f2_decay_margin;    // max of F2*(1 + x^2/3) - 1, claimed <= 0
  double f1_inverse_margin;  // max of 1/F1 - (1 + x), claimed <= 0
  double f3_decay_margin;    // max of F3*(1 + x/3) - 1, claimed <= 0
  double f3_decay_argmax;    // location of that maximum
  double id_one_minus_f1;    // max |1 - F1 - (x^2/3) F2|
  double id_f3_times_f1;     // max |F3*F1 - F2|
  double id_inverse_f1;      // max |1 + (x^2/3) F3 - 1/F1|
};

TaylorBoundsReport check_taylor_bounds(int samples_per_decade = 400);

}  // namespace fulldisp
