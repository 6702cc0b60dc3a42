// Closed-form approximations of the depth-averaged velocity and the inverse
// map recovering the surface gradient from it. These are the multiplier-level
// counterparts of the strip-solver quantities.
#pragma once

#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"
#include "fulldisp/strip.hpp"

namespace fulldisp {

enum class VbarApproxKind {
  F1Grad,     // F1 dx(psi)
  VApp,       // F1 dx(psi) + (mu eps/3)[h zeta_x lap(psi) + dx(zeta(1+h)lap(psi))]
  VTildeApp,  // dx(psi) + (mu/(3h)) dx(h^3 F2[lap(psi)])
};

RealField vbar_approx(VbarApproxKind kind, const SurfaceData& data,
                      bool dealias_products = true);

// Surface gradient recovered from the depth-averaged velocity:
// dx(psi) ~ vbar - (mu/(3h)) dx(h^3 F3[dx(vbar)]).
RealField gradpsi_from_vbar(const RealField& vbar, const RealField& zeta,
                            const Params& params, bool dealias_products = true);

// L2 distances between the strip-solver velocity and each closed-form
// approximation, plus the surface-gradient recovery error, for one state.
struct VelocityExpansionErrors {
  double f1grad = 0.0;    // |vbar - F1 dx(psi)|
  double vapp = 0.0;      // |vbar - V_app|
  double vtilde = 0.0;    // |vbar - V~_app|
  double gradpsi = 0.0;   // |dx(psi) - recovery(vbar)|
};

VelocityExpansionErrors velocity_expansion_errors(const SurfaceData& data,
                                                  const RealField& vbar,
                                                  bool dealias_products = true);

}  // namespace fulldisp
