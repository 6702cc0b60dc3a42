// Right-hand sides and operator algebra for the evolution systems: the two
// full-dispersion Green-Naghdi systems, the square-root-symmetrized variant,
// the Whitham-Boussinesq system, their classical (multiplier = identity)
// specializations, and the reference water-waves system driven by the strip
// solver.
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"
#include "fulldisp/strip.hpp"

namespace fulldisp {

enum class ModelKind {
  WwRef,
  Fdgn1,
  Fdgn2,
  FdgnDit,
  Wb,
  Gn1Classical,
  Gn2Classical,
  WbClassical,
};

// Parse/print the config-file spelling ("ww-ref", "fdgn1", ...).
ModelKind model_from_string(const std::string& name);
std::string model_name(ModelKind kind);
// True when the second prognostic field is the surface potential psi; false
// when it is the transformed velocity W.
bool is_psi_form(ModelKind kind);

// State of a psi-form system.
struct WaveStatePsi {
  RealField zeta;
  RealField psi;
};

// State of a velocity-form system; w is the prognostic (Id + mu T[h]) Vbar.
struct WaveStateV {
  RealField zeta;
  RealField w;
};

struct RhsOptions {
  // Tolerance of the embedded operator inversions, relative to each solve's
  // own scale. The strip solver's fixed-point iteration carries an absolute
  // residual floor near 2e-12 on non-flat surfaces, so defaults tighter than
  // ~1e-11 are only attainable for order-one data; 1e-11 is the tightest
  // value that is robust across the regimes the models are used in.
  double solver_tol = 1e-11;
  bool dealias = true;
  const StripSolver* strip = nullptr;  // required for ModelKind::WwRef only
};

void check_noncavitation(const RealField& zeta, const Params& params);

// T[h]V = -(1/(6h)) (dx(h^3 F3[dx V]) + dx(F3[h^3 dx V])); full_dispersion
// false replaces F3 by the identity (classical Green-Naghdi).
RealField apply_T(const RealField& h, const RealField& v, const Params& params,
                  bool full_dispersion = true, bool dealias_products = true);

// I[h]V = h(V + mu T[h]V).
RealField apply_I(const RealField& h, const RealField& v, const Params& params,
                  bool full_dispersion = true, bool dealias_products = true);

// Solve (Id + mu T[h]) V = W, i.e. I[h]V = hW, by preconditioned conjugate
// gradients on the symmetric form. Throws a domain error naming (mu, eps,
// depth range) if the operator turns out indefinite, which the source
// analysis warns can happen for large eps*zeta.
RealField solve_I(const RealField& h, const RealField& w, const Params& params,
                  double tol = 1e-12, bool full_dispersion = true,
                  bool dealias_products = true);

// Square-root-symmetrized dispersive operator of the DIT-form system:
// J[h]V = hV - (mu/3) dx(sqrtF3[h^3 sqrtF3[dx V]]), symmetric positive
// definite with Rayleigh quotient at least min(h).
RealField apply_J(const RealField& h, const RealField& v, const Params& params,
                  bool full_dispersion = true, bool dealias_products = true);

// Solve J[h]V = hW by conjugate gradients.
RealField solve_J(const RealField& h, const RealField& w, const Params& params,
                  double tol = 1e-12, bool full_dispersion = true,
                  bool dealias_products = true);

using RhsPair = std::pair<RealField, RealField>;

RhsPair rhs_fdgn1(const WaveStatePsi& state, const Params& params,
                  const RhsOptions& opts = {}, bool full_dispersion = true);
RhsPair rhs_fdgn2(const WaveStateV& state, const Params& params,
                  const RhsOptions& opts = {}, bool full_dispersion = true);
RhsPair rhs_fdgn_dit(const WaveStateV& state, const Params& params,
                     const RhsOptions& opts = {}, bool full_dispersion = true);
RhsPair rhs_wb(const WaveStatePsi& state, const Params& params,
               const RhsOptions& opts = {}, bool full_dispersion = true);
RhsPair rhs_ww_ref(const WaveStatePsi& state, const Params& params,
                   const RhsOptions& opts);

// The W-equation right-hand side of the velocity-form systems, evaluated at
// a given recovered velocity (sqrt_form selects the square-root-symmetrized
// dispersive flux and its coefficient).
RealField vform_momentum_rhs(const RealField& zeta, const RealField& vbar,
                             const Params& params, bool sqrt_form,
                             bool full_dispersion = true, bool dealias = true);

// Linear dispersion of a system, measured by applying the right-hand side to
// single-mode data of amplitude delta and extracting the generator entries;
// returns omega^2, which classical long-wave models can make negative.
double measured_omega_squared(ModelKind kind, const Grid1D& grid,
                              const Params& params, int mode,
                              double delta = 1e-8,
                              const StripSolver* strip = nullptr);

// Generic dispatch on (zeta, q) where q is psi or w according to the kind.
RhsPair model_rhs(ModelKind kind, const RealField& zeta, const RealField& q,
                  const Params& params, const RhsOptions& opts = {});

}  // namespace fulldisp
