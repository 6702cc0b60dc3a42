// Conserved quantities (mass, momentum, energies) for each system, the
// discrete variational gradients of the approximate Hamiltonians, and a
// finite-difference check that those gradients are exact.
#pragma once

#include "fulldisp/models.hpp"
#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"
#include "fulldisp/strip.hpp"

namespace fulldisp {

double mass(const RealField& zeta);
// Horizontal impulse of a psi-form state, integral of zeta * dx(psi).
double momentum(const WaveStatePsi& state);

// Exact water-waves energy 1/2 int zeta^2 + 1/(2 mu) int psi G[zeta]psi,
// evaluated with the strip solver.
double hamiltonian_ww(const SurfaceData& data, const StripSolver& solver,
                      double tol = 1e-10);

// First approximate Hamiltonian:
// 1/2 int zeta^2 + 1/2 int h |dx psi|^2 + mu/6 int dx(h^3 F2[lap psi]) dx psi.
double hamiltonian_app1(const WaveStatePsi& state, const Params& params,
                        bool full_dispersion = true, bool dealias = true);

// Second approximate Hamiltonian:
// 1/2 int zeta^2 + 1/2 int h V_a dx psi with V_a = I[h]^{-1}[h dx psi].
double hamiltonian_app2(const WaveStatePsi& state, const Params& params,
                        double tol = 1e-12, bool full_dispersion = true,
                        bool dealias = true);

// Energy conserved by the Whitham-Boussinesq flow:
// 1/2 int zeta^2 + 1/2 int dx psi F1[dx psi] + eps/2 int zeta (F1[dx psi])^2.
double hamiltonian_wb(const WaveStatePsi& state, const Params& params,
                      bool full_dispersion = true, bool dealias = true);

// Energy of the velocity-form systems in their prognostic variables:
// 1/2 int zeta^2 + 1/2 int Vbar . (h w), with Vbar recovered from w through
// I[h] (sqrt_form false) or J[h] (sqrt_form true). The default tolerance
// matches RhsOptions::solver_tol so dispatched and direct evaluations of the
// same state agree exactly.
double energy_vform(const WaveStateV& state, const Params& params,
                    bool sqrt_form, double tol = 1e-11,
                    bool full_dispersion = true, bool dealias = true);

// Energy reported by the time integrator for the given system.
double model_energy(ModelKind kind, const RealField& zeta, const RealField& q,
                    const Params& params, const RhsOptions& opts);

struct GradPair {
  RealField zeta;
  RealField psi;
};

GradPair grad_hamiltonian_app1(const WaveStatePsi& state, const Params& params,
                               bool full_dispersion = true,
                               bool dealias = true);
GradPair grad_hamiltonian_app2(const WaveStatePsi& state, const Params& params,
                               double tol = 1e-12, bool full_dispersion = true,
                               bool dealias = true);

// Compare the analytic gradient of H_app1 (which = 1) or H_app2 (which = 2)
// against centered finite differences of the Hamiltonian along n_dirs random
// band-limited directions in each field; returns the worst relative error.
double variational_check(const WaveStatePsi& state, const Params& params,
                         int which, int n_dirs = 5, double h_fd = 1e-5,
                         unsigned seed = 12345);

}  // namespace fulldisp
