// Classical fourth-order Runge-Kutta time stepping for every system, with
// blow-up detection, per-step non-cavitation checks, and a diagnostics sink.
#pragma once

#include <functional>
#include <vector>

#include "fulldisp/models.hpp"
#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"

namespace fulldisp {

struct StepperConfig {
  double dt = 0.0;       // 0 selects the default 0.5 / omega_max
  double t_end = 1.0;
  int record_every = 10;  // diagnostics cadence in steps; 0 disables
};

struct DiagnosticsRow {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double momentum = 0.0;  // psi-form systems only; 0 otherwise
  double energy = 0.0;
};

struct IntegrationResult {
  RealField zeta;
  RealField q;
  double time = 0.0;
  int steps = 0;
  std::vector<DiagnosticsRow> diagnostics;
};

// Frequency ceiling omega(xi_max) of the full-dispersion relation, used for
// the default step size.
double default_dt(const Grid1D& grid, const Params& params);

// One RK4 step; throws on NaN/Inf (with the time of failure) and re-checks
// non-cavitation on the accepted state.
void rk4_step(ModelKind kind, RealField& zeta, RealField& q,
              const Params& params, const RhsOptions& opts, double dt,
              double t_now);

using DiagnosticsSink = std::function<void(const DiagnosticsRow&)>;

// Integrate to t_end. Diagnostics rows are produced every record_every steps
// (plus the initial and final states) and also pushed to the optional sink.
// On blow-up or cavitation the error propagates after the partial series has
// been delivered to the sink.
IntegrationResult integrate(ModelKind kind, const RealField& zeta0,
                            const RealField& q0, const Params& params,
                            const StepperConfig& cfg,
                            const RhsOptions& opts = {},
                            const DiagnosticsSink& sink = nullptr);

}  // namespace fulldisp
