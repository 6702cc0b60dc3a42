#include "fulldisp/timeint.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fulldisp/conserved.hpp"
#include "fulldisp/dispersion.hpp"
#include "fulldisp/log.hpp"

namespace fulldisp {

namespace {

bool all_finite(const RealField& f) {
  for (double x : f.v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void axpy(RealField& y, double a, const RealField& x) {
  for (int j = 0; j < y.size(); ++j) y.v[j] += a * x.v[j];
}

}  // namespace

double default_dt(const Grid1D& grid, const Params& params) {
  const double xi_max = grid.xi(grid.n / 2);
  const double omega_max = eval_omega(params.mu, xi_max);
  return 0.5 / omega_max;
}

void rk4_step(ModelKind kind, RealField& zeta, RealField& q,
              const Params& params, const RhsOptions& opts, double dt,
              double t_now) {
  const auto [k1z, k1q] = model_rhs(kind, zeta, q, params, opts);
  RealField z2 = zeta;
  RealField q2 = q;
  axpy(z2, 0.5 * dt, k1z);
  axpy(q2, 0.5 * dt, k1q);
  const auto [k2z, k2q] = model_rhs(kind, z2, q2, params, opts);
  RealField z3 = zeta;
  RealField q3 = q;
  axpy(z3, 0.5 * dt, k2z);
  axpy(q3, 0.5 * dt, k2q);
  const auto [k3z, k3q] = model_rhs(kind, z3, q3, params, opts);
  RealField z4 = zeta;
  RealField q4 = q;
  axpy(z4, dt, k3z);
  axpy(q4, dt, k3q);
  const auto [k4z, k4q] = model_rhs(kind, z4, q4, params, opts);

  const double w = dt / 6.0;
  for (int j = 0; j < zeta.size(); ++j) {
    zeta.v[j] += w * (k1z.v[j] + 2.0 * k2z.v[j] + 2.0 * k3z.v[j] + k4z.v[j]);
    q.v[j] += w * (k1q.v[j] + 2.0 * k2q.v[j] + 2.0 * k3q.v[j] + k4q.v[j]);
  }

  if (!all_finite(zeta) || !all_finite(q)) {
    std::ostringstream msg;
    msg << "solution blew up (NaN/Inf) during the step from t = " << t_now
        << " of the " << model_name(kind) << " system";
    throw std::runtime_error(msg.str());
  }
  check_noncavitation(zeta, params);
}

IntegrationResult integrate(ModelKind kind, const RealField& zeta0,
                            const RealField& q0, const Params& params,
                            const StepperConfig& cfg, const RhsOptions& opts,
                            const DiagnosticsSink& sink) {
  params.validate();
  check_noncavitation(zeta0, params);
  if (!(cfg.t_end > 0.0)) {
    throw std::invalid_argument("integrate: t_end must be positive");
  }
  double dt = cfg.dt;
  int n_steps = 0;
  if (dt > 0.0) {
    n_steps = static_cast<int>(std::llround(cfg.t_end / dt));
    if (n_steps < 1 || std::abs(n_steps * dt - cfg.t_end) > 1e-9 * cfg.t_end) {
      std::ostringstream msg;
      msg << "integrate: t_end = " << cfg.t_end
          << " is not an integer number of steps of dt = " << dt;
      throw std::invalid_argument(msg.str());
    }
  } else {
    // Shrink the default step so an integer number of steps lands on t_end.
    const double dt0 = default_dt(zeta0.grid, params);
    n_steps = std::max(1, static_cast<int>(std::ceil(cfg.t_end / dt0)));
    dt = cfg.t_end / n_steps;
  }

  IntegrationResult result{zeta0, q0, 0.0, 0, {}};
  const bool psi_form = is_psi_form(kind);
  auto record = [&](int step, double time) {
    DiagnosticsRow row;
    row.step = step;
    row.time = time;
    row.mass = mass(result.zeta);
    row.momentum = psi_form ? momentum({result.zeta, result.q}) : 0.0;
    row.energy = model_energy(kind, result.zeta, result.q, params, opts);
    result.diagnostics.push_back(row);
    if (sink) sink(row);
  };

  if (cfg.record_every > 0) record(0, 0.0);
  for (int step = 1; step <= n_steps; ++step) {
    try {
      rk4_step(kind, result.zeta, result.q, params, opts, dt,
               (step - 1) * dt);
    } catch (...) {
      log_error("integration aborted at step " + std::to_string(step));
      throw;
    }
    result.time = step * dt;
    result.steps = step;
    if (cfg.record_every > 0 &&
        (step % cfg.record_every == 0 || step == n_steps)) {
      record(step, result.time);
    }
  }
  return result;
}

}  // namespace fulldisp
