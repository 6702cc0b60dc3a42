#include "fulldisp/consistency.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "fulldisp/dispersion.hpp"
#include "fulldisp/log.hpp"
#include "fulldisp/spectral.hpp"

namespace fulldisp {

namespace {

RealField depth_field(const RealField& zeta, const Params& params) {
  RealField h(zeta.grid);
  for (int j = 0; j < zeta.size(); ++j) h.v[j] = 1.0 + params.eps * zeta.v[j];
  return h;
}

// Dispersive flux entering the velocity transformation: G = dx(h^3 F3[dx V])
// + dx(F3[h^3 dx V]) for the plain form, or the single square-root-nested
// term for the symmetrized form (with weights h^3 replaced as given).
RealField vflux(const RealField& a, const RealField& v, const Params& params,
                bool sqrt_form, bool da) {
  const double mu = params.mu;
  const RealField dv = derivative(v, 1);
  if (sqrt_form) {
    return derivative(
        apply_sqrtF3(product(a, apply_sqrtF3(dv, mu), da), mu), 1);
  }
  return derivative(product(a, apply_F3(dv, mu), da), 1) +
         derivative(apply_F3(product(a, dv, da), mu), 1);
}

RealField vflux_classical(const RealField& a, const RealField& v,
                          bool sqrt_form, bool da) {
  const RealField dv = derivative(v, 1);
  RealField flux = derivative(product(a, dv, da), 1);
  if (!sqrt_form) flux *= 2.0;
  return flux;
}

// W = (Id + mu T[h]) V with T[h]V = -(1/(c h)) G, c = 6 (plain, two flux
// terms) or 3 (square-root form, one term).
RealField transform_w(const RealField& h, const RealField& v,
                      const Params& params, bool sqrt_form, bool full,
                      bool da) {
  const RealField h3 = product(product(h, h, da), h, da);
  RealField g = full ? vflux(h3, v, params, sqrt_form, da)
                     : vflux_classical(h3, v, sqrt_form, da);
  g *= -params.mu / (sqrt_form ? 3.0 : 6.0);
  return v + quotient(g, h, da);
}

}  // namespace

ConsistencyResult consistency_residual(ModelKind kind, const SurfaceData& data,
                                       const StripSolver& solver,
                                       const ConsistencyOptions& opts) {
  if (kind == ModelKind::WwRef) {
    throw std::invalid_argument(
        "consistency_residual: the reference system has no residual against "
        "itself");
  }
  const Params& params = data.params;
  const bool da = opts.dealias;
  RhsOptions ww_opts;
  ww_opts.solver_tol = opts.solver_tol;
  ww_opts.dealias = da;
  ww_opts.strip = &solver;
  const auto [dz_ww, dpsi_ww] =
      rhs_ww_ref({data.zeta, data.psi}, params, ww_opts);

  ConsistencyResult out;
  if (is_psi_form(kind)) {
    RhsOptions model_opts;
    model_opts.solver_tol = opts.solver_tol;
    model_opts.dealias = da;
    const auto [dz_m, dq_m] = model_rhs(kind, data.zeta, data.psi, params,
                                        model_opts);
    out.r_mass = norm_l2(dz_ww - dz_m);
    out.r_momentum = norm_l2(dpsi_ww - dq_m);
    out.combined = std::hypot(out.r_mass, out.r_momentum);
    return out;
  }

  const bool sqrt_form = kind == ModelKind::FdgnDit;
  const bool full = kind != ModelKind::Gn2Classical;
  const double mu = params.mu;
  const double eps = params.eps;
  const RealField h = depth_field(data.zeta, params);
  const StripField phi = solver.solve_potential(data, opts.solver_tol);
  const RealField vbar = solver.compute_vbar(data, phi);

  // First equation: evolve the transformed velocity through the model's own
  // recovery; the residual measures only the recovery tolerance.
  const RealField w = transform_w(h, vbar, params, sqrt_form, full, da);
  RhsOptions model_opts;
  model_opts.solver_tol = opts.solver_tol;
  model_opts.dealias = da;
  const auto [dz_m, dw_m_unused] =
      model_rhs(kind, data.zeta, w, params, model_opts);
  (void)dw_m_unused;
  out.r_mass = norm_l2(dz_ww - dz_m);

  // d/dt Vbar along the water-waves flow by centered differencing on
  // linearly extrapolated states, with a halving check.
  auto vbar_at = [&](double s) {
    RealField zs = data.zeta;
    RealField ps = data.psi;
    RealField dz_scaled = dz_ww;
    dz_scaled *= s;
    zs += dz_scaled;
    RealField dp_scaled = dpsi_ww;
    dp_scaled *= s;
    ps += dp_scaled;
    SurfaceData shifted(params, std::move(zs), std::move(ps));
    const StripField phis = solver.solve_potential(shifted, opts.solver_tol);
    return solver.compute_vbar(shifted, phis);
  };
  auto central = [&](double d) {
    RealField diff = vbar_at(d) - vbar_at(-d);
    diff *= 1.0 / (2.0 * d);
    return diff;
  };
  const RealField vdot_coarse = central(opts.delta_t);
  const RealField vdot = central(0.5 * opts.delta_t);
  const double vdot_norm = norm_l2(vdot);
  const double halving = norm_l2(vdot_coarse - vdot);
  out.dt_warning = halving > 0.1 * std::max(vdot_norm, 1e-300);
  if (out.dt_warning) {
    log_info("consistency_residual: centered difference for d/dt Vbar moved " +
             std::to_string(halving / std::max(vdot_norm, 1e-300)) +
             " under halving; decrease delta_t");
  }

  // d/dt W = Vdot + mu (dT/dt)[hdot] Vbar + mu T[h] Vdot, where the operator
  // derivative replaces the cubic weight by its time derivative 3 h^2 hdot
  // and shifts the prefactor by hdot/h.
  RealField hdot = dz_ww;
  hdot *= eps;
  const double c = sqrt_form ? 3.0 : 6.0;
  const RealField h3 = product(product(h, h, da), h, da);
  const RealField weight_dot = product(3.0 * product(h, h, da), hdot, da);
  RealField g = full ? vflux(h3, vbar, params, sqrt_form, da)
                     : vflux_classical(h3, vbar, sqrt_form, da);
  RealField gdot = full ? vflux(weight_dot, vbar, params, sqrt_form, da)
                        : vflux_classical(weight_dot, vbar, sqrt_form, da);
  RealField op_dt = product(quotient(hdot, product(h, h, da), da), g, da);
  op_dt -= quotient(gdot, h, da);
  op_dt *= mu / c;

  RealField tv = full ? vflux(h3, vdot, params, sqrt_form, da)
                      : vflux_classical(h3, vdot, sqrt_form, da);
  tv *= -mu / c;
  RealField wdot = vdot + op_dt + quotient(tv, h, da);

  const RealField rhs_w =
      vform_momentum_rhs(data.zeta, vbar, params, sqrt_form, full, da);
  out.r_momentum = norm_l2(wdot - rhs_w);
  out.combined = std::hypot(out.r_mass, out.r_momentum);
  return out;
}

std::vector<SweepPoint> consistency_sweep(
    ModelKind kind, const std::vector<double>& mu_values,
    const std::vector<double>& eps_values, int n, int nz, int jobs,
    double zeta_amplitude, double psi_amplitude,
    const ConsistencyOptions& opts) {
  if (mu_values.empty() || eps_values.empty()) {
    throw std::invalid_argument("consistency_sweep: empty parameter grid");
  }
  struct Task {
    double mu;
    double eps;
  };
  std::vector<Task> tasks;
  for (double mu : mu_values) {
    for (double eps : eps_values) tasks.push_back({mu, eps});
  }
  std::vector<SweepPoint> points(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());

  const Grid1D grid{n, 2.0 * M_PI};
  const RealField zeta =
      sample(grid, [&](double x) { return zeta_amplitude * std::cos(x); });
  const RealField psi =
      sample(grid, [&](double x) { return psi_amplitude * std::sin(x); });

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        Params params;
        params.mu = tasks[i].mu;
        params.eps = tasks[i].eps;
        params.validate();
        SurfaceData data(params, zeta, psi);
        StripSolver solver(grid, nz, params);
        points[i].mu = tasks[i].mu;
        points[i].eps = tasks[i].eps;
        points[i].result = consistency_residual(kind, data, solver, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int n_workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return points;
}

}  // namespace fulldisp
