#include "fulldisp/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fulldisp/dispersion.hpp"
#include "fulldisp/log.hpp"

namespace fulldisp {

namespace {

// F-multiplier application that collapses to the identity for the classical
// (long-wave Taylor) specializations of each system.
RealField mul_F1(const RealField& f, double mu, bool full) {
  return full ? apply_F1(f, mu) : f;
}
RealField mul_F2(const RealField& f, double mu, bool full) {
  return full ? apply_F2(f, mu) : f;
}
RealField mul_F3(const RealField& f, double mu, bool full) {
  return full ? apply_F3(f, mu) : f;
}
RealField mul_sqrtF3(const RealField& f, double mu, bool full) {
  return full ? apply_sqrtF3(f, mu) : f;
}

RealField depth_field(const RealField& zeta, const Params& params) {
  RealField h(zeta.grid);
  for (int j = 0; j < zeta.size(); ++j) h.v[j] = 1.0 + params.eps * zeta.v[j];
  return h;
}

RealField cube(const RealField& h, bool da) {
  return product(product(h, h, da), h, da);
}

struct CgReport {
  int iterations = 0;
  double residual = 0.0;
  double rhs_norm = 0.0;
};

// Preconditioned conjugate gradients for the symmetric operators I[h] and
// J[h]. The preconditioner is the constant-depth symbol of the operator,
// 1 + (mu xi^2 / 3) F3(mu, xi), which is exact at eps = 0.
template <typename Op>
RealField conjugate_gradient(const Op& op, const RealField& rhs,
                             const Params& params, bool full, double tol,
                             int max_iter, const char* op_name,
                             const RealField& h, CgReport* report) {
  const double mu = params.mu;
  auto precond = [&](const RealField& r) {
    return apply_multiplier(r, [&](double xi) {
      double f3 = full ? eval_F3(mu, xi) : 1.0;
      return 1.0 / (1.0 + mu * xi * xi * f3 / 3.0);
    });
  };

  const double rhs_norm = norm_l2(rhs);
  RealField x(rhs.grid);
  if (rhs_norm == 0.0) {
    if (report) *report = CgReport{0, 0.0, 0.0};
    return x;
  }

  x = precond(rhs);
  RealField r = rhs - op(x);
  RealField z = precond(r);
  RealField p = z;
  double rz = inner(r, z);
  double res = norm_l2(r);
  int iter = 0;
  for (; iter < max_iter && res > tol * rhs_norm; ++iter) {
    RealField ap = op(p);
    const double pap = inner(p, ap);
    if (!(pap > 0.0)) {
      double hmin = h.v[0];
      double hmax = h.v[0];
      for (double hv : h.v) {
        hmin = std::min(hmin, hv);
        hmax = std::max(hmax, hv);
      }
      const double zeta_inf =
          params.eps > 0.0
              ? std::max(std::abs(hmax - 1.0), std::abs(hmin - 1.0)) /
                    params.eps
              : 0.0;
      std::ostringstream msg;
      msg << op_name << ": operator not positive definite (p^T A p = " << pap
          << " at iteration " << iter << "); mu = " << params.mu
          << ", eps = " << params.eps << ", |zeta|_inf = " << zeta_inf
          << ", depth range [" << hmin << ", " << hmax
          << "]. The operator is only guaranteed invertible for small enough "
             "eps * zeta.";
      throw std::domain_error(msg.str());
    }
    const double alpha = rz / pap;
    for (int j = 0; j < x.size(); ++j) {
      x.v[j] += alpha * p.v[j];
      r.v[j] -= alpha * ap.v[j];
    }
    res = norm_l2(r);
    if (res <= tol * rhs_norm) {
      ++iter;
      break;
    }
    z = precond(r);
    const double rz_next = inner(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int j = 0; j < p.size(); ++j) p.v[j] = z.v[j] + beta * p.v[j];
  }
  if (res > tol * rhs_norm) {
    std::ostringstream msg;
    msg << op_name << ": conjugate gradients failed to reach tolerance "
        << tol << " after " << iter << " iterations (relative residual "
        << res / rhs_norm << "); mu = " << params.mu
        << ", eps = " << params.eps;
    throw std::runtime_error(msg.str());
  }
  if (report) *report = CgReport{iter, res, rhs_norm};
  return x;
}

}  // namespace

ModelKind model_from_string(const std::string& name) {
  if (name == "ww-ref") return ModelKind::WwRef;
  if (name == "fdgn1") return ModelKind::Fdgn1;
  if (name == "fdgn2") return ModelKind::Fdgn2;
  if (name == "fdgn-dit") return ModelKind::FdgnDit;
  if (name == "wb") return ModelKind::Wb;
  if (name == "gn1-classical") return ModelKind::Gn1Classical;
  if (name == "gn2-classical") return ModelKind::Gn2Classical;
  if (name == "wb-classical") return ModelKind::WbClassical;
  throw std::invalid_argument("unknown model name: " + name);
}

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::WwRef: return "ww-ref";
    case ModelKind::Fdgn1: return "fdgn1";
    case ModelKind::Fdgn2: return "fdgn2";
    case ModelKind::FdgnDit: return "fdgn-dit";
    case ModelKind::Wb: return "wb";
    case ModelKind::Gn1Classical: return "gn1-classical";
    case ModelKind::Gn2Classical: return "gn2-classical";
    case ModelKind::WbClassical: return "wb-classical";
  }
  throw std::logic_error("unreachable model kind");
}

bool is_psi_form(ModelKind kind) {
  switch (kind) {
    case ModelKind::Fdgn2:
    case ModelKind::Gn2Classical:
    case ModelKind::FdgnDit:
      return false;
    default:
      return true;
  }
}

void check_noncavitation(const RealField& zeta, const Params& params) {
  for (int j = 0; j < zeta.size(); ++j) {
    const double h = 1.0 + params.eps * zeta.v[j];
    if (!(h >= params.h_min)) {
      std::ostringstream msg;
      msg << "non-cavitation violated: depth " << h << " < h_min "
          << params.h_min << " at x = " << zeta.grid.x(j);
      throw std::domain_error(msg.str());
    }
  }
}

RealField apply_T(const RealField& h, const RealField& v, const Params& params,
                  bool full_dispersion, bool dealias_products) {
  const double mu = params.mu;
  const bool da = dealias_products;
  const RealField h3 = cube(h, da);
  const RealField dv = derivative(v, 1);
  const RealField t1 =
      derivative(product(h3, mul_F3(dv, mu, full_dispersion), da), 1);
  const RealField t2 =
      derivative(mul_F3(product(h3, dv, da), mu, full_dispersion), 1);
  RealField sum = t1 + t2;
  sum *= -1.0 / 6.0;
  return quotient(sum, h, da);
}

RealField apply_I(const RealField& h, const RealField& v, const Params& params,
                  bool full_dispersion, bool dealias_products) {
  RealField tv = apply_T(h, v, params, full_dispersion, dealias_products);
  tv *= params.mu;
  tv += v;
  return product(h, tv, dealias_products);
}

RealField solve_I(const RealField& h, const RealField& w, const Params& params,
                  double tol, bool full_dispersion, bool dealias_products) {
  const bool da = dealias_products;
  RealField rhs = product(h, w, da);
  if (da) rhs = dealias(rhs);
  auto op = [&](const RealField& v) {
    RealField out = apply_I(h, v, params, full_dispersion, da);
    return da ? dealias(out) : out;
  };
  return conjugate_gradient(op, rhs, params, full_dispersion, tol, 500,
                            "solve_I", h, nullptr);
}

RealField apply_J(const RealField& h, const RealField& v, const Params& params,
                  bool full_dispersion, bool dealias_products) {
  const double mu = params.mu;
  const bool da = dealias_products;
  const RealField h3 = cube(h, da);
  const RealField inner_part =
      mul_sqrtF3(product(h3, mul_sqrtF3(derivative(v, 1), mu, full_dispersion),
                         da),
                 mu, full_dispersion);
  RealField correction = derivative(inner_part, 1);
  correction *= -(mu / 3.0);
  return product(h, v, da) + correction;
}

RealField solve_J(const RealField& h, const RealField& w, const Params& params,
                  double tol, bool full_dispersion, bool dealias_products) {
  const bool da = dealias_products;
  RealField rhs = product(h, w, da);
  if (da) rhs = dealias(rhs);
  auto op = [&](const RealField& v) {
    RealField out = apply_J(h, v, params, full_dispersion, da);
    return da ? dealias(out) : out;
  };
  return conjugate_gradient(op, rhs, params, full_dispersion, tol, 500,
                            "solve_J", h, nullptr);
}

RhsPair rhs_fdgn1(const WaveStatePsi& state, const Params& params,
                  const RhsOptions& opts, bool full_dispersion) {
  const double mu = params.mu;
  const double eps = params.eps;
  const bool da = opts.dealias;
  const RealField h = depth_field(state.zeta, params);
  const RealField h3 = cube(h, da);
  const RealField lap = derivative(state.psi, 2);
  const RealField f2lap = mul_F2(lap, mu, full_dispersion);
  const RealField psix = derivative(state.psi, 1);

  RealField dzeta = derivative(product(h, psix, da), 1);
  dzeta *= -1.0;
  RealField disp =
      derivative(mul_F2(product(h3, lap, da), mu, full_dispersion), 2) +
      derivative(product(h3, f2lap, da), 2);
  disp *= -(mu / 6.0);
  dzeta += disp;

  RealField dpsi = state.zeta;
  dpsi *= -1.0;
  RealField quad = product(psix, psix, da);
  quad *= -(eps / 2.0);
  dpsi += quad;
  RealField cubic = product(product(h, h, da), product(f2lap, lap, da), da);
  cubic *= mu * eps / 2.0;
  dpsi += cubic;
  return {std::move(dzeta), std::move(dpsi)};
}

RhsPair rhs_wb(const WaveStatePsi& state, const Params& params,
               const RhsOptions& opts, bool full_dispersion) {
  const double mu = params.mu;
  const double eps = params.eps;
  const bool da = opts.dealias;
  const RealField psix = derivative(state.psi, 1);
  const RealField f1psix = mul_F1(psix, mu, full_dispersion);

  RealField dzeta = mul_F1(derivative(state.psi, 2), mu, full_dispersion);
  RealField transport = mul_F1(
      derivative(product(state.zeta, f1psix, da), 1), mu, full_dispersion);
  transport *= eps;
  dzeta += transport;
  dzeta *= -1.0;

  RealField dpsi = state.zeta;
  dpsi *= -1.0;
  RealField quad = product(f1psix, f1psix, da);
  quad *= -(eps / 2.0);
  dpsi += quad;
  return {std::move(dzeta), std::move(dpsi)};
}

RhsPair rhs_ww_ref(const WaveStatePsi& state, const Params& params,
                   const RhsOptions& opts) {
  if (opts.strip == nullptr) {
    throw std::invalid_argument(
        "rhs_ww_ref requires RhsOptions::strip to point at a StripSolver");
  }
  const double mu = params.mu;
  const double eps = params.eps;
  const bool da = opts.dealias;
  SurfaceData data(params, state.zeta, state.psi);
  const RealField dtn = opts.strip->compute_dtn(data, opts.solver_tol);

  RealField dzeta = dtn;
  dzeta *= 1.0 / mu;

  const RealField zx = derivative(state.zeta, 1);
  const RealField px = derivative(state.psi, 1);
  RealField numerator = product(zx, px, da);
  numerator *= eps * mu;
  numerator += dtn;
  const RealField numsq = product(numerator, numerator, da);
  RealField dpsi(state.zeta.grid);
  for (int j = 0; j < dpsi.size(); ++j) {
    const double den = 2.0 * (1.0 + eps * eps * mu * zx.v[j] * zx.v[j]);
    dpsi.v[j] = (eps / mu) * numsq.v[j] / den;
  }
  if (da) dpsi = dealias(dpsi);
  RealField quad = product(px, px, da);
  quad *= eps / 2.0;
  dpsi -= quad;
  dpsi -= state.zeta;
  return {std::move(dzeta), std::move(dpsi)};
}

RealField vform_momentum_rhs(const RealField& zeta, const RealField& vbar,
                             const Params& params, bool sqrt_form,
                             bool full_dispersion, bool dealias) {
  const double mu = params.mu;
  const double eps = params.eps;
  const bool da = dealias;
  const RealField h = depth_field(zeta, params);
  const RealField h3 = cube(h, da);
  const RealField dv = derivative(vbar, 1);

  // quad_dv is the density whose h^2-weighted integral is the dispersive part
  // of the energy; it differs between the plain and square-root realizations
  // of the operator, and the momentum flux must match the energy exactly.
  RealField flux(zeta.grid);
  RealField quad_dv(zeta.grid);
  double coeff = 0.0;
  if (sqrt_form) {
    const RealField gdv = mul_sqrtF3(dv, mu, full_dispersion);
    flux = mul_sqrtF3(product(h3, gdv, da), mu, full_dispersion);
    quad_dv = product(gdv, gdv, da);
    coeff = mu * eps / 3.0;
  } else {
    const RealField f3dv = mul_F3(dv, mu, full_dispersion);
    flux = product(h3, f3dv, da) +
           mul_F3(product(h3, dv, da), mu, full_dispersion);
    quad_dv = product(f3dv, dv, da);
    coeff = mu * eps / 6.0;
  }
  const RealField s = derivative(flux, 1);

  RealField dw = derivative(zeta, 1);
  dw *= -1.0;
  RealField quad = derivative(product(vbar, vbar, da), 1);
  quad *= -(eps / 2.0);
  dw += quad;
  RealField ta = derivative(quotient(product(vbar, s, da), h, da), 1);
  ta *= coeff;
  dw += ta;
  RealField tb = derivative(product(product(h, h, da), quad_dv, da), 1);
  tb *= mu * eps / 2.0;
  dw += tb;
  return dw;
}

namespace {

RhsPair vform_rhs(const WaveStateV& state, const Params& params,
                  const RhsOptions& opts, bool full_dispersion,
                  bool sqrt_form) {
  const bool da = opts.dealias;
  const RealField h = depth_field(state.zeta, params);
  const RealField vbar =
      sqrt_form
          ? solve_J(h, state.w, params, opts.solver_tol, full_dispersion, da)
          : solve_I(h, state.w, params, opts.solver_tol, full_dispersion, da);
  RealField dzeta = derivative(product(h, vbar, da), 1);
  dzeta *= -1.0;
  RealField dw = vform_momentum_rhs(state.zeta, vbar, params, sqrt_form,
                                    full_dispersion, da);
  return {std::move(dzeta), std::move(dw)};
}

}  // namespace

RhsPair rhs_fdgn2(const WaveStateV& state, const Params& params,
                  const RhsOptions& opts, bool full_dispersion) {
  return vform_rhs(state, params, opts, full_dispersion, /*sqrt_form=*/false);
}

RhsPair rhs_fdgn_dit(const WaveStateV& state, const Params& params,
                     const RhsOptions& opts, bool full_dispersion) {
  return vform_rhs(state, params, opts, full_dispersion, /*sqrt_form=*/true);
}

double measured_omega_squared(ModelKind kind, const Grid1D& grid,
                              const Params& params, int mode, double delta,
                              const StripSolver* strip) {
  if (mode < 1 || mode >= grid.num_modes() - 1) {
    throw std::invalid_argument(
        "measured_omega_squared: mode must lie strictly inside the spectrum");
  }
  RhsOptions opts;
  opts.strip = strip;
  const double xi = grid.xi(mode);
  const RealField bump = sample(
      grid, [&](double x) { return delta * std::cos(xi * x); });
  const RealField zero(grid);

  // Generator entries d/dt [zeta_k; q_k] = [[L11, L12]; [L21, L22]] applied
  // to single-mode data; the quadratic terms only feed modes 0 and 2k.
  const auto [dz_a, dq_a] = model_rhs(kind, bump, zero, params, opts);
  const auto [dz_b, dq_b] = model_rhs(kind, zero, bump, params, opts);
  const std::complex<double> amp = forward(bump).c[mode];
  const std::complex<double> l21 = forward(dq_a).c[mode] / amp;
  const std::complex<double> l12 = forward(dz_b).c[mode] / amp;
  return -(l12 * l21).real();
}

RhsPair model_rhs(ModelKind kind, const RealField& zeta, const RealField& q,
                  const Params& params, const RhsOptions& opts) {
  switch (kind) {
    case ModelKind::WwRef:
      return rhs_ww_ref({zeta, q}, params, opts);
    case ModelKind::Fdgn1:
      return rhs_fdgn1({zeta, q}, params, opts, true);
    case ModelKind::Gn1Classical:
      return rhs_fdgn1({zeta, q}, params, opts, false);
    case ModelKind::Fdgn2:
      return rhs_fdgn2({zeta, q}, params, opts, true);
    case ModelKind::Gn2Classical:
      return rhs_fdgn2({zeta, q}, params, opts, false);
    case ModelKind::FdgnDit:
      return rhs_fdgn_dit({zeta, q}, params, opts, true);
    case ModelKind::Wb:
      return rhs_wb({zeta, q}, params, opts, true);
    case ModelKind::WbClassical:
      return rhs_wb({zeta, q}, params, opts, false);
  }
  throw std::logic_error("unreachable model kind");
}

}  // namespace fulldisp
