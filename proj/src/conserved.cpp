#include "fulldisp/conserved.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fulldisp/dispersion.hpp"

namespace fulldisp {

namespace {

RealField depth_field(const RealField& zeta, const Params& params) {
  RealField h(zeta.grid);
  for (int j = 0; j < zeta.size(); ++j) h.v[j] = 1.0 + params.eps * zeta.v[j];
  return h;
}

double half_l2_squared(const RealField& f) { return 0.5 * inner(f, f); }

}  // namespace

double mass(const RealField& zeta) { return integrate(zeta); }

double momentum(const WaveStatePsi& state) {
  return inner(state.zeta, derivative(state.psi, 1));
}

double hamiltonian_ww(const SurfaceData& data, const StripSolver& solver,
                      double tol) {
  const RealField dtn = solver.compute_dtn(data, tol);
  return half_l2_squared(data.zeta) +
         0.5 / data.params.mu * inner(data.psi, dtn);
}

double hamiltonian_app1(const WaveStatePsi& state, const Params& params,
                        bool full_dispersion, bool dealias) {
  const double mu = params.mu;
  const bool da = dealias;
  const RealField h = depth_field(state.zeta, params);
  const RealField psix = derivative(state.psi, 1);
  const RealField lap = derivative(state.psi, 2);
  const RealField h3 = product(product(h, h, da), h, da);
  const RealField f2lap = full_dispersion ? apply_F2(lap, mu) : lap;
  const double quadratic = 0.5 * inner(product(h, psix, da), psix);
  const double dispersive =
      mu / 6.0 * inner(derivative(product(h3, f2lap, da), 1), psix);
  return half_l2_squared(state.zeta) + quadratic + dispersive;
}

double hamiltonian_app2(const WaveStatePsi& state, const Params& params,
                        double tol, bool full_dispersion, bool dealias) {
  const bool da = dealias;
  const RealField h = depth_field(state.zeta, params);
  const RealField psix = derivative(state.psi, 1);
  const RealField va = solve_I(h, psix, params, tol, full_dispersion, da);
  return half_l2_squared(state.zeta) + 0.5 * inner(product(h, va, da), psix);
}

double hamiltonian_wb(const WaveStatePsi& state, const Params& params,
                      bool full_dispersion, bool dealias) {
  const double mu = params.mu;
  const double eps = params.eps;
  const bool da = dealias;
  const RealField psix = derivative(state.psi, 1);
  const RealField f1psix = full_dispersion ? apply_F1(psix, mu) : psix;
  return half_l2_squared(state.zeta) + 0.5 * inner(psix, f1psix) +
         eps / 2.0 * inner(state.zeta, product(f1psix, f1psix, da));
}

double energy_vform(const WaveStateV& state, const Params& params,
                    bool sqrt_form, double tol, bool full_dispersion,
                    bool dealias) {
  const bool da = dealias;
  const RealField h = depth_field(state.zeta, params);
  const RealField vbar =
      sqrt_form ? solve_J(h, state.w, params, tol, full_dispersion, da)
                : solve_I(h, state.w, params, tol, full_dispersion, da);
  return half_l2_squared(state.zeta) +
         0.5 * inner(vbar, product(h, state.w, da));
}

double model_energy(ModelKind kind, const RealField& zeta, const RealField& q,
                    const Params& params, const RhsOptions& opts) {
  switch (kind) {
    case ModelKind::WwRef: {
      SurfaceData data(params, zeta, q);
      if (opts.strip == nullptr) {
        throw std::invalid_argument(
            "model_energy(ww-ref) requires RhsOptions::strip");
      }
      return hamiltonian_ww(data, *opts.strip, opts.solver_tol);
    }
    case ModelKind::Fdgn1:
      return hamiltonian_app1({zeta, q}, params, true, opts.dealias);
    case ModelKind::Gn1Classical:
      return hamiltonian_app1({zeta, q}, params, false, opts.dealias);
    case ModelKind::Fdgn2:
      return energy_vform({zeta, q}, params, false, opts.solver_tol, true,
                          opts.dealias);
    case ModelKind::Gn2Classical:
      return energy_vform({zeta, q}, params, false, opts.solver_tol, false,
                          opts.dealias);
    case ModelKind::FdgnDit:
      return energy_vform({zeta, q}, params, true, opts.solver_tol, true,
                          opts.dealias);
    case ModelKind::Wb:
      return hamiltonian_wb({zeta, q}, params, true, opts.dealias);
    case ModelKind::WbClassical:
      return hamiltonian_wb({zeta, q}, params, false, opts.dealias);
  }
  throw std::logic_error("unreachable model kind");
}

GradPair grad_hamiltonian_app1(const WaveStatePsi& state, const Params& params,
                               bool full_dispersion, bool dealias) {
  // The flow is canonical: zeta_t = dH/dpsi and psi_t = -dH/dzeta, so the
  // gradients are read off the right-hand side.
  RhsOptions opts;
  opts.dealias = dealias;
  auto [dzeta, dpsi] = rhs_fdgn1(state, params, opts, full_dispersion);
  dpsi *= -1.0;
  return {std::move(dpsi), std::move(dzeta)};
}

GradPair grad_hamiltonian_app2(const WaveStatePsi& state, const Params& params,
                               double tol, bool full_dispersion,
                               bool dealias) {
  const double mu = params.mu;
  const double eps = params.eps;
  const bool da = dealias;
  const RealField h = depth_field(state.zeta, params);
  const RealField psix = derivative(state.psi, 1);
  const RealField va = solve_I(h, psix, params, tol, full_dispersion, da);

  RealField grad_psi = derivative(product(h, va, da), 1);
  grad_psi *= -1.0;

  const RealField dva = derivative(va, 1);
  const RealField f3dva = full_dispersion ? apply_F3(dva, mu) : dva;
  RealField grad_zeta = state.zeta;
  RealField coupling = product(va, psix, da);
  coupling *= eps;
  grad_zeta += coupling;
  RealField quad = product(va, va, da);
  quad *= -(eps / 2.0);
  grad_zeta += quad;
  RealField disp = product(product(h, h, da), product(f3dva, dva, da), da);
  disp *= -(mu * eps / 2.0);
  grad_zeta += disp;
  return {std::move(grad_zeta), std::move(grad_psi)};
}

namespace {

RealField random_band_limited(const Grid1D& grid, std::mt19937& rng,
                              bool include_mean) {
  SpectralField s(grid);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int kmax = std::max(2, grid.n / 4);
  if (include_mean) s.c[0] = unif(rng);
  for (int k = 1; k <= kmax && k < grid.num_modes(); ++k) {
    s.c[k] = std::complex<double>(unif(rng), unif(rng)) / (1.0 + k * k);
  }
  RealField f = inverse(s);
  const double scale = norm_inf(f);
  if (scale > 0.0) f *= 1.0 / scale;
  return f;
}

}  // namespace

double variational_check(const WaveStatePsi& state, const Params& params,
                         int which, int n_dirs, double h_fd, unsigned seed) {
  if (which != 1 && which != 2) {
    throw std::invalid_argument("variational_check: which must be 1 or 2");
  }
  if (n_dirs < 1) {
    throw std::invalid_argument("variational_check: n_dirs must be positive");
  }
  auto energy = [&](const WaveStatePsi& s) {
    return which == 1 ? hamiltonian_app1(s, params)
                      : hamiltonian_app2(s, params, 1e-13);
  };
  const GradPair grad = which == 1
                            ? grad_hamiltonian_app1(state, params)
                            : grad_hamiltonian_app2(state, params, 1e-13);

  std::mt19937 rng(seed);
  double worst = 0.0;
  for (int d = 0; d < n_dirs; ++d) {
    for (int field = 0; field < 2; ++field) {
      const bool vary_zeta = field == 0;
      const RealField dir =
          random_band_limited(state.zeta.grid, rng, vary_zeta);
      WaveStatePsi plus = state;
      WaveStatePsi minus = state;
      RealField scaled = dir;
      scaled *= h_fd;
      if (vary_zeta) {
        plus.zeta += scaled;
        minus.zeta -= scaled;
      } else {
        plus.psi += scaled;
        minus.psi -= scaled;
      }
      const double fd = (energy(plus) - energy(minus)) / (2.0 * h_fd);
      const double ip = inner(vary_zeta ? grad.zeta : grad.psi, dir);
      const double denom = std::max({std::abs(fd), std::abs(ip), 1e-14});
      worst = std::max(worst, std::abs(fd - ip) / denom);
    }
  }
  return worst;
}

}  // namespace fulldisp
