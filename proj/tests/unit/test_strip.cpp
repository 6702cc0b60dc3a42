#include <cmath>

#include "fulldisp/approx.hpp"
#include "fulldisp/dispersion.hpp"
#include "fulldisp/spectral.hpp"
#include "fulldisp/strip.hpp"
#include "test_framework.hpp"

using namespace fulldisp;

namespace {

RealField band_limited_psi(const Grid1D& grid) {
  return sample(grid, [](double x) {
    return std::sin(x) + 0.3 * std::cos(2.0 * x) - 0.2 * std::sin(3.0 * x) +
           0.1 * std::cos(4.0 * x);
  });
}

}  // namespace

TEST_CASE(surface_data_checks_noncavitation) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.5;
  const RealField psi(grid);
  const RealField deep =
      sample(grid, [](double x) { return -2.0 + 0.1 * std::cos(x); });
  CHECK_THROWS(SurfaceData(params, deep, psi));
  const RealField ok = sample(grid, [](double x) { return 0.3 * std::cos(x); });
  const SurfaceData data(params, ok, psi);
  CHECK_CLOSE(data.depth()[0], 1.0 + 0.5 * 0.3, 1e-15);
}

TEST_CASE(flat_dtn_matches_symbol_across_depth_regimes) {
  const Grid1D grid(128, 2.0 * M_PI);
  for (double mu : {0.01, 0.1, 1.0}) {
    Params params;
    params.mu = mu;
    params.eps = 0.0;
    StripSolver solver(grid, 24, params);
    const RealField psi = band_limited_psi(grid);
    const SurfaceData data(params, RealField(grid), psi);
    const RealField got = solver.compute_dtn(data, 1e-12);
    const RealField want = apply_multiplier(psi, [&](double xi) {
      const double x = std::sqrt(mu) * std::abs(xi);
      return x * std::tanh(x);
    });
    const double rel = norm_l2(got - want) / norm_l2(want);
    CHECK(rel < 1e-10);
  }
}

TEST_CASE(flat_potential_has_the_cosh_profile) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 1.0;
  params.eps = 0.0;
  StripSolver solver(grid, 24, params);
  const RealField psi = sample(grid, [](double x) { return std::cos(2.0 * x); });
  const SurfaceData data(params, RealField(grid), psi);
  const StripField phi = solver.solve_potential(data, 1e-12);
  // At eps = 0 the solved potential is F0(z) applied mode by mode.
  for (int m = 0; m < solver.vertical().size(); m += 5) {
    const double z = solver.vertical().node(m);
    const double f0 = eval_F0(z, params.mu, 2.0);
    const RealField level = phi.level(m);
    const RealField want = sample(grid, [&](double x) {
      return f0 * std::cos(2.0 * x);
    });
    CHECK(norm_inf(level - want) < 1e-11);
  }
  // And the closed-form phi0 agrees with the solve.
  const StripField p0 = solver.phi0(data);
  double worst = 0.0;
  for (size_t i = 0; i < phi.v.size(); ++i) {
    worst = std::max(worst, std::abs(phi.v[i] - p0.v[i]));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE(interpolation_evaluates_between_nodes) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 1.0;
  params.eps = 0.0;
  StripSolver solver(grid, 24, params);
  const RealField psi = sample(grid, [](double x) { return std::cos(x); });
  const SurfaceData data(params, RealField(grid), psi);
  const StripField phi = solver.solve_potential(data, 1e-12);
  const double x_probe = 0.37;
  const double z_probe = -0.41;
  const double got = solver.evaluate(phi, x_probe, z_probe);
  const double want = eval_F0(z_probe, 1.0, 1.0) * std::cos(x_probe);
  CHECK_CLOSE(got, want, 1e-10);
}

TEST_CASE(solver_meets_its_own_residual_contract) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.1;
  StripSolver solver(grid, 24, params);
  const RealField zeta = sample(grid, [](double x) { return 0.5 * std::cos(x); });
  const RealField psi = sample(grid, [](double x) { return std::sin(x); });
  const SurfaceData data(params, zeta, psi);
  PotentialStats stats;
  const StripField phi = solver.solve_potential(data, 1e-11, 200, &stats);
  CHECK(stats.converged);
  CHECK(stats.residual <= 1e-11 * stats.scale);
  CHECK(solver.operator_residual(data, phi) <= 2e-11 * stats.scale);
}

TEST_CASE(flat_vbar_is_f1_gradient) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.8;
  params.eps = 0.0;
  StripSolver solver(grid, 24, params);
  const RealField psi = band_limited_psi(grid);
  const SurfaceData data(params, RealField(grid), psi);
  const StripField phi = solver.solve_potential(data, 1e-12);
  const RealField vbar = solver.compute_vbar(data, phi);
  const RealField want = apply_F1(derivative(psi, 1), params.mu);
  CHECK(norm_l2(vbar - want) / norm_l2(want) < 1e-10);
}

TEST_CASE(approximants_coincide_at_flat_bottom) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.6;
  params.eps = 0.0;
  const RealField psi = band_limited_psi(grid);
  const SurfaceData data(params, RealField(grid), psi);
  const RealField a = vbar_approx(VbarApproxKind::F1Grad, data);
  const RealField b = vbar_approx(VbarApproxKind::VApp, data);
  const RealField c = vbar_approx(VbarApproxKind::VTildeApp, data);
  CHECK(norm_inf(a - b) < 1e-13);
  CHECK(norm_inf(a - c) < 1e-12);
  // The gradient recovery inverts F1 exactly at eps = 0.
  const RealField rec = gradpsi_from_vbar(a, data.zeta, params);
  const RealField want = derivative(psi, 1);
  CHECK(norm_l2(rec - want) / norm_l2(want) < 1e-12);
}

TEST_CASE(dtn_operator_is_symmetric) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.4;
  params.eps = 0.15;
  StripSolver solver(grid, 24, params);
  const RealField zeta =
      sample(grid, [](double x) { return 0.4 * std::cos(x + 0.7); });
  const RealField psi1 = sample(grid, [](double x) { return std::sin(x); });
  const RealField psi2 =
      sample(grid, [](double x) { return std::cos(2.0 * x) - 0.5 * std::sin(3.0 * x); });
  const SurfaceData d1(params, zeta, psi1);
  const SurfaceData d2(params, zeta, psi2);
  // 1e-11 sits above the fixed-point iteration's roundoff floor (~2e-12) for
  // this fairly steep surface.
  const RealField g1 = solver.compute_dtn(d1, 1e-11);
  const RealField g2 = solver.compute_dtn(d2, 1e-11);
  const double lhs = inner(psi2, g1);
  const double rhs = inner(psi1, g2);
  CHECK_CLOSE(lhs, rhs, 1e-8 * std::max(std::abs(lhs), 1.0));
  // Divergence form: the flux has exactly zero mean.
  CHECK(std::abs(integrate(g1)) < 1e-13);
}

TEST_CASE(velocity_errors_shrink_with_the_small_parameters) {
  const Grid1D grid(64, 2.0 * M_PI);
  const RealField zeta = sample(grid, [](double x) { return 0.5 * std::cos(x); });
  const RealField psi = sample(grid, [](double x) { return std::sin(x); });
  auto errors_at = [&](double mu, double eps) {
    Params params;
    params.mu = mu;
    params.eps = eps;
    const SurfaceData data(params, zeta, psi);
    StripSolver solver(grid, 24, params);
    const StripField phi = solver.solve_potential(data, 1e-11);
    const RealField vbar = solver.compute_vbar(data, phi);
    return velocity_expansion_errors(data, vbar);
  };
  const auto coarse = errors_at(0.4, 0.4);
  const auto fine = errors_at(0.1, 0.1);
  // First-order error in each parameter: two halvings shrink it by ~4 at
  // least; the second-order quantities shrink much faster.
  CHECK(coarse.f1grad > 3.0 * fine.f1grad);
  CHECK(coarse.vapp > 8.0 * fine.vapp);
  CHECK(coarse.vtilde > 8.0 * fine.vtilde);
  CHECK(coarse.gradpsi > 8.0 * fine.gradpsi);
  // The refined expansions beat the leading-order one.
  CHECK(coarse.vapp < coarse.f1grad);
  CHECK(coarse.vtilde < coarse.f1grad);
}

TEST_MAIN
