#include <cmath>
#include <vector>

#include "fulldisp/dispersion.hpp"
#include "fulldisp/spectral.hpp"
#include "fulldisp/timeint.hpp"
#include "test_framework.hpp"

using namespace fulldisp;

namespace {

RealField cos_field(const Grid1D& grid, double amp, int k, double offset = 0.0) {
  return sample(grid, [&](double x) { return offset + amp * std::cos(k * x); });
}

RealField sin_field(const Grid1D& grid, double amp, int k) {
  return sample(grid, [&](double x) { return amp * std::sin(k * x); });
}

// Self-convergence order of RK4 on one system: errors against a fine
// reference for three step sizes, returning the two successive orders.
std::pair<double, double> rk4_orders(ModelKind kind, const RealField& zeta0,
                                     const RealField& q0,
                                     const Params& params, double t_end) {
  auto run = [&](int n_steps) {
    StepperConfig cfg;
    cfg.dt = t_end / n_steps;
    cfg.t_end = t_end;
    cfg.record_every = 0;
    return integrate(kind, zeta0, q0, params, cfg);
  };
  const IntegrationResult ref = run(64);
  std::vector<double> errs;
  for (int n_steps : {4, 8, 16}) {
    const IntegrationResult r = run(n_steps);
    errs.push_back(std::hypot(norm_l2(r.zeta - ref.zeta),
                              norm_l2(r.q - ref.q)));
  }
  return {std::log2(errs[0] / errs[1]), std::log2(errs[1] / errs[2])};
}

}  // namespace

TEST_CASE(default_step_is_half_the_fastest_period) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  const double xi_max = grid.xi(grid.n / 2);
  CHECK_CLOSE(default_dt(grid, params),
              0.5 / eval_omega(params.mu, xi_max), 1e-15);
}

TEST_CASE(rk4_self_convergence_is_fourth_order) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.1;
  const RealField zeta0 = cos_field(grid, 0.3, 1);
  const RealField psi0 = sin_field(grid, 1.0, 1);
  const RealField w0 = cos_field(grid, 1.0, 1);

  for (ModelKind kind : {ModelKind::Fdgn1, ModelKind::Wb}) {
    const auto [p, q] = rk4_orders(kind, zeta0, psi0, params, 0.5);
    CHECK(std::abs(p - 4.0) < 0.2);
    CHECK(std::abs(q - 4.0) < 0.2);
  }
  const auto [p2, q2] = rk4_orders(ModelKind::Fdgn2, zeta0, w0, params, 0.5);
  CHECK(std::abs(p2 - 4.0) < 0.2);
  CHECK(std::abs(q2 - 4.0) < 0.2);
}

TEST_CASE(long_run_preserves_mass_and_energy) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.1;
  const RealField zeta0 = cos_field(grid, 0.3, 1, 0.1);
  const RealField psi0 = sin_field(grid, 1.0, 1);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 100;
  const IntegrationResult r =
      integrate(ModelKind::Fdgn1, zeta0, psi0, params, cfg);
  CHECK(r.steps == 1000);
  CHECK(!r.diagnostics.empty());
  const double m0 = r.diagnostics.front().mass;
  const double e0 = r.diagnostics.front().energy;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  for (const auto& row : r.diagnostics) {
    mass_drift = std::max(mass_drift, std::abs(row.mass - m0));
    energy_drift = std::max(energy_drift, std::abs(row.energy - e0));
  }
  CHECK(mass_drift <= 1e-12 * std::abs(m0));
  CHECK(energy_drift <= 1e-8 * std::abs(e0));
}

TEST_CASE(explicit_step_must_divide_the_horizon) {
  const Grid1D grid(32, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.1;
  const RealField zeta0 = cos_field(grid, 0.1, 1);
  const RealField psi0 = sin_field(grid, 0.1, 1);
  StepperConfig bad;
  bad.dt = 0.3;
  bad.t_end = 1.0;
  CHECK_THROWS(integrate(ModelKind::Fdgn1, zeta0, psi0, params, bad));
  StepperConfig zero_t;
  zero_t.t_end = 0.0;
  CHECK_THROWS(integrate(ModelKind::Fdgn1, zeta0, psi0, params, zero_t));

  // The default step shrinks so an integer number of steps lands on t_end.
  StepperConfig auto_cfg;
  auto_cfg.t_end = 0.05;
  auto_cfg.record_every = 0;
  const IntegrationResult r =
      integrate(ModelKind::Fdgn1, zeta0, psi0, params, auto_cfg);
  CHECK(std::abs(r.time - 0.05) < 1e-12);
  CHECK(r.diagnostics.empty());
}

TEST_CASE(diagnostics_follow_the_requested_cadence) {
  const Grid1D grid(32, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.1;
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.2;  // 20 steps
  cfg.record_every = 5;
  std::vector<int> sink_steps;
  const IntegrationResult r = integrate(
      ModelKind::Fdgn1, cos_field(grid, 0.2, 1), sin_field(grid, 0.5, 1),
      params, cfg, {}, [&](const DiagnosticsRow& row) {
        sink_steps.push_back(row.step);
      });
  const std::vector<int> want = {0, 5, 10, 15, 20};
  CHECK(sink_steps == want);
  CHECK(r.diagnostics.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(r.diagnostics[i].step == want[i]);
    CHECK_CLOSE(r.diagnostics[i].time, 0.01 * want[i], 1e-14);
  }
}

TEST_CASE(instability_raises_after_partial_diagnostics) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 1.0;
  params.eps = 0.3;
  // The classical first system is short-wave unstable at mu = 1: roundoff in
  // the high modes grows until the depth caves in or the state overflows.
  StepperConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 50.0;
  cfg.record_every = 10;
  std::vector<DiagnosticsRow> rows;
  bool threw = false;
  try {
    integrate(ModelKind::Gn1Classical, cos_field(grid, 0.5, 1),
              sin_field(grid, 1.0, 1), params, cfg, {},
              [&](const DiagnosticsRow& row) { rows.push_back(row); });
  } catch (const std::exception&) {
    threw = true;
  }
  CHECK(threw);
  CHECK(!rows.empty());
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].step > rows[i - 1].step);
  }
}

TEST_MAIN
