#include <cmath>

#include "fulldisp/dispersion.hpp"
#include "fulldisp/spectral.hpp"
#include "test_framework.hpp"

using namespace fulldisp;

TEST_CASE(point_values_at_unit_arguments) {
  // tanh(1)/1, and the derived multipliers at x = sqrt(mu)|xi| = 1.
  // Reference digits come from 50-digit evaluations of the closed forms; the
  // tolerances are a few ulps, the honest rounding budget of each formula.
  CHECK_CLOSE(eval_F1(1.0, 1.0), 0.76159415595576489, 1e-16);
  CHECK_CLOSE(eval_F2(1.0, 1.0), 0.71521753213270534, 2e-16);
  CHECK_CLOSE(eval_F3(1.0, 1.0), 0.93910585649799391, 1e-15);
  CHECK_CLOSE(eval_sqrtF3(1.0, 1.0), 0.96907474247242349, 1e-15);
}

TEST_CASE(point_values_across_regimes) {
  CHECK_CLOSE(eval_F1(1.0, 2.0), 0.48201379003790844, 1e-15);
  CHECK_CLOSE(eval_F2(1.0, 2.0), 0.38848965747156867, 1e-15);
  CHECK_CLOSE(eval_F3(1.0, 2.0), 0.80597208109132214, 1e-15);
  CHECK_CLOSE(eval_sqrtF3(1.0, 2.0), 0.89775947841909313, 1e-15);
  CHECK_CLOSE(eval_F1(0.1, 3.0), 0.7791708500148144, 1e-15);
  CHECK_CLOSE(eval_F2(0.1, 3.0), 0.73609716661728529, 1e-15);
  CHECK_CLOSE(eval_F3(0.1, 3.0), 0.94471856410348238, 1e-15);
  CHECK_CLOSE(eval_F1(4.0, 2.0), 0.24983232493476676, 1e-15);
  CHECK_CLOSE(eval_F2(4.0, 2.0), 0.14065643907473123, 1e-15);
  CHECK_CLOSE(eval_F3(4.0, 2.0), 0.56300336280126187, 1e-15);
  CHECK_CLOSE(eval_F1(0.3, 7.0), 0.26057651360467549, 1e-15);
  CHECK_CLOSE(eval_F2(0.3, 7.0), 0.15090275232557644, 1e-15);
  CHECK_CLOSE(eval_F3(0.3, 7.0), 0.57911110344546728, 1e-15);
  CHECK_CLOSE(eval_F1(1.0, 0.5), 0.92423431452001952, 1e-15);
  CHECK_CLOSE(eval_F2(1.0, 0.5), 0.9091882257597658, 1e-15);
  CHECK_CLOSE(eval_F3(1.0, 0.5), 0.98372048243191709, 1e-15);
}

TEST_CASE(small_argument_limits) {
  // x -> 0: every multiplier tends to 1, with the expected curvatures.
  CHECK_CLOSE(eval_F1(1e-6, 1.0), 1.0, 1e-6);
  CHECK_CLOSE(eval_F1(1.0, 1e-5), 1.0, 1e-9);
  CHECK(eval_F1(1.0, 1e-5) < 1.0);
  CHECK(eval_F2(1.0, 1e-5) < 1.0);
  CHECK(eval_F3(1.0, 1e-5) < 1.0);
  CHECK_CLOSE(eval_F1(1.0, 0.0), 1.0, 0.0);  // the zero mode is untouched
  CHECK_THROWS(eval_F1(0.0, 3.0));           // mu must be positive
}

TEST_CASE(algebraic_identities_survive_roundoff) {
  // 1 - F1 = (x^2/3) F2 and F3 F1 = F2 across twelve decades of x.
  for (int i = -60; i <= 60; ++i) {
    const double x = std::pow(10.0, i / 10.0);
    const double f1 = eval_F1(1.0, x);
    const double f2 = eval_F2(1.0, x);
    const double f3 = eval_F3(1.0, x);
    CHECK_CLOSE(1.0 - f1, x * x / 3.0 * f2, 1e-13 * std::max(1.0, 1.0 - f1));
    CHECK_CLOSE(f3 * f1, f2, 1e-13);
    CHECK_CLOSE(eval_sqrtF3(1.0, x) * eval_sqrtF3(1.0, x), f3, 1e-15);
  }
}

TEST_CASE(series_and_direct_branches_agree_at_the_switch) {
  // The evaluation switches branches at x = 0.5. Straddle the switch by one
  // ulp so the genuine slope of the multipliers contributes nothing and the
  // difference isolates the series-versus-direct consistency.
  const double lo = std::nextafter(0.5, 0.0);
  const double hi = 0.5;
  CHECK_CLOSE(eval_F1(1.0, lo), eval_F1(1.0, hi), 1e-13);
  CHECK_CLOSE(eval_F2(1.0, lo), eval_F2(1.0, hi), 1e-13);
  CHECK_CLOSE(eval_F3(1.0, lo), eval_F3(1.0, hi), 1e-13);
}

TEST_CASE(vertical_profile_values) {
  CHECK_CLOSE(eval_F0(0.0, 1.0, 5.0), 1.0, 1e-15);  // surface value is 1
  CHECK_CLOSE(eval_F0(-1.0, 1.0, 10.0), 9.0799859337817244e-5, 1e-18);
  CHECK_CLOSE(eval_F0(-0.5, 1.0, 3.0), 0.23365997152365807, 1e-15);
  CHECK_CLOSE(eval_F0(-0.25, 4.0, 400.0), 1.3838965267367375e-87, 1e-100);
  CHECK_THROWS(eval_F0(0.5, 1.0, 1.0));
  CHECK_THROWS(eval_F0(-1.5, 1.0, 1.0));
}

TEST_CASE(dispersive_weight_and_frequency) {
  CHECK_CLOSE(eval_P(1.0, 4.0), 1.7888543819998318, 1e-15);
  CHECK_CLOSE(eval_omega(1.0, 1.0), 0.87269362089782969, 1e-15);
  CHECK_CLOSE(eval_omega(1.0, 2.0), 1.3885442593420037, 1e-15);
  CHECK_CLOSE(eval_omega(1.0, 3.0), 1.7277627907384136, 1e-15);
  CHECK_CLOSE(eval_omega(1.0, 4.0), 1.9993291872416278, 1e-15);
}

TEST_CASE(envelope_constants_match_expansions) {
  const TaylorBoundsReport r = check_taylor_bounds(400);
  CHECK_CLOSE(r.c2_f1, 1.0 / 3.0, 2e-3);
  CHECK_CLOSE(r.c4_f1, 2.0 / 15.0, 2e-3);
  CHECK_CLOSE(r.c2_f2, 2.0 / 5.0, 2e-3);
  CHECK_CLOSE(r.c2_f3, 1.0 / 15.0, 2e-3);
  CHECK(r.c4_f1 >= 0.08);
  CHECK(r.c4_f1 <= 0.14);
}

TEST_CASE(true_bounds_hold) {
  const TaylorBoundsReport r = check_taylor_bounds(400);
  CHECK(r.unit_margin_f1 <= 0.0);
  CHECK(r.unit_margin_f2 <= 0.0);
  CHECK(r.unit_margin_f3 <= 0.0);
  CHECK(r.f2_decay_margin <= 0.0);
  CHECK(r.f1_inverse_margin <= 0.0);
  CHECK(r.id_one_minus_f1 <= 1e-13);
  CHECK(r.id_f3_times_f1 <= 1e-13);
  CHECK(r.id_inverse_f1 <= 1e-12);
}

TEST_CASE(f3_decay_bound_is_genuinely_false) {
  // F3 <= 1/(1 + x/3) fails: the residual F3 (1 + x/3) - 1 has a positive
  // interior peak. Pin the measured peak so a regression in the F3
  // evaluation would be caught.
  const TaylorBoundsReport r = check_taylor_bounds(400);
  CHECK(r.f3_decay_margin > 0.3);
  CHECK_CLOSE(r.f3_decay_margin, 0.34991304340400525, 1e-4);
  CHECK_CLOSE(r.f3_decay_argmax, 2.4507698970243011, 0.02);
  const TaylorBoundsReport r2 = check_taylor_bounds(800);
  CHECK_CLOSE(r.f3_decay_margin, r2.f3_decay_margin, 5e-4);
}

TEST_CASE(report_stability_under_grid_doubling) {
  const TaylorBoundsReport a = check_taylor_bounds(400);
  const TaylorBoundsReport b = check_taylor_bounds(800);
  CHECK_CLOSE(a.c2_f1, b.c2_f1, 0.05 * a.c2_f1);
  CHECK_CLOSE(a.c4_f1, b.c4_f1, 0.05 * a.c4_f1);
  CHECK_CLOSE(a.c2_f2, b.c2_f2, 0.05 * a.c2_f2);
  CHECK_CLOSE(a.c2_f3, b.c2_f3, 0.05 * a.c2_f3);
}

TEST_CASE(multiplier_application_in_fourier_space) {
  const Grid1D grid(64, 2.0 * M_PI);
  const RealField f = sample(grid, [](double x) {
    return std::cos(2.0 * x) - 0.5 * std::sin(3.0 * x);
  });
  const double mu = 0.7;
  const RealField g = apply_F1(f, mu);
  const RealField want = sample(grid, [&](double x) {
    return eval_F1(mu, 2.0) * std::cos(2.0 * x) -
           0.5 * eval_F1(mu, 3.0) * std::sin(3.0 * x);
  });
  CHECK(norm_inf(g - want) < 1e-14);
}

TEST_MAIN
