#include "fulldisp/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace fulldisp {
namespace {

// Series coefficients of tanh(x)/x - 1 = sum_n a_n x^{2n}. Twenty terms keep
// the truncation error below 1e-17 in relative terms up to the branch switch
// at x = 0.5 (the series converges for x < pi/2).
constexpr double kTanhRatio[20] = {
    -0.33333333333333333333,    0.13333333333333333333,
    -0.053968253968253968254,   0.021869488536155202822,
    -0.0088632355299021965689,  0.0035921280365724810169,
    -0.0014558343870513182682,  0.00059002744094558598138,
    -0.00023912911424355248149, 0.000096915379569294503256,
    -0.000039278323883316834053, 0.000015918905069328964741,
    -6.4516892156554307632e-6,  2.6147711512907545543e-6,
    -1.0597268320104654351e-6,  4.2949110782738058548e-7,
    -1.740661896357164778e-7,   7.0546369464009683252e-8,
    -2.8591366623052539083e-8,  1.15876444327988522e-8};

// Series coefficients of x*coth(x) - 1 = sum_n b_n x^{2n} (converges for
// x < pi).
constexpr double kCothRatio[20] = {
    0.33333333333333333333,     -0.022222222222222222222,
    0.0021164021164021164021,   -0.00021164021164021164021,
    0.000021377799155576933355, -2.1644042808063972085e-6,
    2.19259478518737778e-7,     -2.2214608789979679076e-8,
    2.2507846516808992854e-9,   -2.2805151204592182866e-10,
    2.3106432599002624097e-11,  -2.3411706819824883959e-12,
    2.3721017400233654295e-13,  -2.4034415333307706179e-14,
    2.4351954029183368731e-15,  -2.4673688045172074706e-16,
    2.499967277122080898e-17,   -2.5329964357406348315e-18,
    2.5664619702826286611e-19,  -2.6003696460137273589e-20};

constexpr double kSeriesSwitch = 0.5;

double horner20(const double* coeff, double u) {
  double s = coeff[19];
  for (int i = 18; i >= 0; --i) s = s * u + coeff[i];
  return s;
}

// tanh(x)/x - 1, stable for all x >= 0. Direct evaluation loses two digits
// per decade below x ~ 0.1 once the result is divided by x^2 again, which is
// exactly what F2 does, so the small-x branch uses the series.
double tanh_ratio_minus_one(double x) {
  if (x < kSeriesSwitch) {
    double u = x * x;
    return u * horner20(kTanhRatio, u);
  }
  return std::tanh(x) / x - 1.0;
}

// x*coth(x) - 1 with the same branch structure.
double coth_ratio_minus_one(double x) {
  if (x < kSeriesSwitch) {
    double u = x * x;
    return u * horner20(kCothRatio, u);
  }
  return x / std::tanh(x) - 1.0;
}

double scaled_x(double mu, double xi) {
  if (!(mu > 0.0)) throw std::invalid_argument("multiplier: mu must be positive");
  return std::sqrt(mu) * std::abs(xi);
}

// tanh(x)/x. The direct quotient is evaluated for large x: reconstructing it
// as 1 + (tanh(x)/x - 1) would round the parenthesis at ulp(1), which is a
// large *relative* error once tanh(x)/x itself is small.
double f1_of_x(double x) {
  if (x < kSeriesSwitch) {
    double u = x * x;
    return 1.0 + u * horner20(kTanhRatio, u);
  }
  return std::tanh(x) / x;
}

double f2_of_x(double x) {
  if (x == 0.0) return 1.0;
  if (x < kSeriesSwitch) return -3.0 * horner20(kTanhRatio, x * x);
  return -3.0 * tanh_ratio_minus_one(x) / (x * x);
}

double f3_of_x(double x) {
  if (x == 0.0) return 1.0;
  if (x < kSeriesSwitch) return 3.0 * horner20(kCothRatio, x * x);
  return 3.0 * coth_ratio_minus_one(x) / (x * x);
}

}  // namespace

double eval_F1(double mu, double xi) { return f1_of_x(scaled_x(mu, xi)); }
double eval_F2(double mu, double xi) { return f2_of_x(scaled_x(mu, xi)); }
double eval_F3(double mu, double xi) { return f3_of_x(scaled_x(mu, xi)); }

double eval_sqrtF3(double mu, double xi) {
  return std::sqrt(f3_of_x(scaled_x(mu, xi)));
}

double eval_F0(double z, double mu, double xi) {
  if (z < -1.0 - 1e-12 || z > 1e-12)
    throw std::invalid_argument("eval_F0: z must lie in [-1, 0]");
  double x = scaled_x(mu, xi);
  double s = z + 1.0;
  // cosh(s x)/cosh(x) written with decaying exponentials only, so the ratio
  // stays finite for arbitrarily large x.
  return std::exp((s - 1.0) * x) * (1.0 + std::exp(-2.0 * s * x)) /
         (1.0 + std::exp(-2.0 * x));
}

double eval_P(double mu, double xi) {
  double x = scaled_x(mu, xi);
  return std::abs(xi) / std::sqrt(1.0 + x);
}

double eval_omega(double mu, double xi) {
  return std::abs(xi) * std::sqrt(f1_of_x(scaled_x(mu, xi)));
}

RealField apply_F1(const RealField& f, double mu) {
  return apply_multiplier(f, [mu](double xi) { return eval_F1(mu, xi); });
}

RealField apply_F2(const RealField& f, double mu) {
  return apply_multiplier(f, [mu](double xi) { return eval_F2(mu, xi); });
}

RealField apply_F3(const RealField& f, double mu) {
  return apply_multiplier(f, [mu](double xi) { return eval_F3(mu, xi); });
}

RealField apply_sqrtF3(const RealField& f, double mu) {
  return apply_multiplier(f, [mu](double xi) { return eval_sqrtF3(mu, xi); });
}

TaylorBoundsReport check_taylor_bounds(int samples_per_decade) {
  if (samples_per_decade < 10)
    throw std::invalid_argument("check_taylor_bounds: too few samples");
  TaylorBoundsReport r{};
  r.f3_decay_argmax = 1e-3;

  auto log_grid = [samples_per_decade](double lo, double hi) {
    std::vector<double> xs;
    int decades = static_cast<int>(std::ceil(std::log10(hi / lo)));
    int total = decades * samples_per_decade;
    for (int i = 0; i <= total; ++i)
      xs.push_back(lo * std::pow(10.0, static_cast<double>(i) * decades / total));
    return xs;
  };

  // Envelope constants of the small-x expansions, measured where the
  // remainder-to-leading-term ratio is still well above roundoff.
  for (double x : log_grid(1e-3, 1.0)) {
    double x2 = x * x;
    double f1 = f1_of_x(x);
    double f2 = f2_of_x(x);
    double f3 = f3_of_x(x);
    r.c2_f1 = std::max(r.c2_f1, std::abs(f1 - 1.0) / x2);
    r.c4_f1 = std::max(r.c4_f1, std::abs(f1 - 1.0 + x2 / 3.0) / (x2 * x2));
    r.c2_f2 = std::max(r.c2_f2, std::abs(f2 - 1.0) / x2);
    r.c2_f3 = std::max(r.c2_f3, std::abs(f3 - 1.0) / x2);
  }

  for (double x : log_grid(1e-3, 1e3)) {
    double x2 = x * x;
    double f1 = f1_of_x(x);
    double f2 = f2_of_x(x);
    double f3 = f3_of_x(x);
    r.unit_margin_f1 = std::max({r.unit_margin_f1, f1 - 1.0, -f1});
    r.unit_margin_f2 = std::max({r.unit_margin_f2, f2 - 1.0, -f2});
    r.unit_margin_f3 = std::max({r.unit_margin_f3, f3 - 1.0, -f3});
    r.f2_decay_margin = std::max(r.f2_decay_margin, f2 * (1.0 + x2 / 3.0) - 1.0);
    r.f1_inverse_margin = std::max(r.f1_inverse_margin, 1.0 / f1 - (1.0 + x));
    double f3_violation = f3 * (1.0 + x / 3.0) - 1.0;
    if (f3_violation > r.f3_decay_margin) {
      r.f3_decay_margin = f3_violation;
      r.f3_decay_argmax = x;
    }
    r.id_one_minus_f1 =
        std::max(r.id_one_minus_f1, std::abs(1.0 - f1 - x2 / 3.0 * f2));
    r.id_f3_times_f1 = std::max(r.id_f3_times_f1, std::abs(f3 * f1 - f2));
    r.id_inverse_f1 =
        std::max(r.id_inverse_f1, std::abs(1.0 + x2 / 3.0 * f3 - 1.0 / f1));
  }
  return r;
}

}  // namespace fulldisp
