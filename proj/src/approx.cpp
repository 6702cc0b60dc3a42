#include "fulldisp/approx.hpp"

#include "fulldisp/dispersion.hpp"

namespace fulldisp {

RealField vbar_approx(VbarApproxKind kind, const SurfaceData& data, bool da) {
  const Grid1D& g = data.grid;
  const double mu = data.params.mu, eps = data.params.eps;
  RealField psi_x = derivative(data.psi, 1);

  switch (kind) {
    case VbarApproxKind::F1Grad:
      return apply_F1(psi_x, mu);
    case VbarApproxKind::VApp: {
      RealField lap = derivative(data.psi, 2);
      RealField h = data.depth();
      RealField zx = derivative(data.zeta, 1);
      RealField t1 = product(h, product(zx, lap, da), da);
      RealField coeff(g);
      for (int j = 0; j < g.n; ++j) coeff[j] = data.zeta[j] * (1.0 + h[j]);
      RealField t2 = derivative(product(coeff, lap, da), 1);
      RealField out = apply_F1(psi_x, mu);
      for (int j = 0; j < g.n; ++j)
        out[j] += mu * eps / 3.0 * (t1[j] + t2[j]);
      return out;
    }
    case VbarApproxKind::VTildeApp: {
      RealField lap = derivative(data.psi, 2);
      RealField h = data.depth();
      RealField h3(g);
      for (int j = 0; j < g.n; ++j) h3[j] = h[j] * h[j] * h[j];
      RealField inner = derivative(product(h3, apply_F2(lap, mu), da), 1);
      RealField out = psi_x;
      for (int j = 0; j < g.n; ++j) out[j] += mu / (3.0 * h[j]) * inner[j];
      if (da && eps != 0.0) out = dealias(out);
      return out;
    }
  }
  throw std::invalid_argument("vbar_approx: unknown kind");
}

RealField gradpsi_from_vbar(const RealField& vbar, const RealField& zeta,
                            const Params& params, bool da) {
  const Grid1D& g = vbar.grid;
  const double mu = params.mu, eps = params.eps;
  RealField h(g);
  for (int j = 0; j < g.n; ++j) h[j] = 1.0 + eps * zeta[j];
  RealField h3(g);
  for (int j = 0; j < g.n; ++j) h3[j] = h[j] * h[j] * h[j];
  RealField div = derivative(vbar, 1);
  RealField inner = derivative(product(h3, apply_F3(div, mu), da), 1);
  RealField out = vbar;
  for (int j = 0; j < g.n; ++j) out[j] -= mu / (3.0 * h[j]) * inner[j];
  if (da && eps != 0.0) out = dealias(out);
  return out;
}

VelocityExpansionErrors velocity_expansion_errors(const SurfaceData& data,
                                                  const RealField& vbar,
                                                  bool dealias_products) {
  VelocityExpansionErrors errors;
  errors.f1grad = norm_l2(
      vbar - vbar_approx(VbarApproxKind::F1Grad, data, dealias_products));
  errors.vapp = norm_l2(
      vbar - vbar_approx(VbarApproxKind::VApp, data, dealias_products));
  errors.vtilde = norm_l2(
      vbar - vbar_approx(VbarApproxKind::VTildeApp, data, dealias_products));
  errors.gradpsi = norm_l2(
      derivative(data.psi, 1) -
      gradpsi_from_vbar(vbar, data.zeta, data.params, dealias_products));
  return errors;
}

}  // namespace fulldisp
