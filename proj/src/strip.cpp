#include "fulldisp/strip.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace fulldisp {

SurfaceData::SurfaceData(const Params& p, RealField zeta_, RealField psi_)
    : grid(zeta_.grid), params(p), zeta(std::move(zeta_)), psi(std::move(psi_)) {
  params.validate();
  if (zeta.grid != psi.grid)
    throw std::invalid_argument("SurfaceData: zeta and psi grids differ");
  for (int j = 0; j < grid.n; ++j) {
    double h = 1.0 + params.eps * zeta[j];
    if (!(h >= params.h_min)) {
      std::ostringstream os;
      os << "SurfaceData: depth " << h << " at x = " << grid.x(j)
         << " falls below h_min = " << params.h_min;
      throw std::domain_error(os.str());
    }
  }
}

RealField SurfaceData::depth() const {
  RealField h(grid);
  for (int j = 0; j < grid.n; ++j) h[j] = 1.0 + params.eps * zeta[j];
  return h;
}

RealField StripField::level(int m) const {
  RealField f(grid);
  for (int j = 0; j < grid.n; ++j) f[j] = at(m, j);
  return f;
}

void StripField::set_level(int m, const RealField& f) {
  for (int j = 0; j < grid.n; ++j) at(m, j) = f[j];
}

StripSolver::StripSolver(const Grid1D& grid, int nz, const Params& params)
    : grid_(grid), params_(params), cheb_(nz) {
  params_.validate();
  const int modes = grid_.num_modes();
  mode_lu_.reserve(modes);
  row_scale_.reserve(modes);
  const Eigen::MatrixXd& d2 = cheb_.diff2();
  const Eigen::MatrixXd& d1 = cheb_.diff();
  for (int k = 0; k < modes; ++k) {
    double xi = grid_.xi(k);
    Eigen::MatrixXd m = d2;
    m.diagonal().array() -= params_.mu * xi * xi;
    // Dirichlet row at the surface node, Neumann row at the bottom node.
    m.row(0).setZero();
    m(0, 0) = 1.0;
    m.row(nz - 1) = d1.row(nz - 1);
    // Row equilibration improves the residual floor of the LU solves, which
    // matters because the interior rows grow like nz^4.
    Eigen::VectorXd scale(nz);
    for (int i = 0; i < nz; ++i) {
      double s = m.row(i).cwiseAbs().maxCoeff();
      scale(i) = (s > 0.0) ? 1.0 / s : 1.0;
      m.row(i) *= scale(i);
    }
    row_scale_.push_back(scale);
    mode_lu_.emplace_back(m);
  }
}

StripField StripSolver::dz(const StripField& u) const {
  const int n = grid_.n, nz = cheb_.size();
  StripField out(grid_, nz);
  Eigen::Map<const Eigen::MatrixXd> in(u.v.data(), n, nz);
  Eigen::Map<Eigen::MatrixXd> res(out.v.data(), n, nz);
  // Column-major map: column m is the x-row at level m, so differentiation
  // in z acts from the right with the transposed matrix.
  res = in * cheb_.diff().transpose();
  return out;
}

StripField StripSolver::dx(const StripField& u, int order) const {
  StripField out(grid_, cheb_.size());
  for (int m = 0; m < cheb_.size(); ++m)
    out.set_level(m, derivative(u.level(m), order));
  return out;
}

double StripSolver::strip_norm(const StripField& u) const {
  double acc = 0.0;
  for (int m = 0; m < cheb_.size(); ++m) {
    double row = 0.0;
    for (int j = 0; j < grid_.n; ++j) row += u.at(m, j) * u.at(m, j);
    acc += cheb_.weights()[m] * row * grid_.dx();
  }
  return std::sqrt(acc);
}

double StripSolver::strip_gradient_norm(const StripField& u) const {
  StripField ux = dx(u);
  StripField uz = dz(u);
  double acc = 0.0;
  for (int m = 0; m < cheb_.size(); ++m) {
    double row = 0.0;
    for (int j = 0; j < grid_.n; ++j)
      row += params_.mu * ux.at(m, j) * ux.at(m, j) + uz.at(m, j) * uz.at(m, j);
    acc += cheb_.weights()[m] * row * grid_.dx();
  }
  return std::sqrt(acc);
}

double StripSolver::evaluate(const StripField& u, double x, double z) const {
  const int nz = cheb_.size();
  std::vector<double> column(nz);
  for (int m = 0; m < nz; ++m) {
    SpectralField s = forward(u.level(m));
    double val = s[0].real();
    for (int k = 1; k < s.num_modes(); ++k) {
      double arg = grid_.xi(k) * x;
      // Hermitian symmetry doubles interior modes; Nyquist appears once with
      // its real part only.
      std::complex<double> c = s[k];
      if (k == grid_.n / 2)
        val += c.real() * std::cos(arg);
      else
        val += 2.0 * (c.real() * std::cos(arg) - c.imag() * std::sin(arg));
    }
    column[m] = val;
  }
  return cheb_.interpolate(column, z);
}

// Surface-coupling part of the decomposed operator,
//   A[phi] = dx(zeta dx phi) + zeta dx(h dx phi)
//          + eps (dx zeta)^2 dz((z+1)^2 dz phi)
//          - h (z+1) dx(dx zeta · dz phi) - h dx zeta · dz((z+1) dx phi).
StripField StripSolver::apply_A(const SurfaceData& data, const StripField& phi) const {
  const int nz = cheb_.size();
  const bool da = dealias_;
  RealField h = data.depth();
  RealField zx = derivative(data.zeta, 1);
  RealField zx2(grid_);
  for (int j = 0; j < grid_.n; ++j) zx2[j] = zx[j] * zx[j];
  zx2 = da ? dealias(zx2) : zx2;

  StripField phi_x = dx(phi);
  StripField phi_z = dz(phi);

  StripField t3_arg(grid_, nz), t5_arg(grid_, nz);
  for (int m = 0; m < nz; ++m) {
    double zp1 = cheb_.node(m) + 1.0;
    for (int j = 0; j < grid_.n; ++j) {
      t3_arg.at(m, j) = zp1 * zp1 * phi_z.at(m, j);
      t5_arg.at(m, j) = zp1 * phi_x.at(m, j);
    }
  }
  StripField t3_z = dz(t3_arg);
  StripField t5_z = dz(t5_arg);

  StripField out(grid_, nz);
  for (int m = 0; m < nz; ++m) {
    RealField px = phi_x.level(m);
    RealField pz = phi_z.level(m);
    double zp1 = cheb_.node(m) + 1.0;

    RealField t1 = derivative(product(data.zeta, px, da), 1);
    RealField t2 = product(data.zeta, derivative(product(h, px, da), 1), da);
    RealField t3 = product(zx2, t3_z.level(m), da);
    t3 *= params_.eps;
    RealField t4 = product(h, derivative(product(zx, pz, da), 1), da);
    t4 *= -zp1;
    RealField t5 = product(h, product(zx, t5_z.level(m), da), da);
    t5 *= -1.0;

    for (int j = 0; j < grid_.n; ++j)
      out.at(m, j) = t1[j] + t2[j] + t3[j] + t4[j] + t5[j];
  }
  return out;
}

// Solve (dzz + mu dxx) phi = rhs with phi(z=0) = psi, dz phi(z=-1) = 0, one
// Chebyshev collocation solve per Fourier mode. rhs may be null for zero.
StripField StripSolver::solve_flat(const RealField& psi, const StripField* rhs) const {
  const int n = grid_.n, nz = cheb_.size(), modes = grid_.num_modes();
  SpectralField psi_hat = forward(psi);

  std::vector<SpectralField> rhs_hat;
  if (rhs) {
    rhs_hat.reserve(nz);
    for (int m = 0; m < nz; ++m) rhs_hat.push_back(forward(rhs->level(m)));
  }

  std::vector<SpectralField> phi_hat(nz, SpectralField(grid_));
  Eigen::MatrixXd b(nz, 2);
  for (int k = 0; k < modes; ++k) {
    b.setZero();
    b(0, 0) = psi_hat[k].real();
    b(0, 1) = psi_hat[k].imag();
    if (rhs) {
      for (int m = 1; m < nz - 1; ++m) {
        b(m, 0) = rhs_hat[m][k].real();
        b(m, 1) = rhs_hat[m][k].imag();
      }
    }
    b.array().colwise() *= row_scale_[k].array();
    Eigen::MatrixXd sol = mode_lu_[k].solve(b);
    for (int m = 0; m < nz; ++m)
      phi_hat[m][k] = std::complex<double>(sol(m, 0), sol(m, 1));
  }

  StripField phi(grid_, nz);
  for (int m = 0; m < nz; ++m) phi.set_level(m, inverse(phi_hat[m]));
  (void)n;
  return phi;
}

double StripSolver::interior_residual(const SurfaceData& data, const StripField& phi,
                                      const StripField& a_phi) const {
  const int nz = cheb_.size();
  StripField phi_xx = dx(phi, 2);
  const Eigen::MatrixXd& d2 = cheb_.diff2();
  Eigen::Map<const Eigen::MatrixXd> in(phi.v.data(), grid_.n, nz);
  Eigen::MatrixXd phi_zz = in * d2.transpose();

  double acc = 0.0;
  const double me = params_.mu * params_.eps;
  for (int m = 1; m < nz - 1; ++m) {
    double row = 0.0;
    for (int j = 0; j < grid_.n; ++j) {
      double r = phi_zz(j, m) + params_.mu * phi_xx.at(m, j) + me * a_phi.at(m, j);
      row += r * r;
    }
    acc += cheb_.weights()[m] * row * grid_.dx();
  }
  (void)data;
  return std::sqrt(acc);
}

StripField StripSolver::solve_potential(const SurfaceData& data, double tol,
                                        int max_iter, PotentialStats* stats) const {
  if (data.grid != grid_)
    throw std::invalid_argument("solve_potential: data grid does not match solver");
  PotentialStats local;
  PotentialStats& st = stats ? *stats : local;
  st = PotentialStats{};

  StripField phi = solve_flat(data.psi, nullptr);
  const bool flat = params_.eps == 0.0 || norm_inf(data.zeta) == 0.0;

  // Reference magnitude built from the flat-solve pieces; the residual of
  // the converged answer is compared against it.
  {
    StripField phi_xx = dx(phi, 2);
    const Eigen::MatrixXd& d2 = cheb_.diff2();
    Eigen::Map<const Eigen::MatrixXd> in(phi.v.data(), grid_.n, cheb_.size());
    Eigen::MatrixXd phi_zz = in * d2.transpose();
    double zz = 0.0, xx = 0.0;
    for (int m = 1; m < cheb_.size() - 1; ++m) {
      double rz = 0.0, rx = 0.0;
      for (int j = 0; j < grid_.n; ++j) {
        rz += phi_zz(j, m) * phi_zz(j, m);
        double px = phi_xx.at(m, j);
        rx += px * px;
      }
      zz += cheb_.weights()[m] * rz * grid_.dx();
      xx += cheb_.weights()[m] * rx * grid_.dx();
    }
    st.scale = std::sqrt(zz) + params_.mu * std::sqrt(xx) + 1e-300;
  }

  StripField a_phi = apply_A(data, phi);
  st.residual = interior_residual(data, phi, a_phi);
  st.iterations = 0;
  if (flat || st.residual <= tol * st.scale) {
    st.converged = true;
    return phi;
  }

  double theta = 1.0;
  double prev_residual = st.residual;
  double prev_delta = -1.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    StripField rhs(grid_, cheb_.size());
    const double me = -params_.mu * params_.eps;
    for (size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] = me * a_phi.v[i];
    StripField next = solve_flat(data.psi, &rhs);

    StripField delta_field = next;
    for (size_t i = 0; i < delta_field.v.size(); ++i) delta_field.v[i] -= phi.v[i];
    double delta = strip_norm(delta_field);

    if (theta < 1.0) {
      for (size_t i = 0; i < phi.v.size(); ++i)
        phi.v[i] += theta * (next.v[i] - phi.v[i]);
    } else {
      phi = std::move(next);
    }

    a_phi = apply_A(data, phi);
    st.residual = interior_residual(data, phi, a_phi);
    st.iterations = iter;

    if (st.residual <= tol * st.scale) {
      st.converged = true;
      st.theta = theta;
      return phi;
    }
    if (st.residual > prev_residual && iter > 1) {
      // The contraction failed; restart from the flat solve with damping.
      if (++st.restarts > 3) break;
      theta *= 0.7;
      phi = solve_flat(data.psi, nullptr);
      a_phi = apply_A(data, phi);
      st.residual = interior_residual(data, phi, a_phi);
      prev_residual = st.residual;
      prev_delta = -1.0;
      continue;
    }
    if (prev_delta >= 0.0 && delta > 0.9 * prev_delta && theta == 1.0) {
      // Slow contraction: damp the update before it stalls.
      theta = 0.7;
    }
    if (delta <= 1e-15 * strip_norm(phi)) break;  // roundoff floor
    prev_residual = st.residual;
    prev_delta = delta;
  }

  st.theta = theta;
  if (!st.converged) {
    std::ostringstream os;
    os << "solve_potential: no convergence after " << st.iterations
       << " iterations (residual " << st.residual << ", scale " << st.scale
       << ", tol " << tol << ", mu " << params_.mu << ", eps " << params_.eps
       << ")";
    throw std::runtime_error(os.str());
  }
  return phi;
}

RealField StripSolver::compute_vbar(const SurfaceData& data, const StripField& phi) const {
  const int nz = cheb_.size();
  StripField phi_x = dx(phi);
  StripField phi_z = dz(phi);

  RealField term1(grid_), term2(grid_);
  for (int j = 0; j < grid_.n; ++j) {
    double s1 = 0.0, s2 = 0.0;
    for (int m = 0; m < nz; ++m) {
      s1 += cheb_.weights()[m] * phi_x.at(m, j);
      s2 += cheb_.weights()[m] * (cheb_.node(m) + 1.0) * phi_z.at(m, j);
    }
    term1[j] = s1;
    term2[j] = s2;
  }

  RealField h = data.depth();
  RealField zx = derivative(data.zeta, 1);
  RealField out(grid_);
  for (int j = 0; j < grid_.n; ++j)
    out[j] = term1[j] - params_.eps * zx[j] / h[j] * term2[j];
  if (dealias_ && params_.eps != 0.0) out = dealias(out);
  return out;
}

RealField StripSolver::compute_dtn(const SurfaceData& data, double tol) const {
  StripField phi = solve_potential(data, tol);
  RealField vbar = compute_vbar(data, phi);
  RealField hv = product(data.depth(), vbar, dealias_);
  RealField out = derivative(hv, 1);
  out *= -params_.mu;
  return out;
}

StripField StripSolver::phi0(const SurfaceData& data) const {
  const int nz = cheb_.size();
  StripField out(grid_, nz);
  double mu = params_.mu;
  for (int m = 0; m < nz; ++m) {
    double z = cheb_.node(m);
    out.set_level(m, apply_multiplier(data.psi, [mu, z](double xi) {
      return eval_F0(z, mu, xi);
    }));
  }
  return out;
}

// F0 psi - mu eps zeta (1+h) (z^2/2 + z) lap(psi), the corrected potential.
StripField StripSolver::phi_app(const SurfaceData& data) const {
  const int nz = cheb_.size();
  StripField out = phi0(data);
  RealField lap = derivative(data.psi, 2);
  RealField coeff(grid_);
  for (int j = 0; j < grid_.n; ++j) {
    double h = 1.0 + params_.eps * data.zeta[j];
    coeff[j] = data.zeta[j] * (1.0 + h);
  }
  RealField amp = product(coeff, lap, dealias_);
  const double me = params_.mu * params_.eps;
  for (int m = 0; m < nz; ++m) {
    double z = cheb_.node(m);
    double prof = 0.5 * z * z + z;
    for (int j = 0; j < grid_.n; ++j) out.at(m, j) -= me * prof * amp[j];
  }
  return out;
}

// psi + h^2 (F0 - 1) psi, the second approximate potential.
StripField StripSolver::phi_tilde_app(const SurfaceData& data) const {
  const int nz = cheb_.size();
  StripField out(grid_, nz);
  RealField h = data.depth();
  RealField h2(grid_);
  for (int j = 0; j < grid_.n; ++j) h2[j] = h[j] * h[j];
  double mu = params_.mu;
  for (int m = 0; m < nz; ++m) {
    double z = cheb_.node(m);
    RealField f0m1 = apply_multiplier(data.psi, [mu, z](double xi) {
      return eval_F0(z, mu, xi) - 1.0;
    });
    RealField corr = product(h2, f0m1, dealias_);
    for (int j = 0; j < grid_.n; ++j) out.at(m, j) = data.psi[j] + corr[j];
  }
  return out;
}

double StripSolver::operator_residual(const SurfaceData& data, const StripField& phi) const {
  StripField a_phi = apply_A(data, phi);
  return interior_residual(data, phi, a_phi);
}

}  // namespace fulldisp
