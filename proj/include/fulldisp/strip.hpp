// Solver for the straightened Laplace problem on the strip torus x [-1, 0]:
// the velocity potential below a wave, the depth-averaged velocity, and the
// Dirichlet-to-Neumann operator, plus the closed-form approximate potentials
// used by the shallow-water expansions.
#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "fulldisp/chebyshev.hpp"
#include "fulldisp/dispersion.hpp"
#include "fulldisp/grid.hpp"
#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"

namespace fulldisp {

// Surface trace data (zeta, psi) with validated non-cavitation.
struct SurfaceData {
  Grid1D grid;
  Params params;
  RealField zeta;
  RealField psi;

  SurfaceData(const Params& p, RealField zeta_, RealField psi_);
  RealField depth() const;  // h = 1 + eps*zeta
};

// Values on the tensor grid, row-major with the vertical index slowest:
// v[m*n + j] is the value at (x_j, z_m), z_0 = 0 (surface), z_{nz-1} = -1.
struct StripField {
  Grid1D grid;
  int nz = 0;
  std::vector<double> v;

  StripField() = default;
  StripField(const Grid1D& g, int nz_)
      : grid(g), nz(nz_), v(static_cast<size_t>(nz_) * g.n, 0.0) {}

  double& at(int m, int j) { return v[static_cast<size_t>(m) * grid.n + j]; }
  double at(int m, int j) const { return v[static_cast<size_t>(m) * grid.n + j]; }
  RealField level(int m) const;
  void set_level(int m, const RealField& f);
};

struct PotentialStats {
  int iterations = 0;
  double residual = 0.0;  // weighted L2 of the interior collocation residual
  double scale = 0.0;     // reference magnitude the residual is compared to
  double theta = 1.0;     // relaxation factor in effect at exit
  int restarts = 0;
  bool converged = false;
};

class StripSolver {
 public:
  StripSolver(const Grid1D& grid, int nz, const Params& params);

  // Fixed-point solve of the decomposed elliptic problem
  //   (dzz + mu*dxx) phi = -mu*eps*A[phi],  phi(0) = psi,  dz phi(-1) = 0,
  // where A carries the surface-slope and curvature couplings. Each pass
  // solves the flat part exactly per Fourier mode by Chebyshev collocation.
  StripField solve_potential(const SurfaceData& data, double tol = 1e-10,
                             int max_iter = 200,
                             PotentialStats* stats = nullptr) const;

  // Depth-averaged horizontal velocity of a potential field.
  RealField compute_vbar(const SurfaceData& data, const StripField& phi) const;
  // Dirichlet-to-Neumann value -mu*d/dx(h Vbar) for the solved potential.
  RealField compute_dtn(const SurfaceData& data, double tol = 1e-10) const;

  // Closed-form approximate potentials on the strip grid.
  StripField phi0(const SurfaceData& data) const;
  StripField phi_app(const SurfaceData& data) const;
  StripField phi_tilde_app(const SurfaceData& data) const;

  // Residual of the decomposed operator (dzz + mu*dxx + mu*eps*A) applied to
  // phi, measured like solve_potential measures convergence.
  double operator_residual(const SurfaceData& data, const StripField& phi) const;

  // Weighted L2 norm over the strip and the scaled-gradient seminorm
  // (mu |dx phi|^2 + |dz phi|^2)^(1/2) in that norm.
  double strip_norm(const StripField& u) const;
  double strip_gradient_norm(const StripField& u) const;

  // Interpolated value at an arbitrary point of the strip (trigonometric in
  // x, barycentric in z).
  double evaluate(const StripField& u, double x, double z) const;

  StripField dz(const StripField& u) const;
  StripField dx(const StripField& u, int order = 1) const;

  const ChebyshevGrid& vertical() const { return cheb_; }
  const Grid1D& grid() const { return grid_; }
  const Params& params() const { return params_; }
  bool dealias_products() const { return dealias_; }
  void set_dealias_products(bool on) { dealias_ = on; }

 private:
  Grid1D grid_;
  Params params_;
  ChebyshevGrid cheb_;
  bool dealias_ = true;
  // Row-equilibrated LU factors of the per-mode collocation matrices
  // (D2 - mu xi_k^2 I with boundary rows), one per nonnegative mode.
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> mode_lu_;
  std::vector<Eigen::VectorXd> row_scale_;

  StripField apply_A(const SurfaceData& data, const StripField& phi) const;
  StripField solve_flat(const RealField& psi, const StripField* rhs) const;
  double interior_residual(const SurfaceData& data, const StripField& phi,
                           const StripField& a_phi) const;
};

}  // namespace fulldisp
