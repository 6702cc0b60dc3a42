// Python bindings for the solver core: Fourier multipliers, the reference
// surface operator, model right-hand sides, conserved quantities, and RK4
// integration. Fields cross the boundary as 1-D numpy arrays of point values
// on the uniform periodic grid; the grid is implied by (len(array), length).
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fulldisp/approx.hpp"
#include "fulldisp/conserved.hpp"
#include "fulldisp/dispersion.hpp"
#include "fulldisp/models.hpp"
#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"
#include "fulldisp/strip.hpp"
#include "fulldisp/timeint.hpp"

namespace py = pybind11;
namespace fd = fulldisp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

fd::RealField to_field(const Array& a, double length) {
  if (a.ndim() != 1) {
    throw std::invalid_argument("expected a 1-D array of grid point values");
  }
  const int n = static_cast<int>(a.shape(0));
  fd::Grid1D grid(n, length);
  fd::RealField f(grid);
  std::memcpy(f.v.data(), a.data(), sizeof(double) * static_cast<size_t>(n));
  return f;
}

py::array_t<double> to_array(const fd::RealField& f) {
  py::array_t<double> out(f.size());
  std::memcpy(out.mutable_data(), f.v.data(),
              sizeof(double) * static_cast<size_t>(f.size()));
  return out;
}

fd::Params make_params(double mu, double eps) {
  fd::Params params;
  params.mu = mu;
  params.eps = eps;
  params.validate();
  return params;
}

// Strip solver held only when the model is the reference system.
struct ModelContext {
  fd::RhsOptions opts;
  std::optional<fd::StripSolver> strip;
};

ModelContext make_context(fd::ModelKind kind, const fd::Grid1D& grid,
                          const fd::Params& params, int nz, double tol) {
  ModelContext ctx;
  ctx.opts.solver_tol = tol;
  if (kind == fd::ModelKind::WwRef) {
    ctx.strip.emplace(grid, nz, params);
    ctx.opts.strip = &*ctx.strip;
  }
  return ctx;
}

}  // namespace

PYBIND11_MODULE(_fulldisp, m) {
  m.doc() =
      "Pseudo-spectral shallow-water models with full dispersion: Fourier "
      "multipliers, the reference surface operator, model right-hand sides, "
      "conserved quantities, and RK4 integration.";

  // Fourier multipliers and the dispersion relation, evaluated at (mu, xi).
  m.def("f1", &fd::eval_F1, py::arg("mu"), py::arg("xi"),
        "tanh(x)/x at x = sqrt(mu)|xi|");
  m.def("f2", &fd::eval_F2, py::arg("mu"), py::arg("xi"),
        "3 (x - tanh x) / x^3 at x = sqrt(mu)|xi|");
  m.def("f3", &fd::eval_F3, py::arg("mu"), py::arg("xi"),
        "F2/F1 at x = sqrt(mu)|xi|");
  m.def("omega", &fd::eval_omega, py::arg("mu"), py::arg("xi"),
        "linear frequency |xi| sqrt(F1)");

  m.def(
      "dtn",
      [](const Array& zeta, const Array& psi, double mu, double eps,
         double length, int nz, double tol) {
        const fd::Params params = make_params(mu, eps);
        const fd::RealField z = to_field(zeta, length);
        const fd::RealField p = to_field(psi, length);
        fd::SurfaceData data(params, z, p);
        fd::StripSolver solver(z.grid, nz, params);
        return to_array(solver.compute_dtn(data, tol));
      },
      py::arg("zeta"), py::arg("psi"), py::arg("mu"), py::arg("eps") = 0.0,
      py::arg("length") = 2.0 * M_PI, py::arg("nz") = 24,
      py::arg("tol") = 1e-10,
      "Surface operator value for the state (zeta, psi), computed with the "
      "vertical strip solver");

  m.def(
      "vbar",
      [](const Array& zeta, const Array& psi, double mu, double eps,
         double length, int nz, double tol) {
        const fd::Params params = make_params(mu, eps);
        const fd::RealField z = to_field(zeta, length);
        const fd::RealField p = to_field(psi, length);
        fd::SurfaceData data(params, z, p);
        fd::StripSolver solver(z.grid, nz, params);
        const fd::StripField phi = solver.solve_potential(data, tol);
        return to_array(solver.compute_vbar(data, phi));
      },
      py::arg("zeta"), py::arg("psi"), py::arg("mu"), py::arg("eps") = 0.0,
      py::arg("length") = 2.0 * M_PI, py::arg("nz") = 24,
      py::arg("tol") = 1e-10,
      "Depth-averaged horizontal velocity below the state (zeta, psi)");

  m.def(
      "model_rhs",
      [](const std::string& model, const Array& zeta, const Array& q,
         double mu, double eps, double length, int nz, double tol) {
        const fd::ModelKind kind = fd::model_from_string(model);
        const fd::Params params = make_params(mu, eps);
        const fd::RealField z = to_field(zeta, length);
        const fd::RealField qq = to_field(q, length);
        const ModelContext ctx = make_context(kind, z.grid, params, nz, tol);
        const fd::RhsPair rhs = fd::model_rhs(kind, z, qq, params, ctx.opts);
        return py::make_tuple(to_array(rhs.first), to_array(rhs.second));
      },
      py::arg("model"), py::arg("zeta"), py::arg("q"), py::arg("mu"),
      py::arg("eps") = 0.0, py::arg("length") = 2.0 * M_PI,
      py::arg("nz") = 24, py::arg("tol") = 1e-11,
      "Right-hand side (dzeta/dt, dq/dt) of the named system");

  m.def(
      "integrate",
      [](const std::string& model, const Array& zeta, const Array& q,
         double mu, double eps, double dt, double t_end, int record_every,
         double length, int nz, double tol) {
        const fd::ModelKind kind = fd::model_from_string(model);
        const fd::Params params = make_params(mu, eps);
        const fd::RealField z0 = to_field(zeta, length);
        const fd::RealField q0 = to_field(q, length);
        const ModelContext ctx = make_context(kind, z0.grid, params, nz, tol);
        fd::StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.record_every = record_every;
        const fd::IntegrationResult res =
            fd::integrate(kind, z0, q0, params, cfg, ctx.opts);
        py::array_t<double> diag({res.diagnostics.size(), size_t(5)});
        auto d = diag.mutable_unchecked<2>();
        for (size_t r = 0; r < res.diagnostics.size(); ++r) {
          const auto& row = res.diagnostics[r];
          d(r, 0) = static_cast<double>(row.step);
          d(r, 1) = row.time;
          d(r, 2) = row.mass;
          d(r, 3) = row.momentum;
          d(r, 4) = row.energy;
        }
        py::dict out;
        out["zeta"] = to_array(res.zeta);
        out["q"] = to_array(res.q);
        out["time"] = res.time;
        out["steps"] = res.steps;
        out["diagnostics"] = diag;  // columns: step, t, mass, momentum, energy
        return out;
      },
      py::arg("model"), py::arg("zeta"), py::arg("q"), py::arg("mu"),
      py::arg("eps") = 0.0, py::arg("dt") = 0.0, py::arg("t_end") = 1.0,
      py::arg("record_every") = 10, py::arg("length") = 2.0 * M_PI,
      py::arg("nz") = 24, py::arg("tol") = 1e-11,
      "RK4 integration of the named system; dt = 0 selects the stable "
      "default step");

  m.def(
      "mass",
      [](const Array& zeta, double length) {
        return fd::mass(to_field(zeta, length));
      },
      py::arg("zeta"), py::arg("length") = 2.0 * M_PI);

  m.def(
      "model_energy",
      [](const std::string& model, const Array& zeta, const Array& q,
         double mu, double eps, double length, int nz, double tol) {
        const fd::ModelKind kind = fd::model_from_string(model);
        const fd::Params params = make_params(mu, eps);
        const fd::RealField z = to_field(zeta, length);
        const fd::RealField qq = to_field(q, length);
        const ModelContext ctx = make_context(kind, z.grid, params, nz, tol);
        return fd::model_energy(kind, z, qq, params, ctx.opts);
      },
      py::arg("model"), py::arg("zeta"), py::arg("q"), py::arg("mu"),
      py::arg("eps") = 0.0, py::arg("length") = 2.0 * M_PI,
      py::arg("nz") = 24, py::arg("tol") = 1e-11,
      "Energy functional conserved by the named system");

  m.def(
      "hamiltonian_app1",
      [](const Array& zeta, const Array& psi, double mu, double eps,
         double length) {
        const fd::Params params = make_params(mu, eps);
        const fd::WaveStatePsi state{to_field(zeta, length),
                                     to_field(psi, length)};
        return fd::hamiltonian_app1(state, params);
      },
      py::arg("zeta"), py::arg("psi"), py::arg("mu"), py::arg("eps") = 0.0,
      py::arg("length") = 2.0 * M_PI);

  m.def(
      "hamiltonian_app2",
      [](const Array& zeta, const Array& psi, double mu, double eps,
         double length, double tol) {
        const fd::Params params = make_params(mu, eps);
        const fd::WaveStatePsi state{to_field(zeta, length),
                                     to_field(psi, length)};
        return fd::hamiltonian_app2(state, params, tol);
      },
      py::arg("zeta"), py::arg("psi"), py::arg("mu"), py::arg("eps") = 0.0,
      py::arg("length") = 2.0 * M_PI, py::arg("tol") = 1e-11);

  m.def(
      "variational_check",
      [](const Array& zeta, const Array& psi, double mu, double eps,
         int which, int n_dirs, double h_fd, unsigned seed, double length) {
        const fd::Params params = make_params(mu, eps);
        const fd::WaveStatePsi state{to_field(zeta, length),
                                     to_field(psi, length)};
        return fd::variational_check(state, params, which, n_dirs, h_fd,
                                     seed);
      },
      py::arg("zeta"), py::arg("psi"), py::arg("mu"), py::arg("eps") = 0.0,
      py::arg("which") = 1, py::arg("n_dirs") = 5, py::arg("h_fd") = 1e-5,
      py::arg("seed") = 12345u, py::arg("length") = 2.0 * M_PI,
      "Worst relative error of the analytic energy gradient against finite "
      "differences");

  m.def(
      "check_taylor_bounds",
      [](int samples_per_decade) {
        const fd::TaylorBoundsReport r =
            fd::check_taylor_bounds(samples_per_decade);
        py::dict out;
        out["c2_f1"] = r.c2_f1;
        out["c4_f1"] = r.c4_f1;
        out["c2_f2"] = r.c2_f2;
        out["c2_f3"] = r.c2_f3;
        out["unit_margin_f1"] = r.unit_margin_f1;
        out["unit_margin_f2"] = r.unit_margin_f2;
        out["unit_margin_f3"] = r.unit_margin_f3;
        out["f2_decay_margin"] = r.f2_decay_margin;
        out["f1_inverse_margin"] = r.f1_inverse_margin;
        out["f3_decay_margin"] = r.f3_decay_margin;
        out["f3_decay_argmax"] = r.f3_decay_argmax;
        out["id_one_minus_f1"] = r.id_one_minus_f1;
        out["id_f3_times_f1"] = r.id_f3_times_f1;
        out["id_inverse_f1"] = r.id_inverse_f1;
        return out;
      },
      py::arg("samples_per_decade") = 400,
      "Envelope and identity margins of the multiplier family (positive "
      "margin = inequality violated)");
}
