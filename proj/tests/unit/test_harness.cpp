#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fulldisp/config.hpp"
#include "fulldisp/consistency.hpp"
#include "fulldisp/csvio.hpp"
#include "fulldisp/slopes.hpp"
#include "fulldisp/spectral.hpp"
#include "test_framework.hpp"

using namespace fulldisp;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("fulldisp_test_" + name);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string valid_snapshot_text() {
  // Eight header lines, the column line, then n data rows: the first data row
  // sits on line 10, which the line-number assertions below rely on.
  return "# model=fdgn1\n"
         "# n=8\n"
         "# nz=8\n"
         "# L=6.2831853071795862\n"
         "# mu=0.29999999999999999\n"
         "# eps=0.10000000000000001\n"
         "# t=0\n"
         "# schema-version=1\n"
         "x,zeta,psi\n"
         "0,0.5,0\n"
         "0.785,0.25,0.7\n"
         "1.571,0,1\n"
         "2.356,-0.25,0.7\n"
         "3.142,-0.5,0\n"
         "3.927,-0.25,-0.7\n"
         "4.712,0,-1\n"
         "5.498,0.25,-0.7\n";
}

}  // namespace

TEST_CASE(slope_fit_recovers_exact_power_laws) {
  const std::vector<double> xs = {0.05, 0.1, 0.2, 0.4};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 * std::pow(x, 2.5));
  const SlopeFit fit = fit_slope(xs, ys);
  CHECK_CLOSE(fit.slope, 2.5, 1e-12);
  CHECK_CLOSE(fit.intercept, std::log(3.0), 1e-12);
  CHECK(fit.r2 > 1.0 - 1e-12);
  CHECK(fit.slope_stderr < 1e-10);
}

TEST_CASE(slope_fit_rejects_unusable_data) {
  const std::vector<double> xs = {0.1, 0.2, 0.4};
  const std::vector<double> ys = {1.0, 2.0, 3.0};
  CHECK_THROWS(fit_slope(xs, ys));  // too few points
  CHECK_THROWS(fit_slope({0.1, 0.2, 0.3, 0.4}, {1.0, 2.0, 3.0, 1e-15}));
  CHECK_THROWS(fit_slope({0.1, 0.2, 0.3, -0.4}, {1.0, 2.0, 3.0, 4.0}));
  CHECK_THROWS(fit_slope({0.1, 0.1, 0.1, 0.1}, {1.0, 2.0, 3.0, 4.0}));
}

TEST_CASE(axis_collapse_separates_the_exponents) {
  const std::vector<double> mus = {0.05, 0.1, 0.2, 0.4};
  const std::vector<double> eps = {0.05, 0.1, 0.2, 0.4};
  std::vector<double> table;
  for (double m : mus) {
    for (double e : eps) {
      table.push_back(7.0 * m * m * e);
    }
  }
  CHECK_CLOSE(fit_slope_mu(mus, eps, table).slope, 2.0, 1e-12);
  CHECK_CLOSE(fit_slope_eps(mus, eps, table).slope, 1.0, 1e-12);
}

TEST_CASE(snapshot_round_trip_is_bit_exact) {
  const Grid1D grid(32, 2.0 * M_PI);
  RealField zeta(grid);
  RealField w(grid);
  for (int j = 0; j < grid.n; ++j) {
    zeta.v[j] = std::sin(17.0 * j + 0.3) / 3.0;
    w.v[j] = std::cos(5.0 * j) * 1e-7;
  }
  SnapshotMeta meta;
  meta.model = "fdgn-dit";
  meta.n = grid.n;
  meta.nz = 24;
  meta.length = grid.length;
  meta.mu = 0.3;
  meta.eps = 0.1;
  meta.time = 0.125;
  const fs::path path = temp_file("roundtrip.csv");
  write_snapshot(path.string(), meta, zeta, w);
  const Snapshot snap = read_snapshot(path.string());
  CHECK(snap.q_name == "w");
  CHECK(snap.meta.model == "fdgn-dit");
  CHECK(snap.meta.n == grid.n);
  CHECK(snap.meta.mu == 0.3);
  CHECK(snap.meta.time == 0.125);
  for (int j = 0; j < grid.n; ++j) {
    CHECK(snap.zeta.v[j] == zeta.v[j]);
    CHECK(snap.q.v[j] == w.v[j]);
  }
  fs::remove(path);
}

TEST_CASE(snapshot_reader_names_the_broken_line) {
  const fs::path path = temp_file("broken.csv");

  // A valid file parses.
  write_text(path, valid_snapshot_text());
  const Snapshot ok = read_snapshot(path.string());
  CHECK(ok.meta.n == 8);
  CHECK(ok.zeta.v[0] == 0.5);

  // Missing header key.
  std::string text = valid_snapshot_text();
  const size_t mu_pos = text.find("# mu=");
  std::string no_mu = text;
  no_mu.erase(mu_pos, no_mu.find('\n', mu_pos) - mu_pos + 1);
  write_text(path, no_mu);
  CHECK_THROWS(read_snapshot(path.string()));

  // Unsupported schema.
  std::string bad_schema = text;
  bad_schema.replace(bad_schema.find("schema-version=1"), 16,
                     "schema-version=2");
  write_text(path, bad_schema);
  CHECK_THROWS(read_snapshot(path.string()));

  // Wrong column count on a data row; the message holds the line number.
  std::string bad_row = text;
  bad_row.replace(bad_row.find("0,0.5,0"), 7, "0,0.5");
  write_text(path, bad_row);
  bool threw = false;
  try {
    read_snapshot(path.string());
  } catch (const std::exception& e) {
    threw = true;
    const std::string msg = e.what();
    CHECK(msg.find(":10:") != std::string::npos);
    CHECK(msg.find("columns") != std::string::npos);
  }
  CHECK(threw);

  // Non-finite entry.
  std::string bad_value = text;
  bad_value.replace(bad_value.find("0,0.5,0"), 7, "0,nan,0");
  write_text(path, bad_value);
  CHECK_THROWS(read_snapshot(path.string()));

  // Too few rows.
  std::string short_file = text.substr(0, text.rfind("5.498"));
  write_text(path, short_file);
  CHECK_THROWS(read_snapshot(path.string()));
  fs::remove(path);
}

TEST_CASE(tables_and_scripts_have_the_documented_shape) {
  const fs::path csv = temp_file("table.csv");
  write_table(csv.string(), {"first comment"}, {"a", "b"},
              {{1.0, 2.0}, {0.5, 0.25}}, {"footer line"});
  const std::string text = read_text(csv);
  CHECK(text.find("# first comment\n") == 0);
  CHECK(text.find("a,b\n") != std::string::npos);
  CHECK(text.find("0.5,0.25\n") != std::string::npos);
  CHECK(text.find("# footer line\n") != std::string::npos);
  CHECK_THROWS(write_table(csv.string(), {}, {"a", "b"}, {{1.0}}));

  const fs::path sweep = temp_file("sweep.csv");
  write_sweep_rows(sweep.string(), {}, {{0.1, 0.2, "r_mass", 1e-3}});
  const std::string sweep_text = read_text(sweep);
  CHECK(sweep_text.find("mu,eps,err_name,value\n") == 0);
  CHECK(sweep_text.find("r_mass") != std::string::npos);

  const fs::path gp = temp_file("plot.gp");
  emit_gnuplot(gp.string(), csv.string(), "demo", 1, {{2, "b over a"}}, true);
  const std::string gp_text = read_text(gp);
  CHECK(gp_text.find("set datafile separator ','") != std::string::npos);
  CHECK(gp_text.find("set logscale xy") != std::string::npos);
  CHECK(gp_text.find(csv.string()) != std::string::npos);
  fs::remove(csv);
  fs::remove(sweep);
  fs::remove(gp);
}

TEST_CASE(format17_round_trips_doubles) {
  for (double v : {M_PI, 1.0 / 3.0, 6.62607015e-34, -0.1, 0.0, 1e300}) {
    CHECK(std::stod(format17(v)) == v);
  }
}

TEST_CASE(config_parser_collects_every_problem_at_once) {
  const std::string bad =
      "[run]\n"
      "model = fdgn1\n"
      "n = 65\n"        // odd: grid precondition violated
      "bogus = 1\n"     // unknown key
      "mu = frog\n"     // unparsable number
      "[orbit]\n"       // unknown section
      "x = 1\n";
  bool threw = false;
  try {
    parse_config_text(bad, "test.cfg");
  } catch (const ConfigError& e) {
    threw = true;
    CHECK(e.messages().size() >= 4);
    bool unknown_key_line = false;
    for (const auto& m : e.messages()) {
      if (m.find("test.cfg:4") != std::string::npos &&
          m.find("bogus") != std::string::npos) {
        unknown_key_line = true;
      }
    }
    CHECK(unknown_key_line);
  }
  CHECK(threw);
}

TEST_CASE(config_parser_reads_every_section) {
  const std::string good =
      "# demo\n"
      "[run]\n"
      "model = fdgn-dit\n"
      "n = 128\n"
      "nz = 16\n"
      "mu = 0.5\n"
      "eps = 0.25\n"
      "dt = 0.001\n"
      "t_end = 0.5\n"
      "jobs = 3\n"
      "[solver]\n"
      "tol = 1e-9\n"
      "dealias = false\n"
      "[ic]\n"
      "family = gaussian\n"
      "zeta_amplitude = 0.2\n"
      "gaussian_width = 0.7\n"
      "[sweep]\n"
      "mu_values = 0.05, 0.1, 0.2\n"
      "eps_values = 0.1,0.2\n"
      "models = fdgn1, wb\n"
      "modes = 1, 2, 3\n";
  const RunConfig cfg = parse_config_text(good, "good.cfg");
  CHECK(cfg.model == "fdgn-dit");
  CHECK(cfg.n == 128);
  CHECK(cfg.nz == 16);
  CHECK(cfg.mu == 0.5);
  CHECK(cfg.eps == 0.25);
  CHECK(cfg.dt == 0.001);
  CHECK(cfg.jobs == 3);
  CHECK(cfg.solver_tol == 1e-9);
  CHECK(!cfg.dealias);
  CHECK(cfg.ic_family == "gaussian");
  CHECK(cfg.gaussian_width == 0.7);
  CHECK(cfg.mu_values.size() == 3);
  CHECK(cfg.mu_values[2] == 0.2);
  CHECK(cfg.eps_values.size() == 2);
  CHECK(cfg.models.size() == 2);
  CHECK(cfg.models[1] == "wb");
  CHECK(cfg.modes.size() == 3);
}

TEST_CASE(initial_conditions_respect_the_dealiased_band) {
  RunConfig cfg;
  cfg.n = 64;
  cfg.ic_family = "gaussian";
  cfg.zeta_amplitude = 0.2;
  cfg.psi_amplitude = 0.5;
  cfg.gaussian_width = 0.4;
  const auto [zeta, psi] = make_initial_condition(cfg);
  CHECK(std::abs(integrate(zeta)) < 1e-13);
  const SpectralField zs = forward(zeta);
  const SpectralField ps = forward(psi);
  const Grid1D grid = cfg.grid();
  for (int k = grid.dealias_cutoff() + 1; k < grid.num_modes(); ++k) {
    CHECK(std::abs(zs.c[k]) < 1e-16);
    CHECK(std::abs(ps.c[k]) < 1e-16);
  }

  RunConfig cos_cfg;
  cos_cfg.n = 64;
  cos_cfg.zeta_amplitude = 0.3;
  cos_cfg.zeta_mode = 2;
  cos_cfg.psi_amplitude = 0.7;
  cos_cfg.psi_mode = 1;
  const auto [zc, pc] = make_initial_condition(cos_cfg);
  const RealField want_z = sample(cos_cfg.grid(), [](double x) {
    return 0.3 * std::cos(2.0 * x);
  });
  const RealField want_p = sample(cos_cfg.grid(), [](double x) {
    return 0.7 * std::sin(x);
  });
  CHECK(norm_inf(zc - want_z) < 1e-15);
  CHECK(norm_inf(pc - want_p) < 1e-15);
}

TEST_CASE(consistency_residual_prefers_the_improved_dispersion) {
  const Grid1D grid(64, 2.0 * M_PI);
  Params params;
  params.mu = 0.3;
  params.eps = 0.1;
  StripSolver solver(grid, 16, params);
  const RealField zeta = sample(grid, [](double x) { return 0.5 * std::cos(x); });
  const RealField psi = sample(grid, [](double x) { return std::sin(x); });
  const SurfaceData data(params, zeta, psi);
  const ConsistencyResult full =
      consistency_residual(ModelKind::Fdgn1, data, solver);
  const ConsistencyResult classical =
      consistency_residual(ModelKind::Gn1Classical, data, solver);
  CHECK(full.combined > 0.0);
  CHECK(full.combined < classical.combined);
  CHECK_CLOSE(full.combined,
              std::hypot(full.r_mass, full.r_momentum), 1e-15);
  // The reference system has no residual against itself.
  CHECK_THROWS(consistency_residual(ModelKind::WwRef, data, solver));
}

TEST_MAIN
