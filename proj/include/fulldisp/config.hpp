// Run configuration: a flat key=value format with [section] headers, parsed
// and validated up front so every module precondition is checked before any
// compute starts.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fulldisp/grid.hpp"
#include "fulldisp/params.hpp"
#include "fulldisp/spectral.hpp"

namespace fulldisp {

struct RunConfig {
  // [run]
  std::string model = "fdgn1";
  int n = 64;
  int nz = 24;
  double length = 2.0 * M_PI;
  double mu = 1.0;
  double eps = 0.0;
  double h_min = 0.25;
  double dt = 0.0;  // 0 selects the stability-based default
  double t_end = 1.0;
  int record_every = 10;
  unsigned seed = 12345;
  int jobs = 1;
  // [solver]
  double solver_tol = 1e-11;
  double delta_t = 1e-4;  // consistency-residual differencing step
  bool dealias = true;
  // [ic]
  std::string ic_family = "cosine";  // cosine | gaussian
  double zeta_amplitude = 0.1;
  int zeta_mode = 1;
  double psi_amplitude = 0.1;
  int psi_mode = 1;
  double gaussian_width = 0.5;
  double gaussian_center = 0.5;  // fraction of the period
  std::string resume_from;       // snapshot path; empty = fresh start
  // [sweep]
  std::vector<double> mu_values;
  std::vector<double> eps_values;
  std::vector<std::string> models;
  std::vector<int> modes;

  Params params() const;
  Grid1D grid() const;
};

// Parse failure carrying one line-anchored message per problem.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

// Parse and fully validate; unknown keys, malformed values, and violated
// module preconditions are all collected into a single ConfigError.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& path);

// Band-limited initial data of the configured family on the configured grid.
std::pair<RealField, RealField> make_initial_condition(const RunConfig& cfg);

}  // namespace fulldisp
