#include "fulldisp/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fulldisp/models.hpp"

namespace fulldisp {

Params RunConfig::params() const {
  Params p;
  p.mu = mu;
  p.eps = eps;
  p.h_min = h_min;
  return p;
}

Grid1D RunConfig::grid() const { return Grid1D(n, length); }

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error(messages.empty()
                             ? std::string("configuration error")
                             : messages.front() +
                                   (messages.size() > 1
                                        ? " (+" +
                                              std::to_string(messages.size() -
                                                             1) +
                                              " more)"
                                        : "")),
      messages_(std::move(messages)) {}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Parser {
  std::string path;
  std::vector<std::string> errors;

  void error(int line, const std::string& message) {
    std::ostringstream msg;
    msg << path << ":" << line << ": " << message;
    errors.push_back(msg.str());
  }

  bool parse_double(int line, const std::string& v, double* out) {
    try {
      size_t pos = 0;
      *out = std::stod(v, &pos);
      if (pos != v.size() || !std::isfinite(*out)) throw std::invalid_argument(v);
      return true;
    } catch (const std::exception&) {
      error(line, "cannot parse number '" + v + "'");
      return false;
    }
  }

  bool parse_int(int line, const std::string& v, int* out) {
    double d = 0.0;
    if (!parse_double(line, v, &d)) return false;
    if (d != std::floor(d) || std::abs(d) > 1e9) {
      error(line, "expected an integer, got '" + v + "'");
      return false;
    }
    *out = static_cast<int>(d);
    return true;
  }

  bool parse_bool(int line, const std::string& v, bool* out) {
    if (v == "true" || v == "1") {
      *out = true;
      return true;
    }
    if (v == "false" || v == "0") {
      *out = false;
      return true;
    }
    error(line, "expected true/false, got '" + v + "'");
    return false;
  }

  bool parse_double_list(int line, const std::string& v,
                         std::vector<double>* out) {
    out->clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      double d = 0.0;
      if (!parse_double(line, trim(item), &d)) return false;
      out->push_back(d);
    }
    if (out->empty()) {
      error(line, "empty list");
      return false;
    }
    return true;
  }

  bool parse_int_list(int line, const std::string& v, std::vector<int>* out) {
    std::vector<double> ds;
    if (!parse_double_list(line, v, &ds)) return false;
    out->clear();
    for (double d : ds) {
      if (d != std::floor(d)) {
        error(line, "expected integers in list");
        return false;
      }
      out->push_back(static_cast<int>(d));
    }
    return true;
  }

  bool parse_string_list(int line, const std::string& v,
                         std::vector<std::string>* out) {
    (void)line;
    out->clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) out->push_back(t);
    }
    return true;
  }
};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& path) {
  RunConfig cfg;
  Parser p;
  p.path = path;

  using Setter = std::function<void(int, const std::string&)>;
  std::map<std::string, Setter> setters;
  auto add_d = [&](const std::string& key, double* slot) {
    setters[key] = [&p, slot](int line, const std::string& v) {
      p.parse_double(line, v, slot);
    };
  };
  auto add_i = [&](const std::string& key, int* slot) {
    setters[key] = [&p, slot](int line, const std::string& v) {
      p.parse_int(line, v, slot);
    };
  };
  auto add_b = [&](const std::string& key, bool* slot) {
    setters[key] = [&p, slot](int line, const std::string& v) {
      p.parse_bool(line, v, slot);
    };
  };
  auto add_s = [&](const std::string& key, std::string* slot) {
    setters[key] = [slot](int line, const std::string& v) {
      (void)line;
      *slot = v;
    };
  };

  add_s("run.model", &cfg.model);
  add_i("run.n", &cfg.n);
  add_i("run.nz", &cfg.nz);
  add_d("run.length", &cfg.length);
  add_d("run.mu", &cfg.mu);
  add_d("run.eps", &cfg.eps);
  add_d("run.h_min", &cfg.h_min);
  add_d("run.dt", &cfg.dt);
  add_d("run.t_end", &cfg.t_end);
  add_i("run.record_every", &cfg.record_every);
  setters["run.seed"] = [&](int line, const std::string& v) {
    int s = 0;
    if (p.parse_int(line, v, &s) && s >= 0) cfg.seed = static_cast<unsigned>(s);
  };
  add_i("run.jobs", &cfg.jobs);
  add_d("solver.tol", &cfg.solver_tol);
  add_d("solver.delta_t", &cfg.delta_t);
  add_b("solver.dealias", &cfg.dealias);
  add_s("ic.family", &cfg.ic_family);
  add_d("ic.zeta_amplitude", &cfg.zeta_amplitude);
  add_i("ic.zeta_mode", &cfg.zeta_mode);
  add_d("ic.psi_amplitude", &cfg.psi_amplitude);
  add_i("ic.psi_mode", &cfg.psi_mode);
  add_d("ic.gaussian_width", &cfg.gaussian_width);
  add_d("ic.gaussian_center", &cfg.gaussian_center);
  add_s("ic.resume_from", &cfg.resume_from);
  setters["sweep.mu_values"] = [&](int line, const std::string& v) {
    p.parse_double_list(line, v, &cfg.mu_values);
  };
  setters["sweep.eps_values"] = [&](int line, const std::string& v) {
    p.parse_double_list(line, v, &cfg.eps_values);
  };
  setters["sweep.models"] = [&](int line, const std::string& v) {
    p.parse_string_list(line, v, &cfg.models);
  };
  setters["sweep.modes"] = [&](int line, const std::string& v) {
    p.parse_int_list(line, v, &cfg.modes);
  };

  std::istringstream in(text);
  std::string line;
  std::string section = "run";
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        p.error(line_no, "malformed section header '" + t + "'");
        continue;
      }
      section = t.substr(1, t.size() - 2);
      if (section != "run" && section != "solver" && section != "ic" &&
          section != "sweep") {
        p.error(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      p.error(line_no, "expected key = value, got '" + t + "'");
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::string qualified = section + "." + key;
    auto it = setters.find(qualified);
    if (it == setters.end()) {
      p.error(line_no, "unknown key '" + key + "' in section [" + section +
                           "]");
      continue;
    }
    it->second(line_no, value);
  }

  // Semantic validation against module preconditions, aggregated with the
  // syntax errors so one run reports everything at once.
  auto semantic = [&](const std::string& message) {
    p.errors.push_back(path + ": " + message);
  };
  try {
    (void)model_from_string(cfg.model);
  } catch (const std::exception& e) {
    semantic(e.what());
  }
  for (const auto& m : cfg.models) {
    try {
      (void)model_from_string(m);
    } catch (const std::exception& e) {
      semantic(e.what());
    }
  }
  try {
    (void)cfg.grid();
  } catch (const std::exception& e) {
    semantic(e.what());
  }
  try {
    cfg.params().validate();
  } catch (const std::exception& e) {
    semantic(e.what());
  }
  for (double mv : cfg.mu_values) {
    Params q = cfg.params();
    q.mu = mv;
    try {
      q.validate();
    } catch (const std::exception& e) {
      semantic(std::string("sweep mu value: ") + e.what());
    }
  }
  for (double ev : cfg.eps_values) {
    Params q = cfg.params();
    q.eps = ev;
    try {
      q.validate();
    } catch (const std::exception& e) {
      semantic(std::string("sweep eps value: ") + e.what());
    }
  }
  if (cfg.nz < 4) semantic("nz must be at least 4");
  if (cfg.dt < 0.0) semantic("dt must be nonnegative");
  if (!(cfg.t_end > 0.0)) semantic("t_end must be positive");
  if (cfg.record_every < 0) semantic("record_every must be nonnegative");
  if (cfg.jobs < 1) semantic("jobs must be at least 1");
  if (!(cfg.solver_tol > 0.0)) semantic("solver tol must be positive");
  if (!(cfg.delta_t > 0.0)) semantic("solver delta_t must be positive");
  if (cfg.ic_family != "cosine" && cfg.ic_family != "gaussian") {
    semantic("unknown ic family '" + cfg.ic_family +
             "' (expected cosine or gaussian)");
  }
  if (cfg.zeta_mode < 0 || cfg.zeta_mode > cfg.n / 3 || cfg.psi_mode < 0 ||
      cfg.psi_mode > cfg.n / 3) {
    semantic("ic modes must lie in the de-aliased band [0, n/3]");
  }
  if (!(cfg.gaussian_width > 0.0)) semantic("gaussian_width must be positive");

  if (!p.errors.empty()) throw ConfigError(std::move(p.errors));
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::pair<RealField, RealField> make_initial_condition(const RunConfig& cfg) {
  const Grid1D grid = cfg.grid();
  if (cfg.ic_family == "cosine") {
    const double kz = grid.xi(cfg.zeta_mode);
    const double kp = grid.xi(cfg.psi_mode);
    RealField zeta = sample(grid, [&](double x) {
      return cfg.zeta_amplitude * std::cos(kz * x);
    });
    RealField psi = sample(grid, [&](double x) {
      return cfg.psi_amplitude * std::sin(kp * x);
    });
    return {std::move(zeta), std::move(psi)};
  }
  // Periodized Gaussian bump for zeta and its (zero-mean) derivative shape
  // for the second field, truncated to the de-aliased band.
  const double L = grid.length;
  const double c = cfg.gaussian_center * L;
  const double w = cfg.gaussian_width;
  auto bump = [&](double x) {
    double s = 0.0;
    for (int p = -3; p <= 3; ++p) {
      const double d = x - c - p * L;
      s += std::exp(-0.5 * d * d / (w * w));
    }
    return s;
  };
  RealField zeta = sample(grid, [&](double x) {
    return cfg.zeta_amplitude * bump(x);
  });
  const double mean = integrate(zeta) / L;
  for (auto& v : zeta.v) v -= mean;
  zeta = dealias(zeta);
  RealField psi = sample(grid, [&](double x) {
    return cfg.psi_amplitude * bump(x);
  });
  psi = dealias(derivative(psi, 1));
  psi *= w;  // keep the amplitude scale comparable to the bump height
  return {std::move(zeta), std::move(psi)};
}

}  // namespace fulldisp
