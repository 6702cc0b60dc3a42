#include "fulldisp/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fulldisp {

std::string format17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& message) {
  std::ostringstream msg;
  msg << path << ":" << line << ": " << message;
  throw std::runtime_error(msg.str());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& path, int line, const std::string& s) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail(path, line, "trailing characters in '" + s + "'");
    if (!std::isfinite(v)) fail(path, line, "non-finite value '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(path, line, "cannot parse number '" + s + "'");
  } catch (const std::out_of_range&) {
    fail(path, line, "number out of range '" + s + "'");
  }
}

}  // namespace

void write_snapshot(const std::string& path, const SnapshotMeta& meta,
                    const RealField& zeta, const RealField& q) {
  if (zeta.grid != q.grid) {
    throw std::invalid_argument("write_snapshot: fields on different grids");
  }
  if (meta.n != zeta.grid.n) {
    throw std::invalid_argument("write_snapshot: meta.n disagrees with grid");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
  const bool psi_form = meta.model != "fdgn2" && meta.model != "fdgn-dit" &&
                        meta.model != "gn2-classical";
  const std::string q_name = psi_form ? "psi" : "w";
  out << "# model=" << meta.model << "\n";
  out << "# n=" << meta.n << "\n";
  out << "# nz=" << meta.nz << "\n";
  out << "# L=" << format17(meta.length) << "\n";
  out << "# mu=" << format17(meta.mu) << "\n";
  out << "# eps=" << format17(meta.eps) << "\n";
  out << "# t=" << format17(meta.time) << "\n";
  out << "# schema-version=" << meta.schema << "\n";
  out << "x,zeta," << q_name << "\n";
  for (int j = 0; j < zeta.grid.n; ++j) {
    out << format17(zeta.grid.x(j)) << "," << format17(zeta.v[j]) << ","
        << format17(q.v[j]) << "\n";
  }
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  std::map<std::string, std::string> meta_kv;
  std::string line;
  int line_no = 0;
  std::string column_line;
  int column_line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const size_t eq = body.find('=');
      if (eq == std::string::npos) {
        fail(path, line_no, "metadata line without key=value");
      }
      meta_kv[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    column_line = line;
    column_line_no = line_no;
    break;
  }
  for (const char* key : {"model", "n", "nz", "L", "mu", "eps", "t",
                          "schema-version"}) {
    if (meta_kv.find(key) == meta_kv.end()) {
      fail(path, column_line_no ? column_line_no : line_no,
           std::string("missing header key '") + key + "'");
    }
  }
  SnapshotMeta meta;
  meta.model = meta_kv["model"];
  meta.n = static_cast<int>(parse_double(path, 0, meta_kv["n"]));
  meta.nz = static_cast<int>(parse_double(path, 0, meta_kv["nz"]));
  meta.length = parse_double(path, 0, meta_kv["L"]);
  meta.mu = parse_double(path, 0, meta_kv["mu"]);
  meta.eps = parse_double(path, 0, meta_kv["eps"]);
  meta.time = parse_double(path, 0, meta_kv["t"]);
  meta.schema = static_cast<int>(parse_double(path, 0, meta_kv["schema-version"]));
  if (meta.schema != 1) {
    fail(path, column_line_no, "unsupported schema-version " +
                                   std::to_string(meta.schema));
  }
  if (column_line.empty()) fail(path, line_no, "missing column header");
  const auto cols = split(column_line, ',');
  if (cols.size() != 3 || cols[0] != "x" || cols[1] != "zeta" ||
      (cols[2] != "psi" && cols[2] != "w")) {
    fail(path, column_line_no,
         "expected column header x,zeta,psi or x,zeta,w; got '" + column_line +
             "'");
  }

  Snapshot snap;
  snap.meta = meta;
  snap.q_name = cols[2];
  const Grid1D grid(meta.n, meta.length);
  snap.zeta = RealField(grid);
  snap.q = RealField(grid);
  int row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') continue;  // trailing footer comments are allowed
    const auto parts = split(line, ',');
    if (parts.size() != 3) {
      fail(path, line_no, "expected 3 columns, got " +
                              std::to_string(parts.size()));
    }
    if (row >= meta.n) fail(path, line_no, "more rows than n in header");
    parse_double(path, line_no, parts[0]);  // x column validated only
    snap.zeta.v[row] = parse_double(path, line_no, parts[1]);
    snap.q.v[row] = parse_double(path, line_no, parts[2]);
    ++row;
  }
  if (row != meta.n) {
    fail(path, line_no,
         "row count " + std::to_string(row) + " disagrees with n = " +
             std::to_string(meta.n));
  }
  return snap;
}

void write_table(const std::string& path,
                 const std::vector<std::string>& comments,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows,
                 const std::vector<std::string>& footer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_table: cannot open " + path);
  for (const auto& c : comments) out << "# " << c << "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  }
  out << "\n";
  for (const auto& r : rows) {
    if (r.size() != columns.size()) {
      throw std::invalid_argument("write_table: row width mismatch");
    }
    for (size_t i = 0; i < r.size(); ++i) {
      out << format17(r[i]) << (i + 1 < r.size() ? "," : "");
    }
    out << "\n";
  }
  for (const auto& c : footer) out << "# " << c << "\n";
  if (!out) throw std::runtime_error("write_table: write failed for " + path);
}

void write_sweep_rows(const std::string& path,
                      const std::vector<std::string>& comments,
                      const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& footer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sweep_rows: cannot open " + path);
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "mu,eps,err_name,value\n";
  for (const auto& r : rows) {
    out << format17(r.mu) << "," << format17(r.eps) << "," << r.err_name << ","
        << format17(r.value) << "\n";
  }
  for (const auto& c : footer) out << "# " << c << "\n";
  if (!out) throw std::runtime_error("write_sweep_rows: write failed");
}

void emit_gnuplot(const std::string& gp_path, const std::string& csv_path,
                  const std::string& title, int x_col,
                  const std::vector<std::pair<int, std::string>>& y_cols,
                  bool loglog) {
  std::ofstream out(gp_path);
  if (!out) throw std::runtime_error("emit_gnuplot: cannot open " + gp_path);
  out << "set datafile separator ','\n";
  out << "set datafile commentschars '#'\n";
  out << "set key outside\n";
  out << "set title '" << title << "'\n";
  if (loglog) out << "set logscale xy\n";
  out << "plot ";
  for (size_t i = 0; i < y_cols.size(); ++i) {
    if (i) out << ", ";
    out << "'" << csv_path << "' using " << x_col << ":" << y_cols[i].first
        << " with linespoints title '" << y_cols[i].second << "'";
  }
  out << "\n";
  if (!out) throw std::runtime_error("emit_gnuplot: write failed");
}

}  // namespace fulldisp
