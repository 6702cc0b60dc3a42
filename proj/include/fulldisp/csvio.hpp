// CSV input/output: state snapshots with a metadata header, generic result
// tables, and optional gnuplot script emission. All numbers are written with
// 17 significant digits so a write/read round trip is exact.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fulldisp/spectral.hpp"

namespace fulldisp {

struct SnapshotMeta {
  std::string model;
  int n = 0;
  int nz = 0;
  double length = 0.0;
  double mu = 0.0;
  double eps = 0.0;
  double time = 0.0;
  int schema = 1;
};

struct Snapshot {
  SnapshotMeta meta;
  RealField zeta;
  RealField q;
  std::string q_name;  // "psi" or "w"
};

// Header lines are `# key=value` (model, n, nz, L, mu, eps, t,
// schema-version), then the column header x,zeta,<q_name> and one row per
// grid node.
void write_snapshot(const std::string& path, const SnapshotMeta& meta,
                    const RealField& zeta, const RealField& q);

// Exact inverse of write_snapshot; errors (missing key, schema mismatch,
// column-count mismatch, non-finite or unparsable values) name the offending
// line number.
Snapshot read_snapshot(const std::string& path);

// Generic numeric table with `# `-prefixed comment lines before the column
// header and optionally after the data (footer block for fitted slopes).
void write_table(const std::string& path,
                 const std::vector<std::string>& comments,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows,
                 const std::vector<std::string>& footer = {});

// Long-format sweep point table with columns mu, eps, err_name, value.
struct SweepRow {
  double mu = 0.0;
  double eps = 0.0;
  std::string err_name;
  double value = 0.0;
};

void write_sweep_rows(const std::string& path,
                      const std::vector<std::string>& comments,
                      const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& footer = {});

// 17-significant-digit representation used in every CSV.
std::string format17(double value);

// Emit a minimal gnuplot script plotting columns of a CSV written by
// write_table/write_snapshot; y_cols pairs are (1-based column, title).
void emit_gnuplot(const std::string& gp_path, const std::string& csv_path,
                  const std::string& title, int x_col,
                  const std::vector<std::pair<int, std::string>>& y_cols,
                  bool loglog);

}  // namespace fulldisp
