#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffmink/io.hpp"

namespace ffmink {

struct ReportRow {
  int index = 0;
  std::vector<std::string> cells;
  json certificate;      // stored next to the report, one file per row
  bool pass = true;
  bool skipped = false;  // budget ran out; does not count as a failure
  std::string error;
};

struct Report {
  std::string name;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  json summary;
  bool pass = true;  // summary verdict; rows are checked separately

  bool any_failure() const;
  std::string csv() const;
};

// Cassels lattice of a config row.
ConstructedLattice build_row(const ExperimentConfig& cfg, const Poly& Q);

// Runs fn on every Q of the config (or only cfg.row) with cfg.jobs workers;
// rows come back in config order. Errors are recorded per row.
std::vector<ReportRow> run_rows(const ExperimentConfig& cfg,
                                const std::function<ReportRow(int, const Poly&)>& fn);

// Least-squares slope of log y against log x over points with x, y > 0.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

Report run_escape_mass(const ExperimentConfig& cfg);
Report run_cassels(const ExperimentConfig& cfg);
Report run_visits(const ExperimentConfig& cfg);
// Standard sets Phi_*^k for d in 2..d_max, k in 1..k_max, then every Phi_Q of
// the config (skipped when the Q list is empty).
Report run_covering(const ExperimentConfig& cfg, int d_max, int k_max);

// report.csv, report.json and rows/row_<i>.json under dir.
void write_report(const Report& r, const std::string& dir);

}  // namespace ffmink
