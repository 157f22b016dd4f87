#include "ffmink/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "ffmink/errors.hpp"

namespace ffmink {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string str(long long v) { return std::to_string(v); }
std::string str(bool b) { return b ? "1" : "0"; }
std::string str(const Rational& r) { return to_string(r); }
std::string str(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string ivec_str(const IVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

MeasConParams params_of(const ExperimentConfig& cfg, const ConstructedLattice& cl) {
  MeasConParams p;
  p.kappa = cfg.kappa;
  p.log_q_M = cfg.log_q_M;
  p.stab_size = double(cl.phi.gamma_lattice().index());
  return p;
}

// Common lattice columns.
const std::vector<std::string> kLatticeColumns = {"row", "Q", "deg_norm", "covol", "ell", "xi", "index", "tight"};

std::vector<std::string> lattice_cells(int i, const Poly& Q, const ConstructedLattice& cl, const ExperimentConfig& cfg) {
  Rational l = ell(cl.M);
  auto t = is_M_tight(cl.phi, cl.M, ceil_to_denominator(cfg.log_q_M, 2 * cl.d()));
  return {str((long long)i),          Q.to_string(),
          str((long long)cl.norm_degree()), str((long long)cl.covol_exponent),
          str(l),                     str(cl.phi.xi()),
          str(cl.phi.gamma_lattice().index()), str(t.tight)};
}

ReportRow error_row(int i, const Poly& Q, std::size_t ncols, const Error& e) {
  ReportRow r;
  r.index = i;
  r.cells.assign(ncols, "");
  r.cells[0] = str((long long)i);
  r.cells[1] = Q.to_string();
  r.error = e.what();
  r.skipped = e.code() == Errc::BudgetExceeded;
  r.pass = r.skipped;
  r.certificate = {{"row", i}, {"Q", Q.to_string()}, {"error", r.error}, {"skipped", r.skipped}};
  return r;
}

}  // namespace

bool Report::any_failure() const {
  if (!pass) return true;
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.pass; });
}

std::string Report::csv() const {
  std::string out;
  std::vector<std::string> cols = columns;
  cols.push_back("status");
  cols.push_back("error");
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_cell(cols[i]);
  out += "\n";
  for (const auto& r : rows) {
    std::vector<std::string> cells = r.cells;
    cells.resize(columns.size());
    cells.push_back(r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL");
    cells.push_back(r.error);
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
    out += "\n";
  }
  return out;
}

ConstructedLattice build_row(const ExperimentConfig& cfg, const Poly& Q) {
  return build_xQ(CasselsSpec{cfg.a_vector(), Q}, cfg.prec);
}

std::vector<ReportRow> run_rows(const ExperimentConfig& cfg, const std::function<ReportRow(int, const Poly&)>& fn) {
  std::vector<Poly> Qs = cfg.Q_list();
  std::vector<int> idx;
  for (int i = 0; i < int(Qs.size()); ++i)
    if (!cfg.row || *cfg.row == i) idx.push_back(i);
  if (cfg.row && idx.empty()) fail(Errc::ConfigError, "row " + std::to_string(*cfg.row) + " is out of range");
  std::vector<ReportRow> out(idx.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < idx.size();) out[k] = fn(idx[k], Qs[idx[k]]);
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, int(idx.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return std::nullopt;
  const double n = double(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

Report run_escape_mass(const ExperimentConfig& cfg) {
  Report rep;
  rep.name = "escape-mass";
  rep.columns = kLatticeColumns;
  for (const char* c : {"delta_exp", "threshold", "points", "long", "fraction", "short_violations",
                        "inclusion_violations", "periodic"})
    rep.columns.push_back(c);
  for (double dl : cfg.delta) rep.columns.push_back("fraction@" + str(dl));
  const std::size_t ncols = rep.columns.size();
  rep.rows = run_rows(cfg, [&](int i, const Poly& Q) {
    try {
      ConstructedLattice cl = build_row(cfg, Q);
      MeasConParams p = params_of(cfg, cl);
      OrbitScan sc = scan_orbit(cl.M, cl.phi, p);
      Rational frac = mass_fraction(sc);
      ReportRow r;
      r.index = i;
      r.cells = lattice_cells(i, Q, cl, cfg);
      long long nlong = std::count(sc.is_long.begin(), sc.is_long.end(), true);
      for (const auto& c : {str(p.delta_exp(cl.d())), str(sc.threshold), str((long long)sc.points.size()),
                            str(nlong), str(frac), str(sc.short_violations), str(sc.inclusion_violations),
                            str(sc.periodic)})
        r.cells.push_back(c);
      json extra = json::array();
      for (double dl : cfg.delta) {
        Rational f = mass_fraction(sc, ceil_to_denominator(dl, cl.d()));
        r.cells.push_back(str(f));
        extra.push_back({{"delta_exp", dl}, {"fraction", str(f)}});
      }
      json pts = json::array();
      for (std::size_t k = 0; k < sc.points.size(); ++k)
        pts.push_back({{"a", sc.points[k]}, {"ell", str(sc.ell[k])}, {"long", bool(sc.is_long[k])}});
      r.certificate = {{"row", i},        {"Q", Q.to_string()},          {"index", cl.phi.gamma_lattice().index()},
                       {"fraction", str(frac)}, {"threshold", str(sc.threshold)}, {"gamma", sc.gamma},
                       {"r", sc.r},        {"short_violations", sc.short_violations},
                       {"inclusion_violations", sc.inclusion_violations}, {"periodic", sc.periodic},
                       {"fractions_by_delta", extra}, {"points", pts}};
      r.certificate["fraction_value"] = to_double(frac);
      r.pass = sc.periodic && sc.short_violations == 0 && sc.inclusion_violations == 0;
      return r;
    } catch (const Error& e) {
      return error_row(i, Q, ncols, e);
    }
  });
  // Monotonicity and slope across completed rows.
  std::vector<double> idx, frac;
  for (const auto& r : rep.rows) {
    if (!r.error.empty()) continue;
    idx.push_back(std::stod(r.cells[6]));
    frac.push_back(r.certificate["fraction_value"].get<double>());
  }
  bool monotone = true;
  for (std::size_t k = 1; k < frac.size(); ++k)
    if (frac[k] > frac[k - 1]) monotone = false;
  auto slope = loglog_slope(idx, frac);
  const double bound = -(1 - cfg.kappa) + 0.25;
  rep.summary = {{"rows", rep.rows.size()},
                 {"kappa", cfg.kappa},
                 {"fractions", frac},
                 {"stab_proxy", idx},
                 {"monotone_nonincreasing", monotone},
                 {"slope", slope ? json(*slope) : json(nullptr)},
                 {"slope_bound", bound}};
  rep.pass = monotone && (!slope || *slope <= bound);
  rep.summary["pass"] = rep.pass;
  return rep;
}

Report run_cassels(const ExperimentConfig& cfg) {
  Report rep;
  rep.name = "cassels";
  rep.columns = kLatticeColumns;
  for (const char* c : {"target", "min", "equality", "route", "candidates", "xi_offset", "reduction_slack", "T_star",
                        "mu_exponent", "mu_complete"})
    rep.columns.push_back(c);
  const std::size_t ncols = rep.columns.size();
  rep.rows = run_rows(cfg, [&](int i, const Poly& Q) {
    try {
      ConstructedLattice cl = build_row(cfg, Q);
      CasselsOptions opt;
      opt.budget = cfg.budget;
      opt.params = params_of(cfg, cl);
      if (cfg.window > 0) opt.proximity_window = cfg.window;
      CasselsCertificate c = cassels_certificate(cl, opt);
      ReportRow r;
      r.index = i;
      r.cells = lattice_cells(i, Q, cl, cfg);
      r.certificate = {{"row", i}, {"Q", Q.to_string()}, {"certificate", to_json(c)}};
      std::string mu_e, mu_c;
      bool mu_ok = true;
      if (c.pass && cl.d() == 2 && cfg.mu_prec > 0) {
        LatticeStabilizers st = stabilizers_of(cl);
        MuResult mu = mu_bruteforce(cl.M, &st, true, cfg.mu_prec, cfg.budget_seconds);
        mu_e = str((long long)mu.mu_exponent);
        mu_c = str(mu.complete);
        mu_ok = mu.mu_exponent == -cl.d();
        r.certificate["mu"] = to_json(mu);
      }
      for (const auto& s : {str((long long)c.target), c.grid.zero ? std::string("ZERO") : str((long long)c.grid.min_exponent),
                            str(c.equality), c.grid.route, str(c.grid.candidates), str((long long)c.max_xi_offset),
                            c.argmin_reduction ? str(c.argmin_reduction->slack) : std::string(),
                            str((long long)c.proximity.T_star), mu_e, mu_c})
        r.cells.push_back(s);
      r.skipped = c.budget_exhausted;
      r.pass = (c.pass && mu_ok) || r.skipped;
      if (!c.pass) r.error = c.failure;
      else if (!mu_ok) r.error = "mu differs from q^-d";
      return r;
    } catch (const Error& e) {
      return error_row(i, Q, ncols, e);
    }
  });
  // Empirical threshold: first row from which every later row passes.
  std::optional<int> threshold;
  for (int k = int(rep.rows.size()) - 1; k >= 0 && rep.rows[k].pass && !rep.rows[k].skipped; --k)
    threshold = rep.rows[k].index;
  long long passes = std::count_if(rep.rows.begin(), rep.rows.end(), [](const ReportRow& r) { return r.pass && !r.skipped; });
  rep.summary = {{"rows", rep.rows.size()},
                 {"passing_rows", passes},
                 {"pass_from_row", threshold ? json(*threshold) : json(nullptr)}};
  rep.summary["pass"] = rep.pass;
  return rep;
}

Report run_visits(const ExperimentConfig& cfg) {
  Report rep;
  rep.name = "visits";
  rep.columns = kLatticeColumns;
  for (const char* c : {"long", "components", "n_factorial", "stab_index_bound", "stab_complete", "within_bound"})
    rep.columns.push_back(c);
  for (double dl : cfg.delta) rep.columns.push_back("components@" + str(dl));
  const std::size_t ncols = rep.columns.size();
  std::vector<long long> best(cfg.Q_list().size(), 0), nfact(best.size(), 1);
  rep.rows = run_rows(cfg, [&](int i, const Poly& Q) {
    try {
      ConstructedLattice cl = build_row(cfg, Q);
      OrbitScan sc = scan_orbit(cl.M, cl.phi, params_of(cfg, cl));
      ZLattice L = cl.phi.gamma_lattice();
      VisitComponents vc = visit_components(sc, L);
      StabilizerIndexReport si = stabilizer_index_check(cl.M, cl.phi, cfg.budget);
      ReportRow r;
      r.index = i;
      r.cells = lattice_cells(i, Q, cl, cfg);
      long long nlong = std::count(sc.is_long.begin(), sc.is_long.end(), true);
      for (const auto& s : {str(nlong), str((long long)vc.count), str(si.factorial_n), str(si.index_upper_bound),
                            str(si.complete), str(si.within_bound())})
        r.cells.push_back(s);
      best[i] = vc.count;
      nfact[i] = si.factorial_n;
      // Fixed thresholds: visits to the set ell >= q^delta.
      json fixed = json::array();
      for (double dl : cfg.delta) {
        OrbitScan s2 = sc;
        s2.threshold = ceil_to_denominator(dl, cl.d());
        for (std::size_t k = 0; k < s2.points.size(); ++k) s2.is_long[k] = s2.ell[k] >= s2.threshold;
        VisitComponents v2 = visit_components(s2, L);
        r.cells.push_back(str((long long)v2.count));
        best[i] = std::max<long long>(best[i], v2.count);
        fixed.push_back({{"delta_exp", dl}, {"threshold", str(s2.threshold)}, {"components", v2.count}});
      }
      json comps = json::array();
      for (std::size_t k = 0; k < sc.points.size(); ++k)
        if (vc.component[k] >= 0) comps.push_back({{"a", sc.points[k]}, {"component", vc.component[k]}});
      json cands = json::array();
      for (const auto& v : si.candidates) cands.push_back(ivec_str(v));
      r.certificate = {{"row", i},
                       {"Q", Q.to_string()},
                       {"threshold", str(sc.threshold)},
                       {"components", vc.count},
                       {"long_points", comps},
                       {"components_by_delta", fixed},
                       {"n_factorial", si.factorial_n},
                       {"stab_index_bound", si.index_upper_bound},
                       {"stab_candidates", cands},
                       {"stab_complete", si.complete}};
      r.pass = vc.count >= 1 && (!si.complete || si.within_bound());
      return r;
    } catch (const Error& e) {
      return error_row(i, Q, ncols, e);
    }
  });
  long long at_nfact = 0;
  for (const auto& r : rep.rows)
    if (r.error.empty() && best[r.index] >= nfact[r.index]) ++at_nfact;
  rep.summary = {{"rows", rep.rows.size()}, {"rows_with_n_factorial_components", at_nfact}};
  rep.summary["pass"] = rep.pass;
  return rep;
}

Report run_covering(const ExperimentConfig& cfg, int d_max, int k_max) {
  Report rep;
  rep.name = "covering";
  rep.columns = {"row", "set", "d", "index", "window", "points", "ok", "c"};
  double cmin = 1e300, cmax = -1e300;
  auto add = [&](int i, const std::string& name, const SimplexSet& phi) {
    ReportRow r;
    r.index = i;
    try {
      CoveringReport c = covering_check(phi, cfg.window);
      r.cells = {str((long long)i), name,           str((long long)phi.d), str(c.index),
                 str(c.window),     str(c.points_checked), str(c.ok()),     str(c.c)};
      r.certificate = {{"row", i}, {"set", name}, {"simplex", to_json(phi)}, {"covering", to_json(c)}};
      r.pass = c.ok() && std::isfinite(c.c);
      if (r.pass) {
        cmin = std::min(cmin, c.c);
        cmax = std::max(cmax, c.c);
      } else {
        r.error = c.gap ? "uncovered point " + ivec_str(*c.gap) : "covering constant is not finite";
      }
    } catch (const Error& e) {
      r.cells = {str((long long)i), name};
      r.error = e.what();
      r.skipped = e.code() == Errc::BudgetExceeded;
      r.pass = r.skipped;
    }
    rep.rows.push_back(r);
  };
  int i = 0;
  for (int d = 2; d <= d_max; ++d)
    for (int k = 1; k <= k_max; ++k) {
      ++i;
      if (!cfg.row || *cfg.row == i - 1) add(i - 1, "standard d=" + std::to_string(d) + " k=" + std::to_string(k), standard_simplex(d, k));
    }
  std::vector<Poly> Qs = cfg.Q_list();
  for (std::size_t k = 0; k < Qs.size(); ++k, ++i) {
    if (cfg.row && *cfg.row != i) continue;
    try {
      add(i, "Q=" + Qs[k].to_string(), build_row(cfg, Qs[k]).phi);
    } catch (const Error& e) {
      rep.rows.push_back(error_row(i, Qs[k], rep.columns.size(), e));
    }
  }
  rep.summary = {{"rows", rep.rows.size()},
                 {"c_min", cmax >= cmin ? json(cmin) : json(nullptr)},
                 {"c_max", cmax >= cmin ? json(cmax) : json(nullptr)}};
  rep.summary["pass"] = rep.pass;
  return rep;
}

void write_report(const Report& r, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "rows");
  write_atomic((fs::path(dir) / "report.csv").string(), r.csv());
  json rows = json::array();
  for (const auto& row : r.rows) {
    const std::string file = "rows/row_" + std::to_string(row.index) + ".json";
    write_atomic((fs::path(dir) / file).string(), row.certificate.dump(2) + "\n");
    rows.push_back({{"row", row.index},
                    {"status", row.skipped ? "SKIP" : row.pass ? "PASS" : "FAIL"},
                    {"certificate", file},
                    {"error", row.error}});
  }
  json j = {{"report", r.name}, {"summary", r.summary}, {"rows", rows}};
  write_atomic((fs::path(dir) / "report.json").string(), j.dump(2) + "\n");
}

}  // namespace ffmink
