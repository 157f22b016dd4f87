#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "ffmink/errors.hpp"
#include "ffmink/experiments.hpp"

using namespace ffmink;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2 };

// Flags shared by the sweep verbs; values only override the config file when
// given on the command line.
struct SweepFlags {
  std::string config;
  ExperimentConfig cfg;
  std::string Q_range;
  int d_max = 4, k_max = 4;
  bool no_standard = false;

  void add(CLI::App* app, bool lattice_only = false) {
    app->add_option("--config", config, "JSON experiment config");
    app->add_option("--q", cfg.q, "field size");
    app->add_option("--d", cfg.d, "dimension");
    app->add_option("--a", cfg.a, "a-polynomials (default: first d multiples of x^2)");
    app->add_option("--Q", cfg.Q, "explicit Cassels Q polynomials");
    app->add_option("--Q-range", Q_range, "degree range lo..hi of Cassels Q");
    app->add_option("--Q-per-degree", cfg.Q_per_degree, "monic Q per degree");
    app->add_option("--prec", cfg.prec, "working precision (0 = default)");
    if (lattice_only) return;
    app->add_option("--kappa", cfg.kappa, "kappa in (0,1)");
    app->add_option("--log-M", cfg.log_q_M, "log_q M in the delta formula");
    app->add_option("--delta", cfg.delta, "extra ell thresholds (q-exponents) for mass tables");
    app->add_option("--window", cfg.window, "covering / proximity window");
    app->add_option("--budget", cfg.budget, "enumeration budget (candidates)");
    app->add_option("--time-budget", cfg.budget_seconds, "seconds per mu computation (0 = none)");
    app->add_option("--mu-prec", cfg.mu_prec, "shift precision of the mu cross-check");
    app->add_option("--jobs", cfg.jobs, "worker threads");
    app->add_option("--row", row, "re-run a single row");
    app->add_option("--out", cfg.out, "output directory");
  }

  std::optional<int> row;

  ExperimentConfig resolve(CLI::App* app) {
    ExperimentConfig c;
    if (!config.empty()) c = config_from_json(json::parse(read_file(config)));
    auto given = [&](const char* name) { return app->get_option_no_throw(name) && app->count(name) > 0; };
    if (given("--q")) c.q = cfg.q;
    if (given("--d")) c.d = cfg.d;
    if (given("--a")) c.a = cfg.a;
    if (given("--Q")) c.Q = cfg.Q;
    if (given("--Q-per-degree")) c.Q_per_degree = cfg.Q_per_degree;
    if (given("--prec")) c.prec = cfg.prec;
    if (given("--kappa")) c.kappa = cfg.kappa;
    if (given("--log-M")) c.log_q_M = cfg.log_q_M;
    if (given("--delta")) c.delta = cfg.delta;
    if (given("--window")) c.window = cfg.window;
    if (given("--budget")) c.budget = cfg.budget;
    if (given("--time-budget")) c.budget_seconds = cfg.budget_seconds;
    if (given("--mu-prec")) c.mu_prec = cfg.mu_prec;
    if (given("--jobs")) c.jobs = cfg.jobs;
    if (given("--row")) c.row = row;
    if (given("--out")) c.out = cfg.out;
    if (!Q_range.empty()) {
      auto dots = Q_range.find("..");
      try {
        if (dots == std::string::npos) {
          c.Q_min_degree = c.Q_max_degree = std::stoi(Q_range);
        } else {
          c.Q_min_degree = std::stoi(Q_range.substr(0, dots));
          c.Q_max_degree = std::stoi(Q_range.substr(dots + 2));
        }
      } catch (const std::exception&) {
        fail(Errc::ConfigError, "bad --Q-range '" + Q_range + "', expected lo..hi");
      }
      c.Q.clear();
    }
    c.validate();
    return c;
  }
};

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_atomic(out, j.dump(2) + "\n");
}

int emit_report(const Report& r, const ExperimentConfig& cfg) {
  if (cfg.out.empty()) {
    std::cout << r.csv();
    std::cerr << r.summary.dump() << "\n";
  } else {
    write_report(r, cfg.out);
    std::cerr << r.name << ": " << r.rows.size() << " rows, summary " << r.summary.dump() << "\n";
  }
  return r.any_failure() ? kFailure : kOk;
}

ConstructedLattice single_lattice(const ExperimentConfig& cfg) {
  auto Qs = cfg.Q_list();
  if (Qs.empty()) fail(Errc::ConfigError, "no Q given");
  return build_row(cfg, Qs[cfg.row.value_or(0)]);
}

LatticeFile load_lattice(const std::string& path) { return lattice_from_json(json::parse(read_file(path))); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact diagonal orbits and Minkowski covering values over F_q((1/x))"};
  app.require_subcommand(1);

  SweepFlags construct_f, roots_f, scan_f, em_f, cassels_f, covering_f, visits_f;
  std::string out, lattice, summary;
  bool margulis = false;
  int mu_prec = 2;
  double mu_seconds = 0;

  auto* construct = app.add_subcommand("construct", "build x_Q and write its lattice bundle");
  construct_f.add(construct, true);
  construct->add_option("--out", out, "output JSON");
  construct->add_option("--row", construct_f.row, "which Q of the list");

  auto* roots = app.add_subcommand("roots", "roots theta_j of P_Q with certified exponents");
  roots_f.add(roots, true);
  roots->add_option("--out", out, "output JSON");

  auto* reduce = app.add_subcommand("reduce", "reduce a lattice basis");
  reduce->add_option("--lattice", lattice, "lattice JSON")->required();
  reduce->add_flag("--margulis", margulis, "also run Margulis lengthening");
  reduce->add_option("--out", out, "output JSON");

  auto* scan = app.add_subcommand("scan", "scan one fundamental domain of the orbit");
  scan_f.add(scan);
  scan->add_option("--summary", summary, "JSON summary path");

  auto* mu = app.add_subcommand("mu", "covering value by brute force over shifts");
  mu->add_option("--lattice", lattice, "lattice JSON")->required();
  mu->add_option("--prec", mu_prec, "shift precision");
  mu->add_option("--budget", mu_seconds, "seconds (0 = none)");
  mu->add_option("--out", out, "certificate JSON");

  auto* em = app.add_subcommand("escape-mass", "mass fractions of delta-long points over a Q sweep");
  em_f.add(em);
  auto* cassels = app.add_subcommand("cassels", "Cassels certificates over a Q sweep");
  cassels_f.add(cassels);
  auto* covering = app.add_subcommand("covering", "covering checks for standard and constructed simplex sets");
  covering_f.add(covering);
  covering->add_option("--d-max", covering_f.d_max, "largest d for standard sets");
  covering->add_option("--k-max", covering_f.k_max, "largest k for standard sets");
  covering->add_flag("--no-standard", covering_f.no_standard, "skip the standard sets");
  auto* visits = app.add_subcommand("visits", "visit components and stabilizer index over a Q sweep");
  visits_f.add(visits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*construct) {
      ExperimentConfig cfg = construct_f.resolve(construct);
      emit(construction_json(single_lattice(cfg)), out);
      return kOk;
    }
    if (*roots) {
      ExperimentConfig cfg = roots_f.resolve(roots);
      ConstructedLattice cl = single_lattice(cfg);
      RootAsymptotics ra = certify_root_asymptotics(cl.roots, cl.Q);
      int worst = 0;
      for (int o : ra.self_offsets) worst = std::max(worst, std::abs(o));
      json j = {{"q", cfg.q}, {"Q", json::array()}, {"roots", to_json(cl.roots)}, {"asymptotics", to_json(ra)},
                {"offset_constant", kRootOffsetConstant}, {"within_constant", worst <= kRootOffsetConstant}};
      for (const auto& p : cl.Q.Q) j["Q"].push_back(p.to_string());
      emit(j, out);
      return ra.ok() && worst <= kRootOffsetConstant ? kOk : kFailure;
    }
    if (*reduce) {
      LatticeFile lf = load_lattice(lattice);
      ReducedBasis rb = reduce_basis(lf.basis);
      json j = {{"q", lf.q}, {"reduced", to_json(rb)}, {"minima", successive_minima(rb)}};
      if (margulis) {
        MargulisResult m = margulis_lengthen(lf.basis);
        json steps = json::array();
        for (const auto& s : m.steps)
          steps.push_back({{"l", s.l + 1}, {"ell_before", to_string(s.ell_before)}, {"ell_after", to_string(s.ell_after)}});
        j["margulis"] = {{"a", m.a}, {"steps", steps}, {"basis", to_json(m.basis)}, {"ell", to_string(m.ell_final)}};
      }
      emit(j, out);
      return kOk;
    }
    if (*scan) {
      ExperimentConfig cfg = scan_f.resolve(scan);
      ConstructedLattice cl = single_lattice(cfg);
      MeasConParams p;
      p.kappa = cfg.kappa;
      p.log_q_M = cfg.log_q_M;
      p.stab_size = double(cl.phi.gamma_lattice().index());
      OrbitScan sc = scan_orbit(cl.M, cl.phi, p);
      VisitComponents vc = visit_components(sc, cl.phi.gamma_lattice());
      std::string csv;
      for (int i = 0; i < cl.d(); ++i) csv += "a" + std::to_string(i + 1) + ",";
      csv += "ell,long,component\n";
      for (std::size_t k = 0; k < sc.points.size(); ++k) {
        for (auto v : sc.points[k]) csv += std::to_string(v) + ",";
        csv += to_string(sc.ell[k]) + "," + (sc.is_long[k] ? "1" : "0") + "," + std::to_string(vc.component[k]) + "\n";
      }
      json j = {{"Q", cfg.Q_list()[cfg.row.value_or(0)].to_string()},
                {"points", sc.points.size()},
                {"threshold", to_string(sc.threshold)},
                {"fraction", to_string(mass_fraction(sc))},
                {"components", vc.count},
                {"short_violations", sc.short_violations},
                {"inclusion_violations", sc.inclusion_violations},
                {"periodic", sc.periodic},
                {"gamma", sc.gamma},
                {"r", sc.r}};
      if (cfg.out.empty()) std::cout << csv;
      else write_atomic(cfg.out, csv);
      if (summary.empty()) std::cerr << j.dump() << "\n";
      else write_atomic(summary, j.dump(2) + "\n");
      return sc.short_violations == 0 && sc.inclusion_violations == 0 && sc.periodic ? kOk : kFailure;
    }
    if (*mu) {
      LatticeFile lf = load_lattice(lattice);
      const LatticeStabilizers* st = lf.stabilizers ? &*lf.stabilizers : nullptr;
      MuResult m = mu_bruteforce(lf.basis, st, lf.nonvanishing, mu_prec, mu_seconds);
      json j = {{"q", lf.q}, {"prec", mu_prec}, {"mu", to_json(m)}};
      ReducedBasis rb = reduce_basis(lf.basis);
      j["reduced"] = to_json(rb);
      // Replay data for the maximizing shift.
      if (!m.best_shift.empty() && m.route == "diagonal") {
        j["best_grid"] = to_json(grid_min(GridSpec{rb.basis, m.best_shift}, nullptr, false));
      } else if (!m.best_shift.empty()) {
        j["stabilizers"] = {{"C", json::array()}, {"rho", st->rho}};
        for (const auto& C : st->C) j["stabilizers"]["C"].push_back(to_json(C));
      }
      emit(j, out);
      return m.complete ? kOk : kFailure;
    }
    if (*em) {
      ExperimentConfig cfg = em_f.resolve(em);
      return emit_report(run_escape_mass(cfg), cfg);
    }
    if (*cassels) {
      ExperimentConfig cfg = cassels_f.resolve(cassels);
      return emit_report(run_cassels(cfg), cfg);
    }
    if (*covering) {
      ExperimentConfig cfg = covering_f.resolve(covering);
      return emit_report(run_covering(cfg, covering_f.no_standard ? 1 : covering_f.d_max, covering_f.k_max), cfg);
    }
    if (*visits) {
      ExperimentConfig cfg = visits_f.resolve(visits);
      return emit_report(run_visits(cfg), cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::ConfigError || e.code() == Errc::ParseError || e.code() == Errc::InvalidArgument ? kConfig
                                                                                                                : kFailure;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
