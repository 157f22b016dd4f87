#include "ffmink/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ffmink/errors.hpp"

namespace ffmink {

namespace {

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string());
    rows.push_back(r);
  }
  return rows;
}

template <class T, class Parse>
Matrix<T> matrix_from(const GF& f, const json& j, Parse parse) {
  if (!j.is_array() || j.empty()) fail(Errc::ParseError, "matrix must be a nonempty array of rows");
  const int r = int(j.size()), c = int(j[0].size());
  Matrix<T> m(f, r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || int(j[i].size()) != c) fail(Errc::ParseError, "ragged matrix rows");
    for (int k = 0; k < c; ++k) m(i, k) = parse(f, j[i][k].get<std::string>());
  }
  return m;
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

}  // namespace

json to_json(const LMatrix& m) { return matrix_json(m); }
json to_json(const PMatrix& m) { return matrix_json(m); }

json to_json(const LVector& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(e.to_string());
  return a;
}

LMatrix lmatrix_from_json(const GF& f, const json& j) { return matrix_from<Laurent>(f, j, parse_laurent); }
PMatrix pmatrix_from_json(const GF& f, const json& j) { return matrix_from<Poly>(f, j, parse_poly); }

LVector lvector_from_json(const GF& f, const json& j) {
  LVector v;
  for (const auto& e : j) v.push_back(parse_laurent(f, e.get<std::string>()));
  return v;
}

json to_json(const ReducedBasis& rb) {
  return {{"basis", to_json(rb.basis)},
          {"norms", rb.norms},
          {"transform", to_json(rb.transform)},
          {"det_exponent", rb.det_exponent},
          {"steps", rb.steps},
          {"ell", to_string(ell(rb))}};
}

json to_json(const RootSystem& rs) {
  return {{"P", rs.P.to_string()},
          {"theta", to_json(rs.theta)},
          {"certified_error_exponents", rs.certified_error_exponents},
          {"target_order", rs.target_order}};
}

json to_json(const RootAsymptotics& ra) {
  return {{"norm_degree", ra.norm_degree},
          {"self_exponents", ra.self_exponents},
          {"self_offsets", ra.self_offsets},
          {"cross_exponents", ra.cross_exponents},
          {"separation_exponent", ra.separation_exponent},
          {"self_bound", ra.self_bound},
          {"product_identity", ra.product_identity},
          {"ok", ra.ok()}};
}

json to_json(const SimplexSet& phi) {
  json j = {{"d", phi.d}, {"rho", phi.rho}, {"xi", phi.xi()}, {"index", phi.gamma_lattice().index()}};
  json w = json::array();
  for (const auto& v : phi.W()) w.push_back(rationals(v));
  j["W"] = w;
  return j;
}

json to_json(const StabilizerBundle& b) {
  json certs = json::array();
  for (const auto& c : b.certs)
    certs.push_back({{"l", c.l + 1},
                     {"C_theta", to_json(c.C_theta)},
                     {"C", to_json(c.C)},
                     {"det", c.det.to_string()},
                     {"numeric_match", c.numeric_match}});
  return {{"certificates", certs}, {"product_identity", b.product_identity}, {"rank", b.rank}, {"ok", b.ok()}};
}

json to_json(const GridMinResult& g) {
  json j = {{"zero", g.zero},
            {"min_exponent", g.min_exponent},
            {"route", g.route},
            {"E0", g.E0},
            {"box_exponent", g.box_exponent},
            {"candidates", g.candidates},
            {"covering_radii", rationals(g.covering_radii)},
            {"min_sup_exponent", g.min_sup_exponent},
            {"reduced_norms", g.reduced_norms}};
  j["argmin"] = to_json(g.argmin);
  return j;
}

json to_json(const UnitReduction& u) {
  json tau = json::array();
  for (int t : u.tau) tau.push_back(t + 1);
  return {{"word", u.word},
          {"tau", tau},
          {"rho_before", u.rho_before},
          {"rho_after", u.rho_after},
          {"slack", to_string(u.slack)},
          {"v", to_json(u.v)}};
}

json to_json(const MuResult& m) {
  return {{"mu_exponent", m.mu_exponent},
          {"exact", m.exact},
          {"complete", m.complete},
          {"shifts_tried", m.shifts_tried},
          {"best_shift", to_json(m.best_shift)},
          {"route", m.route}};
}

json to_json(const CasselsCertificate& c) {
  json j = {{"target", c.target},
            {"pass", c.pass},
            {"equality", c.equality},
            {"stabilizers_ok", c.stabilizers_ok},
            {"grid_stabilizers_ok", c.grid_stabilizers_ok},
            {"irreducibility", c.irreducibility},
            {"grid", to_json(c.grid)},
            {"max_xi_offset", c.max_xi_offset},
            {"proximity",
             {{"computed", c.proximity.computed},
              {"long_points", c.proximity.long_points},
              {"T_star", c.proximity.T_star}}},
            {"failure", c.failure},
            {"budget_exhausted", c.budget_exhausted}};
  j["argmin_reduction"] = c.argmin_reduction ? to_json(*c.argmin_reduction) : json(nullptr);
  return j;
}

json to_json(const CoveringReport& c) {
  json gap = c.gap ? json(*c.gap) : json(nullptr);
  return {{"window", c.window},
          {"points_checked", c.points_checked},
          {"index", c.index},
          {"ok", c.ok()},
          {"gap", gap},
          {"gammas", rationals(c.gammas)},
          {"c_per_gamma", c.c_per_gamma},
          {"c", c.c}};
}

LatticeFile lattice_from_json(const json& j) {
  LatticeFile lf;
  try {
    lf.q = j.at("q").get<int>();
    const GF& f = GF::get(lf.q);
    lf.basis = lmatrix_from_json(f, j.at("basis"));
    if (lf.basis.rows() != lf.basis.cols()) fail(Errc::ParseError, "basis must be square");
    if (j.contains("stabilizers")) {
      LatticeStabilizers s;
      for (const auto& c : j["stabilizers"].at("C")) s.C.push_back(pmatrix_from_json(f, c));
      s.rho = j["stabilizers"].at("rho").get<std::vector<IVec>>();
      lf.stabilizers = s;
    }
    lf.nonvanishing = j.value("nonvanishing", false);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("lattice file: ") + e.what());
  }
  return lf;
}

json construction_json(const ConstructedLattice& cl) {
  const GF& f = cl.M.field();
  json Q = json::array();
  for (const auto& p : cl.Q.Q) Q.push_back(p.to_string());
  ReducedBasis rb = reduce_basis(cl.M);
  json j = {{"q", f.q()},
            {"d", cl.d()},
            {"Q", Q},
            {"cassels", cl.cassels},
            {"prec", cl.prec},
            {"norm_degree", cl.norm_degree()},
            {"covol_exponent", cl.covol_exponent},
            {"basis", to_json(cl.M)},
            {"Theta", to_json(cl.Theta)},
            {"P", to_json(cl.P)},
            {"c", json::array()},
            {"roots", to_json(cl.roots)},
            {"reduced", to_json(rb)},
            {"unit_profile", cl.unit_profile},
            {"simplex", to_json(cl.phi)}};
  for (const auto& c : cl.c) j["c"].push_back(c.to_string());
  auto fit = is_kC_standard(cl.phi, 64);
  j["standard_fit"] = fit ? json{{"k", fit->k}, {"C", fit->C}} : json(nullptr);
  StabilizerBundle b = stabilizer_certificates(cl);
  j["stabilizer_certificates"] = to_json(b);
  json C = json::array();
  for (const auto& c : b.certs) C.push_back(to_json(c.C));
  j["stabilizers"] = {{"C", C}, {"rho", cl.phi.rho}};
  auto irr = irreducibility_check(cl.roots.P);
  j["irreducibility"] = to_string(irr.status);
  j["nonvanishing"] = irr.status == IrreducibilityResult::Status::NoRationalRoot && cl.d() <= 3;
  return j;
}

void ExperimentConfig::validate() const {
  if (q < 2 || q > 256) fail(Errc::ConfigError, "q must be a prime power up to 256");
  (void)GF::get(q);
  if (d < 2 || d > 6) fail(Errc::ConfigError, "d must be in 2..6");
  if (!a.empty() && int(a.size()) != d) fail(Errc::ConfigError, "need exactly d a-polynomials");
  if (Q.empty() && Q_min_degree < 0) fail(Errc::ConfigError, "Q degrees must be nonnegative");
  if (Q_per_degree < 1) fail(Errc::ConfigError, "Q per degree must be positive");
  if (!(kappa > 0 && kappa < 1)) fail(Errc::ConfigError, "kappa must lie in (0, 1)");
  if (prec < 0 || mu_prec < 1) fail(Errc::ConfigError, "precisions must be positive");
  if (jobs < 1) fail(Errc::ConfigError, "jobs must be positive");
  if (budget < 1) fail(Errc::ConfigError, "budget must be positive");
  (void)a_vector();
  (void)Q_list();
}

std::vector<Poly> ExperimentConfig::Q_list() const {
  const GF& f = GF::get(q);
  std::vector<Poly> out;
  try {
    for (const auto& s : Q) out.push_back(parse_poly(f, s));
  } catch (const Error& e) {
    fail(Errc::ConfigError, e.what());
  }
  if (!Q.empty()) return out;
  for (int k = Q_min_degree; k <= Q_max_degree; ++k) {
    auto m = monic_polys(f, k);
    for (int i = 0; i < Q_per_degree && i < int(m.size()); ++i) out.push_back(m[i]);
  }
  return out;
}

std::vector<Poly> ExperimentConfig::a_vector() const {
  const GF& f = GF::get(q);
  if (a.empty()) return default_a_vector(f, d);
  std::vector<Poly> out;
  try {
    for (const auto& s : a) out.push_back(parse_poly(f, s));
  } catch (const Error& e) {
    fail(Errc::ConfigError, e.what());
  }
  return out;
}

json to_json(const ExperimentConfig& c) {
  json j = {{"q", c.q},
            {"d", c.d},
            {"a", c.a},
            {"Q", c.Q},
            {"Q_range", {c.Q_min_degree, c.Q_max_degree}},
            {"Q_per_degree", c.Q_per_degree},
            {"prec", c.prec},
            {"kappa", c.kappa},
            {"log_q_M", c.log_q_M},
            {"delta", c.delta},
            {"window", c.window},
            {"budget", c.budget},
            {"budget_seconds", c.budget_seconds},
            {"mu_prec", c.mu_prec},
            {"jobs", c.jobs},
            {"out", c.out}};
  j["row"] = c.row ? json(*c.row) : json(nullptr);
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      if (k == "q") c.q = v.get<int>();
      else if (k == "d") c.d = v.get<int>();
      else if (k == "a") c.a = v.get<std::vector<std::string>>();
      else if (k == "Q") c.Q = v.get<std::vector<std::string>>();
      else if (k == "Q_range") {
        c.Q_min_degree = v.at(0).get<int>();
        c.Q_max_degree = v.at(1).get<int>();
      } else if (k == "Q_per_degree") c.Q_per_degree = v.get<int>();
      else if (k == "prec") c.prec = v.get<int>();
      else if (k == "kappa") c.kappa = v.get<double>();
      else if (k == "log_q_M") c.log_q_M = v.get<double>();
      else if (k == "delta") c.delta = v.get<std::vector<double>>();
      else if (k == "window") c.window = v.get<int>();
      else if (k == "budget") c.budget = v.get<long long>();
      else if (k == "budget_seconds") c.budget_seconds = v.get<double>();
      else if (k == "mu_prec") c.mu_prec = v.get<int>();
      else if (k == "jobs") c.jobs = v.get<int>();
      else if (k == "out") c.out = v.get<std::string>();
      else if (k == "row") {
        if (!v.is_null()) c.row = v.get<int>();
      } else fail(Errc::ConfigError, "unknown config key '" + k + "'");
    }
  } catch (const json::exception& e) {
    fail(Errc::ConfigError, e.what());
  }
  return c;
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(Errc::InvalidArgument, "cannot write " + tmp);
    out << text;
    if (!out) fail(Errc::InvalidArgument, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) fail(Errc::InvalidArgument, "cannot rename " + tmp + " to " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ConfigError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ffmink
