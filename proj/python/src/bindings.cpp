#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffmink/errors.hpp"
#include "ffmink/experiments.hpp"

namespace py = pybind11;
using namespace ffmink;

namespace {

// The Python layer passes and receives JSON text; see ffmink/__init__.py.
std::string report_json(const Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"row", row.index},
                    {"status", row.skipped ? "SKIP" : row.pass ? "PASS" : "FAIL"},
                    {"error", row.error},
                    {"certificate", row.certificate}});
  return json{{"report", r.name}, {"summary", r.summary}, {"csv", r.csv()}, {"rows", rows}}.dump();
}

ExperimentConfig config(const std::string& text) {
  ExperimentConfig c = config_from_json(json::parse(text));
  c.validate();
  return c;
}

std::vector<Poly> parse_list(const GF& f, const std::vector<std::string>& v) {
  std::vector<Poly> out;
  for (const auto& s : v) out.push_back(parse_poly(f, s));
  return out;
}

ConstructedLattice build(int q, int d, const std::string& Q, const std::vector<std::string>& a, int prec) {
  const GF& f = GF::get(q);
  std::vector<Poly> av = a.empty() ? default_a_vector(f, d) : parse_list(f, a);
  if (int(av.size()) != d) fail(Errc::InvalidArgument, "need exactly d a-polynomials");
  return build_xQ(CasselsSpec{av, parse_poly(f, Q)}, prec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compact diagonal orbits and Minkowski covering values over F_q((1/x))";

  py::register_exception<Error>(m, "FfminkError", PyExc_RuntimeError);

  m.def("parse_laurent", [](int q, const std::string& s) { return parse_laurent(GF::get(q), s).to_string(); });
  m.def("parse_poly", [](int q, const std::string& s) { return parse_poly(GF::get(q), s).to_string(); });

  m.def("product_value", [](int q, const std::vector<std::string>& v) {
    LVector lv;
    for (const auto& s : v) lv.push_back(parse_laurent(GF::get(q), s));
    return product_value(lv);
  });

  m.def("construct", [](int q, int d, const std::string& Q, const std::vector<std::string>& a, int prec) {
    return construction_json(build(q, d, Q, a, prec)).dump();
  }, py::arg("q"), py::arg("d"), py::arg("Q"), py::arg("a") = std::vector<std::string>{}, py::arg("prec") = 0);

  m.def("reduce", [](const std::string& lattice) {
    LatticeFile lf = lattice_from_json(json::parse(lattice));
    ReducedBasis rb = reduce_basis(lf.basis);
    return json{{"reduced", to_json(rb)}, {"minima", successive_minima(rb)}}.dump();
  });

  m.def("margulis", [](const std::string& lattice) {
    LatticeFile lf = lattice_from_json(json::parse(lattice));
    MargulisResult r = margulis_lengthen(lf.basis);
    return json{{"a", r.a}, {"steps", r.steps.size()}, {"ell", to_string(r.ell_final)}, {"basis", to_json(r.basis)}}.dump();
  });

  m.def("mu", [](const std::string& lattice, int prec, double seconds) {
    LatticeFile lf = lattice_from_json(json::parse(lattice));
    const LatticeStabilizers* st = lf.stabilizers ? &*lf.stabilizers : nullptr;
    return to_json(mu_bruteforce(lf.basis, st, lf.nonvanishing, prec, seconds)).dump();
  }, py::arg("lattice"), py::arg("prec") = 2, py::arg("seconds") = 0.0);

  m.def("cassels", [](int q, int d, const std::string& Q, const std::vector<std::string>& a, int prec) {
    return to_json(cassels_certificate(build(q, d, Q, a, prec))).dump();
  }, py::arg("q"), py::arg("d"), py::arg("Q"), py::arg("a") = std::vector<std::string>{}, py::arg("prec") = 0);

  m.def("escape_mass", [](const std::string& cfg) { return report_json(run_escape_mass(config(cfg))); });
  m.def("cassels_sweep", [](const std::string& cfg) { return report_json(run_cassels(config(cfg))); });
  m.def("visits", [](const std::string& cfg) { return report_json(run_visits(config(cfg))); });
  m.def("covering", [](const std::string& cfg, int d_max, int k_max) {
    return report_json(run_covering(config(cfg), d_max, k_max));
  }, py::arg("config"), py::arg("d_max") = 4, py::arg("k_max") = 4);
}
