#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ffmink/construction.hpp"
#include "ffmink/dynamics.hpp"
#include "ffmink/lattice.hpp"
#include "ffmink/minkowski.hpp"

namespace ffmink {

using json = nlohmann::ordered_json;

// Matrices are arrays of rows of strings; Laurent entries carry their O-term.
json to_json(const LMatrix& m);
json to_json(const PMatrix& m);
json to_json(const LVector& v);
LMatrix lmatrix_from_json(const GF& f, const json& j);
PMatrix pmatrix_from_json(const GF& f, const json& j);
LVector lvector_from_json(const GF& f, const json& j);

json to_json(const ReducedBasis& rb);
json to_json(const RootSystem& rs);
json to_json(const RootAsymptotics& ra);
json to_json(const SimplexSet& phi);
json to_json(const StabilizerBundle& b);
json to_json(const GridMinResult& g);
json to_json(const UnitReduction& u);
json to_json(const MuResult& m);
json to_json(const CasselsCertificate& c);
json to_json(const CoveringReport& c);

// Lattice file: {"q", "basis", optional "stabilizers": {"C", "rho"}, "nonvanishing"}.
struct LatticeFile {
  int q = 0;
  LMatrix basis;
  std::optional<LatticeStabilizers> stabilizers;
  bool nonvanishing = false;
};
LatticeFile lattice_from_json(const json& j);

// Construction bundle written by `construct`; it is also a valid lattice file.
json construction_json(const ConstructedLattice& cl);

struct ExperimentConfig {
  int q = 3;
  int d = 2;
  std::vector<std::string> a;  // empty: default a-vector
  std::vector<std::string> Q;  // explicit Cassels Q polynomials
  int Q_min_degree = 1, Q_max_degree = 5;
  int Q_per_degree = 1;        // first monic polynomials of each degree
  int prec = 0;                // 0: default precision
  double kappa = 0.5;
  double log_q_M = 0;
  std::vector<double> delta;   // extra ell thresholds (q-exponents) for mass tables
  int window = -1;
  long long budget = 1 << 24;
  double budget_seconds = 0;
  int mu_prec = 1;
  int jobs = 1;
  std::optional<int> row;      // re-run a single row
  std::string out;

  void validate() const;
  // Cassels Q polynomials in row order.
  std::vector<Poly> Q_list() const;
  std::vector<Poly> a_vector() const;
};

json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

// Writes through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace ffmink
