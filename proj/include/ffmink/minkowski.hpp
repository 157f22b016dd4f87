#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffmink/construction.hpp"
#include "ffmink/dynamics.hpp"
#include "ffmink/lattice.hpp"

namespace ffmink {

// N(v) = prod |v_i| as a q-exponent; nullopt stands for ZERO.
std::optional<int> product_value(const LVector& v);

// N-exponents of all grid vectors with sup norm <= q^bound (kMinusInf for ZERO).
std::vector<int> product_set_sample(const GridSpec& y, int bound, long long budget = 1 << 22);

struct GridMinResult {
  bool zero = false;  // some grid vector has a zero coordinate
  int min_exponent = 0;
  LVector argmin;
  std::string route;  // "diagonal" or "stabilizer"
  int E0 = 0;         // N of the shift vector in reduced coordinates
  int box_exponent = 0;
  long long candidates = 0;
  std::vector<Rational> covering_radii;
  int min_sup_exponent = 0;  // smallest sup norm exponent among enumerated vectors
  std::vector<int> reduced_norms;
};

// Exact inf N over y = basis (R^d + shift).
// Diagonal (monomial) bases are handled coordinatewise. Otherwise stab must be
// rho of a group of diagonal matrices certified to preserve y, and
// nonvanishing must certify that no nonzero grid vector has a zero coordinate;
// without them the search is incomplete.
GridMinResult grid_min(const GridSpec& y, const ZLattice* stab, bool nonvanishing, long long budget = 1 << 24);

struct UnitReduction {
  std::vector<long long> word;  // b_1..b_n
  std::vector<int> tau;         // label permutation of the chosen deep point w_tau
  IVec rho_before, rho_after;
  Rational slack;               // ceil0 distance of rho(v') from w_tau + mean
  LVector v;                    // reduced vector (when entries are available)
};

// Moves rho(v) by rho(Gamma_Phi) as close as possible (in ceil0) to a deep
// point w_tau shifted by the mean of rho(v); ties go to the lexicographically
// smallest word. Throws ReductionFailed when the slack exceeds max_slack.
UnitReduction unit_reduce(const LVector& v, const SimplexSet& phi, std::optional<Rational> max_slack = std::nullopt);

// Stabilizer data for a lattice: exact matrices C_l with diag(t_l) B = B C_l,
// and the rho-vectors of the t_l.
struct LatticeStabilizers {
  std::vector<PMatrix> C;
  std::vector<IVec> rho;
};
LatticeStabilizers stabilizers_of(const ConstructedLattice& cl);

struct MuResult {
  int mu_exponent = 0;  // log_q mu at the shift precision (lower bound unless exact)
  bool exact = false;
  bool complete = true;  // false when the budget ran out
  long long shifts_tried = 0;
  LVector best_shift;    // reduced coordinates
  std::string route;
};

// max over shifts with coefficients x^-1..x^-prec (reduced coordinates) of the
// grid minimum, normalized by |det|. budget_seconds <= 0 means unlimited.
MuResult mu_bruteforce(const LMatrix& x, const LatticeStabilizers* stab, bool nonvanishing, int prec,
                       double budget_seconds = 0, long long orbit_budget = 1 << 20);

struct ProximityReport {
  bool computed = false;
  int long_points = 0;
  int T_star = 0;  // min over delta-long points of the best q^-T proximity
};

struct CasselsCertificate {
  int target = 0;  // -d + rho(det M)
  GridMinResult grid;
  bool pass = false;
  bool equality = false;
  bool stabilizers_ok = false;
  bool grid_stabilizers_ok = false;
  std::string irreducibility;
  int max_xi_offset = 0;  // min sup exponent - n deg||Q||
  std::optional<UnitReduction> argmin_reduction;
  ProximityReport proximity;
  std::string failure;
  bool budget_exhausted = false;  // undecided rather than failed
};

struct CasselsOptions {
  long long budget = 1 << 24;
  bool proximity = true;
  int proximity_window = 2;
  MeasConParams params;
};

CasselsCertificate cassels_certificate(const ConstructedLattice& cl, const CasselsOptions& opt = {});

constexpr int kExactProximity = 1 << 20;  // reported when the fit is exact

// Best T such that the reduced basis of diag(x^a) B is within q^-T of D G with
// D an x-power diagonal in the window and G in GL_d(R).
int proximity_exponent(const LMatrix& B, const IVec& a, int window);

}  // namespace ffmink
