#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffmink/linalg.hpp"
#include "ffmink/rational.hpp"

namespace ffmink {

using IVec = std::vector<long long>;

// Max coordinate of a vector in R_0^d.
Rational ceil0(const RVec& v);
long long ceil0(const IVec& v);

// Full-rank sublattice of Z_0^d, handled through the coordinates (v_1..v_n)
// obtained by dropping the last one.
class ZLattice {
 public:
  ZLattice() = default;
  // generators: vectors of Z_0^d spanning a rank-n sublattice; the first n of
  // them must already form a basis (used for closest-vector searches).
  ZLattice(int d, std::vector<IVec> generators);
  // Arbitrary spanning set; the Hermite normal form rows become the basis.
  static ZLattice from_generators(int d, const std::vector<IVec>& generators);

  int dim() const { return d_; }
  long long index() const;  // [Z_0^d : L]
  const std::vector<IVec>& basis() const { return basis_; }
  // Canonical coset representative with 0 <= v_i < h_ii for i < n.
  IVec reduce(const IVec& v) const;
  std::vector<IVec> coset_reps() const;
  // Coordinates of v in the basis (exact rationals).
  RVec coordinates(const RVec& v) const;
  // min over g in L of ceil0(y - g), with an optimal g.
  std::pair<Rational, IVec> closest(const RVec& y) const;
  // Largest ceil0 distance from a point of the fundamental box to 0.
  long long box_diameter() const;
  // R*_t = max over u in Z^d with sum t of min_g ceil0(u - (t/d) 1 - g), t = 0..d-1.
  std::vector<Rational> residue_covering_radii() const;

 private:
  int d_ = 0;
  std::vector<IVec> basis_;
  std::vector<IVec> hnf_;                  // n x n upper triangular, dropped coordinates
  std::vector<std::vector<Rational>> ginv_;  // inverse of the basis matrix, dropped coordinates
};

// d diagonal elements of A_1 given by their rho-vectors, optionally with the
// Laurent diagonal entries.
struct SimplexSet {
  int d = 0;
  std::vector<IVec> rho;
  std::vector<LVector> entries;  // empty when only rho is known

  int n() const { return d - 1; }
  // Checks sum zero, rank n and (if entries are given) the exact product identity.
  void validate() const;
  long long xi() const;
  RVec w() const;
  // w_tau for label permutations tau fixing the last label; n! vectors.
  std::vector<RVec> W() const;
  ZLattice gamma_lattice() const;
};

SimplexSet standard_simplex(int d, int k);

struct StandardFit {
  int k = 0;
  long long C = 0;                // max correction exponent actually needed
  std::vector<int> labels;        // t_l matched with b_{labels[l]}
};
// Smallest-correction k with t_l = b_{labels[l]}^k c_l and ceil(c_l) <= q^C.
std::optional<StandardFit> is_kC_standard(const SimplexSet& phi, long long C, int max_k = 64);

struct TightnessReport {
  Rational ell;
  Rational tight_bound;  // log_q M - (n/2) xi
  Rational lower_bound;  // -d - (n/2) xi
  bool tight = false;
  bool lower_ok = false;
};
TightnessReport is_M_tight(const SimplexSet& phi, const LMatrix& x, const Rational& log_q_M);

// u in scale * (n/2) S_Phi + rho(Gamma)? Returns the translate g when it is.
std::optional<IVec> covered_by(const SimplexSet& phi, const ZLattice& L, const IVec& u, const Rational& scale,
                               bool interior = false);
// min over tau, g of ceil0(v - w_tau - g).
Rational distance_to_W(const SimplexSet& phi, const ZLattice& L, const std::vector<RVec>& W, const IVec& v);

struct CoveringReport {
  long long window = 0;
  long long points_checked = 0;
  long long index = 0;
  std::optional<IVec> gap;           // witness for a failure of the covering identity
  std::vector<Rational> gammas;
  std::vector<double> c_per_gamma;   // smallest admissible c for each gamma
  double c = 0;                      // max over gammas
  bool ok() const { return !gap.has_value(); }
};
// window < 0 picks ceil(2 * diameter of the fundamental box).
CoveringReport covering_check(const SimplexSet& phi, long long window = -1,
                              std::vector<Rational> gammas = {Rational(1, 4), Rational(1, 2), Rational(3, 4)});
// Smallest c for a single gamma (0 when nothing is uncovered).
double covering_constant(const SimplexSet& phi, const ZLattice& L, const Rational& gamma);

// Largest covering constant measured over the standard sets (d <= 4, k <= 4)
// and the constructed d = 2, 3 sweeps; pinned as the default c.
inline constexpr double kCoveringConstant = 3;

struct MeasConParams {
  double kappa = 0.5;
  double log_q_M = 0;
  double c = kCoveringConstant;
  double stab_size = 1;  // |Delta| proxy

  double delta_exp(int d) const;
  double gamma(int d, long long xi) const;
  double r(int d) const;
  // Exact threshold on ell exponents equivalent to ell >= delta.
  Rational threshold(int d) const;
};

struct OrbitScan {
  int d = 0;
  std::vector<IVec> points;   // one fundamental domain of Z_0^d / rho(Gamma)
  std::vector<Rational> ell;  // log_q ell(a x)
  std::vector<bool> failed;   // precision exhausted at this point
  Rational threshold;
  std::vector<bool> is_long;
  // MeasCon checks
  long long short_violations = 0;      // point in S^(gamma) Gamma with ell >= delta
  long long inclusion_violations = 0;  // delta-long point farther than r from W + Gamma
  std::optional<IVec> witness;
  long long periodicity_checks = 0;
  bool periodic = true;
  double gamma = 0, r = 0;

  std::size_t find(const IVec& a) const;
};

// ell(diag(x^a) B) as a q-exponent.
Rational orbit_ell(const LMatrix& B, const IVec& a);

OrbitScan scan_orbit(const LMatrix& x, const SimplexSet& phi, const MeasConParams& params, bool strict = false);
Rational mass_fraction(const OrbitScan& scan);
Rational mass_fraction(const OrbitScan& scan, const Rational& threshold);

struct VisitComponents {
  int count = 0;
  std::vector<int> component;  // per scan point, -1 when not long
};
VisitComponents visit_components(const OrbitScan& scan, const ZLattice& L);

struct StabilizerIndexReport {
  long long index_upper_bound = 0;  // number of coset reps passing the necessary test
  std::vector<IVec> candidates;
  bool complete = true;             // false when an enumeration hit the budget
  long long factorial_n = 1;
  bool within_bound() const { return index_upper_bound <= factorial_n; }
};
// A coset rep v can lie in rho(Delta_x) only if diag(x^-v) x contains a vector
// with every coordinate of absolute value 1 (x is assumed to contain one).
StabilizerIndexReport stabilizer_index_check(const LMatrix& x, const SimplexSet& phi, long long budget = 1 << 20);

}  // namespace ffmink
