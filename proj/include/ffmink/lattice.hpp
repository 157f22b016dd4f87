#pragma once

#include <optional>
#include <vector>

#include "ffmink/linalg.hpp"
#include "ffmink/rational.hpp"

namespace ffmink {

// Column basis of a lattice in K~^d after ultrametric reduction: the leading
// coefficient vectors of the columns are linearly independent over F_q, so
// ||sum c_j b_j|| = max |c_j| ||b_j|| for all c_j in K~.
struct ReducedBasis {
  LMatrix basis;
  std::vector<int> norms;  // rho(||b_j||)
  PMatrix transform;       // basis = input * transform, transform in GL_d(R)
  int det_exponent = 0;    // rho(det) = sum of norms
  int steps = 0;

  int dim() const { return basis.cols(); }
  int covolume_class() const;
};

// rho(||v||) of a vector whose largest entry is certified; nullopt for the
// exact zero vector. Throws PrecisionExhausted otherwise.
std::optional<int> sup_norm(const LVector& v);

ReducedBasis reduce_basis(const LMatrix& B);

// lambda_1 <= ... <= lambda_d as q-exponents.
std::vector<int> successive_minima(const ReducedBasis& rb);
LVector shortest_vector(const ReducedBasis& rb);
// log_q ell = lambda_1 - rho(det)/d.
Rational ell(const ReducedBasis& rb);
Rational ell(const LMatrix& B);

// Row i multiplied by x^a_i (and units[i] when given). In strict mode the
// exponents must sum to zero.
LMatrix apply_diagonal(const LMatrix& B, const std::vector<int>& a, bool strict = true,
                       const LVector* units = nullptr);

// Scale by x^-s so that rho(det) lands in {0, ..., d-1}; returns s.
int homothety_shift(int det_exponent, int d);

struct LatticeEquality {
  bool equal = false;
  std::optional<PMatrix> change;  // B2 = B1 * change when equal
};
// Decides whether two bases span the same R-module, to working precision.
LatticeEquality lattice_equal(const LMatrix& B1, const LMatrix& B2);

struct MargulisStep {
  int l = 0;  // index of the applied b_l (0-based)
  Rational ell_before, ell_after;
};

struct MargulisResult {
  std::vector<int> a;  // accumulated rho-vector of the diagonal word
  std::vector<MargulisStep> steps;
  LMatrix basis;
  Rational ell_final;
};

// Applies b_l = diag(x, ..., x^-n, ..., x) (x^-n in slot l) until ell >= q^-d,
// choosing l so that e_l is outside the span of the short directions.
MargulisResult margulis_lengthen(const LMatrix& B, int max_steps = 100000);

}  // namespace ffmink
