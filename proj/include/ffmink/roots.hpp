#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffmink/laurent.hpp"
#include "ffmink/poly.hpp"
#include "ffmink/rational.hpp"

namespace ffmink {

// Polynomial in T with coefficients in R; c[i] multiplies T^i.
struct PolyT {
  std::vector<Poly> c;

  int degree() const { return int(c.size()) - 1; }
  PolyT derivative() const;
  std::string to_string() const;
  friend PolyT operator*(const PolyT& a, const PolyT& b);
  friend bool operator==(const PolyT& a, const PolyT& b) { return a.c == b.c; }
};

// Horner evaluation with automatic precision bookkeeping.
Laurent poly_eval(const PolyT& p, const Laurent& t);
Poly poly_eval(const PolyT& p, const Poly& t);

struct QVector {
  std::vector<Poly> Q;
  // Separation parameter: |Q_i - Q_j| / ||Q|| >= eta for i != j.
  Rational eta{1};

  int d() const { return int(Q.size()); }
  // deg ||Q|| = max_i deg Q_i.
  int norm_degree() const;
  // min over i != j of deg(Q_i - Q_j) - deg ||Q|| (a nonpositive integer), or
  // nullopt if two entries coincide.
  std::optional<int> separation_exponent() const;
  bool satisfies_eta() const;
};

// P_Q(T) = prod (T - Q_i) - 1.
PolyT build_PQ(const QVector& Q);

struct NewtonTrace {
  // rho(P(theta_k)) - rho(P'(theta_k)) = log_q |theta - theta_k| at each step.
  std::vector<int> error_exponents;
};

// Root of P near seed to absolute precision target_order (result is
// theta + O(x^target_order)). Throws HenselFailure unless
// |P(seed)| < |P'(seed)|^2.
Laurent newton_root(const PolyT& P, const Poly& seed, int target_order, NewtonTrace* trace = nullptr);

struct RootSystem {
  PolyT P;
  std::vector<Laurent> theta;  // theta[j] is the root near Q_j
  std::vector<int> certified_error_exponents;
  int target_order = 0;
};

RootSystem compute_roots(const QVector& Q, int target_order);

// Largest |rho(theta_j - Q_j) + n deg||Q||| seen over the q in {2,3}, d in {2,3},
// deg Q in 1..5 Cassels sweep; frozen as the O(1) constant.
inline constexpr int kRootOffsetConstant = 1;

struct RootAsymptotics {
  int norm_degree = 0;
  int n = 0;
  std::vector<int> self_exponents;               // rho(theta_j - Q_j)
  std::vector<std::vector<int>> cross_exponents;  // rho(theta_j - Q_l)
  std::vector<int> self_offsets;                 // rho(theta_j - Q_j) + n deg||Q||
  int separation_exponent = 0;                   // log_q of the measured eta
  int self_bound = 0;                            // n * (-separation_exponent)
  bool product_identity = false;                 // sum_l rho(theta_j - Q_l) = 0 for all j
  bool self_within_bound = false;
  bool cross_within_bound = false;
  bool ok() const { return product_identity && self_within_bound && cross_within_bound; }
};

// Measures the root asymptotics exponents; throws AsymptoticsViolated
// when the exact product identity or the eta-derived bounds fail.
RootAsymptotics certify_root_asymptotics(const RootSystem& rs, const QVector& Q);

struct IrreducibilityResult {
  enum class Status { NoRationalRoot, Factor, Inconclusive };
  Status status = Status::Inconclusive;
  std::optional<Poly> root;  // a root in R when status == Factor
  int candidates_checked = 0;
  std::string reason;
};

// For monic P of degree 2 or 3 over R: P is reducible over K iff it has a root
// in R, which must divide the constant term. Candidates are monic divisors of
// the constant term of degree <= the root-size bound, times units.
IrreducibilityResult irreducibility_check(const PolyT& P, int degree_bound = 12);

std::string to_string(IrreducibilityResult::Status s);

}  // namespace ffmink
