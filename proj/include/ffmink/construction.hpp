#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffmink/dynamics.hpp"
#include "ffmink/linalg.hpp"
#include "ffmink/roots.hpp"

namespace ffmink {

// Q_j = Q * a_j with a_j = 0 mod x^2 and pairwise distinct.
struct CasselsSpec {
  std::vector<Poly> a;
  Poly Q;

  void validate() const;
  QVector qvector() const;
};

// The first d distinct nonzero multiples of x^2, ordered by degree and then by
// coefficient code.
std::vector<Poly> default_a_vector(const GF& f, int d);

// Precision floor used when none is requested.
int default_precision(int d, int norm_degree);

struct ConstructedLattice {
  QVector Q;
  bool cassels = false;  // built from a CasselsSpec
  RootSystem roots;
  int prec = 0;
  LMatrix Theta;  // theta_i^(j-1)
  LMatrix M;      // sigma_i(u_j), u_j = prod_{l<j} (theta - Q_l)
  PMatrix P;      // M = Theta P, upper unipotent
  PMatrix Pinv;
  std::vector<Poly> c;  // theta^d = sum_{i<d} c_i theta^i
  PMatrix companion;    // multiplication by theta in the basis 1, theta, ..., theta^n
  LMatrix omega;        // omega(i, l) = sigma_i(omega_l) = theta_i - Q_l
  int covol_exponent = 0;
  std::vector<std::vector<int>> unit_profile;  // rho(sigma_i(u_j))
  SimplexSet phi;

  int d() const { return Q.d(); }
  int norm_degree() const { return Q.norm_degree(); }
};

ConstructedLattice build_xQ(const QVector& Q, int prec = 0);
ConstructedLattice build_xQ(const CasselsSpec& spec, int prec = 0);

struct StabilizerCertificate {
  int l = 0;
  PMatrix C_theta;  // omega_l in the basis 1, theta, ..., theta^n
  PMatrix C;        // omega_l in the basis u_1..u_d, i.e. M^-1 diag(sigma(omega_l)) M
  Poly det;         // a nonzero constant
  bool numeric_match = false;  // diag(sigma(omega_l)) M = M C to working precision
  int numeric_residual_order = 0;
};

StabilizerCertificate stabilizer_certificate(const ConstructedLattice& cl, int l);

struct StabilizerBundle {
  std::vector<StabilizerCertificate> certs;
  bool product_identity = false;  // prod C_theta_l = I exactly
  int rank = 0;                   // rank of the rho(t_l)
  bool ok() const;
};
StabilizerBundle stabilizer_certificates(const ConstructedLattice& cl);

// y = basis * (R^d + shift), shift given in basis coordinates.
struct GridSpec {
  LMatrix basis;
  LVector shift;
};

GridSpec build_yQ(const ConstructedLattice& cl);
GridSpec build_yQ_theta(const ConstructedLattice& cl);

struct GridStabilizerCertificate {
  int l = 0;
  bool c_congruences = false;  // c_0 = 1, c_i = 0 mod x^2
  bool P_congruences = false;  // above-diagonal entries of P, P^-1 are 0 mod x^2
  bool coset_theta = false;    // C_theta s - s in R^d
  bool coset_M = false;        // C s - s in R^d
  bool ok() const { return c_congruences && P_congruences && coset_theta && coset_M; }
};

// Throws CongruenceFailure naming the first violated congruence.
GridStabilizerCertificate grid_stabilizer_certificate(const ConstructedLattice& cl, int l);

struct InverseBoundsReport {
  std::vector<std::vector<int>> T_exponents;  // vbound of (M^-1)_ij
  int row_excess = 0;  // max rho(T_ij) - (1 - i) deg||Q|| (1-based i)
  int col_excess = 0;  // max rho(T_ij) - (1 - j) deg||Q||
  int det_sum = 0;     // rho(det T) + rho(det M)
  bool ok = false;
};

InverseBoundsReport inverse_bounds(const ConstructedLattice& cl, int constant);

}  // namespace ffmink
