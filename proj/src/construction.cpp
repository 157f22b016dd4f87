#include "ffmink/construction.hpp"

#include <algorithm>

#include "ffmink/errors.hpp"

namespace ffmink {

namespace {

const GF& field_of(const QVector& Q) {
  for (const auto& p : Q.Q)
    if (p.has_field()) return p.field();
  fail(Errc::InvalidArgument, "Q has no field");
}

Poly or_zero(const GF& f, const Poly& p) { return p.has_field() ? p : Poly(f); }

}  // namespace

void CasselsSpec::validate() const {
  if (a.size() < 2) fail(Errc::InvalidArgument, "need d >= 2 polynomials a_j");
  if (!Q.has_field() || Q.is_zero()) fail(Errc::InvalidArgument, "Q must be a nonzero polynomial");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].has_field() || a[i].is_zero()) fail(Errc::InvalidArgument, "a_j must be nonzero");
    if (!a[i].divisible_by_xpow(2))
      fail(Errc::InvalidArgument, "a_" + std::to_string(i + 1) + " = " + a[i].to_string() + " is not 0 mod x^2");
    for (std::size_t j = 0; j < i; ++j)
      if (a[i] == a[j]) fail(Errc::InvalidArgument, "a_j must be pairwise distinct");
  }
}

QVector CasselsSpec::qvector() const {
  QVector v;
  for (const auto& p : a) v.Q.push_back(Q * p);
  return v;
}

std::vector<Poly> default_a_vector(const GF& f, int d) {
  std::vector<Poly> out;
  const long long q = f.q();
  for (int k = 2; int(out.size()) < d; ++k) {
    long long lo = 1, hi;
    for (int i = 0; i < k - 2; ++i) lo *= q;
    hi = lo * q;
    for (long long code = lo; code < hi && int(out.size()) < d; ++code)
      out.push_back(poly_from_code(f, code, k - 1).shifted(2));
  }
  return out;
}

int default_precision(int d, int norm_degree) {
  return std::max({16 * d * norm_degree, 4 * d * (d + 1) * norm_degree, 32});
}

ConstructedLattice build_xQ(const CasselsSpec& spec, int prec) {
  spec.validate();
  ConstructedLattice cl = build_xQ(spec.qvector(), prec);
  cl.cassels = true;
  return cl;
}

ConstructedLattice build_xQ(const QVector& Qv, int prec) {
  const GF& f = field_of(Qv);
  const int d = Qv.d();
  if (d < 2) fail(Errc::InvalidArgument, "d must be at least 2");
  if (!Qv.separation_exponent()) fail(Errc::InvalidArgument, "Q has coinciding entries");
  ConstructedLattice cl;
  cl.Q = Qv;
  for (auto& p : cl.Q.Q) p = or_zero(f, p);
  const std::vector<Poly>& Q = cl.Q.Q;
  cl.prec = prec > 0 ? prec : default_precision(d, std::max(1, Qv.norm_degree()));
  cl.roots = compute_roots(cl.Q, -cl.prec);
  const auto& th = cl.roots.theta;

  cl.Theta = LMatrix(f, d, d);
  cl.omega = LMatrix(f, d, d);
  cl.M = LMatrix(f, d, d);
  for (int i = 0; i < d; ++i) {
    Laurent pw = Laurent::one(f), u = Laurent::one(f);
    for (int j = 0; j < d; ++j) {
      cl.Theta(i, j) = pw;
      pw = pw * th[i];
      cl.omega(i, j) = th[i] - Laurent::from_poly(Q[j]);
      cl.M(i, j) = u;
      u = u * cl.omega(i, j);
    }
  }

  // Column j of P holds the coefficients of prod_{l<j} (T - Q_l).
  cl.P = PMatrix(f, d, d);
  PolyT prod{{Poly::constant(f, 1)}};
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) cl.P(k, j) = k < int(prod.c.size()) ? prod.c[k] : Poly(f);
    prod = prod * PolyT{{-Q[j], Poly::constant(f, 1)}};
  }
  cl.Pinv = inverse_unimodular(cl.P);

  const PolyT& PQ = cl.roots.P;
  cl.c.clear();
  for (int i = 0; i < d; ++i) cl.c.push_back(-PQ.c[i]);
  cl.companion = PMatrix(f, d, d);
  for (int j = 0; j + 1 < d; ++j) cl.companion(j + 1, j) = Poly::constant(f, 1);
  for (int i = 0; i < d; ++i) cl.companion(i, d - 1) = cl.c[i];

  cl.covol_exponent = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) cl.covol_exponent += (th[j] - th[i]).rho();

  cl.unit_profile.assign(d, std::vector<int>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) cl.unit_profile[i][j] = cl.M(i, j).rho();

  cl.phi.d = d;
  for (int l = 0; l < d; ++l) {
    IVec r(d);
    LVector e(d);
    for (int i = 0; i < d; ++i) {
      e[i] = cl.omega(i, l);
      r[i] = e[i].rho();
    }
    cl.phi.rho.push_back(r);
    cl.phi.entries.push_back(e);
  }
  cl.phi.validate();
  return cl;
}

StabilizerCertificate stabilizer_certificate(const ConstructedLattice& cl, int l) {
  const GF& f = cl.M.field();
  const int d = cl.d();
  if (l < 0 || l >= d) fail(Errc::InvalidArgument, "stabilizer index out of range");
  StabilizerCertificate sc;
  sc.l = l;
  sc.C_theta = cl.companion;
  for (int i = 0; i < d; ++i) sc.C_theta(i, i) -= cl.Q.Q[l];
  sc.C = cl.Pinv * sc.C_theta * cl.P;
  sc.det = det(sc.C);
  if (sc.det.degree() != 0)
    fail(Errc::CertificateFailure, "det of C_" + std::to_string(l + 1) + " is not a unit of R");
  LMatrix lhs(f, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lhs(i, j) = cl.omega(i, l) * cl.M(i, j);
  LMatrix rhs = cl.M * to_laurent(sc.C);
  sc.numeric_match = true;
  sc.numeric_residual_order = kMinusInf;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Laurent r = lhs(i, j) - rhs(i, j);
      if (r.has_lead()) sc.numeric_match = false;
      sc.numeric_residual_order = std::max(sc.numeric_residual_order, r.order());
    }
  if (!sc.numeric_match)
    fail(Errc::CertificateFailure, "M^-1 t_" + std::to_string(l + 1) + " M differs from its exact form");
  return sc;
}

bool StabilizerBundle::ok() const {
  if (!product_identity || certs.empty() || rank != int(certs.size()) - 1) return false;
  return std::all_of(certs.begin(), certs.end(), [](const auto& c) { return c.numeric_match; });
}

StabilizerBundle stabilizer_certificates(const ConstructedLattice& cl) {
  StabilizerBundle b;
  const int d = cl.d();
  PMatrix prod = PMatrix::identity(cl.M.field(), d);
  for (int l = 0; l < d; ++l) {
    b.certs.push_back(stabilizer_certificate(cl, l));
    prod = prod * b.certs.back().C_theta;
  }
  b.product_identity = is_identity(prod);
  (void)cl.phi.gamma_lattice();  // throws unless the rho(t_l) have rank n
  b.rank = d - 1;
  return b;
}

GridSpec build_yQ(const ConstructedLattice& cl) {
  const GF& f = cl.M.field();
  return GridSpec{cl.M, LVector(cl.d(), Laurent::monomial(f, 1, -1))};
}

GridSpec build_yQ_theta(const ConstructedLattice& cl) {
  const GF& f = cl.M.field();
  return GridSpec{cl.Theta, LVector(cl.d(), Laurent::monomial(f, 1, -1))};
}

namespace {

bool coset_fixed(const PMatrix& C, const LVector& s) {
  LVector cs = to_laurent(C) * s;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(cs[i] - s[i]).is_polynomial()) return false;
  return true;
}

}  // namespace

GridStabilizerCertificate grid_stabilizer_certificate(const ConstructedLattice& cl, int l) {
  const GF& f = cl.M.field();
  const int d = cl.d();
  GridStabilizerCertificate g;
  g.l = l;
  for (int i = 0; i < d; ++i) {
    Poly target = i == 0 ? cl.c[0] - Poly::constant(f, 1) : cl.c[i];
    if (!target.divisible_by_xpow(2))
      fail(Errc::CongruenceFailure, "c_" + std::to_string(i) + " = " + cl.c[i].to_string() + " violates its congruence mod x^2");
  }
  g.c_congruences = true;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (!cl.P(i, j).divisible_by_xpow(2))
        fail(Errc::CongruenceFailure, "P_" + std::to_string(i + 1) + std::to_string(j + 1) + " is not 0 mod x^2");
      if (!cl.Pinv(i, j).divisible_by_xpow(2))
        fail(Errc::CongruenceFailure, "(P^-1)_" + std::to_string(i + 1) + std::to_string(j + 1) + " is not 0 mod x^2");
    }
  g.P_congruences = true;
  StabilizerCertificate sc = stabilizer_certificate(cl, l);
  LVector s(d, Laurent::monomial(f, 1, -1));
  g.coset_theta = coset_fixed(sc.C_theta, s);
  if (!g.coset_theta)
    fail(Errc::CongruenceFailure, "C_theta_" + std::to_string(l + 1) + " moves the coset (1/x, ..., 1/x) + R^d");
  g.coset_M = coset_fixed(sc.C, s);
  if (!g.coset_M) fail(Errc::CongruenceFailure, "C_" + std::to_string(l + 1) + " moves the coset (1/x, ..., 1/x) + R^d");
  return g;
}

InverseBoundsReport inverse_bounds(const ConstructedLattice& cl, int constant) {
  const int d = cl.d();
  const int D = cl.norm_degree();
  InverseBoundsReport r;
  Laurent dm = det(cl.M);
  Laurent di = inv(dm);
  LMatrix adj = adjugate(cl.M);
  r.T_exponents.assign(d, std::vector<int>(d));
  r.row_excess = r.col_excess = kMinusInf;
  LMatrix T(cl.M.field(), d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      T(i, j) = adj(i, j) * di;
      int e = T(i, j).vbound();
      r.T_exponents[i][j] = e;
      if (e == kMinusInf) continue;
      r.row_excess = std::max(r.row_excess, e - (1 - (i + 1)) * D);
      r.col_excess = std::max(r.col_excess, e - (1 - (j + 1)) * D);
    }
  r.det_sum = di.rho() + dm.rho();
  r.ok = r.row_excess <= constant && r.col_excess <= constant && r.det_sum == 0;
  if (!r.ok)
    fail(Errc::BoundViolated, "inverse entries exceed the envelope by " + std::to_string(std::max(r.row_excess, r.col_excess)));
  return r;
}

}  // namespace ffmink
