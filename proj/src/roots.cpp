#include "ffmink/roots.hpp"

#include <algorithm>

#include "ffmink/errors.hpp"

namespace ffmink {

PolyT PolyT::derivative() const {
  PolyT r;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const GF& f = c[i].has_field() ? c[i].field() : c[0].field();
    r.c.push_back(c[i].scaled(f.from_int((long long)i)));
  }
  return r;
}

std::string PolyT::to_string() const {
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    std::string coef = c[i].to_string();
    bool compound = coef.find('+') != std::string::npos;
    std::string term;
    if (i == 0)
      term = coef;
    else {
      if (coef != "1") term = compound ? "(" + coef + ")" : coef;
      term += i == 1 ? "T" : "T^" + std::to_string(i);
    }
    if (!s.empty()) s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

PolyT operator*(const PolyT& a, const PolyT& b) {
  PolyT r;
  if (a.c.empty() || b.c.empty()) return r;
  const GF& f = a.c[0].has_field() ? a.c[0].field() : b.c[0].field();
  r.c.assign(a.c.size() + b.c.size() - 1, Poly(f));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Laurent poly_eval(const PolyT& p, const Laurent& t) {
  const GF& f = t.field();
  Laurent r(f);
  for (std::size_t i = p.c.size(); i-- > 0;) r = r * t + Laurent::from_poly(p.c[i].has_field() ? p.c[i] : Poly(f));
  return r;
}

Poly poly_eval(const PolyT& p, const Poly& t) {
  const GF& f = t.field();
  Poly r(f);
  for (std::size_t i = p.c.size(); i-- > 0;) r = r * t + p.c[i];
  return r;
}

int QVector::norm_degree() const {
  int m = kMinusInf;
  for (const auto& p : Q) m = std::max(m, p.degree());
  return m;
}

std::optional<int> QVector::separation_exponent() const {
  const int nd = norm_degree();
  int best = 0;
  for (int i = 0; i < d(); ++i)
    for (int j = i + 1; j < d(); ++j) {
      Poly diff = Q[i] - Q[j];
      if (diff.is_zero()) return std::nullopt;
      best = std::min(best, diff.degree() - nd);
    }
  return best;
}

bool QVector::satisfies_eta() const {
  auto e = separation_exponent();
  if (!e || Q.empty()) return false;
  const long long q = Q[0].field().q();
  Rational ratio(1);
  for (int k = 0; k < -*e; ++k) ratio /= q;
  return ratio >= eta;
}

PolyT build_PQ(const QVector& Q) {
  if (Q.Q.empty()) fail(Errc::InvalidArgument, "empty Q-vector");
  const GF& f = Q.Q[0].field();
  PolyT p{{Poly::constant(f, 1)}};
  for (const auto& qi : Q.Q) p = p * PolyT{{-qi, Poly::constant(f, 1)}};
  p.c[0] -= Poly::constant(f, 1);
  return p;
}

Laurent newton_root(const PolyT& P, const Poly& seed, int target_order, NewtonTrace* trace) {
  const PolyT dP = P.derivative();
  const Poly p0 = poly_eval(P, seed);
  const Poly d0 = poly_eval(dP, seed);
  if (d0.is_zero()) fail(Errc::HenselFailure, "P'(seed) = 0 at seed " + seed.to_string());
  if (p0.is_zero()) return Laurent::from_poly(seed);
  if (!(p0.degree() < 2 * d0.degree()))
    fail(Errc::HenselFailure, "|P(seed)| >= |P'(seed)|^2 at seed " + seed.to_string());

  const int cut = target_order - 1;
  Laurent theta = Laurent::from_poly(seed);
  for (int step = 0; step < 256; ++step) {
    Laurent val = poly_eval(P, theta);
    if (val.is_exact_zero()) return theta;
    Laurent der = poly_eval(dP, theta);
    const int err = val.rho() - der.rho();
    if (trace) trace->error_exponents.push_back(err);
    if (err <= target_order) return theta.truncated(target_order);
    Laurent corr = val * inv(der, cut - val.rho());
    theta = (theta - corr).exact_truncation(cut);
  }
  fail(Errc::PrecisionExhausted, "Newton iteration did not reach the target precision");
}

RootSystem compute_roots(const QVector& Q, int target_order) {
  RootSystem rs;
  rs.P = build_PQ(Q);
  rs.target_order = target_order;
  for (int j = 0; j < Q.d(); ++j) {
    NewtonTrace tr;
    rs.theta.push_back(newton_root(rs.P, Q.Q[j], target_order, &tr));
    rs.certified_error_exponents.push_back(tr.error_exponents.empty() ? target_order
                                                                      : std::min(tr.error_exponents.back(), target_order));
  }
  return rs;
}

RootAsymptotics certify_root_asymptotics(const RootSystem& rs, const QVector& Q) {
  RootAsymptotics r;
  const int d = Q.d();
  r.n = d - 1;
  r.norm_degree = Q.norm_degree();
  auto sep = Q.separation_exponent();
  if (!sep) fail(Errc::AsymptoticsViolated, "Q has coinciding entries");
  r.separation_exponent = *sep;
  r.self_bound = r.n * (-*sep);
  r.product_identity = r.self_within_bound = r.cross_within_bound = true;
  const GF& f = Q.Q[0].field();
  for (int j = 0; j < d; ++j) {
    std::vector<int> row;
    int sum = 0;
    for (int l = 0; l < d; ++l) {
      Laurent diff = rs.theta[j] - Laurent::from_poly(Q.Q[l].has_field() ? Q.Q[l] : Poly(f));
      int e = diff.rho();
      row.push_back(e);
      sum += e;
      if (l != j && (e > r.norm_degree || e < r.norm_degree + *sep)) r.cross_within_bound = false;
    }
    if (sum != 0) r.product_identity = false;
    r.self_exponents.push_back(row[j]);
    r.self_offsets.push_back(row[j] + r.n * r.norm_degree);
    if (row[j] + r.n * r.norm_degree > r.self_bound) r.self_within_bound = false;
    r.cross_exponents.push_back(std::move(row));
  }
  if (!r.product_identity) fail(Errc::AsymptoticsViolated, "sum_l rho(theta_j - Q_l) != 0");
  if (!r.self_within_bound) fail(Errc::AsymptoticsViolated, "|theta_j - Q_j| exceeds the eta bound");
  if (!r.cross_within_bound) fail(Errc::AsymptoticsViolated, "|theta_j - Q_l| outside [eta ||Q||, ||Q||]");
  return r;
}

IrreducibilityResult irreducibility_check(const PolyT& P, int degree_bound) {
  IrreducibilityResult res;
  const int d = P.degree();
  if (d < 2 || d > 3) {
    res.reason = "root search decides irreducibility only in degree 2 and 3";
    return res;
  }
  if (!P.c[d].is_monic() || P.c[d].degree() != 0) {
    res.reason = "polynomial is not monic in T";
    return res;
  }
  const GF& f = P.c[d].field();
  const Poly& c0 = P.c[0];
  if (c0.is_zero()) {
    res.status = IrreducibilityResult::Status::Factor;
    res.root = Poly(f);
    return res;
  }
  // A root r satisfies deg r <= max_i floor(deg c_i / (d - i)).
  int bound = 0;
  for (int i = 0; i < d; ++i)
    if (!P.c[i].is_zero()) bound = std::max(bound, P.c[i].degree() / (d - i));
  bound = std::min(bound, c0.degree());
  if (bound > degree_bound) {
    res.reason = "root degree bound " + std::to_string(bound) + " exceeds the search cap";
    return res;
  }
  for (int k = 0; k <= bound; ++k) {
    for (const Poly& g : monic_polys(f, k)) {
      if (!(c0 % g).is_zero()) continue;
      for (int u = 1; u < f.q(); ++u) {
        Poly r = g.scaled(Fe(u));
        ++res.candidates_checked;
        if (poly_eval(P, r).is_zero()) {
          res.status = IrreducibilityResult::Status::Factor;
          res.root = r;
          return res;
        }
      }
    }
  }
  res.status = IrreducibilityResult::Status::NoRationalRoot;
  return res;
}

std::string to_string(IrreducibilityResult::Status s) {
  switch (s) {
    case IrreducibilityResult::Status::NoRationalRoot: return "NoRationalRoot";
    case IrreducibilityResult::Status::Factor: return "Factor";
    case IrreducibilityResult::Status::Inconclusive: return "Inconclusive";
  }
  return "";
}

}  // namespace ffmink
