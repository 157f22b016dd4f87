#include "ffmink/lattice.hpp"

#include <algorithm>

#include "ffmink/errors.hpp"

namespace ffmink {

int ReducedBasis::covolume_class() const {
  int d = dim();
  return ((det_exponent % d) + d) % d;
}

std::optional<int> sup_norm(const LVector& v) {
  int certified = kMinusInf, unknown = kMinusInf;
  bool any_exact_nonzero = false, all_exact_zero = true;
  for (const auto& e : v) {
    if (e.has_lead()) {
      certified = std::max(certified, e.rho());
      any_exact_nonzero = true;
      all_exact_zero = false;
    } else if (!e.is_exact()) {
      unknown = std::max(unknown, e.order());
      all_exact_zero = false;
    }
  }
  if (all_exact_zero) return std::nullopt;
  if (!any_exact_nonzero || unknown >= certified)
    fail(Errc::PrecisionExhausted, "vector norm not certified at working precision");
  return certified;
}

namespace {

int column_norm(const LMatrix& B, int j) {
  auto n = sup_norm(B.col(j));
  if (!n) fail(Errc::SingularBasis, "zero column in basis");
  return *n;
}

}  // namespace

ReducedBasis reduce_basis(const LMatrix& B) {
  const GF& f = B.field();
  const int d = B.cols();
  if (B.rows() != d) fail(Errc::InvalidArgument, "basis must be square");
  ReducedBasis rb;
  rb.basis = B;
  rb.transform = PMatrix::identity(f, d);
  std::vector<int> n(d);
  for (int j = 0; j < d; ++j) n[j] = column_norm(rb.basis, j);
  for (;;) {
    FqMatrix L(d, std::vector<Fe>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Laurent& e = rb.basis(i, j);
        if (e.has_lead() && e.rho() == n[j]) L[i][j] = e.lead();
      }
    auto rel = fq_column_relation(f, L);
    if (!rel) break;
    const auto& lam = *rel;
    int j0 = -1;
    for (int j = 0; j < d; ++j)
      if (lam[j] != 0 && (j0 < 0 || n[j] > n[j0])) j0 = j;
    const Fe inv0 = f.inv(lam[j0]);
    for (int j = 0; j < d; ++j) {
      if (j == j0 || lam[j] == 0) continue;
      const Fe c = f.mul(lam[j], inv0);
      const int k = n[j0] - n[j];
      for (int i = 0; i < d; ++i) {
        rb.basis(i, j0).add_scaled(rb.basis(i, j), c, k);
        rb.transform(i, j0) += rb.transform(i, j).shifted(k).scaled(c);
      }
    }
    const int before = n[j0];
    n[j0] = column_norm(rb.basis, j0);
    if (n[j0] >= before) fail(Errc::PrecisionExhausted, "reduction step did not decrease the column norm");
    ++rb.steps;
  }
  rb.norms = n;
  rb.det_exponent = 0;
  for (int v : n) rb.det_exponent += v;
  return rb;
}

std::vector<int> successive_minima(const ReducedBasis& rb) {
  std::vector<int> m = rb.norms;
  std::sort(m.begin(), m.end());
  return m;
}

LVector shortest_vector(const ReducedBasis& rb) {
  int best = 0;
  for (int j = 1; j < rb.dim(); ++j)
    if (rb.norms[j] < rb.norms[best]) best = j;
  return rb.basis.col(best);
}

Rational ell(const ReducedBasis& rb) {
  int m = *std::min_element(rb.norms.begin(), rb.norms.end());
  return Rational(m) - Rational(rb.det_exponent, rb.dim());
}

Rational ell(const LMatrix& B) { return ell(reduce_basis(B)); }

LMatrix apply_diagonal(const LMatrix& B, const std::vector<int>& a, bool strict, const LVector* units) {
  if (int(a.size()) != B.rows()) fail(Errc::InvalidArgument, "diagonal length mismatch");
  if (strict) {
    long long s = 0;
    for (int v : a) s += v;
    if (s != 0) fail(Errc::NotUnimodularDirection, "exponents sum to " + std::to_string(s));
  }
  LMatrix r = B;
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      Laurent e = B(i, j).shifted(a[i]);
      if (units) e = e * (*units)[i];
      r(i, j) = e;
    }
  return r;
}

int homothety_shift(int det_exponent, int d) {
  int s = det_exponent / d;
  if (det_exponent % d < 0) --s;
  return s;
}

LatticeEquality lattice_equal(const LMatrix& B1, const LMatrix& B2) {
  LatticeEquality res;
  Laurent dt = det(B1);
  LMatrix adj = adjugate(B1);
  LMatrix prod = adj * B2;
  // Entries of B1^-1 B2; an exact B1 needs an explicit target precision.
  Laurent di = dt.is_exact() ? inv(dt, -64 - 2 * std::max(0, dt.rho())) : inv(dt);
  LMatrix U(B1.field(), B1.rows(), B1.cols());
  for (int i = 0; i < U.rows(); ++i)
    for (int j = 0; j < U.cols(); ++j) U(i, j) = prod(i, j) * di;
  auto P = integral_part(U);
  if (!P) return res;
  Poly dU = det(*P);
  if (dU.degree() != 0) return res;
  res.equal = true;
  res.change = std::move(P);
  return res;
}

MargulisResult margulis_lengthen(const LMatrix& B, int max_steps) {
  const GF& f = B.field();
  const int d = B.rows();
  const int n = d - 1;
  MargulisResult res;
  res.a.assign(d, 0);
  res.basis = B;
  ReducedBasis rb = reduce_basis(B);
  Rational cur = ell(rb);
  const Rational target(-d);
  for (int step = 0; cur < target; ++step) {
    if (step >= max_steps) fail(Errc::InvalidArgument, "lengthening did not terminate within the step cap");
    const int s = homothety_shift(rb.det_exponent, d);
    // Leading-coefficient vectors of the columns of norm <= q^-1 after normalization.
    FqMatrix short_lc;
    for (int j = 0; j < d; ++j) {
      if (rb.norms[j] - s > -1) continue;
      std::vector<Fe> v(d, 0);
      for (int i = 0; i < d; ++i) {
        const Laurent& e = rb.basis(i, j);
        if (e.has_lead() && e.rho() == rb.norms[j]) v[i] = e.lead();
      }
      short_lc.push_back(v);
    }
    const int r = fq_rank(f, short_lc);
    int l = -1;
    for (int cand = 0; cand < d && l < 0; ++cand) {
      FqMatrix ext = short_lc;
      std::vector<Fe> e(d, 0);
      e[cand] = 1;
      ext.push_back(e);
      if (fq_rank(f, ext) > r) l = cand;
    }
    if (l < 0) fail(Errc::InvalidArgument, "short vectors span the whole space");
    std::vector<int> b(d, 1);
    b[l] = -n;
    res.basis = apply_diagonal(rb.basis, b);
    for (int i = 0; i < d; ++i) res.a[i] += b[i];
    rb = reduce_basis(res.basis);
    Rational next = ell(rb);
    res.steps.push_back({l, cur, next});
    cur = next;
  }
  res.basis = rb.basis;
  res.ell_final = cur;
  return res;
}

}  // namespace ffmink
