#include <doctest.h>

#include <random>

#include "ffmink/errors.hpp"
#include "ffmink/lattice.hpp"
#include "test_util.hpp"

using namespace ffmink;
using namespace testutil;

namespace {

LMatrix lmat(const GF& f, std::vector<std::vector<const char*>> rows) {
  LMatrix m(f, int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = parse_laurent(f, rows[i][j]);
  return m;
}

// Successive minima of the lattice spanned by a polynomial basis B, from
// F_q-dimensions of L_r = {v in R^d : deg v <= r, adj(B) v = 0 mod det B}.
// dim L_r - dim L_{r-1} counts the minima that are <= r.
std::vector<int> minima_oracle(const PMatrix& B) {
  const GF& f = B.field();
  const int d = B.rows();
  Poly D = det(B);
  REQUIRE(!D.is_zero());
  const int m = D.degree();
  if (m == 0) return std::vector<int>(d, 0);
  PMatrix A = adjugate(B);
  auto dim_L = [&](int r) {
    if (r < 0) return 0;
    FqMatrix rows(std::size_t(d) * m, std::vector<Fe>(std::size_t(d) * (r + 1), 0));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k <= r; ++k) {
        int col = i * (r + 1) + k;
        for (int t = 0; t < d; ++t) {
          Poly rem = A(t, i).shifted(k) % D;
          for (int s = 0; s < m; ++s) rows[t * m + s][col] = rem.coeff(s);
        }
      }
    return d * (r + 1) - fq_rank(f, rows);
  };
  std::vector<int> out;
  int prev = 0;
  for (int r = 0; int(out.size()) < d; ++r) {
    int cur = dim_L(r);
    int cnt = cur - prev;
    while (int(out.size()) < cnt) out.push_back(r);
    prev = cur;
  }
  return out;
}

PMatrix random_unimodular(const GF& f, std::mt19937_64& rng, int d, int ops) {
  PMatrix U = PMatrix::identity(f, d);
  std::uniform_int_distribution<int> pick(0, d - 1);
  for (int t = 0; t < ops; ++t) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Poly c = random_poly(f, rng, 2);
    for (int r = 0; r < d; ++r) U(r, j) += U(r, i) * c;
  }
  return U;
}

void check_reduced(const ReducedBasis& rb) {
  const GF& f = rb.basis.field();
  int d = rb.dim();
  FqMatrix L(d, std::vector<Fe>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Laurent& e = rb.basis(i, j);
      if (e.has_lead() && e.rho() == rb.norms[j]) L[i][j] = e.lead();
    }
  CHECK(fq_rank(f, L) == d);
}

}  // namespace

TEST_CASE("reduction of (1,0),(x,1) gives the identity") {
  const GF& f = GF::get(2);
  LMatrix B = lmat(f, {{"1", "x"}, {"0", "1"}});
  ReducedBasis rb = reduce_basis(B);
  CHECK(rb.steps == 1);
  CHECK(rb.basis == LMatrix::identity(f, 2));
  CHECK(rb.det_exponent == 0);
  CHECK(B * to_laurent(rb.transform) == rb.basis);
}

TEST_CASE("successive minima of diagonal lattices") {
  const GF& f = GF::get(3);
  ReducedBasis rb = reduce_basis(lmat(f, {{"x", "0"}, {"0", "x^-1"}}));
  CHECK(successive_minima(rb) == std::vector<int>{-1, 1});
  CHECK(rb.det_exponent == 0);
  CHECK(ell(rb) == Rational(-1));
  CHECK(shortest_vector(rb)[1] == parse_laurent(f, "x^-1"));
  CHECK(ell(lmat(f, {{"x^2", "0"}, {"0", "x"}})) == Rational(-1, 2));
}

TEST_CASE("reduction matches the kernel-dimension oracle") {
  std::mt19937_64 rng(20240611);
  for (int q : {2, 3, 4, 5}) {
    const GF& f = GF::get(q);
    for (int d = 2; d <= 3; ++d)
      for (int trial = 0; trial < 40; ++trial) {
        PMatrix P = random_pmatrix(f, rng, d, d == 2 ? 3 : 2);
        if (det(P).is_zero()) continue;
        LMatrix B = to_laurent(P);
        ReducedBasis rb = reduce_basis(B);
        check_reduced(rb);
        CHECK(successive_minima(rb) == minima_oracle(P));
        CHECK(rb.det_exponent == det(P).degree());
        CHECK(B * to_laurent(rb.transform) == rb.basis);
        CHECK(det(rb.transform).degree() == 0);
      }
  }
}

TEST_CASE("ell is invariant under homothety and change of basis") {
  std::mt19937_64 rng(7);
  const GF& f = GF::get(3);
  for (int trial = 0; trial < 30; ++trial) {
    PMatrix P = random_pmatrix(f, rng, 3, 2);
    if (det(P).is_zero()) continue;
    LMatrix B = to_laurent(P);
    Rational e = ell(B);
    LMatrix Bs = apply_diagonal(B, {2, 2, 2}, false);
    CHECK(ell(Bs) == e);
    LMatrix Bu = B * to_laurent(random_unimodular(f, rng, 3, 6));
    CHECK(ell(Bu) == e);
    CHECK(lattice_equal(B, Bu).equal);
    CHECK(e <= Rational(0));
  }
}

TEST_CASE("lattice_equal rejects a sublattice") {
  const GF& f = GF::get(2);
  LMatrix B = LMatrix::identity(f, 2);
  LMatrix C = lmat(f, {{"x", "0"}, {"0", "1"}});
  CHECK_FALSE(lattice_equal(B, C).equal);
  CHECK(lattice_equal(C, C).equal);
}

TEST_CASE("apply_diagonal enforces unimodular directions") {
  const GF& f = GF::get(2);
  LMatrix B = LMatrix::identity(f, 2);
  CHECK_THROWS_AS(apply_diagonal(B, {1, 0}), Error);
  try {
    apply_diagonal(B, {1, 0});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotUnimodularDirection);
  }
  LMatrix C = apply_diagonal(B, {2, -2});
  CHECK(C(0, 0) == parse_laurent(f, "x^2"));
  CHECK(C(1, 1) == parse_laurent(f, "x^-2"));
}

TEST_CASE("uncertified column norm") {
  const GF& f = GF::get(2);
  LMatrix B = lmat(f, {{"x+O(x^2)", "0"}, {"0", "1"}});
  CHECK_THROWS_AS(reduce_basis(B), Error);
  LMatrix ok = lmat(f, {{"x^3+O(x)", "0"}, {"1", "1"}});
  CHECK(reduce_basis(ok).norms[0] == 3);
}

TEST_CASE("Margulis lengthening of diag(x^-3, x^3)") {
  const GF& f = GF::get(2);
  LMatrix B = lmat(f, {{"x^-3", "0"}, {"0", "x^3"}});
  MargulisResult m = margulis_lengthen(B);
  REQUIRE(m.steps.size() == 1);
  CHECK(m.steps[0].l == 1);
  CHECK(m.a == std::vector<int>{1, -1});
  CHECK(m.ell_final == Rational(-2));
  CHECK(m.ell_final >= Rational(-2));
}

TEST_CASE("Margulis lengthening leaves long lattices alone") {
  const GF& f = GF::get(3);
  MargulisResult m = margulis_lengthen(LMatrix::identity(f, 3));
  CHECK(m.steps.empty());
  CHECK(m.a == std::vector<int>{0, 0, 0});
}

TEST_CASE("Margulis lengthening property") {
  std::mt19937_64 rng(99);
  for (int q : {2, 3}) {
    const GF& f = GF::get(q);
    for (int d = 2; d <= 4; ++d)
      for (int trial = 0; trial < 15; ++trial) {
        PMatrix U = random_unimodular(f, rng, d, 3 * d);
        std::vector<int> a(d, 0);
        std::uniform_int_distribution<int> ex(-6, 6);
        for (int i = 0; i + 1 < d; ++i) {
          a[i] = ex(rng);
          a[d - 1] -= a[i];
        }
        LMatrix B = apply_diagonal(to_laurent(U), a);
        MargulisResult m = margulis_lengthen(B);
        for (const auto& s : m.steps) {
          CHECK(s.ell_before < Rational(-d));
          CHECK(s.ell_after >= s.ell_before + 1);
        }
        CHECK(m.ell_final >= Rational(-d));
        int sum = 0;
        for (int v : m.a) sum += v;
        CHECK(sum == 0);
        CHECK(lattice_equal(apply_diagonal(B, m.a), m.basis).equal);
      }
  }
}
