#include <doctest.h>

#include "ffmink/construction.hpp"
#include "ffmink/errors.hpp"
#include "ffmink/lattice.hpp"

using namespace ffmink;

namespace {

ConstructedLattice cassels(int q, int d, int deg) {
  const GF& f = GF::get(q);
  return build_xQ(CasselsSpec{default_a_vector(f, d), Poly::monomial(f, 1, deg)});
}

bool no_certified_difference(const LMatrix& a, const LMatrix& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if ((a(i, j) - b(i, j)).has_lead()) return false;
  return true;
}

}  // namespace

TEST_CASE("default a-vectors") {
  const GF& f3 = GF::get(3);
  auto a = default_a_vector(f3, 2);
  CHECK(a[0] == parse_poly(f3, "x^2"));
  CHECK(a[1] == parse_poly(f3, "2x^2"));
  const GF& f2 = GF::get(2);
  auto b = default_a_vector(f2, 3);
  CHECK(b[0] == parse_poly(f2, "x^2"));
  CHECK(b[1] == parse_poly(f2, "x^3"));
  CHECK(b[2] == parse_poly(f2, "x^3+x^2"));
}

TEST_CASE("Cassels specs are validated") {
  const GF& f = GF::get(3);
  Poly one = Poly::constant(f, 1);
  CHECK_THROWS_AS(CasselsSpec({{parse_poly(f, "x"), parse_poly(f, "x^2")}, one}).validate(), Error);
  CHECK_THROWS_AS(CasselsSpec({{parse_poly(f, "x^2"), parse_poly(f, "x^2")}, one}).validate(), Error);
  CHECK_THROWS_AS(CasselsSpec({{parse_poly(f, "x^2")}, one}).validate(), Error);
  CHECK_NOTHROW(CasselsSpec({default_a_vector(f, 2), one}).validate());
}

TEST_CASE("running example q=3, d=2, Q=1") {
  auto cl = cassels(3, 2, 0);
  CHECK(cl.norm_degree() == 2);
  CHECK(cl.covol_exponent == 2);
  CHECK(det(cl.M).rho() == 2);
  auto rb = reduce_basis(cl.M);
  CHECK(rb.norms == std::vector<int>{0, 2});
  CHECK(ell(rb) == Rational(-1));
  CHECK(cl.phi.xi() == 2);
  CHECK(cl.phi.gamma_lattice().index() == 2);
  auto fit = is_kC_standard(cl.phi, 4);
  REQUIRE(fit);
  CHECK(fit->k == 2);
  CHECK(fit->C == 0);
  auto t = is_M_tight(cl.phi, cl.M, Rational(0));
  CHECK(t.tight);
  CHECK(t.lower_ok);
}

TEST_CASE("M factors as Theta P with P upper unipotent") {
  for (int q : {2, 3})
    for (int d : {2, 3}) {
      auto cl = cassels(q, d, 1);
      CHECK(no_certified_difference(cl.M, cl.Theta * to_laurent(cl.P)));
      for (int i = 0; i < d; ++i) {
        CHECK(cl.P(i, i) == Poly::constant(cl.M.field(), 1));
        for (int j = 0; j < i; ++j) CHECK(cl.P(i, j).is_zero());
      }
      CHECK(is_identity(cl.P * cl.Pinv));
    }
}

TEST_CASE("stabilizer certificates over the sweep") {
  for (int q : {2, 3})
    for (int d : {2, 3})
      for (int deg = 0; deg <= (d == 2 ? 4 : 2); ++deg) {
        CAPTURE(q);
        CAPTURE(d);
        CAPTURE(deg);
        auto cl = cassels(q, d, deg);
        auto b = stabilizer_certificates(cl);
        CHECK(b.ok());
        for (const auto& c : b.certs) CHECK(c.det.degree() == 0);
        for (int l = 0; l < d; ++l) CHECK(grid_stabilizer_certificate(cl, l).ok());
      }
}

TEST_CASE("grid certificate rejects non-Cassels Q") {
  const GF& f = GF::get(3);
  QVector Q{{parse_poly(f, "x"), parse_poly(f, "x^2+1")}};
  auto cl = build_xQ(Q);
  CHECK(stabilizer_certificates(cl).ok());
  CHECK_THROWS_AS(grid_stabilizer_certificate(cl, 0), Error);
}

TEST_CASE("inverse entries follow the degree envelope") {
  for (int deg = 0; deg <= 3; ++deg) {
    auto r = inverse_bounds(cassels(3, 2, deg), 0);
    CHECK(r.ok);
    CHECK(r.det_sum == 0);
  }
  CHECK(inverse_bounds(cassels(2, 3, 1), 1).ok);
}

TEST_CASE("d=3 constructions") {
  auto cl = cassels(3, 3, 1);
  CHECK(cl.covol_exponent == 3 * cl.norm_degree() - 1);
  CHECK(det(cl.M).rho() == cl.covol_exponent);
  auto fit = is_kC_standard(cl.phi, 1);
  REQUIRE(fit);
  CHECK(fit->k == cl.norm_degree() - 1);
}
