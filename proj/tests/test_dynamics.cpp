#include <doctest.h>

#include <random>
#include <set>

#include "ffmink/dynamics.hpp"
#include "ffmink/errors.hpp"
#include "ffmink/lattice.hpp"

using namespace ffmink;

namespace {

IVec random_z0(std::mt19937_64& rng, int d, int R) {
  std::uniform_int_distribution<int> u(-R, R);
  IVec v(d, 0);
  for (int i = 0; i + 1 < d; ++i) {
    v[i] = u(rng);
    v[d - 1] -= v[i];
  }
  return v;
}

// Brute force: is u within ceil0 <= bound of some integer combination of the
// first n generators with coefficients in [-R, R]?
bool brute_covered(const SimplexSet& phi, const IVec& u, const Rational& bound, int R) {
  const int n = phi.n();
  IVec m(n, -R);
  for (;;) {
    RVec z(u.begin(), u.end());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < phi.d; ++i) z[i] -= Rational(m[j] * phi.rho[j][i]);
    if (ceil0(z) <= bound) return true;
    int i = n - 1;
    while (i >= 0 && ++m[i] > R) m[i--] = -R;
    if (i < 0) return false;
  }
}

}  // namespace

TEST_CASE("standard simplex sets") {
  SimplexSet s = standard_simplex(2, 1);
  CHECK(s.rho == std::vector<IVec>{{-1, 1}, {1, -1}});
  CHECK(s.xi() == 1);
  CHECK(standard_simplex(3, 2).xi() == 2);
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k <= 3; ++k) {
      SimplexSet t = standard_simplex(d, k);
      CHECK_NOTHROW(t.validate());
      auto fit = is_kC_standard(t, 0);
      REQUIRE(fit);
      CHECK(fit->k == k);
      CHECK(fit->C == 0);
    }
}

TEST_CASE("rank-deficient simplex sets are rejected") {
  SimplexSet s;
  s.d = 3;
  s.rho = {{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("ZLattice coset representatives") {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k <= 3; ++k) {
      SimplexSet s = standard_simplex(d, k);
      ZLattice L = s.gamma_lattice();
      auto reps = L.coset_reps();
      CHECK((long long)reps.size() == L.index());
      std::set<IVec> distinct(reps.begin(), reps.end());
      CHECK(distinct.size() == reps.size());
      for (const auto& r : reps) CHECK(L.reduce(r) == r);
      for (int t = 0; t < 50; ++t) {
        IVec v = random_z0(rng, d, 20);
        IVec r = L.reduce(v);
        CHECK(distinct.count(r) == 1);
        for (const auto& g : s.rho) {
          IVec w = v;
          for (int i = 0; i < d; ++i) w[i] += 3 * g[i];
          CHECK(L.reduce(w) == r);
        }
      }
    }
  // [Z_0^2 : (k, -k) Z] = k
  CHECK(standard_simplex(2, 5).gamma_lattice().index() == 5);
}

TEST_CASE("standard covering region is the ceil ball") {
  // (n/2) hull(rho(Phi_*^k)) = {v : ceil0(v) <= nk/2}
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k <= 3; ++k) {
      SimplexSet s = standard_simplex(d, k);
      ZLattice L = s.gamma_lattice();
      const Rational bound((d - 1) * k, 2);
      for (int t = 0; t < 60; ++t) {
        IVec u = random_z0(rng, d, 3 * k + 2);
        auto g = covered_by(s, L, u, Rational(1));
        REQUIRE(g);
        CHECK(L.reduce(*g) == IVec(d, 0));
        IVec z(d);
        for (int i = 0; i < d; ++i) z[i] = u[i] - (*g)[i];
        CHECK(Rational(ceil0(z)) <= bound);
        Rational half = bound / 2;
        CHECK(covered_by(s, L, u, Rational(1, 2)).has_value() == brute_covered(s, u, half, 6));
      }
    }
}

TEST_CASE("closest vector search against brute force") {
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 4; ++d) {
    SimplexSet s = standard_simplex(d, 2);
    ZLattice L = s.gamma_lattice();
    auto W = s.W();
    for (int t = 0; t < 30; ++t) {
      IVec v = random_z0(rng, d, 15);
      for (const auto& w : W) {
        RVec y(d);
        for (int i = 0; i < d; ++i) y[i] = Rational(v[i]) - w[i];
        Rational got = L.closest(y).first;
        // brute force over a generous coefficient box
        std::optional<Rational> best;
        const int n = d - 1, R = 12;
        IVec m(n, -R);
        for (;;) {
          RVec z = y;
          for (int j = 0; j < n; ++j)
            for (int i = 0; i < d; ++i) z[i] -= Rational(m[j] * s.rho[j][i]);
          Rational c = ceil0(z);
          if (!best || c < *best) best = c;
          int i = n - 1;
          while (i >= 0 && ++m[i] > R) m[i--] = -R;
          if (i < 0) break;
        }
        CHECK(got == *best);
      }
    }
  }
}

TEST_CASE("deep points W") {
  for (int d = 2; d <= 4; ++d) {
    SimplexSet s = standard_simplex(d, 2);
    auto W = s.W();
    long long fact = 1;
    for (int i = 2; i < d; ++i) fact *= i;
    CHECK((long long)W.size() == fact);
    // w for the standard set is k((n/2) 1 - (0, 1, ..., n))
    RVec w = s.w();
    for (int i = 0; i < d; ++i) CHECK(w[i] == Rational(2) * (Rational(d - 1, 2) - Rational(i)));
    // invariant under coordinate permutations of the first n slots
    std::set<std::vector<std::pair<long long, long long>>> asset;
    for (const auto& v : W) {
      std::vector<std::pair<long long, long long>> key;
      for (auto& x : v) key.push_back({x.numerator(), x.denominator()});
      asset.insert(key);
    }
    for (const auto& v : W) {
      RVec p = v;
      std::swap(p[0], p[d > 2 ? 1 : 0]);
      std::vector<std::pair<long long, long long>> key;
      for (auto& x : p) key.push_back({x.numerator(), x.denominator()});
      CHECK(asset.count(key) == 1);
    }
  }
}

TEST_CASE("boundary points lie on W translates") {
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k <= 3; ++k) {
      SimplexSet s = standard_simplex(d, k);
      ZLattice L = s.gamma_lattice();
      auto W = s.W();
      for (const auto& u : L.coset_reps())
        if (!covered_by(s, L, u, Rational(1), true)) CHECK(distance_to_W(s, L, W, u) == Rational(0));
    }
}

TEST_CASE("covering check on standard simplex sets") {
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 3; ++k) {
      CoveringReport r = covering_check(standard_simplex(d, k));
      CHECK(r.ok());
      CHECK(r.points_checked > 0);
      CHECK(r.c < 10);
    }
  CoveringReport r = covering_check(standard_simplex(3, 2), 20);
  CHECK(r.ok());
  CHECK(r.points_checked == 41 * 41);
}

TEST_CASE("identity lattice tightness") {
  const GF& f = GF::get(3);
  SimplexSet s = standard_simplex(2, 1);
  LMatrix I = LMatrix::identity(f, 2);
  CHECK_FALSE(is_M_tight(s, I, Rational(0)).tight);
  CHECK(is_M_tight(s, I, Rational(1, 2)).tight);
  CHECK(is_M_tight(s, I, Rational(0)).lower_ok);
}

TEST_CASE("mass fraction and visit components on a synthetic scan") {
  SimplexSet s = standard_simplex(2, 6);
  ZLattice L = s.gamma_lattice();
  OrbitScan sc;
  sc.d = 2;
  sc.points = L.coset_reps();
  std::sort(sc.points.begin(), sc.points.end());
  // long at residues {0, 1, 3}: components {0,1} and {3}
  for (const auto& p : sc.points) {
    long long r = p[0];
    sc.ell.push_back(r == 0 || r == 1 || r == 3 ? Rational(0) : Rational(-3));
    sc.failed.push_back(false);
  }
  sc.threshold = Rational(-1);
  for (const auto& e : sc.ell) sc.is_long.push_back(e >= sc.threshold);
  CHECK(mass_fraction(sc) == Rational(1, 2));
  CHECK(mass_fraction(sc, Rational(-10)) == Rational(1));
  CHECK(mass_fraction(sc, Rational(1)) == Rational(0));
  CHECK(visit_components(sc, L).count == 2);
  // wraparound: residue 5 joins residue 0
  sc.ell[5] = Rational(0);
  sc.is_long[5] = true;
  CHECK(visit_components(sc, L).count == 2);
  for (std::size_t i = 0; i < sc.points.size(); ++i) sc.is_long[i] = true;
  CHECK(visit_components(sc, L).count == 1);
}
