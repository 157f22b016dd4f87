// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "ffmink/errors.hpp"
#include "ffmink/experiments.hpp"
#include "test_util.hpp"

using namespace ffmink;
using namespace testutil;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<Poly> cassels_a(const GF& f, int d) { return default_a_vector(f, d); }

ConstructedLattice cassels(int q, int d, int deg) {
  const GF& f = GF::get(q);
  return build_xQ(CasselsSpec{cassels_a(f, d), Poly::monomial(f, 1, deg)});
}

// |L_r| for L_r = {v in R^d : deg v <= r, adj(B) v = 0 mod det B}, by listing
// every v when the space is small and by an F_q kernel dimension otherwise.
int dim_L(const PMatrix& B, const PMatrix& A, const Poly& D, int r) {
  const GF& f = B.field();
  const int d = B.rows(), m = D.degree();
  if (r < 0) return 0;
  const int N = d * (r + 1);
  long long total = 1;
  for (int i = 0; i < N && total <= (1 << 15); ++i) total *= f.q();
  if (total <= (1 << 15)) {
    long long count = 0;
    for (long long code = 0; code < total; ++code) {
      std::vector<Poly> v;
      long long c = code;
      for (int i = 0; i < d; ++i) {
        long long digits = 1;
        for (int k = 0; k <= r; ++k) digits *= f.q();
        v.push_back(poly_from_code(f, c % digits, r + 1));
        c /= digits;
      }
      bool in = true;
      for (int t = 0; t < d && in; ++t) {
        Poly s(f);
        for (int i = 0; i < d; ++i) s += A(t, i) * v[i];
        in = (s % D).is_zero();
      }
      count += in;
    }
    int dim = 0;
    while (count > 1) {
      count /= f.q();
      ++dim;
    }
    return dim;
  }
  FqMatrix rows(std::size_t(d) * m, std::vector<Fe>(std::size_t(N), 0));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k <= r; ++k)
      for (int t = 0; t < d; ++t) {
        Poly rem = A(t, i).shifted(k) % D;
        for (int s = 0; s < m; ++s) rows[t * m + s][i * (r + 1) + k] = rem.coeff(s);
      }
  return N - fq_rank(f, rows);
}

std::vector<int> minima_oracle(const PMatrix& B) {
  const int d = B.rows();
  Poly D = det(B);
  if (D.degree() == 0) return std::vector<int>(d, 0);
  PMatrix A = adjugate(B);
  std::vector<int> out;
  int prev = 0;
  for (int r = 0; int(out.size()) < d; ++r) {
    int cur = dim_L(B, A, D, r);
    while (int(out.size()) < cur - prev) out.push_back(r);
    prev = cur;
  }
  return out;
}

Outcome criterion1() {
  int rows = 0, worst = 0;
  for (int q : {2, 3})
    for (int d : {2, 3})
      for (int deg = 1; deg <= 5; ++deg) {
        ConstructedLattice cl = cassels(q, d, deg);
        RootAsymptotics ra = certify_root_asymptotics(cl.roots, cl.Q);
        const int D = cl.norm_degree(), n = d - 1;
        for (int j = 0; j < d; ++j) {
          // Recomputed from the roots directly.
          int self = (cl.roots.theta[j] - Laurent::from_poly(cl.Q.Q[j])).rho();
          int off = self + n * D;
          worst = std::max(worst, std::abs(off));
          if (off > kRootOffsetConstant || off < -kRootOffsetConstant)
            return {false, "offset " + std::to_string(off) + " at q=" + std::to_string(q) + " d=" + std::to_string(d) +
                               " deg=" + std::to_string(deg)};
          int sum = 0;
          for (int l = 0; l < d; ++l) sum += (cl.roots.theta[j] - Laurent::from_poly(cl.Q.Q[l])).rho();
          if (sum != 0) return {false, "exponent sum " + std::to_string(sum) + " != 0"};
        }
        if (!ra.ok()) return {false, "certify_root_asymptotics rejected a row"};
        ++rows;
      }
  return {true, std::to_string(rows) + " rows, max |offset| " + std::to_string(worst) + " <= frozen " +
                    std::to_string(kRootOffsetConstant) + ", exponent sums exactly 0"};
}

Outcome criterion2() {
  std::mt19937_64 rng(1729);
  int done = 0;
  while (done < 200) {
    const int q = 2 + done % 2, d = 2 + (done / 2) % 2;
    const GF& f = GF::get(q);
    PMatrix P = random_pmatrix(f, rng, d, 4);
    if (det(P).is_zero()) continue;
    const int shift = int(rng() % 4);  // B = x^-shift P
    LMatrix B = to_laurent(P);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) B(i, j) = B(i, j).shifted(-shift);
    ReducedBasis rb = reduce_basis(B);
    std::vector<int> got = successive_minima(rb), want = minima_oracle(P);
    for (auto& w : want) w -= shift;
    if (got != want) return {false, "minima mismatch on lattice " + std::to_string(done)};
    int sum = 0;
    for (int m : got) sum += m;
    if (sum != det(B).rho()) return {false, "sum of minima != covolume on lattice " + std::to_string(done)};
    ++done;
  }
  return {true, "200 lattices (q in {2,3}, d in {2,3}, deg <= 4): minima equal the enumeration oracle, sums equal covolume"};
}

Outcome criterion3() {
  std::mt19937_64 rng(4242);
  int done = 0, steps = 0;
  while (done < 100) {
    const int q = 2 + done % 2, d = 2 + done % 3;
    const GF& f = GF::get(q);
    PMatrix P = random_pmatrix(f, rng, d, 2);
    if (det(P).is_zero()) continue;
    std::vector<int> a(d);
    std::uniform_int_distribution<int> u(-6, 6);
    int s = 0;
    for (int i = 0; i + 1 < d; ++i) s += (a[i] = u(rng));
    a[d - 1] = -s;
    LMatrix B = apply_diagonal(to_laurent(P), a, false);
    MargulisResult m = margulis_lengthen(B);
    for (const auto& st : m.steps) {
      if (st.ell_before >= Rational(-d)) return {false, "step taken with ell >= q^-d"};
      if (st.ell_after < st.ell_before + 1) return {false, "step raised ell by less than a factor q"};
      ++steps;
    }
    Rational fin = ell(m.basis);
    if (fin != m.ell_final) return {false, "reported final ell disagrees with the basis"};
    if (fin < Rational(-d)) return {false, "final ell below q^-d"};
    if (!lattice_equal(apply_diagonal(B, m.a, false), m.basis).equal) return {false, "final basis is not a B"};
    ++done;
  }
  return {true, "100 lattices (d in 2..4), " + std::to_string(steps) + " steps, each step ell *= q or more, final ell >= q^-d"};
}

Outcome criterion4() {
  int rows = 0;
  for (int q : {2, 3})
    for (int d : {2, 3})
      for (int deg = 1; deg <= 5; ++deg) {
        ConstructedLattice cl = cassels(q, d, deg);
        StabilizerBundle b = stabilizer_certificates(cl);
        if (!b.ok()) return {false, "stabilizer bundle rejected"};
        PMatrix prod = PMatrix::identity(cl.M.field(), d);
        for (const auto& c : b.certs) {
          if (c.det.degree() != 0) return {false, "conjugate not in GL_d(R)"};
          prod = prod * c.C;
        }
        if (!is_identity(prod)) return {false, "product of conjugates is not I"};
        for (int l = 0; l < d; ++l)
          if (!grid_stabilizer_certificate(cl, l).ok()) return {false, "grid certificate failed"};
        ++rows;
      }
  return {true, std::to_string(rows) + " lattices: conjugates in GL_d(R), products exactly I, grid certificates pass"};
}

Outcome criterion5() {
  double cmax = 0;
  int rows = 0;
  auto check = [&](const SimplexSet& phi, const std::string& name) -> std::optional<std::string> {
    CoveringReport r = covering_check(phi);
    if (!r.ok()) return name + " leaves a gap";
    if (!std::isfinite(r.c) || r.c > kCoveringConstant) return name + " needs c = " + std::to_string(r.c);
    cmax = std::max(cmax, r.c);
    ++rows;
    return std::nullopt;
  };
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k <= 4; ++k)
      if (auto e = check(standard_simplex(d, k), "Phi_*^" + std::to_string(k) + " d=" + std::to_string(d))) return {false, *e};
  for (int q : {2, 3})
    for (int d : {2, 3})
      for (int deg = 1; deg <= 5; ++deg)
        if (auto e = check(cassels(q, d, deg).phi, "Phi_Q")) return {false, *e};
  std::ostringstream s;
  s << rows << " simplex sets covered; measured c <= " << cmax << " (pinned " << kCoveringConstant << ")";
  return {true, s.str()};
}

Outcome criterion6() {
  ExperimentConfig cfg;
  cfg.q = 3;
  cfg.d = 2;
  cfg.Q_min_degree = 1;
  cfg.Q_max_degree = 5;
  cfg.kappa = 0.5;
  Report r = run_escape_mass(cfg);
  std::ostringstream s;
  s << "fractions";
  for (const auto& v : r.summary["fractions"]) s << " " << v.get<double>();
  s << "; monotone " << (r.summary["monotone_nonincreasing"].get<bool>() ? "yes" : "no");
  if (!r.summary["slope"].is_null()) s << "; slope " << r.summary["slope"].get<double>() << " (bound -0.25)";
  return {r.pass && !r.any_failure(), s.str()};
}

Outcome criterion7() {
  ExperimentConfig c2;
  c2.q = 3;
  c2.d = 2;
  Report r2 = run_visits(c2);
  for (const auto& row : r2.rows)
    if (!row.pass || !row.error.empty()) return {false, "d=2 row " + std::to_string(row.index) + " failed"};
  ExperimentConfig c3;
  c3.q = 3;
  c3.d = 3;
  c3.delta = {-2.0 / 3};
  const auto start = std::chrono::steady_clock::now();
  Report r3 = run_visits(c3);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& row : r3.rows)
    if (!row.pass && !row.skipped) return {false, "d=3 row " + std::to_string(row.index) + " failed: " + row.error};
  long long good = r3.summary["rows_with_n_factorial_components"].get<long long>();
  std::ostringstream s;
  s << "d=2: " << r2.rows.size() << " rows with >= 1 component; d=3: " << good << " of " << r3.rows.size()
    << " rows reach n! = 2 components at ell >= q^-2/3 in " << secs << " s; stabilizer index <= n! where complete";
  return {good >= 1 && secs < 600, s.str()};
}

Outcome criterion8() {
  ExperimentConfig cfg;
  cfg.q = 3;
  cfg.d = 2;
  cfg.Q_min_degree = 0;
  cfg.Q_max_degree = 5;
  cfg.mu_prec = 1;
  Report r = run_cassels(cfg);
  std::optional<int> from;
  for (int k = int(r.rows.size()) - 1; k >= 0 && r.rows[k].pass && !r.rows[k].skipped; --k) from = k;
  const GF& f2 = GF::get(2);
  MuResult mu = mu_bruteforce(LMatrix::identity(f2, 2), nullptr, false, 3);
  std::ostringstream s;
  s << "y_Q minimum = -d + rho(det M_Q) with equality from deg Q = " << (from ? std::to_string(*from) : "none")
    << " through 5; mu([R^2], q=2, prec=3) = q^" << mu.mu_exponent;
  return {from.has_value() && mu.mu_exponent == -2 && mu.exact, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"root asymptotics", criterion1},     {"reduction oracle", criterion2},
      {"Margulis lengthening", criterion3}, {"stabilizer certificates", criterion4},
      {"covering", criterion5},             {"escape of mass", criterion6},
      {"visit components", criterion7},     {"Cassels headline", criterion8}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
