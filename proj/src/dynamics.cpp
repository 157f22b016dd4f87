#include "ffmink/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ffmink/errors.hpp"
#include "ffmink/lattice.hpp"

namespace ffmink {

namespace {

long long ifloor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

IVec full(const IVec& dropped) {
  IVec v = dropped;
  long long s = 0;
  for (long long x : dropped) s += x;
  v.push_back(-s);
  return v;
}

std::string ivec_string(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Integer determinant by cofactor expansion.
long long idet(const std::vector<IVec>& m) {
  const int n = int(m.size());
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long s = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<IVec> minor;
    for (int i = 1; i < n; ++i) {
      IVec row;
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    long long c = m[0][j] * idet(minor);
    s += (j % 2 ? -c : c);
  }
  return s;
}

// Upper triangular Hermite normal form (n x n, dropped coordinates) of a
// spanning set of a rank-n sublattice of Z_0^d.
std::vector<IVec> hnf_rows(int d, const std::vector<IVec>& gens) {
  const int n = d - 1;
  std::vector<IVec> rows;
  for (const auto& g : gens) rows.emplace_back(g.begin(), g.begin() + n);
  int r = 0;
  for (int c = 0; c < n; ++c) {
    for (;;) {
      int p = -1;
      for (int i = r; i < int(rows.size()); ++i)
        if (rows[i][c] != 0 && (p < 0 || std::llabs(rows[i][c]) < std::llabs(rows[p][c]))) p = i;
      if (p < 0) fail(Errc::InvalidArgument, "generators do not have rank n");
      std::swap(rows[r], rows[p]);
      bool done = true;
      for (int i = r + 1; i < int(rows.size()); ++i) {
        if (rows[i][c] == 0) continue;
        long long k = ifloor_div(rows[i][c], rows[r][c]);
        for (int j = 0; j < n; ++j) rows[i][j] -= k * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (int i = 0; i < r; ++i) {
      long long k = ifloor_div(rows[i][c], rows[r][c]);
      for (int j = 0; j < n; ++j) rows[i][j] -= k * rows[r][j];
    }
    ++r;
  }
  rows.resize(n);
  return rows;
}

}  // namespace

Rational ceil0(const RVec& v) {
  Rational m = v.at(0);
  for (const auto& x : v) m = std::max(m, x);
  return m;
}

long long ceil0(const IVec& v) { return *std::max_element(v.begin(), v.end()); }

ZLattice::ZLattice(int d, std::vector<IVec> gens) : d_(d) {
  const int n = d - 1;
  if (int(gens.size()) < n) fail(Errc::InvalidArgument, "need at least n generators");
  for (const auto& g : gens) {
    if (int(g.size()) != d) fail(Errc::InvalidArgument, "generator has wrong length");
    if (std::accumulate(g.begin(), g.end(), 0LL) != 0)
      fail(Errc::InvalidArgument, "generator " + ivec_string(g) + " is not in Z_0^d");
  }
  basis_.assign(gens.begin(), gens.begin() + n);

  hnf_ = hnf_rows(d, gens);

  std::vector<IVec> G(n, IVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G[i][j] = basis_[j][i];
  long long D = idet(G);
  if (D == 0) fail(Errc::InvalidArgument, "first n generators are not a basis");
  ginv_.assign(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // cofactor C_ji
      std::vector<IVec> minor;
      for (int a = 0; a < n; ++a) {
        if (a == j) continue;
        IVec row;
        for (int b = 0; b < n; ++b)
          if (b != i) row.push_back(G[a][b]);
        minor.push_back(row);
      }
      long long cof = idet(minor) * (((i + j) % 2) ? -1 : 1);
      ginv_[i][j] = Rational(cof, D);
    }
}

long long ZLattice::index() const {
  long long p = 1;
  for (int i = 0; i < d_ - 1; ++i) p *= hnf_[i][i];
  return p;
}

IVec ZLattice::reduce(const IVec& v) const {
  const int n = d_ - 1;
  IVec w(v.begin(), v.begin() + n);
  for (int i = 0; i < n; ++i) {
    long long k = ifloor_div(w[i], hnf_[i][i]);
    if (k == 0) continue;
    for (int j = 0; j < n; ++j) w[j] -= k * hnf_[i][j];
  }
  return full(w);
}

std::vector<IVec> ZLattice::coset_reps() const {
  const int n = d_ - 1;
  std::vector<IVec> out;
  IVec w(n, 0);
  for (;;) {
    out.push_back(full(w));
    int i = n - 1;
    while (i >= 0 && ++w[i] == hnf_[i][i]) w[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

RVec ZLattice::coordinates(const RVec& v) const {
  const int n = d_ - 1;
  RVec c(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i] += ginv_[i][j] * v[j];
  return c;
}

std::pair<Rational, IVec> ZLattice::closest(const RVec& y) const {
  const int n = d_ - 1;
  RVec beta = coordinates(y);
  auto eval = [&](const IVec& k) {
    RVec z = y;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < d_; ++i) z[i] -= Rational(k[j] * basis_[j][i]);
    return ceil0(z);
  };
  IVec k0(n);
  for (int i = 0; i < n; ++i) k0[i] = floor_div(beta[i] + Rational(1, 2));
  Rational best = eval(k0);
  IVec best_k = k0;
  // Any better z = y - g has max coordinate <= best, hence |z_i| <= n * best.
  IVec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rational s(0);
    for (int j = 0; j < n; ++j) s += abs(ginv_[i][j]);
    Rational rad = s * Rational(n) * best;
    lo[i] = ceil_div(beta[i] - rad);
    hi[i] = floor_div(beta[i] + rad);
  }
  IVec k = lo;
  for (;;) {
    Rational v = eval(k);
    if (v < best || (v == best && k < best_k)) {
      best = v;
      best_k = k;
    }
    int i = n - 1;
    while (i >= 0 && ++k[i] > hi[i]) k[i] = lo[i], --i;
    if (i < 0) break;
  }
  IVec g(d_, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d_; ++i) g[i] += best_k[j] * basis_[j][i];
  return {best, g};
}

long long ZLattice::box_diameter() const {
  long long m = 0;
  for (const auto& v : coset_reps())
    for (long long x : v) m = std::max(m, std::llabs(x));
  return m;
}

ZLattice ZLattice::from_generators(int d, const std::vector<IVec>& generators) {
  for (const auto& g : generators)
    if (int(g.size()) != d || std::accumulate(g.begin(), g.end(), 0LL) != 0)
      fail(Errc::InvalidArgument, "generator is not in Z_0^d");
  std::vector<IVec> rows;
  for (const auto& h : hnf_rows(d, generators)) rows.push_back(full(h));
  return ZLattice(d, rows);
}

std::vector<Rational> ZLattice::residue_covering_radii() const {
  std::vector<Rational> out;
  auto reps = coset_reps();
  for (int t = 0; t < d_; ++t) {
    std::optional<Rational> worst;
    for (const auto& z : reps) {
      RVec y(d_);
      for (int i = 0; i < d_; ++i) y[i] = Rational(z[i] + (i == 0 ? t : 0)) - Rational(t, d_);
      Rational r = closest(y).first;
      if (!worst || r > *worst) worst = r;
    }
    out.push_back(*worst);
  }
  return out;
}

void SimplexSet::validate() const {
  if (d < 2 || int(rho.size()) != d) fail(Errc::InvalidArgument, "simplex set needs d elements");
  IVec total(d, 0);
  for (const auto& r : rho) {
    if (int(r.size()) != d) fail(Errc::InvalidArgument, "rho vector has wrong length");
    if (std::accumulate(r.begin(), r.end(), 0LL) != 0)
      fail(Errc::InvalidArgument, "rho vector " + ivec_string(r) + " is not in Z_0^d");
    for (int i = 0; i < d; ++i) total[i] += r[i];
  }
  for (long long x : total)
    if (x != 0) fail(Errc::InvalidArgument, "rho vectors of a simplex set must sum to zero");
  (void)gamma_lattice();
  if (entries.empty()) return;
  if (int(entries.size()) != d) fail(Errc::InvalidArgument, "entries must have d elements");
  const GF& f = entries[0][0].field();
  for (int i = 0; i < d; ++i) {
    Laurent p = Laurent::one(f);
    for (int l = 0; l < d; ++l) {
      const Laurent& e = entries[l][i];
      if (!e.has_lead() || e.rho() != rho[l][i])
        fail(Errc::InvalidArgument, "diagonal entry does not match its rho vector");
      p = p * e;
    }
    Laurent diff = p - Laurent::one(f);
    if (diff.has_lead()) fail(Errc::InvalidArgument, "product of simplex elements is not the identity");
  }
}

long long SimplexSet::xi() const {
  long long m = ceil0(rho.at(0));
  for (const auto& r : rho) m = std::max(m, ceil0(r));
  return m;
}

RVec SimplexSet::w() const {
  RVec w(d, Rational(0));
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i) w[i] += Rational(l * rho[l][i], d);
  return w;
}

std::vector<RVec> SimplexSet::W() const {
  std::vector<int> tau(d);
  std::iota(tau.begin(), tau.end(), 0);
  std::vector<RVec> out;
  do {
    RVec w(d, Rational(0));
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i) w[i] += Rational(tau[l] * rho[l][i], d);
    out.push_back(w);
  } while (std::next_permutation(tau.begin(), tau.end() - 1));
  return out;
}

ZLattice SimplexSet::gamma_lattice() const { return ZLattice(d, rho); }

SimplexSet standard_simplex(int d, int k) {
  if (d < 2 || k < 1) fail(Errc::InvalidArgument, "standard simplex needs d >= 2 and k >= 1");
  SimplexSet s;
  s.d = d;
  for (int l = 0; l < d; ++l) {
    IVec r(d, k);
    r[l] = -(long long)(d - 1) * k;
    s.rho.push_back(r);
  }
  return s;
}

std::optional<StandardFit> is_kC_standard(const SimplexSet& phi, long long C, int max_k) {
  const int d = phi.d;
  std::optional<StandardFit> best;
  std::vector<int> labels(d);
  std::iota(labels.begin(), labels.end(), 0);
  do {
    for (int k = 1; k <= max_k; ++k) {
      long long need = 0;
      for (int l = 0; l < d; ++l) {
        IVec c = phi.rho[l];
        for (int i = 0; i < d; ++i) c[i] -= (i == labels[l] ? -(long long)(d - 1) * k : k);
        need = std::max(need, ceil0(c));
      }
      if (!best || need < best->C || (need == best->C && k < best->k)) best = StandardFit{k, need, labels};
    }
  } while (std::next_permutation(labels.begin(), labels.end()));
  if (!best || best->C > C) return std::nullopt;
  return best;
}

TightnessReport is_M_tight(const SimplexSet& phi, const LMatrix& x, const Rational& log_q_M) {
  TightnessReport r;
  const int n = phi.n();
  r.ell = ell(x);
  Rational half_n_xi = Rational(n * phi.xi(), 2);
  r.tight_bound = log_q_M - half_n_xi;
  r.lower_bound = Rational(-phi.d) - half_n_xi;
  r.tight = r.ell <= r.tight_bound;
  r.lower_ok = r.ell >= r.lower_bound;
  return r;
}

std::optional<IVec> covered_by(const SimplexSet& phi, const ZLattice& L, const IVec& u, const Rational& scale,
                               bool interior) {
  const int d = phi.d, n = d - 1;
  RVec ur(u.begin(), u.end());
  RVec beta = L.coordinates(ur);
  beta.push_back(Rational(0));
  // Scale everything by D so that fractional parts are integers in [0, D).
  long long D = 1;
  for (const auto& b : beta) D = std::lcm(D, b.denominator());
  IVec B(d), R(d);
  for (int l = 0; l < d; ++l) {
    B[l] = (beta[l] * Rational(D)).numerator();
    R[l] = ((B[l] % D) + D) % D;
  }
  // f = beta - m lies in scale*(n/2)*S iff d f_l - sum f >= -scale*n/2 for all l.
  const long long a = scale.numerator(), b = scale.denominator();
  auto ok = [&](const IVec& F) {
    long long s = std::accumulate(F.begin(), F.end(), 0LL);
    for (int l = 0; l < d; ++l) {
      long long lhs = 2 * b * (d * F[l] - s);
      long long rhs = -a * n * D;
      if (interior ? lhs <= rhs : lhs < rhs) return false;
    }
    return true;
  };
  auto witness = [&](const IVec& F) {
    IVec g(d, 0);
    for (int l = 0; l < d; ++l) {
      long long m = (B[l] - F[l]) / D;
      for (int i = 0; i < d; ++i) g[i] += m * phi.rho[l][i];
    }
    return g;
  };
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return R[x] < R[y] || (R[x] == R[y] && x < y); });
  for (int j = 0; j < d; ++j) {
    IVec F = R;
    for (int t = 0; t < j; ++t) F[order[t]] += D;
    if (ok(F)) return witness(F);
  }
  // Fallback: small offsets around the fractional parts.
  IVec off(d, -1);
  for (;;) {
    IVec F = R;
    for (int l = 0; l < d; ++l) F[l] += off[l] * D;
    if (ok(F)) return witness(F);
    int i = d - 1;
    while (i >= 0 && ++off[i] > 2) off[i--] = -1;
    if (i < 0) break;
  }
  return std::nullopt;
}

Rational distance_to_W(const SimplexSet& phi, const ZLattice& L, const std::vector<RVec>& W, const IVec& v) {
  std::optional<Rational> best;
  for (const auto& w : W) {
    RVec y(phi.d);
    for (int i = 0; i < phi.d; ++i) y[i] = Rational(v[i]) - w[i];
    Rational dist = L.closest(y).first;
    if (!best || dist < *best) best = dist;
  }
  return *best;
}

double covering_constant(const SimplexSet& phi, const ZLattice& L, const Rational& gamma) {
  auto W = phi.W();
  double c = 0;
  const double denom = to_double(gamma) * double(phi.xi());
  for (const auto& u : L.coset_reps()) {
    if (covered_by(phi, L, u, Rational(1) - gamma)) continue;
    c = std::max(c, to_double(distance_to_W(phi, L, W, u)) / denom);
  }
  return c;
}

CoveringReport covering_check(const SimplexSet& phi, long long window, std::vector<Rational> gammas) {
  phi.validate();
  CoveringReport rep;
  ZLattice L = phi.gamma_lattice();
  rep.index = L.index();
  const int d = phi.d, n = d - 1;
  if (window < 0) {
    long long diam = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int i = 0; i < d; ++i) diam = std::max(diam, std::llabs(phi.rho[a][i] - phi.rho[b][i]));
    window = (long long)std::ceil(2.0 * double(n) / 2.0 * double(diam));
  }
  rep.window = window;
  IVec w(n, -window);
  for (;;) {
    IVec u = full(w);
    ++rep.points_checked;
    if (!covered_by(phi, L, u, Rational(1))) {
      rep.gap = u;
      break;
    }
    int i = n - 1;
    while (i >= 0 && ++w[i] > window) w[i--] = -window;
    if (i < 0) break;
  }
  rep.gammas = gammas;
  for (const auto& g : gammas) {
    double c = covering_constant(phi, L, g);
    rep.c_per_gamma.push_back(c);
    rep.c = std::max(rep.c, c);
  }
  return rep;
}

double MeasConParams::delta_exp(int d) const {
  const int n = d - 1;
  return log_q_M - 0.5 * n * std::pow(stab_size, kappa / n);
}

double MeasConParams::gamma(int d, long long xi) const {
  return std::pow(stab_size, kappa / (d - 1)) / double(xi);
}

double MeasConParams::r(int d) const { return c * std::pow(stab_size, kappa / (d - 1)); }

Rational MeasConParams::threshold(int d) const { return ceil_to_denominator(delta_exp(d), d); }

std::size_t OrbitScan::find(const IVec& a) const {
  auto it = std::lower_bound(points.begin(), points.end(), a);
  if (it == points.end() || *it != a) return points.size();
  return std::size_t(it - points.begin());
}

Rational orbit_ell(const LMatrix& B, const IVec& a) {
  std::vector<int> e(a.begin(), a.end());
  return ell(apply_diagonal(B, e));
}

OrbitScan scan_orbit(const LMatrix& x, const SimplexSet& phi, const MeasConParams& params, bool strict) {
  OrbitScan s;
  s.d = phi.d;
  ZLattice L = phi.gamma_lattice();
  s.points = L.coset_reps();
  std::sort(s.points.begin(), s.points.end());
  s.threshold = params.threshold(phi.d);
  const double delta = params.delta_exp(phi.d);
  s.gamma = params.gamma(phi.d, phi.xi());
  s.r = params.r(phi.d);
  for (const auto& a : s.points) {
    try {
      s.ell.push_back(orbit_ell(x, a));
      s.failed.push_back(false);
    } catch (const Error& e) {
      if (e.code() != Errc::PrecisionExhausted) throw;
      s.ell.push_back(Rational(0));
      s.failed.push_back(true);
    }
    s.is_long.push_back(!s.failed.back() && s.ell.back() >= s.threshold);
  }
  auto W = phi.W();
  // Conservative rational below 1 - gamma.
  std::optional<Rational> shrink;
  if (s.gamma > 0 && s.gamma < 1) shrink = Rational((long long)std::floor((1 - s.gamma) * 1e6), 1000000);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (s.failed[i]) continue;
    const IVec& a = s.points[i];
    if (shrink && covered_by(phi, L, a, *shrink) && to_double(s.ell[i]) > delta + 1e-9) {
      ++s.short_violations;
      if (!s.witness) s.witness = a;
    }
    if (s.is_long[i] && to_double(distance_to_W(phi, L, W, a)) > s.r + 1e-9) {
      ++s.inclusion_violations;
      if (!s.witness) s.witness = a;
    }
  }
  const std::size_t nper = std::min<std::size_t>(s.points.size(), 8);
  for (std::size_t i = 0; i < nper; ++i) {
    if (s.failed[i]) continue;
    for (const auto& g : phi.rho) {
      IVec b = s.points[i];
      for (int j = 0; j < phi.d; ++j) b[j] += g[j];
      try {
        ++s.periodicity_checks;
        if (orbit_ell(x, b) != s.ell[i]) s.periodic = false;
      } catch (const Error& e) {
        if (e.code() != Errc::PrecisionExhausted) throw;
      }
    }
  }
  if (strict && (s.short_violations || s.inclusion_violations))
    fail(Errc::InclusionViolated, "orbit point " + ivec_string(*s.witness) + " violates the escape-of-mass inclusions");
  return s;
}

Rational mass_fraction(const OrbitScan& scan, const Rational& threshold) {
  if (scan.points.empty()) return Rational(0);
  long long cnt = 0;
  for (std::size_t i = 0; i < scan.points.size(); ++i)
    if (!scan.failed[i] && scan.ell[i] >= threshold) ++cnt;
  return Rational(cnt, (long long)scan.points.size());
}

Rational mass_fraction(const OrbitScan& scan) { return mass_fraction(scan, scan.threshold); }

VisitComponents visit_components(const OrbitScan& scan, const ZLattice& L) {
  const int d = scan.d;
  const std::size_t N = scan.points.size();
  std::vector<std::size_t> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<IVec> steps;
  IVec e(d, -1);
  for (;;) {
    if (std::accumulate(e.begin(), e.end(), 0LL) == 0 && std::any_of(e.begin(), e.end(), [](long long v) { return v; }))
      steps.push_back(e);
    int i = d - 1;
    while (i >= 0 && ++e[i] > 1) e[i--] = -1;
    if (i < 0) break;
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (!scan.is_long[i]) continue;
    for (const auto& st : steps) {
      IVec b = scan.points[i];
      for (int j = 0; j < d; ++j) b[j] += st[j];
      std::size_t k = scan.find(L.reduce(b));
      if (k < N && scan.is_long[k]) parent[root(i)] = root(k);
    }
  }
  VisitComponents vc;
  vc.component.assign(N, -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < N; ++i) {
    if (!scan.is_long[i]) continue;
    auto [it, fresh] = ids.emplace(root(i), int(ids.size()));
    vc.component[i] = it->second;
  }
  vc.count = int(ids.size());
  return vc;
}

StabilizerIndexReport stabilizer_index_check(const LMatrix& x, const SimplexSet& phi, long long budget) {
  StabilizerIndexReport rep;
  const int d = phi.d;
  for (int i = 2; i < d; ++i) rep.factorial_n *= i;
  const GF& f = x.field();
  const long long q = f.q();
  ZLattice L = phi.gamma_lattice();
  for (const auto& v : L.coset_reps()) {
    // The test only depends on the coset, so use its smallest member.
    IVec g = L.closest(RVec(v.begin(), v.end())).second;
    std::vector<int> neg(d);
    for (int i = 0; i < d; ++i) neg[i] = int(g[i] - v[i]);
    ReducedBasis rb;
    try {
      rb = reduce_basis(apply_diagonal(x, neg));
    } catch (const Error& e) {
      if (e.code() != Errc::PrecisionExhausted) throw;
      rep.complete = false;
      rep.candidates.push_back(v);
      continue;
    }
    // Vectors of norm <= 1: sum c_j b_j with deg c_j <= -n_j.
    std::vector<int> len(d);
    long long total = 1;
    bool over = false;
    for (int j = 0; j < d; ++j) {
      len[j] = std::max(0, 1 - rb.norms[j]);
      for (int t = 0; t < len[j] && !over; ++t)
        if ((total *= q) > budget) over = true;
    }
    if (over) {
      rep.complete = false;
      rep.candidates.push_back(v);
      continue;
    }
    bool found = false;
    for (long long code = 1; code < total && !found; ++code) {
      long long c = code;
      LVector y(d, Laurent::zero(f));
      for (int j = 0; j < d; ++j) {
        std::vector<Fe> coeffs(len[j]);
        for (int t = 0; t < len[j]; ++t) {
          coeffs[t] = Fe(c % q);
          c /= q;
        }
        if (len[j] == 0) continue;
        Laurent cj = Laurent::from_coeffs(f, 0, coeffs);
        for (int i = 0; i < d; ++i) y[i] += cj * rb.basis(i, j);
      }
      // Uncertified coordinates count as possible units, keeping the bound an upper bound.
      found = std::all_of(y.begin(), y.end(), [](const Laurent& e) {
        return e.has_lead() ? e.rho() == 0 : (!e.is_exact() && e.order() >= 0);
      });
    }
    if (found) rep.candidates.push_back(v);
  }
  rep.index_upper_bound = (long long)rep.candidates.size();
  return rep;
}

}  // namespace ffmink
