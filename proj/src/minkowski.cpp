#include "ffmink/minkowski.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <numeric>

#include "ffmink/errors.hpp"

namespace ffmink {

namespace {

// Row index of the single nonzero entry of each column, if the basis is a
// permuted diagonal matrix.
std::optional<std::vector<int>> monomial_rows(const LMatrix& B) {
  const int d = B.rows();
  std::vector<int> rows(d, -1);
  std::vector<bool> used(d, false);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (B(i, j).is_exact_zero()) continue;
      if (rows[j] >= 0 || used[i]) return std::nullopt;
      rows[j] = i;
      used[i] = true;
    }
    if (rows[j] < 0) return std::nullopt;
  }
  return rows;
}

// All polynomials of degree <= k as Laurent numbers (the zero polynomial first).
std::vector<Laurent> small_polys(const GF& f, int k) {
  std::vector<Laurent> out;
  if (k < 0) return {Laurent::zero(f)};
  long long total = 1;
  for (int i = 0; i <= k; ++i) total *= f.q();
  for (long long code = 0; code < total; ++code) out.push_back(Laurent::from_poly(poly_from_code(f, code, k + 1)));
  return out;
}

struct Box {
  std::vector<std::vector<LVector>> columns;  // per j: (c_j + f_j) b_j for every admissible c_j
  long long size = 1;
};

// Grid vectors sum_j (c_j + f_j) b_j of sup norm <= q^bound on a reduced basis.
Box make_box(const ReducedBasis& rb, const LVector& frac, int bound, long long budget) {
  const GF& f = rb.basis.field();
  const int d = rb.dim();
  Box box;
  for (int j = 0; j < d; ++j) {
    const int room = bound - rb.norms[j];
    std::vector<LVector> col;
    bool zero_ok = frac[j].is_exact_zero() || frac[j].vbound() <= room;
    for (const auto& c : small_polys(f, room)) {
      if (c.is_exact_zero() && !zero_ok) continue;
      Laurent coef = c + frac[j];
      LVector v(d);
      for (int i = 0; i < d; ++i) v[i] = coef * rb.basis(i, j);
      col.push_back(std::move(v));
    }
    if (col.empty()) {
      box.size = 0;
    } else if (box.size > 0) {
      if (box.size > budget / (long long)col.size())
        fail(Errc::BudgetExceeded, "grid box exceeds the enumeration budget");
      box.size *= (long long)col.size();
    }
    box.columns.push_back(std::move(col));
  }
  return box;
}

template <class F>
void for_each_in_box(const Box& box, F&& fn) {
  if (box.size == 0) return;
  const int d = int(box.columns.size());
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    LVector v = box.columns[0][idx[0]];
    for (int j = 1; j < d; ++j)
      for (int i = 0; i < d; ++i) v[i] += box.columns[j][idx[j]][i];
    fn(v);
    int j = d - 1;
    while (j >= 0 && ++idx[j] == box.columns[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
}

struct ReducedGrid {
  ReducedBasis rb;
  LVector frac;
};

ReducedGrid reduce_grid(const GridSpec& y) {
  ReducedGrid g{reduce_basis(y.basis), {}};
  PMatrix Uinv = inverse_unimodular(g.rb.transform);
  LVector s = to_laurent(Uinv) * y.shift;
  for (auto& e : s) g.frac.push_back(e.frac_part());
  return g;
}

int sup_exponent(const LVector& v) {
  auto n = sup_norm(v);
  return n ? *n : kMinusInf;
}

}  // namespace

std::optional<int> product_value(const LVector& v) {
  int s = 0;
  for (const auto& e : v) {
    if (e.is_exact_zero()) return std::nullopt;
    s += e.rho();
  }
  return s;
}

std::vector<int> product_set_sample(const GridSpec& y, int bound, long long budget) {
  ReducedGrid g = reduce_grid(y);
  Box box = make_box(g.rb, g.frac, bound, budget);
  std::vector<int> out;
  for_each_in_box(box, [&](const LVector& v) {
    auto n = product_value(v);
    out.push_back(n ? *n : kMinusInf);
  });
  std::sort(out.begin(), out.end());
  return out;
}

GridMinResult grid_min(const GridSpec& y, const ZLattice* stab, bool nonvanishing, long long budget) {
  const GF& f = y.basis.field();
  const int d = y.basis.rows();
  GridMinResult res;
  ReducedGrid g = reduce_grid(y);
  res.reduced_norms = g.rb.norms;
  if (std::all_of(g.frac.begin(), g.frac.end(), [](const Laurent& e) { return e.is_exact_zero(); })) {
    res.zero = true;
    res.route = "lattice";
    res.argmin = LVector(d, Laurent::zero(f));
    return res;
  }
  LVector y0 = g.rb.basis * g.frac;
  if (auto rows = monomial_rows(g.rb.basis)) {
    res.route = "diagonal";
    res.argmin = y0;
    res.min_exponent = 0;
    for (int j = 0; j < d; ++j) {
      if (g.frac[j].is_exact_zero()) {
        res.zero = true;
        continue;
      }
      res.min_exponent += g.frac[j].rho() + g.rb.basis((*rows)[j], j).rho();
    }
    res.E0 = res.min_exponent;
    res.box_exponent = sup_exponent(y0);
    res.min_sup_exponent = res.box_exponent;
    res.candidates = 1;
    return res;
  }
  if (!stab) fail(Errc::IncompleteSearch, "no certified stabilizer for a non-diagonal grid");
  if (!nonvanishing) fail(Errc::IncompleteSearch, "zero coordinates are not ruled out for this grid");
  res.route = "stabilizer";
  auto e0 = product_value(y0);
  if (!e0) {
    res.zero = true;
    res.argmin = y0;
    return res;
  }
  res.E0 = *e0;
  res.covering_radii = stab->residue_covering_radii();
  // A vector with N = s has a stabilizer translate of sup exponent
  // <= floor(s/d + R*_{s mod d}); this is nondecreasing along s = t mod d.
  std::optional<int> B;
  for (int s = res.E0 - d + 1; s <= res.E0; ++s) {
    int t = ((s % d) + d) % d;
    int b = int(floor_div(Rational(s, d) + res.covering_radii[t]));
    if (!B || b > *B) B = b;
  }
  res.box_exponent = *B;
  Box box = make_box(g.rb, g.frac, *B, budget);
  res.candidates = box.size;
  res.min_exponent = res.E0;
  res.argmin = y0;
  res.min_sup_exponent = sup_exponent(y0);
  for_each_in_box(box, [&](const LVector& v) {
    auto n = product_value(v);
    if (!n) {
      res.zero = true;
      res.argmin = v;
      return;
    }
    if (*n < res.min_exponent && !res.zero) {
      res.min_exponent = *n;
      res.argmin = v;
    }
    res.min_sup_exponent = std::min(res.min_sup_exponent, sup_exponent(v));
  });
  if (res.zero) fail(Errc::CertificateFailure, "grid vector with a zero coordinate despite the nonvanishing guarantee");
  return res;
}

UnitReduction unit_reduce(const LVector& v, const SimplexSet& phi, std::optional<Rational> max_slack) {
  const int d = phi.d, n = d - 1;
  ZLattice L = phi.gamma_lattice();
  IVec r(d);
  for (int i = 0; i < d; ++i) r[i] = v[i].rho();
  Rational m(std::accumulate(r.begin(), r.end(), 0LL), d);
  const std::vector<RVec> W = phi.W();
  std::vector<int> tau(d);
  std::iota(tau.begin(), tau.end(), 0);
  std::optional<UnitReduction> best;
  for (const RVec& w : W) {
    RVec y(d);
    for (int i = 0; i < d; ++i) y[i] = Rational(r[i]) - w[i] - m;
    auto [dist, g] = L.closest(y);
    UnitReduction u;
    u.tau = tau;
    u.slack = dist;
    u.rho_before = r;
    u.rho_after = r;
    for (int i = 0; i < d; ++i) u.rho_after[i] -= g[i];
    RVec k = L.coordinates(RVec(g.begin(), g.end()));
    for (int j = 0; j < n; ++j) u.word.push_back(-floor_div(k[j]));
    if (!best || u.slack < best->slack || (u.slack == best->slack && u.word < best->word)) best = u;
    std::next_permutation(tau.begin(), tau.end() - 1);
  }
  if (max_slack && best->slack > *max_slack)
    fail(Errc::ReductionFailed, "vector stays " + to_string(best->slack) + " away from every deep point");
  if (!phi.entries.empty()) {
    best->v = v;
    for (int l = 0; l < n; ++l) {
      long long b = best->word[l];
      if (b == 0) continue;
      for (int i = 0; i < d; ++i) {
        const Laurent& e = phi.entries[l][i];
        Laurent p = b > 0 ? pow(e, int(b)) : pow(inv(e), int(-b));
        best->v[i] = best->v[i] * p;
      }
    }
  }
  return *best;
}

LatticeStabilizers stabilizers_of(const ConstructedLattice& cl) {
  LatticeStabilizers s;
  for (int l = 0; l < cl.d(); ++l) s.C.push_back(stabilizer_certificate(cl, l).C);
  s.rho = cl.phi.rho;
  return s;
}

MuResult mu_bruteforce(const LMatrix& x, const LatticeStabilizers* stab, bool nonvanishing, int prec,
                       double budget_seconds, long long orbit_budget) {
  const GF& f = x.field();
  const int d = x.rows();
  if (prec < 1) fail(Errc::InvalidArgument, "prec must be positive");
  const auto start = std::chrono::steady_clock::now();
  MuResult res;
  ReducedBasis rb = reduce_basis(x);
  const bool diag = monomial_rows(rb.basis).has_value();
  res.route = diag ? "diagonal" : "stabilizer";
  if (!diag && !stab) fail(Errc::IncompleteSearch, "mu of a non-diagonal lattice needs stabilizer matrices");
  std::vector<PMatrix> Cred;
  if (!diag) {
    PMatrix U = rb.transform, Uinv = inverse_unimodular(rb.transform);
    for (const auto& C : stab->C) Cred.push_back(Uinv * C * U);
  }
  long long total = 1;
  for (int i = 0; i < d * prec; ++i) {
    if (total > (1LL << 40) / f.q()) fail(Errc::BudgetExceeded, "too many shift representatives");
    total *= f.q();
  }
  std::optional<int> best;
  for (long long code = 1; code < total; ++code) {
    if (budget_seconds > 0) {
      double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (el > budget_seconds) {
        res.complete = false;
        break;
      }
    }
    LVector shift(d);
    long long c = code;
    for (int j = 0; j < d; ++j) {
      std::vector<Fe> coeffs(prec);
      for (int k = prec - 1; k >= 0; --k) {  // coeffs[0] is x^-prec
        coeffs[k] = Fe(c % f.q());
        c /= f.q();
      }
      shift[j] = Laurent::from_coeffs(f, -prec, coeffs);
    }
    ++res.shifts_tried;
    GridSpec y{rb.basis, shift};
    GridMinResult gm;
    if (diag) {
      gm = grid_min(y, nullptr, false);
    } else {
      // Orbit of the shift under the stabilizer action modulo R^d; Schreier
      // relations give rho of the grid stabilizer.
      std::map<std::string, std::size_t> seen;
      std::vector<LVector> nodes;
      std::vector<IVec> words;
      std::vector<IVec> rels;
      auto key = [](const LVector& v) {
        std::string s;
        for (const auto& e : v) s += e.to_string() + ";";
        return s;
      };
      seen[key(shift)] = 0;
      nodes.push_back(shift);
      words.push_back(IVec(d, 0));
      bool over = false;
      for (std::size_t at = 0; at < nodes.size() && !over; ++at)
        for (int l = 0; l < d; ++l) {
          LVector img = to_laurent(Cred[l]) * nodes[at];
          for (auto& e : img) e = e.frac_part();
          IVec w = words[at];
          w[l] += 1;
          auto [it, fresh] = seen.emplace(key(img), nodes.size());
          if (fresh) {
            nodes.push_back(img);
            words.push_back(w);
            if ((long long)nodes.size() > orbit_budget) {
              over = true;
              break;
            }
          } else {
            IVec rel(d, 0);
            for (int m = 0; m < d; ++m) {
              long long k = w[m] - words[it->second][m];
              for (int i = 0; i < d; ++i) rel[i] += k * stab->rho[m][i];
            }
            if (std::any_of(rel.begin(), rel.end(), [](long long v) { return v != 0; })) rels.push_back(rel);
          }
        }
      if (over) {
        res.complete = false;
        continue;
      }
      ZLattice S = ZLattice::from_generators(d, rels);
      gm = grid_min(y, &S, nonvanishing);
    }
    if (gm.zero) continue;
    int val = gm.min_exponent - rb.det_exponent;
    if (!best || val > *best) {
      best = val;
      res.best_shift = shift;
    }
  }
  if (!best) fail(Errc::BudgetExceeded, "no shift representative was evaluated");
  res.mu_exponent = *best;
  // Every grid minimum is certified, so the value is exact at this precision
  // unless shifts were skipped.
  res.exact = res.complete;
  return res;
}

int proximity_exponent(const LMatrix& B, const IVec& a, int window) {
  const int d = B.rows();
  std::vector<int> e(a.begin(), a.end());
  ReducedBasis rb = reduce_basis(apply_diagonal(B, e));
  const int s = homothety_shift(rb.det_exponent, d);
  const int E = rb.det_exponent - d * s;
  std::vector<int> zero(d, -s);
  LMatrix Bn = apply_diagonal(rb.basis, zero, false);
  std::optional<int> best;
  std::vector<int> ev(d, -window);
  for (;;) {
    if (std::accumulate(ev.begin(), ev.end(), 0) == E) {
      std::vector<int> neg(d);
      for (int i = 0; i < d; ++i) neg[i] = -ev[i];
      LMatrix Mx = apply_diagonal(Bn, neg, false);
      PMatrix G(B.field(), d, d);
      int err = -kExactProximity;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          G(i, j) = Mx(i, j).poly_part();
          Laurent fr = Mx(i, j).frac_part();
          err = std::max(err, fr.vbound());
        }
      if (det(G).degree() == 0) {
        if (!best || -err > *best) best = -err;
      }
    }
    int i = d - 1;
    while (i >= 0 && ++ev[i] > window) ev[i--] = -window;
    if (i < 0) break;
  }
  return best ? *best : 0;
}

CasselsCertificate cassels_certificate(const ConstructedLattice& cl, const CasselsOptions& opt) {
  CasselsCertificate cert;
  const int d = cl.d();
  cert.target = -d + cl.covol_exponent;
  if (!cl.cassels) {
    cert.failure = "lattice was not built from a Cassels family";
    return cert;
  }
  try {
    cert.stabilizers_ok = stabilizer_certificates(cl).ok();
    for (int l = 0; l < d; ++l) grid_stabilizer_certificate(cl, l);
    cert.grid_stabilizers_ok = true;
  } catch (const Error& e) {
    cert.failure = e.what();
    return cert;
  }
  auto irr = irreducibility_check(cl.roots.P);
  cert.irreducibility = to_string(irr.status);
  const bool nonvanishing = irr.status == IrreducibilityResult::Status::NoRationalRoot;
  ZLattice L = cl.phi.gamma_lattice();
  try {
    cert.grid = grid_min(build_yQ(cl), &L, nonvanishing, opt.budget);
  } catch (const Error& e) {
    cert.failure = e.what();
    cert.budget_exhausted = e.code() == Errc::BudgetExceeded;
    return cert;
  }
  cert.pass = !cert.grid.zero && cert.grid.min_exponent >= cert.target;
  cert.equality = !cert.grid.zero && cert.grid.min_exponent == cert.target;
  if (!cert.pass) cert.failure = "grid vector below the target";
  cert.max_xi_offset = cert.grid.min_sup_exponent - (d - 1) * cl.norm_degree();
  if (!cert.grid.zero) cert.argmin_reduction = unit_reduce(cert.grid.argmin, cl.phi);
  if (opt.proximity) {
    MeasConParams p = opt.params;
    p.stab_size = double(L.index());
    OrbitScan sc = scan_orbit(cl.M, cl.phi, p);
    cert.proximity.computed = true;
    std::optional<int> tstar;
    for (std::size_t i = 0; i < sc.points.size(); ++i) {
      if (!sc.is_long[i]) continue;
      ++cert.proximity.long_points;
      int t = proximity_exponent(cl.M, sc.points[i], opt.proximity_window);
      if (!tstar || t < *tstar) tstar = t;
    }
    cert.proximity.T_star = tstar ? *tstar : 0;
  }
  return cert;
}

}  // namespace ffmink
