#include "ffmink/field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "ffmink/errors.hpp"

namespace ffmink {

namespace {

// Polynomials over F_p as digit vectors, low first.
std::vector<int> mulmod_p(const std::vector<int>& a, const std::vector<int>& b,
                          const std::vector<int>& m, int p) {
  std::vector<int> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  const std::size_t e = m.size() - 1;
  for (std::size_t k = r.size(); k-- > e;) {
    int c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= e; ++i) r[k - e + i] = ((r[k - e + i] - c * m[i]) % p + p) % p;
  }
  r.resize(e);
  return r;
}

bool has_factor_of_degree(const std::vector<int>& f, int deg, int p) {
  // Trial division of f by every monic polynomial of the given degree.
  long long count = 1;
  for (int i = 0; i < deg; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    std::vector<int> g(deg + 1, 0);
    long long c = code;
    for (int i = 0; i < deg; ++i) {
      g[i] = int(c % p);
      c /= p;
    }
    g[deg] = 1;
    std::vector<int> r = f;
    for (std::size_t k = r.size(); k-- > std::size_t(deg);) {
      int lc = r[k];
      if (lc == 0) continue;
      for (int i = 0; i <= deg; ++i) r[k - deg + i] = ((r[k - deg + i] - lc * g[i]) % p + p) % p;
    }
    bool zero = true;
    for (int i = 0; i < deg; ++i) zero = zero && r[i] == 0;
    if (zero) return true;
  }
  return false;
}

std::vector<int> find_irreducible(int p, int e) {
  long long count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    std::vector<int> f(e + 1, 0);
    long long c = code;
    for (int i = 0; i < e; ++i) {
      f[i] = int(c % p);
      c /= p;
    }
    f[e] = 1;
    bool irreducible = true;
    for (int k = 1; 2 * k <= e && irreducible; ++k) irreducible = !has_factor_of_degree(f, k, p);
    if (irreducible) return f;
  }
  fail(Errc::InvalidArgument, "no irreducible polynomial found");
}

}  // namespace

GF::GF(int q) : q_(q) {
  if (q < 2 || q > 256) fail(Errc::InvalidArgument, "field size must be in [2, 256]");
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) fail(Errc::InvalidArgument, "q = " + std::to_string(q) + " is not a prime power");
  p_ = p;
  e_ = e;
  modulus_ = e == 1 ? std::vector<int>{0, 1} : find_irreducible(p, e);

  auto digits = [&](int a) {
    std::vector<int> v(e, 0);
    for (int i = 0; i < e; ++i) {
      v[i] = a % p;
      a /= p;
    }
    return v;
  };
  auto encode = [&](const std::vector<int>& v) {
    int a = 0;
    for (int i = e; i-- > 0;) a = a * p + v[i];
    return a;
  };

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    std::vector<int> na(e);
    for (int i = 0; i < e; ++i) na[i] = (p - da[i]) % p;
    neg_[a] = Fe(encode(na));
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      std::vector<int> s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = Fe(encode(s));
      if (e == 1)
        mul_[a * q + b] = Fe(a * b % p);
      else
        mul_[a * q + b] = Fe(encode(mulmod_p(da, db, modulus_, p)));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = Fe(b);
}

const GF& GF::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GF>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<GF>(new GF(q))).first;
  return *it->second;
}

Fe GF::inv(Fe a) const {
  if (a == 0) fail(Errc::DivisionByZero, "inverse of 0 in F_q");
  return inv_[a];
}

Fe GF::pow(Fe a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Fe r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Fe GF::from_int(long long n) const {
  long long m = ((n % p_) + p_) % p_;
  return Fe(m);
}

}  // namespace ffmink
