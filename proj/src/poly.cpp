#include "ffmink/poly.hpp"

#include <algorithm>
#include <map>

#include "ffmink/errors.hpp"
#include "textio.hpp"

namespace ffmink {

Poly::Poly(const GF& f, std::vector<Fe> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const GF& f, Fe c) { return Poly(f, {c}); }

Poly Poly::monomial(const GF& f, Fe c, int k) {
  if (k < 0) fail(Errc::InvalidArgument, "negative exponent in polynomial");
  std::vector<Fe> v(k + 1, 0);
  v[k] = c;
  return Poly(f, std::move(v));
}

const GF& Poly::field() const {
  if (!f_) fail(Errc::InvalidArgument, "polynomial has no field");
  return *f_;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool Poly::divisible_by_xpow(int k) const {
  for (int i = 0; i < k && i < int(c_.size()); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = f_->neg(c);
  return r;
}

Poly& Poly::operator+=(const Poly& g) {
  if (!f_) f_ = g.f_;
  if (g.c_.size() > c_.size()) c_.resize(g.c_.size(), 0);
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] = f_->add(c_[i], g.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& g) {
  if (!f_) f_ = g.f_;
  if (g.c_.size() > c_.size()) c_.resize(g.c_.size(), 0);
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] = f_->sub(c_[i], g.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const GF* f = a.f_ ? a.f_ : b.f_;
  Poly r;
  r.f_ = f;
  if (a.c_.empty() || b.c_.empty()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r.c_[i + j] = f->add(r.c_[i + j], f->mul(a.c_[i], b.c_[j]));
  }
  r.trim();
  return r;
}

Poly Poly::scaled(Fe c) const {
  Poly r = *this;
  for (auto& v : r.c_) v = f_->mul(v, c);
  r.trim();
  return r;
}

Poly Poly::shifted(int k) const {
  if (k < 0) fail(Errc::InvalidArgument, "negative shift of polynomial");
  Poly r = *this;
  if (!r.c_.empty()) r.c_.insert(r.c_.begin(), std::size_t(k), Fe(0));
  return r;
}

Poly Poly::derivative() const {
  Poly r(*f_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = f_->mul(f_->from_int((long long)i), c_[i]);
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(f_->inv(c_.back()));
}

Poly Poly::pow(int k) const {
  Poly r = Poly::constant(*f_, 1);
  Poly b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

Fe Poly::eval(Fe t) const {
  Fe r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, t), c_[i]);
  return r;
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += "+";
    s += detail::monomial_string(*f_, c_[i], int(i));
  }
  return s;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  const GF& f = b.field();
  Poly r = a;
  if (!r.has_field()) r = Poly(f);
  std::vector<Fe> quot;
  const int db = b.degree();
  const Fe linv = f.inv(b.lead());
  std::vector<Fe> rc = r.coeffs();
  if (int(rc.size()) - 1 >= db) quot.assign(rc.size() - db, 0);
  for (int k = int(rc.size()) - 1; k >= db; --k) {
    Fe c = rc[k];
    if (c == 0) continue;
    Fe m = f.mul(c, linv);
    quot[k - db] = m;
    for (int i = 0; i <= db; ++i) rc[k - db + i] = f.sub(rc[k - db + i], f.mul(m, b.coeff(i)));
  }
  return {Poly(f, std::move(quot)), Poly(f, std::move(rc))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::optional<int> abs_exponent(const Poly& f) {
  if (f.is_zero()) return std::nullopt;
  return f.degree();
}

Poly parse_poly(const GF& f, std::string_view text) {
  auto parsed = detail::parse_series(f, text);
  if (parsed.big_o) fail(Errc::ParseError, "O-term not allowed in a polynomial");
  std::map<int, Fe> acc;
  for (const auto& t : parsed.terms) {
    if (t.exp < 0) fail(Errc::ParseError, "negative exponent in a polynomial");
    acc[t.exp] = f.add(acc[t.exp], t.coef);
  }
  std::vector<Fe> c;
  if (!acc.empty()) c.assign(acc.rbegin()->first + 1, 0);
  for (auto [k, v] : acc) c[k] = v;
  return Poly(f, std::move(c));
}

std::vector<Poly> monic_polys(const GF& f, int k) {
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= f.q();
  std::vector<Poly> out;
  out.reserve(std::size_t(count));
  for (long long code = 0; code < count; ++code) {
    Poly p = poly_from_code(f, code, k);
    out.push_back(p + Poly::monomial(f, 1, k));
  }
  return out;
}

Poly poly_from_code(const GF& f, long long code, int ncoeffs) {
  std::vector<Fe> c(std::max(ncoeffs, 0), 0);
  for (int i = 0; i < ncoeffs; ++i) {
    c[i] = Fe(code % f.q());
    code /= f.q();
  }
  return Poly(f, std::move(c));
}

}  // namespace ffmink
