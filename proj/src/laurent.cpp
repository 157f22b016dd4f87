#include "ffmink/laurent.hpp"

#include <algorithm>
#include <map>

#include "ffmink/errors.hpp"
#include "textio.hpp"

namespace ffmink {

namespace {

int add_exp(int v, int m) { return (v == kMinusInf || m == kMinusInf) ? kMinusInf : v + m; }

}  // namespace

Laurent Laurent::monomial(const GF& f, Fe c, int k) {
  Laurent r(f);
  if (c != 0) {
    r.base_ = k;
    r.c_ = {c};
  }
  return r;
}

Laurent Laurent::from_poly(const Poly& p) {
  Laurent r(p.field());
  r.c_ = p.coeffs();
  r.base_ = 0;
  r.normalize();
  return r;
}

Laurent Laurent::from_coeffs(const GF& f, int base, std::vector<Fe> coeffs, int order) {
  Laurent r(f);
  r.base_ = base;
  r.c_ = std::move(coeffs);
  r.order_ = order;
  r.normalize();
  return r;
}

Laurent Laurent::big_o(const GF& f, int order) {
  Laurent r(f);
  r.order_ = order;
  return r;
}

const GF& Laurent::field() const {
  if (!f_) fail(Errc::InvalidArgument, "Laurent number has no field");
  return *f_;
}

void Laurent::normalize() {
  if (order_ != kMinusInf && !c_.empty() && base_ <= order_) {
    std::size_t drop = std::min<std::size_t>(c_.size(), std::size_t(order_ - base_ + 1));
    c_.erase(c_.begin(), c_.begin() + drop);
    base_ += int(drop);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead_zeros = 0;
  while (lead_zeros < c_.size() && c_[lead_zeros] == 0) ++lead_zeros;
  if (lead_zeros) {
    c_.erase(c_.begin(), c_.begin() + lead_zeros);
    base_ += int(lead_zeros);
  }
  if (c_.empty()) base_ = 0;
}

int Laurent::rho() const {
  if (c_.empty()) {
    if (is_exact()) fail(Errc::UnknownLeadingTerm, "degree of exact zero");
    fail(Errc::UnknownLeadingTerm, "no certified leading term above O(x^" + std::to_string(order_) + ")");
  }
  return base_ + int(c_.size()) - 1;
}

int Laurent::vbound() const {
  if (!c_.empty()) return base_ + int(c_.size()) - 1;
  return order_;
}

Fe Laurent::lead() const {
  if (c_.empty()) fail(Errc::UnknownLeadingTerm, "leading coefficient unavailable");
  return c_.back();
}

Fe Laurent::coeff(int k) const {
  if (!is_exact() && k <= order_)
    fail(Errc::PrecisionExhausted, "coefficient of x^" + std::to_string(k) + " is below the precision floor");
  if (k < base_ || k >= base_ + int(c_.size())) return 0;
  return c_[k - base_];
}

Laurent Laurent::unit_part() const { return shifted(-rho()); }

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  if (!r.c_.empty()) r.base_ += k;
  if (!r.is_exact()) r.order_ += k;
  return r;
}

Laurent Laurent::scaled(Fe c) const {
  Laurent r = *this;
  for (auto& v : r.c_) v = f_->mul(v, c);
  r.normalize();
  return r;
}

Laurent Laurent::truncated(int ord) const {
  Laurent r = *this;
  r.order_ = std::max(order_, ord);
  r.normalize();
  return r;
}

Laurent Laurent::exact_truncation(int ord) const {
  Laurent r = *this;
  r.order_ = std::max(order_, ord);
  r.normalize();
  r.order_ = kMinusInf;
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& v : r.c_) v = f_->neg(v);
  return r;
}

static Laurent add_impl(const Laurent& a, const Laurent& b, bool subtract) {
  Laurent r = a;
  if (!a.has_field()) {
    r = subtract ? -b : b;
    return r;
  }
  if (!b.has_field()) return r;
  r.add_scaled(b, subtract ? a.field().neg(1) : Fe(1), 0);
  return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) { return add_impl(a, b, false); }
Laurent operator-(const Laurent& a, const Laurent& b) { return add_impl(a, b, true); }

void Laurent::add_scaled(const Laurent& g, Fe c, int k) {
  if (!g.f_) return;
  if (!f_) f_ = g.f_;
  const int g_order = g.is_exact() ? kMinusInf : g.order_ + k;
  const int ord = std::max(order_, g_order);
  if (c == 0 || g.c_.empty()) {
    order_ = ord;
    normalize();
    return;
  }
  const int g_base = g.base_ + k;
  const int g_top = g_base + int(g.c_.size()) - 1;
  int lo = c_.empty() ? g_base : std::min(base_, g_base);
  int hi = c_.empty() ? g_top : std::max(base_ + int(c_.size()) - 1, g_top);
  if (ord != kMinusInf) lo = std::max(lo, ord + 1);
  if (hi < lo) {
    c_.clear();
    order_ = ord;
    normalize();
    return;
  }
  std::vector<Fe> out(std::size_t(hi - lo + 1), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    int e = base_ + int(i);
    if (e >= lo && e <= hi) out[e - lo] = c_[i];
  }
  for (std::size_t i = 0; i < g.c_.size(); ++i) {
    int e = g_base + int(i);
    if (e >= lo && e <= hi) out[e - lo] = f_->add(out[e - lo], f_->mul(c, g.c_[i]));
  }
  c_ = std::move(out);
  base_ = lo;
  order_ = ord;
  normalize();
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (!a.f_) return Laurent();
  if (!b.f_) return Laurent();
  const GF& f = *a.f_;
  if (a.is_exact_zero() || b.is_exact_zero()) return Laurent(f);
  const int ord = std::max(add_exp(a.vbound(), b.order_), add_exp(b.vbound(), a.order_));
  Laurent r(f);
  r.order_ = ord;
  if (a.c_.empty() || b.c_.empty()) {
    r.normalize();
    return r;
  }
  const int lo_full = a.base_ + b.base_;
  const int hi = lo_full + int(a.c_.size() + b.c_.size()) - 2;
  const int lo = ord == kMinusInf ? lo_full : std::max(lo_full, ord + 1);
  if (hi < lo) {
    r.normalize();
    return r;
  }
  std::vector<Fe> out(std::size_t(hi - lo + 1), 0);
  const int nb = int(b.c_.size());
  for (int i = 0; i < int(a.c_.size()); ++i) {
    Fe ai = a.c_[i];
    if (ai == 0) continue;
    int ea = a.base_ + i;
    int jmin = std::max(0, lo - ea - b.base_);
    for (int j = jmin; j < nb; ++j) {
      Fe bj = b.c_[j];
      if (bj == 0) continue;
      int e = ea + b.base_ + j - lo;
      out[e] = f.add(out[e], f.mul(ai, bj));
    }
  }
  r.c_ = std::move(out);
  r.base_ = lo;
  r.normalize();
  return r;
}

bool Laurent::is_polynomial() const {
  return is_exact() && (c_.empty() || base_ >= 0);
}

Poly Laurent::poly_part() const {
  if (!is_exact() && order_ >= 0)
    fail(Errc::PrecisionExhausted, "polynomial part not determined at O(x^" + std::to_string(order_) + ")");
  std::vector<Fe> v;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    int e = base_ + int(i);
    if (e < 0) continue;
    if (v.size() <= std::size_t(e)) v.resize(e + 1, 0);
    v[e] = c_[i];
  }
  return Poly(*f_, std::move(v));
}

Laurent Laurent::frac_part() const {
  Laurent r = *this;
  std::vector<Fe> v;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (base_ + int(i) < 0) v.push_back(c_[i]);
  r.c_ = std::move(v);
  r.normalize();
  return r;
}

bool Laurent::is_integral_to_precision() const {
  if (!is_exact() && order_ >= 0) return false;
  return c_.empty() || base_ >= 0;
}

bool operator==(const Laurent& a, const Laurent& b) {
  if (a.f_ && b.f_ && a.f_ != b.f_) return false;
  return a.order_ == b.order_ && a.c_ == b.c_ && (a.c_.empty() || a.base_ == b.base_);
}

std::string Laurent::to_string() const {
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += "+";
    s += detail::monomial_string(*f_, c_[i], base_ + int(i));
  }
  if (!is_exact()) {
    if (!s.empty()) s += "+";
    s += order_ == 0 ? std::string("O(1)") : "O(" + detail::monomial_string(*f_, 1, order_) + ")";
  }
  if (s.empty()) s = "0";
  return s;
}

Laurent inv(const Laurent& f, int target_order) {
  if (f.is_exact_zero()) fail(Errc::DivisionByZero, "inverse of exact zero");
  if (!f.has_lead()) fail(Errc::PrecisionExhausted, "inverse of a value without certified leading term");
  const GF& F = f.field();
  const int r = f.rho();
  const auto& c = f.stored();
  if (f.is_exact() && c.size() == 1) {
    Laurent m = Laurent::monomial(F, F.inv(c[0]), -r);
    return target_order == kMinusInf ? m : m.truncated(target_order);
  }
  int out_order = target_order;
  if (!f.is_exact()) out_order = std::max(out_order, f.order() - 2 * r);
  if (out_order == kMinusInf)
    fail(Errc::InvalidArgument, "inverse of an exact series needs a target precision");
  // Unit part a_0 + a_1 x^-1 + ...: a_k = coefficient of x^(r-k).
  const int nterms = std::max(0, -r - out_order);
  auto a = [&](int k) -> Fe {
    int e = r - k;
    int idx = e - f.low_exponent();
    return (idx >= 0 && idx < int(c.size())) ? c[idx] : Fe(0);
  };
  std::vector<Fe> b(nterms, 0);
  const Fe a0inv = F.inv(a(0));
  for (int k = 0; k < nterms; ++k) {
    Fe s = k == 0 ? Fe(1) : Fe(0);
    for (int i = 1; i <= k; ++i) s = F.sub(s, F.mul(a(i), b[k - i]));
    b[k] = F.mul(s, a0inv);
  }
  // b_k multiplies x^(-r-k); store low exponent first.
  std::reverse(b.begin(), b.end());
  return Laurent::from_coeffs(F, -r - nterms + 1, std::move(b), out_order);
}

Laurent div(const Laurent& a, const Laurent& b, int target_order) {
  if (target_order == kMinusInf) return a * inv(b);
  if (a.is_exact_zero()) return a;
  // |a/b - a*inv(b)| <= |a| |inv(b) error|; pick the inverse precision accordingly.
  int need = target_order - a.vbound();
  return (a * inv(b, need)).truncated(target_order);
}

Laurent pow(const Laurent& f, int k, int target_order) {
  if (k < 0) return inv(pow(f, -k), target_order);
  Laurent r = Laurent::one(f.field());
  Laurent base = f;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return target_order == kMinusInf ? r : r.truncated(target_order);
}

Laurent laurent_add(const Laurent& a, const Laurent& b) {
  Laurent r = a + b;
  if (!r.has_lead() && !r.is_exact() && (a.has_lead() || b.has_lead()))
    fail(Errc::PrecisionExhausted, "cancellation consumed every stored coefficient");
  return r;
}

std::optional<int> abs_exponent(const Laurent& f) {
  if (f.is_exact_zero()) return std::nullopt;
  return f.rho();
}

Laurent parse_laurent(const GF& f, std::string_view text) {
  auto parsed = detail::parse_series(f, text);
  std::map<int, Fe> acc;
  for (const auto& t : parsed.terms) acc[t.exp] = f.add(acc[t.exp], t.coef);
  if (acc.empty()) return parsed.big_o ? Laurent::big_o(f, *parsed.big_o) : Laurent(f);
  int lo = acc.begin()->first, hi = acc.rbegin()->first;
  std::vector<Fe> c(std::size_t(hi - lo + 1), 0);
  for (auto [k, v] : acc) c[k - lo] = v;
  Laurent r = Laurent::from_coeffs(f, lo, std::move(c), parsed.big_o ? *parsed.big_o : kMinusInf);
  return r;
}

}  // namespace ffmink
