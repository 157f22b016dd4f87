#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffmink/field.hpp"
#include "ffmink/poly.hpp"

namespace ffmink {

// Truncated element of F_q((1/x)).
//
// The value is sum_k c_k x^k over finitely many stored k, plus an unknown
// remainder O(x^order): every coefficient at an exponent <= order is unknown.
// Exact values have no unknown part. Only nonzero coefficients above the
// order are stored, so a value with nothing stored is either exact zero or an
// uncertified O(x^order).
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(const GF& f) : f_(&f) {}

  static Laurent zero(const GF& f) { return Laurent(f); }
  static Laurent one(const GF& f) { return monomial(f, 1, 0); }
  static Laurent monomial(const GF& f, Fe c, int k);
  static Laurent from_poly(const Poly& p);
  // Coefficients for exponents base, base+1, ...; order == kMinusInf means exact.
  static Laurent from_coeffs(const GF& f, int base, std::vector<Fe> coeffs, int order = kMinusInf);
  static Laurent big_o(const GF& f, int order);

  const GF& field() const;
  bool has_field() const { return f_ != nullptr; }
  bool is_exact() const { return order_ == kMinusInf; }
  int order() const { return order_; }
  bool is_exact_zero() const { return is_exact() && c_.empty(); }
  // Nonzero with a certified leading term.
  bool has_lead() const { return !c_.empty(); }
  // rho(f) = log_q |f|; throws UnknownLeadingTerm unless has_lead().
  int rho() const;
  // An upper bound for log_q |f| that is always valid (kMinusInf for exact zero).
  int vbound() const;
  Fe lead() const;
  // Coefficient of x^k; throws PrecisionExhausted when k <= order.
  Fe coeff(int k) const;
  int low_exponent() const { return base_; }
  const std::vector<Fe>& stored() const { return c_; }

  Laurent unit_part() const;  // pi(f) = f / x^rho(f)
  Laurent shifted(int k) const;
  Laurent scaled(Fe c) const;
  // Forget all coefficients at exponents <= ord.
  Laurent truncated(int ord) const;
  // Exact value of the stored terms with exponents > ord (no O-term).
  Laurent exact_truncation(int ord) const;

  Laurent operator-() const;
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }
  // this += c * x^k * g
  void add_scaled(const Laurent& g, Fe c, int k);

  // Exact and free of negative exponents.
  bool is_polynomial() const;
  // Part with exponents >= 0 / < 0 of an exact value.
  Poly poly_part() const;
  Laurent frac_part() const;
  // All known coefficients at negative exponents vanish and order < 0.
  bool is_integral_to_precision() const;

  friend bool operator==(const Laurent& a, const Laurent& b);
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void normalize();
  const GF* f_ = nullptr;
  int base_ = 0;
  std::vector<Fe> c_;
  int order_ = kMinusInf;
};

// 1/f known down to max(target_order, intrinsic) where the intrinsic order of
// an inexact f is order(f) - 2 rho(f). Exact non-monomial inputs need a finite
// target. Errors: DivisionByZero, PrecisionExhausted.
Laurent inv(const Laurent& f, int target_order = kMinusInf);
Laurent div(const Laurent& a, const Laurent& b, int target_order = kMinusInf);
Laurent pow(const Laurent& f, int k, int target_order = kMinusInf);

// Addition that refuses to lose a certified leading term to cancellation.
Laurent laurent_add(const Laurent& a, const Laurent& b);

// |f| = q^rho; nullopt for exact zero; throws UnknownLeadingTerm otherwise.
std::optional<int> abs_exponent(const Laurent& f);

Laurent parse_laurent(const GF& f, std::string_view text);

}  // namespace ffmink
