#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffmink/field.hpp"

namespace ffmink {

// Degree of the zero polynomial and valuation of exact zero.
inline constexpr int kMinusInf = std::numeric_limits<int>::min() / 4;

// Element of R = F_q[x], coefficients lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const GF& f) : f_(&f) {}
  Poly(const GF& f, std::vector<Fe> coeffs);

  static Poly constant(const GF& f, Fe c);
  static Poly monomial(const GF& f, Fe c, int k);
  static Poly x(const GF& f) { return monomial(f, 1, 1); }

  const GF& field() const;
  bool has_field() const { return f_ != nullptr; }
  const std::vector<Fe>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kMinusInf : int(c_.size()) - 1; }
  Fe lead() const { return c_.empty() ? Fe(0) : c_.back(); }
  Fe coeff(int k) const { return k >= 0 && k < int(c_.size()) ? c_[k] : Fe(0); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  // True when x^k divides this polynomial.
  bool divisible_by_xpow(int k) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& g);
  Poly& operator-=(const Poly& g);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(Fe c) const;
  Poly shifted(int k) const;  // multiply by x^k, k >= 0
  Poly derivative() const;
  Poly monic() const;
  Poly pow(int k) const;
  Fe eval(Fe t) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  // Total order: by degree, then coefficients from the top down.
  friend bool operator<(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();
  friend Poly parse_poly(const GF&, std::string_view);
  const GF* f_ = nullptr;
  std::vector<Fe> c_;
};

// Euclidean division; throws DivisionByZero for b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly gcd(Poly a, Poly b);  // monic gcd, or zero

// |f| = q^deg f; nullopt means f = 0.
std::optional<int> abs_exponent(const Poly& f);

Poly parse_poly(const GF& f, std::string_view text);

// Monic polynomials of degree k in increasing order of coefficient code.
std::vector<Poly> monic_polys(const GF& f, int k);
// Every polynomial of degree <= k (including 0), enumerated by coefficient code.
Poly poly_from_code(const GF& f, long long code, int ncoeffs);

}  // namespace ffmink
