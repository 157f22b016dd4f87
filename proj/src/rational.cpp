#include "ffmink/rational.hpp"

#include <cmath>

namespace ffmink {

long long floor_div(const Rational& r) {
  long long n = r.numerator(), d = r.denominator();
  long long q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

long long ceil_div(const Rational& r) { return -floor_div(-r); }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return double(r.numerator()) / double(r.denominator()); }

Rational ceil_to_denominator(double x, long long den) {
  return Rational((long long)std::ceil(x * double(den) - 1e-9), den);
}

}  // namespace ffmink
