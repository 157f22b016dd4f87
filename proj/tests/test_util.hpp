#pragma once

#include <random>

#include "ffmink/laurent.hpp"
#include "ffmink/linalg.hpp"
#include "ffmink/poly.hpp"

namespace testutil {

using namespace ffmink;

inline Fe random_fe(const GF& f, std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> d(nonzero ? 1 : 0, f.q() - 1);
  return Fe(d(rng));
}

inline Poly random_poly(const GF& f, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> dd(-1, max_deg);
  int deg = dd(rng);
  std::vector<Fe> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_fe(f, rng, i == deg));
  return Poly(f, c);
}

// Exact Laurent polynomial with exponents in [lo, hi].
inline Laurent random_exact(const GF& f, std::mt19937_64& rng, int lo, int hi) {
  std::vector<Fe> c;
  for (int k = lo; k <= hi; ++k) c.push_back(random_fe(f, rng));
  return Laurent::from_coeffs(f, lo, c);
}

inline Laurent random_inexact(const GF& f, std::mt19937_64& rng, int lo, int hi, int order) {
  return random_exact(f, rng, lo, hi).truncated(order);
}

inline PMatrix random_pmatrix(const GF& f, std::mt19937_64& rng, int d, int max_deg) {
  PMatrix m(f, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = random_poly(f, rng, max_deg);
  return m;
}

}  // namespace testutil
