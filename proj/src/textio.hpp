#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffmink/field.hpp"

namespace ffmink::detail {

struct Term {
  Fe coef;
  int exp;
};

struct ParsedSeries {
  std::vector<Term> terms;
  std::optional<int> big_o;  // exponent inside O(x^k)
};

// Parses sums such as "x^2+2x^-2+O(x^-10)". Coefficients are integers; for
// prime fields they are reduced mod p, otherwise they must be codes below q.
ParsedSeries parse_series(const GF& f, std::string_view text);

std::string monomial_string(const GF& f, Fe c, int k);

}  // namespace ffmink::detail
