#include "textio.hpp"

#include <cctype>

#include "ffmink/errors.hpp"

namespace ffmink::detail {

namespace {

struct Cursor {
  std::string s;
  std::size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i;
    return true;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::ParseError, msg + " at position " + std::to_string(i) + " in \"" + s + "\"");
  }
  long long number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected digit");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s[i++] - '0');
      if (v > (1LL << 40)) error("number too large");
    }
    return v;
  }
  int exponent() {
    // after 'x': optional ^[-]digits
    if (!eat('^')) return 1;
    bool neg = eat('-');
    long long v = number();
    return int(neg ? -v : v);
  }
};

Fe coefficient(const GF& f, long long n, const Cursor& cur) {
  if (f.e() == 1) return f.from_int(n);
  if (n >= f.q()) cur.error("coefficient code out of range");
  return Fe(n);
}

}  // namespace

ParsedSeries parse_series(const GF& f, std::string_view text) {
  Cursor cur;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) cur.s.push_back(c);
  if (cur.s.empty()) cur.error("empty input");
  ParsedSeries out;
  bool first = true;
  while (!cur.done()) {
    bool neg = false;
    if (cur.eat('+')) {
    } else if (cur.eat('-')) {
      neg = true;
    } else if (!first) {
      cur.error("expected + or -");
    }
    first = false;
    if (cur.eat('O')) {
      if (neg || out.big_o) cur.error("misplaced O-term");
      if (!cur.eat('(')) cur.error("expected (");
      int k = 0;
      if (cur.eat('x')) {
        k = cur.exponent();
      } else if (cur.number() != 1) {
        cur.error("expected O(1) or O(x^k)");
      }
      if (!cur.eat(')')) cur.error("expected )");
      out.big_o = k;
      if (!cur.done()) cur.error("O-term must come last");
      break;
    }
    long long n = 1;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      n = cur.number();
      have_number = true;
      cur.eat('*');
    }
    int k = 0;
    if (cur.eat('x')) {
      k = cur.exponent();
    } else if (!have_number) {
      cur.error("expected term");
    }
    Fe c = coefficient(f, n, cur);
    if (neg) c = f.neg(c);
    out.terms.push_back({c, k});
  }
  return out;
}

std::string monomial_string(const GF& f, Fe c, int k) {
  std::string s;
  if (c != 1 || k == 0) s = f.to_string(c);
  if (k == 0) return s;
  s += "x";
  if (k != 1) s += "^" + std::to_string(k);
  return s;
}

}  // namespace ffmink::detail
