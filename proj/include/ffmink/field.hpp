#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffmink {

// Field elements are encoded as integers 0..q-1: the base-p digits are the
// coordinates in the power basis 1, alpha, ..., alpha^(e-1).
using Fe = std::uint8_t;

class GF {
 public:
  // Interned instance for q = p^e <= 256; throws InvalidArgument otherwise.
  static const GF& get(int q);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  // Coefficients of the defining polynomial of alpha over F_p, low first, monic.
  const std::vector<int>& modulus() const { return modulus_; }

  Fe add(Fe a, Fe b) const { return add_[a * q_ + b]; }
  Fe sub(Fe a, Fe b) const { return add_[a * q_ + neg_[b]]; }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe mul(Fe a, Fe b) const { return mul_[a * q_ + b]; }
  Fe inv(Fe a) const;  // throws DivisionByZero on 0
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, long long k) const;
  // Image of an integer under Z -> F_p -> F_q.
  Fe from_int(long long n) const;

  std::string to_string(Fe a) const { return std::to_string(int(a)); }

 private:
  explicit GF(int q);
  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<Fe> add_, mul_, neg_, inv_;
};

}  // namespace ffmink
