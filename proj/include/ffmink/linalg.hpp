#pragma once

#include <optional>
#include <type_traits>
#include <vector>

#include "ffmink/laurent.hpp"
#include "ffmink/poly.hpp"

namespace ffmink {

using LVector = std::vector<Laurent>;

// Dense matrix over Laurent numbers or polynomials, row-major.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(const GF& f, int rows, int cols) : f_(&f), r_(rows), c_(cols), a_(std::size_t(rows) * cols, T(f)) {}

  static Matrix identity(const GF& f, int d) {
    Matrix m(f, d, d);
    for (int i = 0; i < d; ++i) m(i, i) = one(f);
    return m;
  }

  const GF& field() const { return *f_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

  std::vector<T> col(int j) const {
    std::vector<T> v;
    v.reserve(r_);
    for (int i = 0; i < r_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  void set_col(int j, const std::vector<T>& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(*a.f_, a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < b.c_; ++j) {
        T s(*a.f_);
        for (int k = 0; k < a.c_; ++k) s += a(i, k) * b(k, j);
        m(i, j) = s;
      }
    return m;
  }
  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out;
    for (int i = 0; i < r_; ++i) {
      T s(*f_);
      for (int k = 0; k < c_; ++k) s += (*this)(i, k) * v[k];
      out.push_back(s);
    }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  static T one(const GF& f) {
    if constexpr (std::is_same_v<T, Laurent>)
      return Laurent::one(f);
    else
      return Poly::constant(f, 1);
  }
  const GF* f_ = nullptr;
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using LMatrix = Matrix<Laurent>;
using PMatrix = Matrix<Poly>;

Laurent det(const LMatrix& m);
Poly det(const PMatrix& m);
LMatrix adjugate(const LMatrix& m);
PMatrix adjugate(const PMatrix& m);
LMatrix to_laurent(const PMatrix& m);
LMatrix transpose(const LMatrix& m);

// Inverse of a matrix in GL_d(R) (det a nonzero constant); throws otherwise.
PMatrix inverse_unimodular(const PMatrix& m);
bool is_identity(const PMatrix& m);

// Polynomial matrix extracted from a Laurent matrix whose entries are integral
// to precision; nullopt if some entry has a known nonzero negative-exponent
// coefficient or insufficient precision.
std::optional<PMatrix> integral_part(const LMatrix& m);

// Linear algebra over F_q on small dense matrices (row-major vectors).
using FqMatrix = std::vector<std::vector<Fe>>;
// A nonzero vector lambda with sum_j lambda_j * col_j = 0, if one exists.
std::optional<std::vector<Fe>> fq_column_relation(const GF& f, const FqMatrix& m);
int fq_rank(const GF& f, FqMatrix m);
// Basis of the kernel {v : m v = 0}.
std::vector<std::vector<Fe>> fq_kernel(const GF& f, FqMatrix m, int ncols);

}  // namespace ffmink
