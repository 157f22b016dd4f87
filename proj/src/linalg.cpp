#include "ffmink/linalg.hpp"

#include <numeric>

#include "ffmink/errors.hpp"

namespace ffmink {

namespace {

template <class T>
T det_rec(const Matrix<T>& m, std::vector<int>& rows_left, int col) {
  const GF& f = m.field();
  const int n = m.cols();
  if (col == n) {
    if constexpr (std::is_same_v<T, Laurent>)
      return Laurent::one(f);
    else
      return Poly::constant(f, 1);
  }
  T total(f);
  int sign_pos = 0;
  for (std::size_t k = 0; k < rows_left.size(); ++k) {
    int r = rows_left[k];
    if (r < 0) continue;
    const T& entry = m(r, col);
    bool zero;
    if constexpr (std::is_same_v<T, Laurent>)
      zero = entry.is_exact_zero();
    else
      zero = entry.is_zero();
    if (!zero) {
      rows_left[k] = -1;
      T minor = det_rec(m, rows_left, col + 1);
      rows_left[k] = r;
      T term = entry * minor;
      if (sign_pos % 2)
        total -= term;
      else
        total += term;
    }
    ++sign_pos;
  }
  return total;
}

template <class T>
T det_generic(const Matrix<T>& m) {
  if (m.rows() != m.cols()) fail(Errc::InvalidArgument, "determinant of a non-square matrix");
  std::vector<int> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return det_rec(m, rows, 0);
}

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& m, int skip_r, int skip_c) {
  const int n = m.rows();
  Matrix<T> s(m.field(), n - 1, n - 1);
  for (int i = 0, si = 0; i < n; ++i) {
    if (i == skip_r) continue;
    for (int j = 0, sj = 0; j < n; ++j) {
      if (j == skip_c) continue;
      s(si, sj++) = m(i, j);
    }
    ++si;
  }
  return s;
}

template <class T>
Matrix<T> adjugate_generic(const Matrix<T>& m) {
  const int n = m.rows();
  Matrix<T> a(m.field(), n, n);
  if (n == 1) {
    if constexpr (std::is_same_v<T, Laurent>)
      a(0, 0) = Laurent::one(m.field());
    else
      a(0, 0) = Poly::constant(m.field(), 1);
    return a;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T c = det_generic(minor_matrix(m, i, j));
      a(j, i) = (i + j) % 2 ? -c : c;
    }
  return a;
}

}  // namespace

Laurent det(const LMatrix& m) { return det_generic(m); }
Poly det(const PMatrix& m) { return det_generic(m); }
LMatrix adjugate(const LMatrix& m) { return adjugate_generic(m); }
PMatrix adjugate(const PMatrix& m) { return adjugate_generic(m); }

LMatrix to_laurent(const PMatrix& m) {
  LMatrix r(m.field(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Laurent::from_poly(m(i, j));
  return r;
}

LMatrix transpose(const LMatrix& m) {
  LMatrix r(m.field(), m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

PMatrix inverse_unimodular(const PMatrix& m) {
  Poly d = det(m);
  if (d.degree() != 0) fail(Errc::InvalidArgument, "matrix is not in GL_d(R)");
  Fe dinv = m.field().inv(d.lead());
  PMatrix a = adjugate(m);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).scaled(dinv);
  return a;
}

bool is_identity(const PMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Poly& e = m(i, j);
      if (i == j ? !(e.degree() == 0 && e.lead() == 1) : !e.is_zero()) return false;
    }
  return true;
}

std::optional<PMatrix> integral_part(const LMatrix& m) {
  PMatrix p(m.field(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integral_to_precision()) return std::nullopt;
      p(i, j) = m(i, j).poly_part();
    }
  return p;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> fq_echelon(const GF& f, FqMatrix& m, int ncols) {
  std::vector<int> pivots;
  int row = 0;
  const int nrows = int(m.size());
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int piv = -1;
    for (int i = row; i < nrows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    Fe inv = f.inv(m[row][col]);
    for (auto& v : m[row]) v = f.mul(v, inv);
    for (int i = 0; i < nrows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Fe c = m[i][col];
      for (int j = 0; j < ncols; ++j) m[i][j] = f.sub(m[i][j], f.mul(c, m[row][j]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Fe>> fq_kernel(const GF& f, FqMatrix m, int ncols) {
  auto pivots = fq_echelon(f, m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Fe>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fe> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Fe>> fq_column_relation(const GF& f, const FqMatrix& m) {
  if (m.empty()) return std::nullopt;
  auto k = fq_kernel(f, m, int(m[0].size()));
  if (k.empty()) return std::nullopt;
  return k.front();
}

int fq_rank(const GF& f, FqMatrix m) {
  if (m.empty()) return 0;
  return int(fq_echelon(f, m, int(m[0].size())).size());
}

}  // namespace ffmink
