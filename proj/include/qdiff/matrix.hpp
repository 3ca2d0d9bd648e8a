#pragma once

#include "qdiff/scalar.hpp"

#include <vector>

namespace qdiff {

// Dense matrix of exact scalars; just enough linear algebra for basis
// changes and R-matrix inversion.
struct ScalarMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Scalar> a;

  ScalarMatrix() = default;
  ScalarMatrix(size_t r, size_t c, ScalarField f)
      : rows(r), cols(c), a(r * c, Scalar::zero(f)) {}

  static ScalarMatrix identity(size_t n, ScalarField f) {
    ScalarMatrix m(n, n, f);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }

  Scalar& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Scalar& at(size_t i, size_t j) const { return a[i * cols + j]; }

  ScalarMatrix operator*(const ScalarMatrix& r) const {
    if (cols != r.rows) throw error("matrix shape mismatch");
    ScalarField f = a.empty() ? ScalarField::rational_q() : a[0].field();
    ScalarMatrix out(rows, r.cols, f);
    for (size_t i = 0; i < rows; ++i)
      for (size_t k = 0; k < cols; ++k) {
        if (at(i, k).is_zero()) continue;
        for (size_t j = 0; j < r.cols; ++j)
          out.at(i, j) += at(i, k) * r.at(k, j);
      }
    return out;
  }

  bool operator==(const ScalarMatrix& r) const {
    return rows == r.rows && cols == r.cols && a == r.a;
  }

  // Gauss-Jordan inverse; throws on a singular matrix.
  ScalarMatrix inverse() const {
    if (rows != cols) throw error("inverse of non-square matrix");
    ScalarField f = a.empty() ? ScalarField::rational_q() : a[0].field();
    ScalarMatrix m(*this);
    ScalarMatrix inv = identity(rows, f);
    for (size_t col = 0; col < cols; ++col) {
      size_t piv = col;
      while (piv < rows && m.at(piv, col).is_zero()) ++piv;
      if (piv == rows) throw error("singular matrix");
      if (piv != col)
        for (size_t j = 0; j < cols; ++j) {
          std::swap(m.at(piv, j), m.at(col, j));
          std::swap(inv.at(piv, j), inv.at(col, j));
        }
      Scalar d = m.at(col, col).inverse();
      for (size_t j = 0; j < cols; ++j) {
        m.at(col, j) *= d;
        inv.at(col, j) *= d;
      }
      for (size_t i = 0; i < rows; ++i) {
        if (i == col || m.at(i, col).is_zero()) continue;
        Scalar c = m.at(i, col);
        for (size_t j = 0; j < cols; ++j) {
          m.at(i, j) -= c * m.at(col, j);
          inv.at(i, j) -= c * inv.at(col, j);
        }
      }
    }
    return inv;
  }
};

}  // namespace qdiff
