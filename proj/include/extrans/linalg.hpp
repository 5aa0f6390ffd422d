#pragma once

#include <optional>
#include <vector>

#include "extrans/rational.hpp"

namespace extrans {

/// Dense row-major integer matrix.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Integer> entries;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols);

  Integer& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
  const Integer& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * cols + j];
  }

  IntVec row(int i) const;
  IntVec column(int j) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Integer determinant(const IntMatrix& m);

using QMatrix = std::vector<QVec>;  // list of rows

/// In-place reduced row echelon form; returns pivot columns. Pivots are taken
/// on the leftmost available column, so earlier columns are preferred.
std::vector<int> rref(QMatrix& m, int cols);
int rank(const QMatrix& m, int cols);
/// Basis of {x : m x = 0}.
QMatrix nullspace(const QMatrix& m, int cols);
/// Some solution of a x = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMatrix& a, const QVec& b, int cols);
std::optional<QMatrix> inverse(const QMatrix& m);
QVec multiply(const QMatrix& m, const QVec& x);
QMatrix transpose(const QMatrix& m, int cols);
/// Row space basis in RREF (canonical for the subspace).
QMatrix row_space(const QMatrix& m, int cols);
/// Indices of the lexicographically-first maximal independent subset.
std::vector<int> independent_subset(const std::vector<QVec>& vectors, int dim);

}  // namespace extrans
