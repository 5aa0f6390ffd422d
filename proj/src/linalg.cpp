#include "extrans/linalg.hpp"

#include "extrans/error.hpp"

namespace extrans {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw Error(ErrorCode::InvalidArgument, "IntMatrix: ragged rows");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::row(int i) const {
  return IntVec(entries.begin() + static_cast<std::ptrdiff_t>(i) * cols,
                entries.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols);
}

IntVec IntMatrix::column(int j) const {
  IntVec c(rows);
  for (int i = 0; i < rows; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw Error(ErrorCode::InvalidArgument, "IntMatrix product: shape mismatch");
  IntMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  // Bareiss fraction-free elimination.
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<int> rref(QMatrix& m, int cols) {
  std::vector<int> pivots;
  int r = 0;
  const int rows = static_cast<int>(m.size());
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

int rank(const QMatrix& m, int cols) {
  QMatrix copy = m;
  return static_cast<int>(rref(copy, cols).size());
}

QMatrix nullspace(const QMatrix& m, int cols) {
  QMatrix r = m;
  auto pivots = rref(r, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  QMatrix basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMatrix& a, const QVec& b, int cols) {
  QMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    QVec row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVec x(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  const int n = static_cast<int>(m.size());
  QMatrix aug(n, QVec(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug, 2 * n);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] >= n) return std::nullopt;
  QMatrix inv(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

QVec multiply(const QMatrix& m, const QVec& x) {
  QVec y;
  y.reserve(m.size());
  for (const auto& row : m) y.push_back(dot(row, x));
  return y;
}

QMatrix transpose(const QMatrix& m, int cols) {
  QMatrix t(cols, QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

QMatrix row_space(const QMatrix& m, int cols) {
  QMatrix r = m;
  rref(r, cols);
  return r;
}

std::vector<int> independent_subset(const std::vector<QVec>& vectors, int dim) {
  std::vector<int> chosen;
  QMatrix basis;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    basis.push_back(vectors[i]);
    if (rank(basis, dim) == static_cast<int>(basis.size()))
      chosen.push_back(static_cast<int>(i));
    else
      basis.pop_back();
  }
  return chosen;
}

}  // namespace extrans
