#include "extrans/lp.hpp"

#include "extrans/error.hpp"

namespace extrans {

namespace {

// Dense tableau. Row k < rows is a constraint with basic variable basis[k];
// the objective row holds reduced costs (we minimize -c, i.e. maximize c).
struct Tableau {
  int rows, cols;  // cols excludes the rhs
  std::vector<QVec> t;  // rows+1 rows, cols+1 entries (last = rhs)
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rational inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (int i = 0; i <= rows; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rational f = t[i][c];
      for (int j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Runs Bland-rule iterations on the objective row restricted to columns
  // < limit. Returns false when unbounded.
  bool run(int limit) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (t[rows][j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult simplex_maximize(const QMatrix& a, const QVec& b, const QVec& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  // phase one: artificials n..n+m-1
  Tableau tab{m, n + m, std::vector<QVec>(m + 1, QVec(n + m + 1, 0)), std::vector<int>(m)};
  for (int i = 0; i < m; ++i) {
    int sign = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) tab.t[i][j] = sign * a[i][j];
    tab.t[i][n + i] = 1;
    tab.t[i][n + m] = sign * b[i];
    tab.basis[i] = n + i;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n + m; ++j)
      if (j < n || j == n + m) tab.t[m][j] -= tab.t[i][j];
  tab.run(n + m);
  LpResult res;
  if (tab.t[m][n + m] != 0) return res;  // artificial sum stays positive

  // drive artificials out of the basis where possible
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (tab.t[i][j] != 0) {
        tab.pivot(i, j);
        break;
      }
  }
  // drop redundant rows still carrying an artificial, and artificial columns
  Tableau two{0, n, {}, {}};
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) continue;
    QVec row(tab.t[i].begin(), tab.t[i].begin() + n);
    row.push_back(tab.t[i][n + m]);
    two.t.push_back(std::move(row));
    two.basis.push_back(tab.basis[i]);
  }
  two.rows = static_cast<int>(two.t.size());
  QVec obj(n + 1, 0);
  for (int j = 0; j < n; ++j) obj[j] = -c[j];
  for (int i = 0; i < two.rows; ++i) {
    Rational f = obj[two.basis[i]];
    if (f == 0) continue;
    for (int j = 0; j <= n; ++j) obj[j] -= f * two.t[i][j];
  }
  two.t.push_back(std::move(obj));
  if (!two.run(n)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0);
  for (int i = 0; i < two.rows; ++i) res.x[two.basis[i]] = two.t[i][n];
  res.value = dot(c, res.x);
  return res;
}

Feasibility strict_cone_feasibility(const std::vector<QVec>& vectors, const QVec& target) {
  Feasibility out;
  if (vectors.empty()) {
    // the empty sum is 0
    if (is_zero(target)) {
      out.feasible = true;
      out.witness = QVec{};
    }
    return out;
  }
  const int n = static_cast<int>(vectors.size());
  const int r = static_cast<int>(target.size());
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != r)
      throw Error(ErrorCode::InvalidArgument, "strict_cone_feasibility: dimension mismatch");
  // a_i = s + y_i, s = sp - sm, s <= 1 via slack z.
  // columns: y_0..y_{n-1}, sp, sm, z
  const int cols = n + 3;
  QMatrix a(r + 1, QVec(cols, 0));
  QVec b(r + 1, 0);
  for (int k = 0; k < r; ++k) {
    Rational sum = 0;
    for (int i = 0; i < n; ++i) {
      a[k][i] = vectors[i][k];
      sum += vectors[i][k];
    }
    a[k][n] = sum;
    a[k][n + 1] = -sum;
    b[k] = target[k];
  }
  a[r][n] = 1;
  a[r][n + 1] = -1;
  a[r][n + 2] = 1;
  b[r] = 1;
  QVec c(cols, 0);
  c[n] = 1;
  c[n + 1] = -1;
  LpResult lp = simplex_maximize(a, b, c);
  if (lp.status != LpStatus::Optimal || lp.value <= 0) return out;
  QVec w(n);
  for (int i = 0; i < n; ++i) w[i] = lp.value + lp.x[i];
  out.feasible = true;
  out.witness = std::move(w);
  return out;
}

}  // namespace extrans
