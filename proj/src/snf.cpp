#include "extrans/snf.hpp"

#include <algorithm>

#include "extrans/error.hpp"

namespace extrans {

namespace {

// Row and column operations applied simultaneously to the working matrix,
// the accumulated transforms, and their inverses.
struct Reducer {
  IntMatrix a, L, Linv, R, Rinv;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < a.cols; ++c) std::swap(a(i, c), a(j, c));
    for (int c = 0; c < L.cols; ++c) std::swap(L(i, c), L(j, c));
    for (int r = 0; r < Linv.rows; ++r) std::swap(Linv(r, i), Linv(r, j));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < a.rows; ++r) std::swap(a(r, i), a(r, j));
    for (int r = 0; r < R.rows; ++r) std::swap(R(r, i), R(r, j));
    for (int c = 0; c < Rinv.cols; ++c) std::swap(Rinv(i, c), Rinv(j, c));
  }
  // row_i += q * row_j
  void add_row(int i, int j, const Integer& q) {
    if (q == 0) return;
    for (int c = 0; c < a.cols; ++c) a(i, c) += q * a(j, c);
    for (int c = 0; c < L.cols; ++c) L(i, c) += q * L(j, c);
    for (int r = 0; r < Linv.rows; ++r) Linv(r, j) -= q * Linv(r, i);
  }
  // col_i += q * col_j
  void add_col(int i, int j, const Integer& q) {
    if (q == 0) return;
    for (int r = 0; r < a.rows; ++r) a(r, i) += q * a(r, j);
    for (int r = 0; r < R.rows; ++r) R(r, i) += q * R(r, j);
    for (int c = 0; c < Rinv.cols; ++c) Rinv(j, c) -= q * Rinv(i, c);
  }
  void negate_row(int i) {
    for (int c = 0; c < a.cols; ++c) a(i, c) = -a(i, c);
    for (int c = 0; c < L.cols; ++c) L(i, c) = -L(i, c);
    for (int r = 0; r < Linv.rows; ++r) Linv(r, i) = -Linv(r, i);
  }
};

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (int i = 0; i < std::min(S.rows, S.cols); ++i) d.push_back(S(i, i));
  return d;
}

SnfResult smith_normal_form(const IntMatrix& m) {
  Reducer red{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.rows),
              IntMatrix::identity(m.cols), IntMatrix::identity(m.cols)};
  IntMatrix& a = red.a;
  const int n = std::min(m.rows, m.cols);
  int t = 0;
  for (; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      int pi = -1, pj = -1;
      for (int i = t; i < a.rows; ++i)
        for (int j = t; j < a.cols; ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) pi = i, pj = j;
      if (pi < 0) goto done;
      red.swap_rows(t, pi);
      red.swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < a.rows; ++i) {
        red.add_row(i, t, -fdiv(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < a.cols; ++j) {
        red.add_col(j, t, -fdiv(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < a.rows && bad < 0; ++i)
        for (int j = t + 1; j < a.cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      red.add_row(t, bad, 1);
    }
    if (a(t, t) < 0) red.negate_row(t);
  }
done:
  SnfResult res;
  res.rank = t;
  res.S = a;
  res.L = red.L;
  res.U = red.Linv;
  res.R = red.R;
  res.V = red.Rinv;
  return res;
}

Cokernel cokernel_presentation(const IntMatrix& m) {
  SnfResult snf = smith_normal_form(m);
  Cokernel out;
  out.free_rank = m.rows - snf.rank;
  std::vector<int> tors_rows;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.S(i, i) > 1) {
      tors_rows.push_back(i);
      out.torsion.push_back(snf.S(i, i));
    }
  out.projection = IntMatrix(out.free_rank + static_cast<int>(tors_rows.size()), m.rows);
  for (int k = 0; k < out.free_rank; ++k)
    for (int c = 0; c < m.rows; ++c) out.projection(k, c) = snf.L(snf.rank + k, c);
  for (std::size_t k = 0; k < tors_rows.size(); ++k) {
    const Integer& d = out.torsion[k];
    for (int c = 0; c < m.rows; ++c) {
      Integer v;
      mpz_fdiv_r(v.get_mpz_t(), snf.L(tors_rows[k], c).get_mpz_t(), d.get_mpz_t());
      out.projection(out.free_rank + static_cast<int>(k), c) = v;
    }
  }
  return out;
}

std::vector<QVec> overlattice_cosets(const IntMatrix& m) {
  SnfResult snf = smith_normal_form(m);
  if (snf.rank < m.cols)
    throw Error(ErrorCode::NotFiniteIndex, "rows do not span the ambient space");
  const int r = m.cols;
  // nu = R w with w_i in (1/d_i) Z; walk w over the finite box.
  std::vector<long> digit(r, 0);
  std::vector<long> modulus(r);
  for (int i = 0; i < r; ++i) modulus[i] = snf.S(i, i).get_si();
  std::vector<QVec> out;
  while (true) {
    QVec nu(r, 0);
    for (int j = 0; j < r; ++j) {
      if (digit[j] == 0) continue;
      Rational wj(digit[j], modulus[j]);
      wj.canonicalize();
      for (int i = 0; i < r; ++i) nu[i] += Rational(snf.R(i, j)) * wj;
    }
    for (auto& x : nu) x = frac(x);
    out.push_back(std::move(nu));
    int k = 0;
    while (k < r && ++digit[k] == modulus[k]) digit[k++] = 0;
    if (k == r) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace extrans
