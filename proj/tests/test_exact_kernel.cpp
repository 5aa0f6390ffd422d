#include <random>

#include "doctest.h"
#include "extrans/cone.hpp"
#include "extrans/error.hpp"
#include "extrans/lp.hpp"
#include "extrans/snf.hpp"
#include "oracles.hpp"

using namespace extrans;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<IntVec> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r, rows.empty() ? 0 : static_cast<int>(rows[0].size()));
}

std::vector<QVec> qvecs(const std::vector<std::vector<long>>& rows) {
  std::vector<QVec> out;
  for (const auto& r : rows) out.push_back(to_qvec(r));
  return out;
}

std::vector<IntVec> ivecs(const std::vector<std::vector<long>>& rows) {
  std::vector<IntVec> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

void check_snf(const IntMatrix& m) {
  SnfResult s = smith_normal_form(m);
  CHECK(s.U * s.S * s.V == m);
  CHECK(s.L * m * s.R == s.S);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  CHECK(s.L * s.U == IntMatrix::identity(m.rows));
  CHECK(s.R * s.V == IntMatrix::identity(m.cols));
  for (int i = 0; i < s.S.rows; ++i)
    for (int j = 0; j < s.S.cols; ++j)
      if (i != j) CHECK(s.S(i, j) == 0);
  auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
  }
}

}  // namespace

TEST_CASE("rationals parse canonically") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-3") == -3);
  CHECK(to_string(parse_rational("2/-4")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
  CHECK(primitive(QVec{Rational(1, 2), Rational(-3, 4)}) == IntVec{2, -3});
}

TEST_CASE("smith normal form small cases") {
  SnfResult a = smith_normal_form(mat({{6}}));
  CHECK(a.S == mat({{6}}));
  CHECK(a.U == mat({{1}}));
  CHECK(a.V == mat({{1}}));

  IntMatrix col = mat({{1}, {1}, {1}});
  SnfResult b = smith_normal_form(col);
  CHECK(b.S == mat({{1}, {0}, {0}}));
  check_snf(col);

  SnfResult c = smith_normal_form(IntMatrix::identity(2));
  CHECK(c.U == IntMatrix::identity(2));
  CHECK(c.S == IntMatrix::identity(2));
  CHECK(c.V == IntMatrix::identity(2));
}

TEST_CASE("smith normal form diagonal matches determinantal divisors") {
  std::vector<std::vector<long>> rows = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SnfResult s = smith_normal_form(mat(rows));
  auto expect = oracle::invariant_factors(ivecs(rows));
  auto got = s.diagonal();
  REQUIRE(expect.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(got[i] == expect[i]);
}

TEST_CASE("property: SNF round trip on random 8x8 matrices") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    int r = static_cast<int>(oracle::uniform(rng, 1, 8));
    int c = static_cast<int>(oracle::uniform(rng, 1, 8));
    IntMatrix m(r, c);
    for (auto& x : m.entries) x = oracle::uniform(rng, -9, 9);
    check_snf(m);
    if (r <= 4 && c <= 4) {
      std::vector<IntVec> rows;
      for (int i = 0; i < r; ++i) rows.push_back(m.row(i));
      auto expect = oracle::invariant_factors(rows);
      auto got = smith_normal_form(m).diagonal();
      for (std::size_t i = 0; i < expect.size(); ++i) CHECK(got[i] == expect[i]);
    }
  }
}

TEST_CASE("cokernel presentations") {
  Cokernel a = cokernel_presentation(mat({{1}, {1}, {1}}));
  CHECK(a.free_rank == 2);
  CHECK(a.torsion.empty());
  CHECK((a.projection * mat({{1}, {1}, {1}})) == IntMatrix(2, 1));

  Cokernel b = cokernel_presentation(mat({{2}}));
  CHECK(b.free_rank == 0);
  CHECK(b.torsion == std::vector<Integer>{2});

  IntMatrix w = mat({{1}, {1}, {1}, {2}, {2}, {1}});
  Cokernel c = cokernel_presentation(w);
  CHECK(c.free_rank == 5);
  CHECK(c.torsion.empty());
  CHECK((c.projection * w) == IntMatrix(5, 1));
  // surjective: the projection has a 5x5 minor equal to +-1
  std::vector<IntVec> rows;
  for (int i = 0; i < 5; ++i) rows.push_back(c.projection.row(i));
  CHECK(oracle::determinantal_divisor(rows, 5) == 1);
}

TEST_CASE("strict cone feasibility") {
  auto a = strict_cone_feasibility(qvecs({{1}}), to_qvec(std::vector<long>{1}));
  CHECK(a.feasible);
  REQUIRE(a.witness);
  CHECK((*a.witness)[0] == 1);

  CHECK_FALSE(strict_cone_feasibility({}, to_qvec(std::vector<long>{1})).feasible);
  CHECK(strict_cone_feasibility({}, to_qvec(std::vector<long>{0})).feasible);
  CHECK_FALSE(strict_cone_feasibility(qvecs({{1, 1}, {1, 0}}), to_qvec(std::vector<long>{1, -1})).feasible);
  // boundary ray of the cone is not in the open cone
  CHECK_FALSE(strict_cone_feasibility(qvecs({{1, 1}, {1, 0}}), to_qvec(std::vector<long>{1, 0})).feasible);
  CHECK(strict_cone_feasibility(qvecs({{1, 1}, {1, 0}}), to_qvec(std::vector<long>{2, 1})).feasible);
  // r = 1, D = (1,-1): a1 - a2 = 1 has positive solutions
  CHECK(strict_cone_feasibility(qvecs({{1}, {-1}}), to_qvec(std::vector<long>{1})).feasible);
}

TEST_CASE("property: feasibility agrees with witness or separating facet") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    int d = static_cast<int>(oracle::uniform(rng, 1, 3));
    int n = static_cast<int>(oracle::uniform(rng, 1, 5));
    std::vector<QVec> gens;
    for (int i = 0; i < n; ++i) {
      QVec v(d);
      for (auto& x : v) x = oracle::uniform(rng, -3, 3);
      gens.push_back(v);
    }
    QVec t(d);
    for (auto& x : t) x = oracle::uniform(rng, -3, 3);
    auto res = strict_cone_feasibility(gens, t);
    if (res.feasible) {
      QVec sum(d, 0);
      for (int i = 0; i < n; ++i) {
        CHECK((*res.witness)[i] > 0);
        sum = sum + (*res.witness)[i] * gens[i];
      }
      CHECK(sum == t);
    } else {
      // target is outside the relative interior of cone(gens)
      PolyCone c = PolyCone::from_generators(gens, d);
      CHECK_FALSE(c.contains_interior(t));
    }
    // and the closed cone membership agrees with the brute-force oracle
    PolyCone c = PolyCone::from_generators(gens, d);
    CHECK(c.contains(t) == oracle::in_cone_brute(gens, t));
  }
}

TEST_CASE("cone facets") {
  auto a = cone_facets(qvecs({{1, 0}, {0, 1}}), 2);
  CHECK(a.normals == ivecs({{0, 1}, {1, 0}}));
  CHECK(a.equations.empty());

  auto b = cone_facets(qvecs({{1, 1}, {1, 0}}), 2);
  CHECK(b.normals == ivecs({{0, 1}, {1, -1}}));
  // each generator tight on exactly one normal
  for (const auto& g : qvecs({{1, 1}, {1, 0}})) {
    int tight = 0;
    for (const auto& n : b.normals) {
      CHECK(dot(to_qvec(n), g) >= 0);
      tight += dot(to_qvec(n), g) == 0;
    }
    CHECK(tight == 1);
  }

  auto c = cone_facets(qvecs({{1, 0}, {-1, 0}, {0, 1}}), 2);
  CHECK(c.normals == ivecs({{0, 1}}));

  // a ray in 3-space: two equations, one normal
  auto d = cone_facets(qvecs({{1, 2, 3}}), 3);
  CHECK(d.equations.size() == 2);
  CHECK(d.normals == ivecs({{1, 2, 3}}));
}

TEST_CASE("polycone round trip and duality") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    int d = static_cast<int>(oracle::uniform(rng, 2, 4));
    int n = static_cast<int>(oracle::uniform(rng, 1, 6));
    std::vector<QVec> gens;
    for (int i = 0; i < n; ++i) {
      QVec v(d);
      for (auto& x : v) x = oracle::uniform(rng, -2, 2);
      gens.push_back(v);
    }
    PolyCone c = PolyCone::from_generators(gens, d);
    for (const auto& g : gens) CHECK(c.contains(g));
    for (const auto& g : c.generators()) CHECK(oracle::in_cone_brute(gens, g));
    CHECK(c.dual().dual().same_as(c));
    PolyCone back = PolyCone::from_inequalities(c.inequalities(), d);
    CHECK(back.same_as(c));
  }
}

TEST_CASE("extreme rays limit") {
  QMatrix big(3, QVec(13, 0));
  CHECK_THROWS_AS(extreme_rays(big, 13), Error);
}

TEST_CASE("overlattice cosets") {
  CHECK(overlattice_cosets(IntMatrix::identity(2)) == std::vector<QVec>{QVec{0, 0}});
  CHECK(overlattice_cosets(mat({{2}})) == std::vector<QVec>{QVec{0}, QVec{Rational(1, 2)}});
  auto c = overlattice_cosets(mat({{1, 1}, {1, -1}}));
  CHECK(c == oracle::cosets_brute(ivecs({{1, 1}, {1, -1}}), 2, 2));
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(overlattice_cosets(mat({{1, 1}})), Error);
}

TEST_CASE("property: coset count matches elementary divisors") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int r = static_cast<int>(oracle::uniform(rng, 1, 3));
    int rows = static_cast<int>(oracle::uniform(rng, r, r + 2));
    IntMatrix m(rows, r);
    for (auto& x : m.entries) x = oracle::uniform(rng, -3, 3);
    SnfResult s = smith_normal_form(m);
    if (s.rank < r) {
      CHECK_THROWS_AS(overlattice_cosets(m), Error);
      continue;
    }
    Integer prod = 1;
    for (int i = 0; i < r; ++i) prod *= s.S(i, i);
    auto cosets = overlattice_cosets(m);
    CHECK(Integer(static_cast<long>(cosets.size())) == prod);
    if (prod <= 12) {
      std::vector<IntVec> rs;
      for (int i = 0; i < rows; ++i) rs.push_back(m.row(i));
      CHECK(cosets == oracle::cosets_brute(rs, r, prod.get_si()));
    }
    CHECK(overlattice_cosets(m) == cosets);  // determinism
  }
}
