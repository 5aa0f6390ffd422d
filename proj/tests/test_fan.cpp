#include <random>

#include "doctest.h"
#include "extrans/error.hpp"
#include "extrans/fan.hpp"
#include "oracles.hpp"

using namespace extrans;

namespace {

QVec q(std::vector<long> v) { return to_qvec(v); }

StackyFan fan_of(const GitPresentation& p) { return build_fan(p, validated_anticones(p)); }

// Is x in the interior of the support? The support of a GIT fan is convex,
// so it is enough to move by a small step along every coordinate direction.
bool interior_point_brute(const StackyFan& fan, const QVec& x) {
  auto in_support = [&](const QVec& y) {
    for (Mask c : fan.max_cones)
      if (oracle::in_cone_brute(fan.rays_of(c), y)) return true;
    return false;
  };
  Rational delta(1, 1000);
  for (int k = 0; k < fan.n; ++k)
    for (int sgn : {-1, 1}) {
      QVec y = x;
      y[k] += sgn * delta;
      if (!in_support(y)) return false;
    }
  return true;
}

Integer lcm_of_minors(const std::vector<IntVec>& chars, int r) {
  Integer l = 1;
  oracle::for_each_subset(static_cast<int>(chars.size()), r, [&](const std::vector<int>& idx) {
    std::vector<IntVec> sub;
    for (int i : idx) sub.push_back(chars[i]);
    Integer d = abs(oracle::det_cofactor(sub));
    if (d != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  });
  return l;
}

}  // namespace

TEST_CASE("fan of P2") {
  auto p = make_presentation(1, {{1}, {1}, {1}}, q({1}));
  auto fan = fan_of(p);
  CHECK(fan.n == 2);
  CHECK(fan.torsion.empty());
  CHECK(fan.max_cones.size() == 3);
  CHECK(fan.rays[0] + fan.rays[1] + fan.rays[2] == q({0, 0}));
  // the relation module is generated by (1,1,1): pairwise independent rays
  CHECK(rank({fan.rays[0], fan.rays[1]}, 2) == 2);
  CHECK((fan.beta * p.character_matrix()) == IntMatrix(2, 1));
  CHECK(fan.max_cones == std::vector<Mask>{3, 5, 6});
}

TEST_CASE("fan of the quintic blow-up and weighted projective space") {
  auto hat = make_presentation(2, {{1, 1}, {1, 1}, {1, 0}, {1, 0}, {1, 0}, {0, -1}}, QVec{1, Rational(1, 2)});
  auto fan = fan_of(hat);
  CHECK(fan.max_cones.size() == 8);
  auto w = make_presentation(1, {{1}, {1}, {1}, {2}, {2}, {1}}, q({1}));
  auto fw = fan_of(w);
  CHECK(fw.n == 5);
  CHECK(fw.max_cones.size() == 6);
  CHECK((fw.beta * w.character_matrix()) == IntMatrix(5, 1));
}

TEST_CASE("interior cones") {
  auto p2 = fan_of(make_presentation(1, {{1}, {1}, {1}}, q({1})));
  auto all = p2.cones();
  CHECK(interior_cones(p2) == all);
  CHECK(all.size() == 7);

  // half plane: cone(e1,e2), cone(e2,-e1)
  auto half = fan_from_rays({q({1, 0}), q({0, 1}), q({-1, 0})}, {mask_of({0, 1}), mask_of({1, 2})});
  CHECK(interior_cones(half) == std::vector<Mask>{mask_of({1}), mask_of({0, 1}), mask_of({1, 2})});

  auto thin = fan_from_rays({q({1, 0}), q({0, 1})}, {mask_of({0})});
  CHECK_THROWS_AS(interior_cones(thin), Error);
}

TEST_CASE("property: interior cones agree with sampled points") {
  std::mt19937 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 100 && checked < 40; ++trial) {
    int r = static_cast<int>(oracle::uniform(rng, 1, 2));
    int m = r + static_cast<int>(oracle::uniform(rng, 1, 3));
    std::vector<std::vector<long>> chars(m, std::vector<long>(r));
    for (auto& c : chars)
      for (auto& x : c) x = oracle::uniform(rng, -1, 2);
    QVec om(r);
    for (auto& x : om) x = oracle::uniform(rng, 1, 3);
    auto p = make_presentation(r, chars, om);
    auto rep = validate(p);
    if (!rep.ok()) continue;
    StackyFan fan;
    try {
      fan = build_fan(p, rep.family);
    } catch (const Error&) {
      continue;
    }
    if (!fan.pure_full_dimensional() || fan.n > 3) continue;
    auto inter = interior_cones(fan);
    for (Mask c : fan.cones()) {
      QVec x(fan.n, 0);
      for (const auto& b : fan.rays_of(c)) x = x + b;
      bool expect = interior_point_brute(fan, x);
      bool got = std::find(inter.begin(), inter.end(), c) != inter.end();
      CHECK(expect == got);
    }
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("twisted sectors") {
  auto p2 = make_presentation(1, {{1}, {1}, {1}}, q({1}));
  auto s = twisted_sectors(p2, anticones(p2));
  REQUIRE(s.size() == 1);
  CHECK(s[0].untwisted());

  auto w = make_presentation(1, {{1}, {1}, {1}, {2}, {2}, {1}}, q({1}));
  auto sw = twisted_sectors(w, anticones(w));
  REQUIRE(sw.size() == 2);
  CHECK(sw[0].nu == q({0}));
  CHECK(sw[1].nu == QVec{Rational(1, 2)});
  CHECK(sw[1].support == mask_of({3, 4}));
  CHECK(sw[1].sub.characters == std::vector<IntVec>{{2}, {2}});
  CHECK(sw[1].age == 2);

  // P(2,2) itself keeps its two sectors even though all pairings are integral
  auto p22 = make_presentation(1, {{2}, {2}}, q({1}));
  CHECK(twisted_sectors(p22, anticones(p22)).size() == 2);
}

TEST_CASE("property: sectors match brute-force coset scan and are permutation invariant") {
  std::mt19937 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int r = static_cast<int>(oracle::uniform(rng, 1, 2));
    int m = r + static_cast<int>(oracle::uniform(rng, 1, 3));
    std::vector<std::vector<long>> chars(m, std::vector<long>(r));
    for (auto& c : chars)
      for (auto& x : c) x = oracle::uniform(rng, 0, 3);
    QVec om(r);
    for (auto& x : om) x = oracle::uniform(rng, 1, 3);
    auto p = make_presentation(r, chars, om);
    auto rep = validate(p);
    if (!rep.ok()) continue;
    auto secs = twisted_sectors(p, rep.family);
    long n = lcm_of_minors(p.characters, r).get_si();
    // every nu with integral pairings against an anticone
    auto grid = oracle::cosets_brute({}, r, n);
    std::vector<QVec> expect;
    for (const auto& nu : grid) {
      Mask support = 0;
      for (int i = 0; i < m; ++i)
        if (is_integral(dot(to_qvec(p.characters[i]), nu))) support |= 1u << i;
      if (rep.family.contains(support)) expect.push_back(nu);
    }
    std::vector<QVec> got;
    for (const auto& s : secs) got.push_back(s.nu);
    CHECK(got == expect);

    // reversing the characters permutes supports but keeps the count
    auto rev = p;
    std::reverse(rev.characters.begin(), rev.characters.end());
    CHECK(twisted_sectors(rev, anticones(rev)).size() == secs.size());
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("int and frac sectors of a weighted blow-up") {
  // P^2 blown up at a point with weights (1,2) on the center coordinates
  auto hat = make_presentation(2, {{1, 1}, {1, 2}, {1, 0}, {0, -1}}, QVec{1, Rational(1, 4)});
  auto fam = validated_anticones(hat);
  auto secs = twisted_sectors(hat, fam);
  auto split = classify_sectors_int_frac(secs, hat, 3);
  CHECK(split.frac_sectors.size() >= 1);
  CHECK(split.int_sectors.size() == 1);
}
