#include "doctest.h"
#include "properties.hpp"

namespace {

constexpr int kTrials = 120;

void report(const props::Result& r) {
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.failures.empty());
  CHECK(r.trials >= kTrials);
}

}  // namespace

TEST_CASE("property: anticone families are upward closed") { report(props::upward_closure(kTrials, 12)); }

TEST_CASE("property: SNF round trip") { report(props::snf_round_trip(kTrials, 20240611)); }

TEST_CASE("property: crepancy identity over random specs") { report(props::crepancy(kTrials, 101)); }

TEST_CASE("property: blow-up cone count") { report(props::cone_count(kTrials, 202)); }

TEST_CASE("property: halving epsilon keeps every chamber") { report(props::epsilon_halving(kTrials, 303)); }

TEST_CASE("property: Betti numbers of compact quotients are palindromic") {
  int twisted = 0;
  report(props::betti_symmetry(kTrials, 404, &twisted));
  CHECK(twisted > 0);
}

TEST_CASE("property: narrow cohomology of a total space is the ideal of u_f") {
  report(props::narrow_is_uf_ideal(kTrials, 505));
}

TEST_CASE("property: total-space structure on random specs") { report(props::total_space_structure(kTrials, 606)); }
