#include <cmath>

#include "doctest.h"
#include "fqdist/chains.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/stars.hpp"
#include "oracles.hpp"

using namespace fqdist;

TEST_CASE("degree profile of the full plane F_3^2") {
  const FieldParams p(3, 2);
  const auto prof = degree_profile(PointSet::full(p));
  for (std::size_t x = 0; x < p.size(); ++x) CHECK(prof.degree(1, x) == 4);
  CHECK(prof.tail(1, 4) == 9);
  CHECK(prof.tail(1, 5) == 0);
  CHECK(prof.tail(1, 0) == 9);
  CHECK(prof.max_degree(1) == 4);
}

TEST_CASE("degree profile of a single point") {
  const FieldParams p(5, 2);
  PointSet one(p);
  one.insert(3);
  const auto prof = degree_profile(one);
  for (Residue j = 1; j < 5; ++j) {
    CHECK(prof.tail(j, 1) == 0);
    CHECK(prof.tail(j, 0) == 1);
  }
}

TEST_CASE("degree sums equal C_1 and tails are nonincreasing") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const FieldParams p(q, 2);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto e = oracle::random_set(p, p.size() / 2, seed);
      const auto prof = degree_profile(e);
      for (Residue j = 1; j < q; ++j) {
        std::uint64_t sum = 0;
        for (auto x : e.members()) sum += prof.degree(j, x);
        CHECK(sum == chain_count_dp(e, ChainType({j})).count);
        const auto tails = prof.tails(j);
        CHECK(tails.front() == e.size());
        CHECK(tails.back() == 0);
        for (std::size_t n = 1; n < tails.size(); ++n) CHECK(tails[n] <= tails[n - 1]);
      }
    }
  }
}

TEST_CASE("star spec grouping") {
  const StarSpec s({2, 1, 2, 3});
  CHECK(s.k() == 4);
  REQUIRE(s.groups().size() == 3);
  CHECK(s.groups()[0] == std::pair<Residue, std::size_t>{1, 1});
  CHECK(s.groups()[1] == std::pair<Residue, std::size_t>{2, 2});
  CHECK_THROWS_AS(StarSpec({0, 1}), DegenerateDistance);
  CHECK_THROWS_AS(StarSpec(std::vector<Residue>{}), InvalidArgument);
}

TEST_CASE("exact star counts") {
  const FieldParams p(3, 2);
  const auto e = PointSet::full(p);
  CHECK(star_count_exact(e, StarSpec({1})) == 36);
  CHECK(star_count_exact(e, StarSpec({1, 1})) == 108);
  CHECK(oracle::star_count(e, {1, 1}) == 108);
  PointSet one(p);
  one.insert(0);
  CHECK(star_count_exact(one, StarSpec({1, 2})) == 0);
}

TEST_CASE("star counts equal brute force, are permutation invariant, and bounded by the multiset count") {
  SeededGenerator rng(31);
  for (std::uint32_t q : {3u, 5u}) {
    const FieldParams p(q, 2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto e = oracle::random_set(p, 1 + rng.below(std::min<std::uint64_t>(p.size(), 14)), rng.next());
      std::vector<Residue> t(1 + rng.below(3));
      for (auto& v : t) v = 1 + static_cast<Residue>(rng.below(q - 1));
      const auto exact = star_count_exact(e, StarSpec(t));
      CHECK(exact == oracle::star_count(e, t));
      auto permuted = t;
      std::sort(permuted.begin(), permuted.end());
      do {
        CHECK(star_count_exact(e, StarSpec(permuted)) == exact);
      } while (std::next_permutation(permuted.begin(), permuted.end()));

      const auto prof = degree_profile(e);
      const StarSpec spec(t);
      std::uint64_t multiset = 0;
      for (auto x : e.members()) {
        std::uint64_t prod = 1;
        for (const auto& [j, m] : spec.groups()) {
          for (std::size_t i = 0; i < m; ++i) prod *= prof.degree(j, x);
        }
        multiset += prod;
      }
      CHECK(exact <= multiset);
      CHECK(star_center_certificate(prof, spec).has_value() == (exact > 0));
    }
  }
}

TEST_CASE("tail bound") {
  const FieldParams p(3, 2);
  const auto r = verify_tail_bound(PointSet::full(p), 4);
  CHECK(r.bound == doctest::Approx(9.0 - 10.0 * std::pow(3.0, 1.5) - 24.0));
  CHECK(r.bound == doctest::Approx(-66.96).epsilon(1e-3));
  CHECK(r.holds);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].tail == 9);

  const FieldParams p7(7, 3);
  const auto e = oracle::random_set(p7, 150, 77);
  const auto prof = degree_profile(e);
  for (std::uint64_t n = 0; n <= 10; ++n) {
    const auto rr = tail_bound_report(prof, n);
    CHECK(rr.holds);
    CHECK(rr.entries.size() == 6);
  }
  // n = 0 always holds: H_0 = |E|.
  CHECK(tail_bound_report(prof, 0).entries[0].tail == 150);
}

TEST_CASE("tail intermediate matches C_2") {
  const FieldParams p(5, 2);
  const auto e = oracle::random_set(p, 12, 4);
  const auto inter = tail_intermediate(degree_profile(e));
  CHECK(inter.second_moment == chain_count_dp(e, ChainType({1, 1})).count);
}

TEST_CASE("star theorem report") {
  SUBCASE("full F_3^4 is vacuous") {
    const FieldParams p(3, 4);
    const auto r = verify_star_theorem(PointSet::full(p), StarSpec({1}));
    CHECK(r.first.threshold == doctest::Approx(12.0 * std::pow(3.0, 2.5)));
    CHECK_FALSE(r.first.hypothesis_met);
    CHECK_FALSE(r.second.hypothesis_met);
    CHECK(r.verdict == Verdict::vacuous);
  }
  SUBCASE("full F_3^6 meets the first statement for k = 1") {
    const FieldParams p(3, 6);
    const auto e = PointSet::full(p);
    const auto r = verify_star_theorem(e, StarSpec({1}));
    CHECK(r.first.threshold == doctest::Approx(561.18).epsilon(1e-3));
    CHECK(r.first.hypothesis_met);
    CHECK(r.first.limit == doctest::Approx(729.0 / (12.0 * std::pow(3.0, 3.5))));
    CHECK(r.first.applies);
    CHECK_FALSE(r.second.hypothesis_met);
    REQUIRE(r.count.has_value());
    CHECK(*r.count == chain_count_dp(e, ChainType({1})).count);
    CHECK(r.positive);
    CHECK(r.verdict == Verdict::holds);
    CHECK_FALSE(verify_star_theorem(e, StarSpec({1, 1})).first.applies);
  }
  CHECK_THROWS_AS(verify_star_theorem(PointSet::full(FieldParams(3, 2)), StarSpec({1, 5})), InvalidArgument);
}

TEST_CASE("star enumeration guard falls back to the certificate") {
  const FieldParams p(13, 3);
  const auto e = PointSet::full(p);
  CHECK_THROWS_AS(star_count_exact(e, StarSpec({1, 1, 1, 2})), ScaleGuardError);
  const auto r = verify_star_theorem(e, StarSpec({1, 1, 1, 2}));
  CHECK_FALSE(r.count.has_value());
  CHECK(r.evidence == StarEvidence::pigeonhole_certificate);
  CHECK(r.positive);
}
