#include <cmath>

#include "doctest.h"
#include "fqdist/errors.hpp"
#include "fqdist/paths.hpp"
#include "oracles.hpp"

using namespace fqdist;

TEST_CASE("non-overlapping counts on the full plane F_3^2") {
  const FieldParams p(3, 2);
  const auto e = PointSet::full(p);
  CHECK(nonoverlap_count(e, ChainType({1})).total == 36);
  CHECK(oracle::path_count(e, {1}) == 36);
  // From each middle vertex: 4 * 3 ordered pairs of distinct neighbours.
  CHECK(oracle::path_count(e, {1, 1}) == 108);
  const auto g2 = nonoverlap_count(e, ChainType({1, 1}));
  CHECK(g2.total == 108);
  CHECK(g2.k == 2);
  for (std::size_t x = 0; x < p.size(); ++x) CHECK(g2.starts[x] == 12);
}

TEST_CASE("single point has no paths") {
  const FieldParams p(5, 2);
  PointSet one(p);
  one.insert(7);
  CHECK(nonoverlap_count(one, ChainType({1})).total == 0);
  CHECK(nonoverlap_count(one, ChainType({2, 3})).total == 0);
  CHECK_FALSE(extract_path(one, ChainType({1})).has_value());
}

TEST_CASE("dfs count equals brute force and never exceeds the chain count") {
  SeededGenerator rng(7);
  for (std::uint32_t q : {3u, 5u}) {
    const FieldParams p(q, 2);
    for (int trial = 0; trial < 25; ++trial) {
      const auto e = oracle::random_set(p, 1 + rng.below(std::min<std::uint64_t>(p.size(), 16)), rng.next());
      std::vector<Residue> t(1 + rng.below(3));
      for (auto& v : t) v = 1 + static_cast<Residue>(rng.below(q - 1));
      const ChainType type(t);
      const auto profile = nonoverlap_count(e, type);
      CHECK(profile.total == oracle::path_count(e, t));
      // g_k(x) counts paths starting at x; chains starting at x of type t
      // are chains ending at x of the reversed type.
      const auto chains = chain_count_dp(e, type.reversed());
      for (std::size_t x = 0; x < p.size(); ++x) CHECK(profile.starts[x] <= chains.endpoint_profile[x]);
      CHECK(profile.total <= chains.count);
      // A witness exists exactly when the count is positive.
      const auto w = extract_path(e, type);
      CHECK(w.has_value() == (profile.total > 0));
      if (w) CHECK(is_valid_path(*w, e));
    }
  }
}

TEST_CASE("extract_path returns a valid, deterministic witness") {
  const FieldParams p(3, 2);
  const auto e = PointSet::full(p);
  const auto w = extract_path(e, ChainType({1, 1}));
  REQUIRE(w.has_value());
  CHECK(w->vertices.size() == 3);
  CHECK(is_valid_path(*w, e));
  CHECK(w->vertices.front() == Point(p, {0, 0}));
  const auto again = extract_path(e, ChainType({1, 1}));
  CHECK(again->vertices == w->vertices);

  // Inside S_1 of F_3^2, distance 2 pairs decided by brute force.
  const auto s = sphere(1, p).points();
  const bool exists = oracle::path_count(s, {2}) > 0;
  CHECK(extract_path(s, ChainType({2})).has_value() == exists);
}

TEST_CASE("witness validator rejects broken paths") {
  const FieldParams p(3, 2);
  const auto e = PointSet::full(p);
  PathWitness repeat{{Point(p, {0, 0}), Point(p, {1, 0}), Point(p, {0, 0})}, ChainType({1, 1})};
  CHECK_FALSE(is_valid_path(repeat, e));
  PathWitness wrong{{Point(p, {0, 0}), Point(p, {1, 1})}, ChainType({1})};
  CHECK_FALSE(is_valid_path(wrong, e));
  PathWitness outside{{Point(p, {0, 0}), Point(p, {1, 0})}, ChainType({1})};
  PointSet only(p);
  only.insert(0);
  CHECK_FALSE(is_valid_path(outside, only));
  CHECK(is_valid_path(outside, e));
}

TEST_CASE("path recurrence") {
  const FieldParams p(3, 2);
  const auto r = verify_path_recurrence(PointSet::full(p), 1);
  CHECK(r.next_total == 108);
  CHECK(r.total == 36);
  CHECK(r.bilinear == 144);
  CHECK(r.rhs == doctest::Approx(108.0));
  CHECK(r.holds);

  PointSet one(p);
  one.insert(0);
  CHECK(verify_path_recurrence(one, 1).holds);

  const FieldParams p5(5, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto e = oracle::random_set(p5, 14, seed);
    for (std::size_t n = 1; n <= 2; ++n) CHECK(verify_path_recurrence(e, n).holds);
  }
}

TEST_CASE("path recurrence bilinear term matches the spectral bilinear form") {
  const FieldParams p(5, 2);
  const auto e = oracle::random_set(p, 14, 3);
  const auto g = nonoverlap_count(e, ChainType({1, 1}));
  const auto form = bilinear_distance_form(to_density(g.starts), indicator_function(e), 1);
  CHECK(form.total == static_cast<double>(verify_path_recurrence(e, 2).bilinear));
}

TEST_CASE("corollary report") {
  SUBCASE("full F_3^4 is below the threshold") {
    const FieldParams p(3, 4);
    const auto r = verify_corollary_bound(PointSet::full(p), 1);
    CHECK(r.threshold == doctest::Approx(4.0 / std::log(2.0) * std::pow(3.0, 2.5)));
    CHECK(r.threshold == doctest::Approx(89.97).epsilon(1e-3));
    CHECK_FALSE(r.hypothesis_met);
    CHECK(r.verdict == Verdict::vacuous);
  }
  SUBCASE("q=3, d=5 with |E| >= 180 meets it") {
    const FieldParams p(3, 5);
    const auto e = oracle::random_set(p, 180, 5);
    const auto r = verify_corollary_bound(e, 1);
    CHECK(r.threshold == doctest::Approx(155.8).epsilon(1e-3));
    CHECK(r.hypothesis_met);
    CHECK(r.positive);
    CHECK(r.inequality_holds);
    CHECK(r.verdict == Verdict::holds);
  }
  SUBCASE("empty set") {
    const auto r = verify_corollary_bound(PointSet(FieldParams(3, 2)), 2);
    CHECK(r.total == 0);
    CHECK(r.verdict == Verdict::vacuous);
  }
}

TEST_CASE("scale guard on path search") {
  const FieldParams p(13, 3);
  CHECK_THROWS_AS(nonoverlap_count(PointSet::full(p), ChainType({1, 1, 1})), ScaleGuardError);
}

TEST_CASE("longest observed path") {
  const FieldParams p(3, 2);
  const auto obs = longest_path_observed(PointSet::full(p), 1, 20);
  CHECK(obs.exhaustive);
  CHECK(obs.length <= 8);
  CHECK(obs.length >= 2);
  PointSet one(p);
  one.insert(0);
  CHECK(longest_path_observed(one, 1, 5).length == 0);
}
