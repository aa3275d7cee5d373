#include <algorithm>
#include <complex>

#include "doctest.h"
#include "fqdist/distance_graph.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/field.hpp"
#include "oracles.hpp"

using namespace fqdist;

TEST_CASE("field params validate q and d") {
  CHECK_NOTHROW(FieldParams(3, 1));
  CHECK_NOTHROW(FieldParams(13, 3));
  CHECK_THROWS_AS(FieldParams(2, 2), InvalidArgument);
  CHECK_THROWS_AS(FieldParams(9, 2), InvalidArgument);
  CHECK_THROWS_AS(FieldParams(1, 2), InvalidArgument);
  CHECK_THROWS_AS(FieldParams(5, 0), InvalidArgument);
  CHECK_THROWS_AS(FieldParams(3, 200), InvalidArgument);
  CHECK(FieldParams(5, 3).size() == 125);
}

TEST_CASE("norm examples") {
  const FieldParams p3(3, 2);
  CHECK(norm(Point(p3, {0, 0})) == 0);
  CHECK(norm(Point(p3, {2, 0})) == 1);
  const FieldParams p5(5, 3);
  CHECK(norm(Point(p5, {1, 2, 3})) == (1 + 4 + 9) % 5);
  CHECK(norm(Point(p5, {1, 2, 3})) == 4);
  // Coordinates are reduced on construction.
  CHECK(Point(p5, {-1, 7, 10}) == Point(p5, {4, 2, 0}));
}

TEST_CASE("norm is invariant under coordinate permutation and sign changes") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const FieldParams p(q, 3);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto x = Point::from_index(i, p);
      std::vector<std::int64_t> c(x.coords().begin(), x.coords().end());
      const auto n = norm(x);
      std::sort(c.begin(), c.end());
      do {
        CHECK(norm(Point(p, c)) == n);
      } while (std::next_permutation(c.begin(), c.end()));
      for (std::size_t axis = 0; axis < c.size(); ++axis) {
        auto flipped = c;
        flipped[axis] = -flipped[axis];
        CHECK(norm(Point(p, flipped)) == n);
      }
    }
  }
}

TEST_CASE("character values") {
  const FieldParams p3(3, 1);
  CHECK(std::abs(character(0, p3).value() - std::complex<double>(1.0, 0.0)) < 1e-15);
  const auto s = character(1, p3).value() + character(2, p3).value();
  CHECK(std::abs(s - std::complex<double>(-1.0, 0.0)) < 1e-12);

  const FieldParams p5(5, 1);
  std::complex<double> full = 0.0;
  for (Residue a = 0; a < 5; ++a) full += character(a, p5).value();
  CHECK(std::abs(full) < 1e-12);
  CHECK_THROWS_AS(character(5, p5), InvalidArgument);
}

TEST_CASE("characters are unimodular and multiplicative") {
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    const FieldParams p(q, 1);
    for (Residue a = 0; a < q; ++a) {
      const auto ca = character(a, p);
      CHECK(std::abs(std::abs(ca.value()) - 1.0) < 1e-12);
      const auto inverse = character((q - a) % q, p);
      CHECK(std::abs(ca.value() * inverse.value() - 1.0) < 1e-12);
      for (Residue b = 0; b < q; ++b) {
        const auto cb = character(b, p);
        const auto sum = character((a + b) % q, p);
        CHECK(std::abs(ca.value() * cb.value() - sum.value()) < 1e-12);
        CHECK((ca * cb).residue() == sum.residue());
      }
    }
  }
}

TEST_CASE("point index is little-endian mixed radix") {
  const FieldParams p(3, 2);
  CHECK(point_index(Point(p, {0, 0})) == 0);
  CHECK(point_index(Point(p, {1, 0})) == 1);
  CHECK(point_index(Point(p, {0, 1})) == 3);
  CHECK(index_point(7, p) == Point(p, {1, 2}));
  CHECK_THROWS_AS(index_point(9, p), InvalidArgument);
}

TEST_CASE("point index round trip, exhaustive for q <= 13, d <= 3") {
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    for (std::uint32_t d = 1; d <= 3; ++d) {
      const FieldParams p(q, d);
      bool ok = true;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto x = index_point(i, p);
        ok = ok && point_index(x) == i && index_point(point_index(x), p) == x;
      }
      CHECK_MESSAGE(ok, "q=" << q << " d=" << d);
    }
  }
}

TEST_CASE("point table agrees with point arithmetic") {
  const FieldParams p(5, 2);
  const PointTable table(p);
  for (std::size_t a = 0; a < p.size(); ++a) {
    const auto x = Point::from_index(a, p);
    CHECK(table.norm(a) == norm(x));
    for (std::size_t b = 0; b < p.size(); ++b) {
      const auto y = Point::from_index(b, p);
      CHECK(table.difference(a, b) == (x - y).index());
      CHECK(table.sum(a, b) == (x + y).index());
      CHECK(table.dot(a, b) == dot(x, y));
    }
  }
}

TEST_CASE("point set bookkeeping") {
  const FieldParams p(3, 2);
  PointSet e(p);
  CHECK(e.empty());
  e.insert(4);
  e.insert(4);
  e.insert(1);
  CHECK(e.size() == 2);
  CHECK(e.members() == std::vector<std::size_t>{1, 4});
  CHECK(e.contains(Point(p, {1, 1})));
  CHECK_THROWS_AS(e.insert(9), InvalidArgument);
  CHECK(PointSet::full(p).size() == 9);
  CHECK(e.with(0).size() == 3);
  CHECK(e.size() == 2);
}

TEST_CASE("distance graph neighbours match the definition") {
  const FieldParams p(5, 2);
  const auto e = oracle::random_set(p, 14, 11);
  for (Residue t = 0; t < 5; ++t) {
    const DistanceGraph g(e, t);
    for (std::size_t x = 0; x < p.size(); ++x) {
      std::vector<std::size_t> expected;
      if (e.contains(x)) {
        for (std::size_t y = 0; y < p.size(); ++y) {
          if (y != x && e.contains(y) &&
              norm(Point::from_index(x, p) - Point::from_index(y, p)) == t) {
            expected.push_back(y);
          }
        }
      }
      const auto got = g.neighbors(x);
      CHECK(std::vector<std::size_t>(got.begin(), got.end()) == expected);
    }
  }
}
