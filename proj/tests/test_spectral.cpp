#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "doctest.h"
#include "fqdist/errors.hpp"
#include "fqdist/spectral.hpp"
#include "oracles.hpp"

using namespace fqdist;

namespace {

// Textbook transform written against Point and std::polar only.
std::complex<double> naive_coefficient(const DensityFunction& f, const Point& m) {
  const auto& p = f.params();
  std::complex<double> acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto px = Point::from_index(x, p);
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(dot(m, px)) / p.q();
    acc += std::polar(1.0, angle) * f[x];
  }
  return acc / static_cast<double>(p.size());
}

DensityFunction delta(const FieldParams& p) {
  DensityFunction f(p);
  f[0] = 1.0;
  return f;
}

}  // namespace

TEST_CASE("dft of a delta is constant 1/q^d") {
  const FieldParams p(3, 2);
  const auto s = dft(delta(p));
  for (std::size_t m = 0; m < p.size(); ++m) CHECK(std::abs(s[m] - 1.0 / 9.0) < 1e-15);
}

TEST_CASE("dft of the constant function is a delta") {
  const FieldParams p(3, 2);
  const auto s = dft(indicator_function(PointSet::full(p)));
  CHECK(std::abs(s[0] - 1.0) < 1e-12);
  for (std::size_t m = 1; m < p.size(); ++m) CHECK(std::abs(s[m]) < 1e-12);
}

TEST_CASE("dft of the unit sphere in F_3^2 at m = (1,0)") {
  const FieldParams p(3, 2);
  const auto f = indicator_function(sphere(1, p).points());
  const Point m(p, {1, 0});
  const auto expected = naive_coefficient(f, m);
  CHECK(std::abs(expected - 1.0 / 9.0) < 1e-12);
  CHECK(std::abs(dft(f)[m.index()] - expected) < 1e-12);
}

TEST_CASE("fast and direct transforms agree with the naive definition") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    for (std::uint32_t d : {1u, 2u, 3u}) {
      const FieldParams p(q, d);
      const auto f = oracle::random_function(p, 17 * q + d, 5);
      const auto fast = dft(f);
      const auto direct = dft_direct(f);
      double worst = 0.0;
      for (std::size_t m = 0; m < p.size(); ++m) {
        const auto naive = naive_coefficient(f, Point::from_index(m, p));
        worst = std::max({worst, std::abs(fast[m] - naive), std::abs(direct[m] - naive)});
      }
      CHECK_MESSAGE(worst < 1e-10, "q=" << q << " d=" << d);
    }
  }
}

TEST_CASE("inverse transform round trips") {
  const FieldParams p3(3, 2);
  const auto back = inverse_dft(dft(delta(p3)));
  for (std::size_t i = 0; i < p3.size(); ++i) CHECK(std::fabs(back[i] - delta(p3)[i]) < 1e-12);

  const FieldParams p5(5, 2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = oracle::random_function(p5, seed, 1);
    const auto g = inverse_dft(dft(f));
    for (std::size_t i = 0; i < p5.size(); ++i) CHECK(std::fabs(g[i] - f[i]) < 1e-10);
  }

  const auto zero = inverse_dft(Spectrum(p5));
  for (double v : zero.values()) CHECK(v == 0.0);
}

TEST_CASE("plancherel defect") {
  const FieldParams p(3, 2);
  CHECK(plancherel_defect(delta(p)) < 1e-14);
  CHECK(plancherel_defect(indicator_function(PointSet::full(p))) < 1e-14);
  const FieldParams p5(5, 2);
  const auto e = oracle::random_set(p5, 12, 7);
  CHECK(plancherel_defect(indicator_function(e)) < 1e-10);
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    for (std::uint32_t d : {1u, 2u, 3u}) {
      const FieldParams pp(q, d);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(plancherel_defect(oracle::random_function(pp, seed, 9)) < 1e-10);
      }
    }
  }
}

TEST_CASE("spectra of real functions are conjugate symmetric") {
  for (std::uint32_t q : {3u, 7u, 11u}) {
    const FieldParams p(q, 2);
    const auto f = oracle::random_function(p, q, 4);
    const auto s = dft(f);
    for (std::size_t m = 0; m < p.size(); ++m) {
      const auto neg = (-Point::from_index(m, p)).index();
      CHECK(std::abs(s[neg] - std::conj(s[m])) < 1e-10);
    }
  }
}

TEST_CASE("sphere membership") {
  const FieldParams p(3, 2);
  const auto s1 = sphere(1, p);
  std::set<std::size_t> expected;
  for (auto c : {std::vector<std::int64_t>{0, 1}, {0, 2}, {1, 0}, {2, 0}}) {
    expected.insert(Point(p, c).index());
  }
  CHECK(std::set<std::size_t>(s1.offsets().begin(), s1.offsets().end()) == expected);
  CHECK(s1.cardinality() == 4);
  CHECK_FALSE(s1.degenerate());

  const auto s0 = sphere(0, p);
  CHECK(s0.degenerate());
  CHECK(s0.points().contains(Point(p, {0, 0})));

  const FieldParams p5(5, 2);
  CHECK(sphere(1, p5).cardinality() == 4);  // -1 is a square mod 5
  CHECK_THROWS_AS(sphere(5, p5), InvalidArgument);
}

TEST_CASE("sphere sizes in the plane are q -+ 1 and near q^{d-1} in general") {
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    const FieldParams p2(q, 2);
    for (Residue t = 1; t < q; ++t) {
      const auto n = sphere(t, p2).cardinality();
      CHECK((n == q - 1 || n == q + 1));
    }
    const FieldParams p3(q, 3);
    for (Residue t = 1; t < q; ++t) {
      const double n = static_cast<double>(sphere(t, p3).cardinality());
      CHECK(n >= q * q / 2.0);
      CHECK(n <= 2.0 * q * q);
    }
  }
}

TEST_CASE("sphere decay report") {
  const FieldParams p(3, 2);
  const auto r = sphere_decay_report(1, p);
  CHECK(r.cardinality == 4);
  CHECK(std::fabs(r.zero_frequency - 4.0 / 9.0) < 1e-12);
  // S_1^((1,0)) = 1/9, but m = (1,1) gives |2(chi(1) + chi(2))| / 9 = 2/9.
  const auto f = indicator_function(sphere(1, p).points());
  double naive_max = 0.0;
  for (std::size_t m = 1; m < p.size(); ++m) {
    naive_max = std::max(naive_max, std::abs(naive_coefficient(f, Point::from_index(m, p))));
  }
  CHECK(std::fabs(naive_max - 2.0 / 9.0) < 1e-12);
  CHECK(std::fabs(r.max_nontrivial - naive_max) < 1e-12);
  CHECK(std::fabs(std::abs(dft(f)[Point(p, {1, 0}).index()]) - 1.0 / 9.0) < 1e-12);
  CHECK(std::fabs(r.bound - 2.0 * std::pow(3.0, -1.5)) < 1e-12);
  CHECK(r.holds);
  CHECK_THROWS_AS(sphere_decay_report(0, p), DegenerateDistance);

  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    for (std::uint32_t d : {2u, 3u}) {
      const FieldParams pp(q, d);
      for (Residue t = 1; t < q; ++t) CHECK(sphere_decay_report(t, pp).holds);
    }
  }
}

TEST_CASE("convolution") {
  const FieldParams p(3, 2);
  const auto g = oracle::random_function(p, 5, 7);
  const auto id = convolve(delta(p), g);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(id[i] == g[i]);

  const auto s = indicator_function(sphere(1, p).points());
  CHECK(convolve(s, s)[0] == 4.0);

  const FieldParams p5(5, 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = oracle::random_function(p5, seed, 6);
    const auto b = oracle::random_function(p5, seed + 100, 6);
    const auto direct = convolve(a, b);
    const auto fast = convolve_spectral(a, b);
    for (std::size_t i = 0; i < p5.size(); ++i) CHECK(std::fabs(direct[i] - fast[i]) < 1e-9);
  }
}

TEST_CASE("sparse sphere convolution matches the dense one") {
  const FieldParams p(5, 2);
  const PointTable table(p);
  const auto f = oracle::random_function(p, 3, 4);
  const auto s = sphere(2, p);
  const auto sparse = convolve_with_sphere(f, s, table);
  const auto dense = convolve(f, indicator_function(s.points()));
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(sparse[i] == dense[i]);
}

TEST_CASE("bilinear distance form") {
  const FieldParams p(3, 2);
  const auto full = indicator_function(PointSet::full(p));
  auto r = bilinear_distance_form(full, full, 1);
  CHECK(r.total == 36.0);
  CHECK(std::fabs(r.main_term - 36.0) < 1e-12);
  CHECK(std::fabs(r.remainder) < 1e-12);
  CHECK(r.holds);

  r = bilinear_distance_form(delta(p), delta(p), 1);
  CHECK(r.total == 0.0);
  CHECK(std::fabs(r.main_term - 4.0 / 9.0) < 1e-12);
  CHECK(std::fabs(r.stated_bound - 2.0 * std::sqrt(3.0)) < 1e-12);
  CHECK(r.holds);

  const FieldParams p5(5, 2);
  const auto e = indicator_function(oracle::random_set(p5, 12, 42));
  r = bilinear_distance_form(e, e, 1);
  CHECK(r.holds);
  CHECK(r.total == oracle::bilinear_sum(e, e, 1));
  CHECK(r.total == r.main_term + r.remainder);

  CHECK_THROWS_AS(bilinear_distance_form(full, full, 0), DegenerateDistance);
  auto negative = full;
  negative[3] = -1.0;
  CHECK_THROWS_AS(bilinear_distance_form(negative, full, 1), InvalidArgument);
}

TEST_CASE("bilinear estimate holds on seeded integer functions") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    for (std::uint32_t d : {2u, 3u}) {
      const FieldParams p(q, d);
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto f = oracle::random_function(p, seed, 3);
        const auto g = oracle::random_function(p, seed + 50, 3);
        const Residue t = 1 + static_cast<Residue>(seed % (q - 1));
        const auto r = bilinear_distance_form(f, g, t);
        CHECK(r.holds);
        CHECK(r.total == oracle::bilinear_sum(f, g, t));
      }
    }
  }
}
