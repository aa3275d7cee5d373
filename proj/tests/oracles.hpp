#pragma once

// Brute-force reference computations. These walk the raw definitions over
// Point objects and never touch the DP, DFS or transform code under test.

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "fqdist/ensembles.hpp"
#include "fqdist/field.hpp"
#include "fqdist/spectral.hpp"

namespace fqdist::oracle {

inline std::vector<Point> points_of(const PointSet& set) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < set.params().size(); ++i) {
    if (set.contains(i)) out.push_back(Point::from_index(i, set.params()));
  }
  return out;
}

// Calls visit(tuple) for every tuple in pts^{len}.
template <class Visit>
void for_each_tuple(const std::vector<Point>& pts, std::size_t len, Visit visit) {
  if (pts.empty()) return;
  std::vector<std::size_t> idx(len, 0);
  std::vector<const Point*> tuple(len);
  while (true) {
    for (std::size_t i = 0; i < len; ++i) tuple[i] = &pts[idx[i]];
    visit(tuple);
    std::size_t pos = 0;
    while (pos < len && ++idx[pos] == pts.size()) idx[pos++] = 0;
    if (pos == len) return;
  }
}

// Non-overlapping paths of the given type: distinct tuples with prescribed gaps.
inline std::uint64_t path_count(const PointSet& set, const std::vector<Residue>& t) {
  std::uint64_t count = 0;
  for_each_tuple(points_of(set), t.size() + 1, [&](const std::vector<const Point*>& v) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (norm(*v[i] - *v[i + 1]) != t[i]) return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (*v[i] == *v[j]) return;
      }
    }
    ++count;
  });
  return count;
}

// (x, x^1..x^k) with ||x - x^i|| = t_i and distinct leaves.
inline std::uint64_t star_count(const PointSet& set, const std::vector<Residue>& t) {
  std::uint64_t count = 0;
  for_each_tuple(points_of(set), t.size() + 1, [&](const std::vector<const Point*>& v) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (norm(*v[0] - *v[i + 1]) != t[i]) return;
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (*v[i] == *v[j]) return;
      }
    }
    ++count;
  });
  return count;
}

// sum_{x,y} f(x) g(y) [||x - y|| = t] over the whole space.
inline double bilinear_sum(const DensityFunction& f, const DensityFunction& g, Residue t) {
  const auto& p = f.params();
  double acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto px = Point::from_index(x, p);
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (norm(px - Point::from_index(y, p)) == t) acc += f[x] * g[y];
    }
  }
  return acc;
}

// Pseudorandom function with values in {0, ..., top}.
inline DensityFunction random_function(const FieldParams& p, std::uint64_t seed, std::uint64_t top) {
  SeededGenerator rng(seed);
  DensityFunction f(p);
  for (std::size_t i = 0; i < p.size(); ++i) f[i] = static_cast<double>(rng.below(top + 1));
  return f;
}

inline PointSet random_set(const FieldParams& p, std::size_t n, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::random_size;
  spec.size = n;
  spec.seed = seed;
  return generate(spec, p);
}

}  // namespace fqdist::oracle
