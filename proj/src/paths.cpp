#include "fqdist/paths.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "fqdist/distance_graph.hpp"
#include "fqdist/errors.hpp"

namespace fqdist {

namespace {

// One graph per distinct distance in the type, looked up per step.
class TypedGraphs {
 public:
  TypedGraphs(const PointSet& set, const ChainType& type) {
    for (auto t : type.distances()) {
      if (!by_distance_.count(t)) by_distance_.emplace(t, std::make_unique<DistanceGraph>(set, t));
    }
    for (auto t : type.distances()) steps_.push_back(by_distance_.at(t).get());
  }

  const DistanceGraph& at(std::size_t step) const { return *steps_[step]; }

 private:
  std::map<Residue, std::unique_ptr<DistanceGraph>> by_distance_;
  std::vector<const DistanceGraph*> steps_;
};

class PathCounter {
 public:
  PathCounter(const TypedGraphs& graphs, std::size_t k, std::size_t n)
      : graphs_(graphs), k_(k), visited_(n, 0) {}

  std::uint64_t count_from(std::size_t start) {
    visited_[start] = 1;
    const auto c = extend(start, 0);
    visited_[start] = 0;
    return c;
  }

 private:
  std::uint64_t extend(std::size_t v, std::size_t depth) {
    const auto& g = graphs_.at(depth);
    std::uint64_t c = 0;
    if (depth + 1 == k_) {
      for (auto w : g.neighbors(v)) c += visited_[w] ? 0 : 1;
      return c;
    }
    for (auto w : g.neighbors(v)) {
      if (visited_[w]) continue;
      visited_[w] = 1;
      c += extend(w, depth + 1);
      visited_[w] = 0;
    }
    return c;
  }

  const TypedGraphs& graphs_;
  std::size_t k_;
  std::vector<std::uint8_t> visited_;
};

bool find_path(const TypedGraphs& graphs, std::size_t k, std::vector<std::size_t>& path,
               std::vector<std::uint8_t>& visited) {
  if (path.size() == k + 1) return true;
  for (auto w : graphs.at(path.size() - 1).neighbors(path.back())) {
    if (visited[w]) continue;
    visited[w] = 1;
    path.push_back(w);
    if (find_path(graphs, k, path, visited)) return true;
    path.pop_back();
    visited[w] = 0;
  }
  return false;
}

long double pow_ld(long double base, std::size_t e) {
  return std::pow(base, static_cast<long double>(e));
}

}  // namespace

bool is_valid_path(const PathWitness& w, const PointSet& set) {
  if (w.vertices.size() != w.type.length() + 1) return false;
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    if (!set.contains(w.vertices[i])) return false;
    for (std::size_t j = i + 1; j < w.vertices.size(); ++j) {
      if (w.vertices[i] == w.vertices[j]) return false;
    }
  }
  for (std::size_t i = 0; i < w.type.length(); ++i) {
    if (norm(w.vertices[i] - w.vertices[i + 1]) != w.type[i]) return false;
  }
  return true;
}

long double path_search_estimate(const PointSet& set, const ChainType& type) {
  type.check_against(set.params());
  long double estimate = static_cast<long double>(set.size());
  std::map<Residue, std::size_t> degree;
  for (auto t : type.distances()) {
    if (!degree.count(t)) degree[t] = DistanceGraph(set, t).max_degree();
    estimate *= static_cast<long double>(degree[t]);
  }
  return estimate * static_cast<long double>(type.length() + 1);
}

PathProfile nonoverlap_count(const PointSet& set, const ChainType& type) {
  const auto estimate = path_search_estimate(set, type);
  if (estimate > static_cast<long double>(kEnumerationBudget)) {
    throw ScaleGuardError("path search refused: estimated " + std::to_string(static_cast<double>(estimate)) +
                          " nodes exceeds the enumeration budget");
  }
  const auto& params = set.params();
  const TypedGraphs graphs(set, type);
  PathCounter counter(graphs, type.length(), params.size());
  PathProfile out{type.length(), CountFunction(params), 0};
  for (auto x : set.members()) {
    out.starts[x] = counter.count_from(x);
    out.total += out.starts[x];
  }
  return out;
}

std::uint64_t nonoverlap_count_oracle(const PointSet& set, const ChainType& type) {
  const auto& params = set.params();
  type.check_against(params);
  const auto members = set.members();
  const std::size_t n = members.size();
  const std::size_t k = type.length();
  if (n == 0) return 0;
  if (std::pow(static_cast<long double>(n), static_cast<long double>(k + 1)) >
      static_cast<long double>(kEnumerationBudget)) {
    throw ScaleGuardError("path oracle refused: |E|^{k+1} exceeds the enumeration budget");
  }
  std::vector<Point> points;
  for (auto i : members) points.push_back(Point::from_index(i, params));

  std::vector<std::size_t> tuple(k + 1, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = norm(points[tuple[i]] - points[tuple[i + 1]]) == type[i];
    for (std::size_t a = 0; a <= k && ok; ++a) {
      for (std::size_t b = a + 1; b <= k && ok; ++b) ok = tuple[a] != tuple[b];
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos <= k && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos > k) break;
  }
  return count;
}

std::optional<PathWitness> extract_path(const PointSet& set, const ChainType& type) {
  const auto estimate = path_search_estimate(set, type);
  if (estimate > static_cast<long double>(kEnumerationBudget)) {
    throw ScaleGuardError("path extraction refused: search estimate exceeds the enumeration budget");
  }
  const auto& params = set.params();
  const TypedGraphs graphs(set, type);
  std::vector<std::uint8_t> visited(params.size(), 0);
  std::vector<std::size_t> path;
  for (auto x : set.members()) {
    path.assign(1, x);
    visited[x] = 1;
    if (find_path(graphs, type.length(), path, visited)) {
      PathWitness w{{}, type};
      for (auto i : path) w.vertices.push_back(Point::from_index(i, params));
      return w;
    }
    visited[x] = 0;
  }
  return std::nullopt;
}

PathRecurrenceReport verify_path_recurrence(const PointSet& set, std::size_t n, Residue t) {
  if (n == 0) throw InvalidArgument("path recurrence is stated for n >= 1");
  const auto current = nonoverlap_count(set, ChainType::constant(t, n));
  const auto next = nonoverlap_count(set, ChainType::constant(t, n + 1));
  const DistanceGraph graph(set, t);

  PathRecurrenceReport r{};
  r.n = n;
  r.total = current.total;
  r.next_total = next.total;
  for (auto x : set.members()) r.bilinear += current.starts[x] * graph.degree(x);
  const long double rhs = -static_cast<long double>(n) * static_cast<long double>(r.total) +
                          static_cast<long double>(r.bilinear);
  r.rhs = static_cast<double>(rhs);
  r.holds = within_lower(static_cast<long double>(r.next_total), rhs);
  return r;
}

CorollaryReport corollary_report(const PointSet& set, std::size_t k, std::uint64_t total) {
  if (k == 0) throw InvalidArgument("corollary is stated for k >= 1");
  const auto& params = set.params();
  const long double e = static_cast<long double>(set.size());
  const long double q = params.q();
  const long double threshold = 4.0L * k / kLn2 * half_power(params.q(), static_cast<int>(params.d()) + 1);
  const long double lower = pow_ld(e, k + 1) / pow_ld(q, k) - threshold * pow_ld(e, k) / pow_ld(q, k);

  CorollaryReport r{};
  r.k = k;
  r.total = total;
  r.lower = static_cast<double>(lower);
  r.threshold = static_cast<double>(threshold);
  r.hypothesis_met = e >= threshold;
  r.inequality_holds = within_lower(static_cast<long double>(total), lower);
  r.positive = total > 0;
  r.verdict = conditional_verdict(r.hypothesis_met, r.inequality_holds && r.positive);
  return r;
}

CorollaryReport verify_corollary_bound(const PointSet& set, std::size_t k, Residue t) {
  const auto profile = nonoverlap_count(set, ChainType::constant(t, k));
  return corollary_report(set, k, profile.total);
}

LongestPathObservation longest_path_observed(const PointSet& set, Residue t, std::size_t cap,
                                             std::uint64_t node_budget) {
  const DistanceGraph graph(set, t);
  const auto n = set.params().size();
  std::vector<std::uint8_t> visited(n, 0);
  std::uint64_t nodes = 0;
  std::size_t best = 0;
  bool exhaustive = true;

  // Plain recursive DFS that records the deepest level reached.
  struct Search {
    const DistanceGraph& g;
    std::vector<std::uint8_t>& visited;
    std::uint64_t& nodes;
    std::uint64_t budget;
    std::size_t cap;
    std::size_t& best;
    bool& exhaustive;

    void run(std::size_t v, std::size_t depth) {
      if (depth > best) best = depth;
      if (best >= cap) return;
      for (auto w : g.neighbors(v)) {
        if (visited[w]) continue;
        if (++nodes > budget) {
          exhaustive = false;
          return;
        }
        visited[w] = 1;
        run(w, depth + 1);
        visited[w] = 0;
        if (best >= cap || !exhaustive) return;
      }
    }
  } search{graph, visited, nodes, node_budget, cap, best, exhaustive};

  for (auto x : set.members()) {
    visited[x] = 1;
    search.run(x, 0);
    visited[x] = 0;
    if (best >= cap || !exhaustive) break;
  }
  return {best, exhaustive || best >= cap};
}

}  // namespace fqdist
