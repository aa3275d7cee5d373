#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fqdist/bounds.hpp"
#include "fqdist/chains.hpp"
#include "fqdist/field.hpp"
#include "fqdist/spectral.hpp"

namespace fqdist {

/// Non-overlapping path counts for one chain type. Paths are ordered
/// tuples, so each undirected path is counted once per orientation.
struct PathProfile {
  std::size_t k;
  CountFunction starts;  // g_k(x): paths whose first vertex is x
  std::uint64_t total;   // G_k
};

struct PathWitness {
  std::vector<Point> vertices;
  ChainType type;
};

/// Independent re-validation: vertices in E, pairwise distinct, and
/// ||v^i - v^{i+1}|| = t_i for every edge.
bool is_valid_path(const PathWitness& witness, const PointSet& set);

/// Upper estimate of the DFS tree size: (k+1) |E| prod_i maxdeg(t_i).
long double path_search_estimate(const PointSet& set, const ChainType& type);

/// Exact G_k by depth-first extension with a visited set. Throws
/// ScaleGuardError when the search estimate exceeds the budget.
PathProfile nonoverlap_count(const PointSet& set, const ChainType& type);

/// Exhaustive count over E^{k+1} with a pairwise-distinct filter. Refuses
/// when |E|^{k+1} exceeds the enumeration budget.
std::uint64_t nonoverlap_count_oracle(const PointSet& set, const ChainType& type);

/// First witness in ascending point-index order, or nullopt when the
/// exhaustive search finds none.
std::optional<PathWitness> extract_path(const PointSet& set, const ChainType& type);

struct PathRecurrenceReport {
  std::size_t n;
  std::uint64_t next_total;   // G_{n+1}
  std::uint64_t total;        // G_n
  std::uint64_t bilinear;     // sum_{x,y} g_n(x) E(y) S(x - y)
  double rhs;                 // -n G_n + bilinear
  bool holds;
};

/// G_{n+1} >= -n G_n + sum_{x,y} g_n(x) E(y) S(x - y) for constant t.
PathRecurrenceReport verify_path_recurrence(const PointSet& set, std::size_t n, Residue t = 1);

struct CorollaryReport {
  std::size_t k;
  std::uint64_t total;  // G_k
  double lower;         // |E|^{k+1}/q^k - (4k/ln 2) q^{(d+1)/2} |E|^k/q^k
  double threshold;     // (4k/ln 2) q^{(d+1)/2}
  bool hypothesis_met;  // |E| >= threshold
  bool inequality_holds;
  bool positive;        // G_k > 0
  Verdict verdict;
};

CorollaryReport verify_corollary_bound(const PointSet& set, std::size_t k, Residue t = 1);
/// Variant reusing an already computed G_k.
CorollaryReport corollary_report(const PointSet& set, std::size_t k, std::uint64_t total);

struct LongestPathObservation {
  std::size_t length;  // longest non-overlapping path found
  bool exhaustive;     // false when the node budget cut the search short
};

/// Longest non-overlapping constant-t path, searched up to `cap` edges.
LongestPathObservation longest_path_observed(const PointSet& set, Residue t, std::size_t cap,
                                             std::uint64_t node_budget = 2'000'000);

}  // namespace fqdist
