#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fqdist/bounds.hpp"
#include "fqdist/field.hpp"
#include "fqdist/spectral.hpp"

namespace fqdist {

/// h_j(x) = #{y in E : ||x - y|| = j} for every j != 0, and the tails
/// H_n^{(j)} = #{x in E : h_j(x) >= n}.
class DegreeProfile {
 public:
  explicit DegreeProfile(const PointSet& set);

  const FieldParams& params() const { return params_; }
  std::size_t set_size() const { return set_size_; }

  std::uint64_t degree(Residue j, std::size_t x) const { return degrees_.at(j - 1)[x]; }
  const CountFunction& degrees(Residue j) const { return degrees_.at(j - 1); }
  std::uint64_t max_degree(Residue j) const;

  /// H_n^{(j)}.
  std::size_t tail(Residue j, std::uint64_t n) const;
  /// H_0^{(j)}, ..., H_{max+1}^{(j)}; the last entry is always 0.
  std::span<const std::size_t> tails(Residue j) const { return tails_.at(j - 1); }

 private:
  FieldParams params_;
  std::size_t set_size_;
  std::vector<CountFunction> degrees_;
  std::vector<std::vector<std::size_t>> tails_;
};

DegreeProfile degree_profile(const PointSet& set);

/// Star distances (t_1, ..., t_k) and their grouping by distance.
class StarSpec {
 public:
  explicit StarSpec(std::vector<Residue> distances);

  std::size_t k() const { return distances_.size(); }
  std::span<const Residue> distances() const { return distances_; }
  /// (distance, multiplicity) pairs, ascending by distance.
  std::span<const std::pair<Residue, std::size_t>> groups() const { return groups_; }

  void check_against(const FieldParams& params) const;

 private:
  std::vector<Residue> distances_;
  std::vector<std::pair<Residue, std::size_t>> groups_;
};

/// Upper estimate of star enumeration work: sum_x prod_i h_{t_i}(x).
long double star_search_estimate(const PointSet& set, const StarSpec& spec);

/// nu_k: tuples (x, x^1, ..., x^k) in E^{k+1} with ||x - x^i|| = t_i and
/// pairwise distinct leaves, enumerated per centre. Throws ScaleGuardError
/// above the enumeration budget.
std::uint64_t star_count_exact(const PointSet& set, const StarSpec& spec);

/// Exhaustive count over E^{k+1}. Refuses when |E|^{k+1} exceeds the
/// enumeration budget.
std::uint64_t star_count_oracle(const PointSet& set, const StarSpec& spec);

/// First centre (ascending index) with h_j(x) >= multiplicity for every group.
std::optional<std::size_t> star_center_certificate(const DegreeProfile& profile, const StarSpec& spec);

struct TailBoundEntry {
  Residue j;
  std::size_t tail;  // H_n^{(j)}
  bool holds;
};

struct TailBoundReport {
  std::uint64_t n;
  double bound;  // |E| - 10 q^{(d+1)/2} - 2 q n
  std::vector<TailBoundEntry> entries;  // one per j != 0
  bool holds;
};

TailBoundReport verify_tail_bound(const PointSet& set, std::uint64_t n);
TailBoundReport tail_bound_report(const DegreeProfile& profile, std::uint64_t n);

/// The intermediate Cauchy-Schwarz quantity sum_x E(x) h_1(x)^2 and the
/// value it is compared with in the tail derivation. Logged, not asserted.
struct TailIntermediate {
  std::uint64_t second_moment;
  double stated_ceiling;  // (|E|^3 + 6 q^{(d+1)/2} |E|^2) / q^2
};

TailIntermediate tail_intermediate(const DegreeProfile& profile, Residue j = 1);

enum class StarEvidence { none, exact_count, pigeonhole_certificate };

struct StarStatement {
  double threshold;  // hypothesis: |E| > threshold
  double limit;      // conclusion applies for k < limit
  bool hypothesis_met;
  bool applies;      // hypothesis_met and k < limit
};

struct StarReport {
  std::size_t k;
  std::optional<std::uint64_t> count;  // nu_k, absent above the scale guard
  std::optional<std::size_t> certificate_center;
  StarStatement first;   // |E| > 12 q^{(d+1)/2}, k < |E| / (12 q^{(d+1)/2})
  StarStatement second;  // |E| > 12 q^{(d+3)/2}, k < |E| / (12 q)
  StarEvidence evidence;
  bool positive;
  Verdict verdict;
};

StarReport verify_star_theorem(const PointSet& set, const StarSpec& spec);

}  // namespace fqdist
