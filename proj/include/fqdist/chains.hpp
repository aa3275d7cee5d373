#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fqdist/bounds.hpp"
#include "fqdist/field.hpp"
#include "fqdist/spectral.hpp"

namespace fqdist {

/// Prescribed consecutive distances (t_1, ..., t_k), all nonzero.
class ChainType {
 public:
  explicit ChainType(std::vector<Residue> distances);
  static ChainType constant(Residue t, std::size_t k);

  std::size_t length() const { return distances_.size(); }
  std::span<const Residue> distances() const { return distances_; }
  Residue operator[](std::size_t i) const { return distances_[i]; }
  bool is_constant() const;
  ChainType reversed() const;

  /// Throws unless every distance is a residue of `params`.
  void check_against(const FieldParams& params) const;

  bool operator==(const ChainType&) const = default;

 private:
  std::vector<Residue> distances_;
};

struct ChainCount {
  std::uint64_t count;
  /// f_k(x): number of chains of the given type ending at x.
  CountFunction endpoint_profile;
};

/// C_k(t) by the recurrence f_0 = E, f_i = (f_{i-1} * S_{t_i}) E.
/// Repeated vertices are allowed.
ChainCount chain_count_dp(const PointSet& set, const ChainType& type);

/// f_0, ..., f_max_k for constant distance t, in one pass.
std::vector<CountFunction> chain_profiles(const PointSet& set, Residue t, std::size_t max_k);

/// C_0 = |E|, C_1, ..., C_max_k for constant distance t.
std::vector<std::uint64_t> constant_chain_counts(const PointSet& set, Residue t, std::size_t max_k);

/// Exhaustive enumeration over E^{k+1}. Refuses (ScaleGuardError) when
/// |E|^{k+1} exceeds the enumeration budget.
std::uint64_t chain_count_oracle(const PointSet& set, const ChainType& type);

/// Largest n such that C_n for constant t cannot overflow 64 bits, judged
/// from |E| * max_degree^n.
std::size_t max_safe_chain_length(const PointSet& set, Residue t);

struct ChainCountReport {
  std::size_t k;
  std::uint64_t count;       // C_k
  double main_term;          // |E|^{k+1} / q^k
  double discrepancy;        // C_k - main_term
  double stated_bound;       // (2k / ln 2) q^{(d+1)/2} |E|^k / q^k
  double threshold;          // (2k / ln 2) q^{(d+1)/2}
  bool hypothesis_met;       // |E| > threshold
  bool bound_holds;          // |discrepancy| <= stated_bound
  bool positive;             // C_k > 0
  Verdict verdict;           // vacuous unless hypothesis_met
};

ChainCountReport verify_main_theorem(const PointSet& set, const ChainType& type);

struct RecurrenceReport {
  std::size_t k;
  std::uint64_t c_k, c_k_minus_1, c_2k_minus_2, c_2k, c_2k_plus_1;
  double odd_remainder;   // R_{2k+1} = C_{2k+1} - C_k^2 / q
  double odd_bound;       // 2 q^{(d-1)/2} C_{2k}
  bool odd_holds;
  double even_remainder;  // R_{2k} = C_{2k} - C_k C_{k-1} / q
  double even_bound;      // 2 q^{(d-1)/2} sqrt(C_{2k} C_{2k-2})
  bool even_holds;
};

/// Checks both structure recurrences for k = 1..max_k with constant t.
std::vector<RecurrenceReport> verify_recurrences(const PointSet& set, std::size_t max_k,
                                                 Residue t = 1);

struct UpperBoundReport {
  std::size_t n;
  std::uint64_t count;  // C_n
  double growth;        // X = (|E| + 2 q^{(d+1)/2}) / q
  double bound;         // |E| X^n
  double margin;        // bound - C_n
  bool holds;
};

UpperBoundReport verify_upper_bound(const PointSet& set, std::size_t n, Residue t = 1);

struct LowerBoundReport {
  std::size_t n;
  std::uint64_t count;  // C_n
  double lower;         // |E|^{n+1}/q^n - (2n/ln 2) q^{(d+1)/2} |E|^n / q^n
  double threshold;     // (2n / ln 2) q^{(d+1)/2}
  bool hypothesis_met;
  bool inequality_holds;
  Verdict verdict;
};

LowerBoundReport verify_lower_bound(const PointSet& set, std::size_t n, Residue t = 1);

}  // namespace fqdist
