#include "fqdist/stars.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "fqdist/distance_graph.hpp"
#include "fqdist/errors.hpp"

namespace fqdist {

DegreeProfile::DegreeProfile(const PointSet& set)
    : params_(set.params()), set_size_(set.size()) {
  const auto q = params_.q();
  degrees_.assign(q - 1, CountFunction(params_));
  const PointTable table(params_);
  const auto members = set.members();
  // Single pass over E x E; h_j is only populated on E.
  for (auto x : members) {
    for (auto y : members) {
      const Residue j = table.norm(table.difference(x, y));
      if (j != 0) ++degrees_[j - 1][x];
    }
  }
  tails_.resize(q - 1);
  for (Residue j = 1; j < q; ++j) {
    std::vector<std::uint64_t> sorted;
    sorted.reserve(members.size());
    for (auto x : members) sorted.push_back(degrees_[j - 1][x]);
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t top = sorted.empty() ? 0 : sorted.back();
    auto& tail = tails_[j - 1];
    tail.resize(top + 2);
    for (std::uint64_t n = 0; n <= top + 1; ++n) {
      const auto first = std::lower_bound(sorted.begin(), sorted.end(), n);
      tail[n] = static_cast<std::size_t>(sorted.end() - first);
    }
  }
}

std::uint64_t DegreeProfile::max_degree(Residue j) const { return tails(j).size() - 2; }

std::size_t DegreeProfile::tail(Residue j, std::uint64_t n) const {
  const auto& t = tails_.at(j - 1);
  return n < t.size() ? t[n] : 0;
}

DegreeProfile degree_profile(const PointSet& set) { return DegreeProfile(set); }

StarSpec::StarSpec(std::vector<Residue> distances) : distances_(std::move(distances)) {
  if (distances_.empty()) throw InvalidArgument("star must have k >= 1 leaves");
  std::map<Residue, std::size_t> counts;
  for (auto t : distances_) {
    if (t == 0) throw DegenerateDistance("star distances must be nonzero");
    ++counts[t];
  }
  groups_.assign(counts.begin(), counts.end());
}

void StarSpec::check_against(const FieldParams& params) const {
  for (auto t : distances_) {
    if (t >= params.q()) {
      throw InvalidArgument("distance " + std::to_string(t) + " is not a residue mod " +
                            std::to_string(params.q()));
    }
  }
}

namespace {

class LeafEnumerator {
 public:
  LeafEnumerator(const PointSet& set, const StarSpec& spec) : chosen_(set.params().size(), 0) {
    std::map<Residue, const DistanceGraph*> seen;
    for (auto t : spec.distances()) {
      if (!seen.count(t)) {
        graphs_.push_back(std::make_unique<DistanceGraph>(set, t));
        seen[t] = graphs_.back().get();
      }
      steps_.push_back(seen[t]);
    }
  }

  std::uint64_t count(std::size_t center) { return extend(center, 0); }

 private:
  std::uint64_t extend(std::size_t center, std::size_t leaf) {
    if (leaf == steps_.size()) return 1;
    std::uint64_t c = 0;
    for (auto y : steps_[leaf]->neighbors(center)) {
      if (chosen_[y]) continue;
      chosen_[y] = 1;
      c += extend(center, leaf + 1);
      chosen_[y] = 0;
    }
    return c;
  }

  std::vector<std::unique_ptr<DistanceGraph>> graphs_;
  std::vector<const DistanceGraph*> steps_;
  std::vector<std::uint8_t> chosen_;
};

}  // namespace

long double star_search_estimate(const PointSet& set, const StarSpec& spec) {
  spec.check_against(set.params());
  const DegreeProfile profile(set);
  long double estimate = 0.0L;
  for (auto x : set.members()) {
    long double product = 1.0L;
    for (auto t : spec.distances()) product *= static_cast<long double>(profile.degree(t, x));
    estimate += product;
  }
  return estimate;
}

std::uint64_t star_count_exact(const PointSet& set, const StarSpec& spec) {
  const auto estimate = star_search_estimate(set, spec);
  if (estimate > static_cast<long double>(kEnumerationBudget)) {
    throw ScaleGuardError("star enumeration refused: estimated " +
                          std::to_string(static_cast<double>(estimate)) +
                          " leaf tuples exceeds the enumeration budget");
  }
  LeafEnumerator enumerator(set, spec);
  std::uint64_t total = 0;
  for (auto x : set.members()) total += enumerator.count(x);
  return total;
}

std::uint64_t star_count_oracle(const PointSet& set, const StarSpec& spec) {
  const auto& params = set.params();
  spec.check_against(params);
  const auto members = set.members();
  const std::size_t n = members.size();
  const std::size_t k = spec.k();
  if (n == 0) return 0;
  if (std::pow(static_cast<long double>(n), static_cast<long double>(k + 1)) >
      static_cast<long double>(kEnumerationBudget)) {
    throw ScaleGuardError("star oracle refused: |E|^{k+1} exceeds the enumeration budget");
  }
  std::vector<Point> points;
  for (auto i : members) points.push_back(Point::from_index(i, params));

  // tuple[0] is the centre, tuple[1..k] the leaves.
  std::vector<std::size_t> tuple(k + 1, 0);
  std::uint64_t count = 0;
  const auto distances = spec.distances();
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = norm(points[tuple[0]] - points[tuple[i + 1]]) == distances[i];
    for (std::size_t a = 1; a <= k && ok; ++a) {
      for (std::size_t b = a + 1; b <= k && ok; ++b) ok = tuple[a] != tuple[b];
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos <= k && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos > k) break;
  }
  return count;
}

std::optional<std::size_t> star_center_certificate(const DegreeProfile& profile, const StarSpec& spec) {
  spec.check_against(profile.params());
  const auto& some = profile.degrees(1);
  for (std::size_t x = 0; x < some.size(); ++x) {
    bool ok = true;
    bool any = false;
    for (const auto& [j, mult] : spec.groups()) {
      ok = ok && profile.degree(j, x) >= mult;
      any = true;
    }
    if (ok && any) return x;
  }
  return std::nullopt;
}

TailBoundReport tail_bound_report(const DegreeProfile& profile, std::uint64_t n) {
  const auto& params = profile.params();
  const long double bound = static_cast<long double>(profile.set_size()) -
                            10.0L * half_power(params.q(), static_cast<int>(params.d()) + 1) -
                            2.0L * params.q() * static_cast<long double>(n);
  TailBoundReport r{};
  r.n = n;
  r.bound = static_cast<double>(bound);
  r.holds = true;
  for (Residue j = 1; j < params.q(); ++j) {
    const auto h = profile.tail(j, n);
    const bool ok = within_lower(static_cast<long double>(h), bound);
    r.entries.push_back({j, h, ok});
    r.holds = r.holds && ok;
  }
  return r;
}

TailBoundReport verify_tail_bound(const PointSet& set, std::uint64_t n) {
  return tail_bound_report(DegreeProfile(set), n);
}

TailIntermediate tail_intermediate(const DegreeProfile& profile, Residue j) {
  const auto& params = profile.params();
  std::uint64_t moment = 0;
  for (auto v : profile.degrees(j).values()) moment += v * v;
  const long double e = static_cast<long double>(profile.set_size());
  const long double q = params.q();
  const long double ceiling =
      (e * e * e + 6.0L * half_power(params.q(), static_cast<int>(params.d()) + 1) * e * e) / (q * q);
  return {moment, static_cast<double>(ceiling)};
}

StarReport verify_star_theorem(const PointSet& set, const StarSpec& spec) {
  const auto& params = set.params();
  spec.check_against(params);
  const long double e = static_cast<long double>(set.size());
  const std::size_t k = spec.k();

  auto statement = [&](long double threshold, long double divisor) {
    StarStatement s{};
    s.threshold = static_cast<double>(threshold);
    s.limit = static_cast<double>(e / divisor);
    s.hypothesis_met = e > threshold;
    s.applies = s.hypothesis_met && static_cast<long double>(k) < e / divisor;
    return s;
  };

  StarReport r{};
  r.k = k;
  const long double q_low = half_power(params.q(), static_cast<int>(params.d()) + 1);
  const long double q_high = half_power(params.q(), static_cast<int>(params.d()) + 3);
  r.first = statement(12.0L * q_low, 12.0L * q_low);
  r.second = statement(12.0L * q_high, 12.0L * params.q());

  r.evidence = StarEvidence::none;
  if (star_search_estimate(set, spec) <= static_cast<long double>(kEnumerationBudget)) {
    r.count = star_count_exact(set, spec);
    r.evidence = StarEvidence::exact_count;
    r.positive = *r.count > 0;
  } else {
    r.certificate_center = star_center_certificate(DegreeProfile(set), spec);
    r.positive = r.certificate_center.has_value();
    if (r.positive) r.evidence = StarEvidence::pigeonhole_certificate;
  }
  r.verdict = conditional_verdict(r.first.applies || r.second.applies, r.positive);
  return r;
}

}  // namespace fqdist
