#include "fqdist/chains.hpp"

#include <cmath>
#include <string>

#include "fqdist/distance_graph.hpp"
#include "fqdist/errors.hpp"

namespace fqdist {

ChainType::ChainType(std::vector<Residue> distances) : distances_(std::move(distances)) {
  if (distances_.empty()) throw InvalidArgument("chain type must have length k >= 1");
  for (auto t : distances_) {
    if (t == 0) throw DegenerateDistance("chain distances must be nonzero");
  }
}

ChainType ChainType::constant(Residue t, std::size_t k) {
  return ChainType(std::vector<Residue>(k, t));
}

bool ChainType::is_constant() const {
  for (auto t : distances_) {
    if (t != distances_.front()) return false;
  }
  return true;
}

ChainType ChainType::reversed() const {
  return ChainType(std::vector<Residue>(distances_.rbegin(), distances_.rend()));
}

void ChainType::check_against(const FieldParams& params) const {
  for (auto t : distances_) {
    if (t >= params.q()) {
      throw InvalidArgument("distance " + std::to_string(t) + " is not a residue mod " +
                            std::to_string(params.q()));
    }
  }
}

namespace {

// One DP step: out(x) = E(x) * sum_{s in S_t} f(x - s), with overflow checks.
CountFunction step(const CountFunction& f, const PointSet& set, const SphereSet& shell,
                   const PointTable& table) {
  CountFunction out(f.params());
  const auto offsets = shell.offsets();
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!set.contains(x)) continue;
    std::uint64_t acc = 0;
    for (auto s : offsets) {
      if (__builtin_add_overflow(acc, f[table.difference(x, s)], &acc)) {
        throw ScaleGuardError("chain count overflows 64 bits");
      }
    }
    out[x] = acc;
  }
  return out;
}

CountFunction indicator_counts(const PointSet& set) {
  CountFunction f(set.params());
  const auto ind = set.indicator();
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = ind[i];
  return f;
}

long double pow_ld(long double base, std::size_t e) {
  return std::pow(base, static_cast<long double>(e));
}

}  // namespace

ChainCount chain_count_dp(const PointSet& set, const ChainType& type) {
  const auto& params = set.params();
  type.check_against(params);
  const PointTable table(params);
  CountFunction f = indicator_counts(set);
  for (auto t : type.distances()) f = step(f, set, SphereSet(t, params), table);
  const auto c = total(f);
  return ChainCount{c, std::move(f)};
}

std::vector<CountFunction> chain_profiles(const PointSet& set, Residue t, std::size_t max_k) {
  if (t == 0) throw DegenerateDistance("chain distances must be nonzero");
  const auto& params = set.params();
  if (t >= params.q()) throw InvalidArgument("distance is not a residue");
  const PointTable table(params);
  const SphereSet shell(t, params);
  std::vector<CountFunction> out;
  out.reserve(max_k + 1);
  out.push_back(indicator_counts(set));
  for (std::size_t k = 1; k <= max_k; ++k) out.push_back(step(out.back(), set, shell, table));
  return out;
}

std::vector<std::uint64_t> constant_chain_counts(const PointSet& set, Residue t, std::size_t max_k) {
  const auto profiles = chain_profiles(set, t, max_k);
  std::vector<std::uint64_t> out;
  out.reserve(profiles.size());
  for (const auto& f : profiles) out.push_back(total(f));
  return out;
}

std::uint64_t chain_count_oracle(const PointSet& set, const ChainType& type) {
  const auto& params = set.params();
  type.check_against(params);
  const auto members = set.members();
  const std::size_t n = members.size();
  const std::size_t k = type.length();
  if (n == 0) return 0;

  long double work = pow_ld(static_cast<long double>(n), k + 1);
  if (work > static_cast<long double>(kEnumerationBudget)) {
    throw ScaleGuardError("chain oracle refused: |E|^{k+1} = " + std::to_string(static_cast<double>(work)) +
                          " exceeds the enumeration budget");
  }

  std::vector<Point> points;
  points.reserve(n);
  for (auto i : members) points.push_back(Point::from_index(i, params));
  // ||x_a - x_b|| for every ordered pair of members.
  std::vector<Residue> dist(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) dist[a * n + b] = norm(points[a] - points[b]);
  }

  // Odometer over (x^1, ..., x^{k+1}).
  std::vector<std::size_t> tuple(k + 1, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = dist[tuple[i] * n + tuple[i + 1]] == type[i];
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos <= k && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos > k) break;
  }
  return count;
}

std::size_t max_safe_chain_length(const PointSet& set, Residue t) {
  const DistanceGraph graph(set, t);
  const long double limit = 9.0e18L;
  long double estimate = static_cast<long double>(set.size());
  const long double degree = static_cast<long double>(graph.max_degree());
  if (degree <= 1.0L) return 64;
  std::size_t n = 0;
  while (n < 64 && estimate * degree <= limit) {
    estimate *= degree;
    ++n;
  }
  return n;
}

ChainCountReport verify_main_theorem(const PointSet& set, const ChainType& type) {
  const auto& params = set.params();
  const auto chain = chain_count_dp(set, type);
  const std::size_t k = type.length();
  const long double e = static_cast<long double>(set.size());
  const long double q = params.q();
  const long double big_q = half_power(params.q(), static_cast<int>(params.d()) + 1);

  ChainCountReport r{};
  r.k = k;
  r.count = chain.count;
  const long double main = pow_ld(e, k + 1) / pow_ld(q, k);
  const long double threshold = 2.0L * k / kLn2 * big_q;
  const long double bound = threshold * pow_ld(e, k) / pow_ld(q, k);
  const long double disc = static_cast<long double>(chain.count) - main;
  r.main_term = static_cast<double>(main);
  r.discrepancy = static_cast<double>(disc);
  r.stated_bound = static_cast<double>(bound);
  r.threshold = static_cast<double>(threshold);
  r.hypothesis_met = e > threshold;
  r.bound_holds = within_upper(std::fabs(disc), bound);
  r.positive = chain.count > 0;
  r.verdict = conditional_verdict(r.hypothesis_met, r.bound_holds && r.positive);
  return r;
}

std::vector<RecurrenceReport> verify_recurrences(const PointSet& set, std::size_t max_k, Residue t) {
  const auto& params = set.params();
  const auto c = constant_chain_counts(set, t, 2 * max_k + 1);
  const long double q = params.q();
  const long double scale = 2.0L * half_power(params.q(), static_cast<int>(params.d()) - 1);

  std::vector<RecurrenceReport> out;
  for (std::size_t k = 1; k <= max_k; ++k) {
    RecurrenceReport r{};
    r.k = k;
    r.c_k = c[k];
    r.c_k_minus_1 = c[k - 1];
    r.c_2k_minus_2 = c[2 * k - 2];
    r.c_2k = c[2 * k];
    r.c_2k_plus_1 = c[2 * k + 1];

    const long double ck = r.c_k;
    const long double odd = static_cast<long double>(r.c_2k_plus_1) - ck * ck / q;
    const long double odd_bound = scale * static_cast<long double>(r.c_2k);
    r.odd_remainder = static_cast<double>(odd);
    r.odd_bound = static_cast<double>(odd_bound);
    r.odd_holds = within_upper(std::fabs(odd), odd_bound);

    const long double even =
        static_cast<long double>(r.c_2k) - ck * static_cast<long double>(r.c_k_minus_1) / q;
    const long double even_bound =
        scale * std::sqrt(static_cast<long double>(r.c_2k) * static_cast<long double>(r.c_2k_minus_2));
    r.even_remainder = static_cast<double>(even);
    r.even_bound = static_cast<double>(even_bound);
    r.even_holds = within_upper(std::fabs(even), even_bound);
    out.push_back(r);
  }
  return out;
}

UpperBoundReport verify_upper_bound(const PointSet& set, std::size_t n, Residue t) {
  const auto& params = set.params();
  const auto c = constant_chain_counts(set, t, n);
  const long double e = static_cast<long double>(set.size());
  const long double x = (e + 2.0L * half_power(params.q(), static_cast<int>(params.d()) + 1)) / params.q();
  const long double bound = e * pow_ld(x, n);

  UpperBoundReport r{};
  r.n = n;
  r.count = c[n];
  r.growth = static_cast<double>(x);
  r.bound = static_cast<double>(bound);
  r.margin = static_cast<double>(bound - static_cast<long double>(c[n]));
  r.holds = within_upper(static_cast<long double>(c[n]), bound);
  return r;
}

LowerBoundReport verify_lower_bound(const PointSet& set, std::size_t n, Residue t) {
  if (n == 0) throw InvalidArgument("lower bound is stated for chain length n >= 1");
  const auto& params = set.params();
  const auto c = constant_chain_counts(set, t, n);
  const long double e = static_cast<long double>(set.size());
  const long double q = params.q();
  const long double threshold =
      2.0L * n / kLn2 * half_power(params.q(), static_cast<int>(params.d()) + 1);
  const long double lower = pow_ld(e, n + 1) / pow_ld(q, n) - threshold * pow_ld(e, n) / pow_ld(q, n);

  LowerBoundReport r{};
  r.n = n;
  r.count = c[n];
  r.lower = static_cast<double>(lower);
  r.threshold = static_cast<double>(threshold);
  r.hypothesis_met = e > threshold;
  r.inequality_holds = within_lower(static_cast<long double>(c[n]), lower);
  r.verdict = conditional_verdict(r.hypothesis_met, r.inequality_holds);
  return r;
}

}  // namespace fqdist
