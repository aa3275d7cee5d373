#include "fqdist/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fqdist/chains.hpp"
#include "fqdist/ensembles.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/paths.hpp"
#include "fqdist/runner.hpp"
#include "fqdist/spectral.hpp"
#include "fqdist/stars.hpp"

namespace fqdist {

namespace {

constexpr std::uint32_t kPrimes[] = {3, 5, 7, 11, 13};
constexpr std::uint32_t kDims[] = {2, 3};

std::string space_key(const FieldParams& p) {
  return "q" + std::to_string(p.q()) + "_d" + std::to_string(p.d());
}

// Reference membership for S_t straight from Point arithmetic.
PointSet reference_sphere(Residue t, const FieldParams& params) {
  PointSet out(params);
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (norm(Point::from_index(i, params)) == t) out.insert(i);
  }
  return out;
}

// The sphere under test. The fault hook lets the suite prove it notices a
// broken membership rule.
PointSet sphere_under_test(Residue t, const FieldParams& params, const std::string& fault) {
  if (fault == kFaultSphereOffByOne) return sphere(params.add(t, 1), params).points();
  return sphere(t, params).points();
}

PointSet random_subset(const FieldParams& params, std::size_t size, SeededGenerator& gen) {
  std::vector<std::size_t> all(params.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + static_cast<std::size_t>(gen.below(all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  return PointSet::from_indices(params, all);
}

std::vector<Residue> random_type(std::uint32_t q, std::size_t k, SeededGenerator& gen) {
  std::vector<Residue> t(k);
  for (auto& v : t) v = static_cast<Residue>(1 + gen.below(q - 1));
  return t;
}

// ---------------------------------------------------------------- criterion 1

std::vector<CheckRecord> criterion_sphere(const std::string& fault) {
  std::vector<std::pair<FieldParams, Residue>> jobs;
  for (auto q : kPrimes) {
    for (auto d : kDims) {
      for (Residue t = 1; t < q; ++t) jobs.emplace_back(FieldParams(q, d), t);
    }
  }
  auto rows = parallel_map(jobs.size(), [&](std::size_t i) {
    const auto& [params, t] = jobs[i];
    const Stopwatch clock;
    const auto tested = sphere_under_test(t, params, fault);
    const auto reference = reference_sphere(t, params);
    auto m = make_record("sphere.membership", params, space_key(params) + "_sphere_t" + std::to_string(t));
    m.set_size = tested.size();
    m.values["t"] = t;
    m.values["cardinality"] = tested.size();
    m.values["reference_cardinality"] = reference.size();
    m.status = status_from(tested == reference);
    m.elapsed_ms = clock.ms();

    std::vector<CheckRecord> out{m};
    for (auto& r : sphere_checks(params, t)) out.push_back(std::move(r));
    return out;
  });
  std::vector<CheckRecord> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// ---------------------------------------------------------------- criterion 2

std::vector<CheckRecord> criterion_fourier() {
  constexpr std::size_t kFunctions = 100;
  std::vector<FieldParams> spaces;
  for (auto q : kPrimes) {
    for (auto d : kDims) spaces.emplace_back(q, d);
  }
  auto rows = parallel_map(spaces.size(), [&](std::size_t s) {
    const auto& params = spaces[s];
    SeededGenerator gen(0xF0F1 + 100 * params.q() + params.d());
    double worst_plancherel = 0.0, worst_round_trip = 0.0, worst_deviation = 0.0, worst_symmetry = 0.0;
    double fast_ms = 0.0, direct_ms = 0.0;
    const Stopwatch clock;
    for (std::size_t n = 0; n < kFunctions; ++n) {
      DensityFunction f(params);
      for (std::size_t x = 0; x < f.size(); ++x) f[x] = gen.unit();

      Stopwatch fast_clock;
      const auto fast = dft(f);
      fast_ms += fast_clock.ms();
      Stopwatch direct_clock;
      const auto direct = dft_direct(f);
      direct_ms += direct_clock.ms();

      double lhs = 0.0, rhs = 0.0;
      for (std::size_t x = 0; x < f.size(); ++x) lhs += f[x] * f[x];
      for (std::size_t m = 0; m < fast.size(); ++m) rhs += std::norm(fast[m]);
      rhs *= static_cast<double>(params.size());
      worst_plancherel = std::max(worst_plancherel, std::abs(lhs - rhs) / std::max(1.0, lhs));

      const auto back = inverse_dft(fast);
      for (std::size_t x = 0; x < f.size(); ++x) worst_round_trip = std::max(worst_round_trip, std::abs(back[x] - f[x]));
      for (std::size_t m = 0; m < fast.size(); ++m) {
        worst_deviation = std::max(worst_deviation, std::abs(fast[m] - direct[m]));
        const auto minus_m = (-Point::from_index(m, params)).index();
        worst_symmetry = std::max(worst_symmetry, std::abs(fast[minus_m] - std::conj(fast[m])));
      }
    }
    auto r = make_record("fourier.identities", params, space_key(params) + "_random_functions");
    r.values["functions"] = kFunctions;
    r.values["plancherel_defect"] = worst_plancherel;
    r.values["round_trip_error"] = worst_round_trip;
    r.values["fast_direct_deviation"] = worst_deviation;
    r.values["conjugate_symmetry_error"] = worst_symmetry;
    r.values["tolerance_identities"] = 1e-10;
    r.values["tolerance_fast_direct"] = 1e-9;
    r.status = status_from(worst_plancherel < 1e-10 && worst_round_trip < 1e-10 && worst_deviation < 1e-9 &&
                           worst_symmetry < 1e-10);
    r.elapsed_ms = clock.ms();

    auto fast_timing = make_record("fourier.fast_dft", params, space_key(params) + "_random_functions");
    fast_timing.values["functions"] = kFunctions;
    fast_timing.elapsed_ms = fast_ms;
    auto direct_timing = make_record("fourier.direct_dft", params, space_key(params) + "_random_functions");
    direct_timing.values["functions"] = kFunctions;
    direct_timing.elapsed_ms = direct_ms;
    return std::vector<CheckRecord>{r, fast_timing, direct_timing};
  });
  std::vector<CheckRecord> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// ---------------------------------------------------------------- criterion 3

std::vector<CheckRecord> criterion_bilinear() {
  constexpr std::size_t kPerSpace = 20;
  std::vector<FieldParams> spaces;
  for (auto q : kPrimes) {
    for (auto d : kDims) spaces.emplace_back(q, d);
  }
  auto rows = parallel_map(spaces.size(), [&](std::size_t s) {
    const auto& params = spaces[s];
    const PointTable table(params);
    SeededGenerator gen(0xB111 + 100 * params.q() + params.d());
    std::vector<CheckRecord> out;
    for (std::size_t n = 0; n < kPerSpace; ++n) {
      const Stopwatch clock;
      // Sparse small integer weights keep the exact double sum exact.
      DensityFunction f(params), g(params);
      const std::uint64_t keep = 1 + gen.below(4);
      for (std::size_t x = 0; x < f.size(); ++x) {
        if (gen.below(4) < keep) f[x] = static_cast<double>(gen.below(4));
        if (gen.below(4) < keep) g[x] = static_cast<double>(gen.below(4));
      }
      const auto t = static_cast<Residue>(1 + gen.below(params.q() - 1));
      const auto rep = bilinear_distance_form(f, g, t);

      std::vector<std::size_t> f_support, g_support;
      for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] != 0.0) f_support.push_back(x);
        if (g[x] != 0.0) g_support.push_back(x);
      }
      double exhaustive = 0.0;
      for (auto x : f_support) {
        for (auto y : g_support) {
          if (table.norm(table.difference(x, y)) == t) exhaustive += f[x] * g[y];
        }
      }

      auto r = make_record("bilinear.estimate", params, space_key(params) + "_pair" + std::to_string(n));
      r.values["t"] = t;
      r.values["total"] = rep.total;
      r.values["exhaustive_total"] = exhaustive;
      r.values["main_term"] = rep.main_term;
      r.values["remainder"] = rep.remainder;
      r.values["stated_bound"] = rep.stated_bound;
      r.values["bound_holds"] = rep.holds;
      r.values["total_exact"] = rep.total == exhaustive;
      r.status = status_from(rep.holds && rep.total == exhaustive);
      r.elapsed_ms = clock.ms();
      out.push_back(std::move(r));
    }
    return out;
  });
  std::vector<CheckRecord> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// ---------------------------------------------------------------- criterion 4

std::vector<CheckRecord> criterion_oracles() {
  constexpr std::size_t kPerSpace = 130;
  const std::vector<FieldParams> spaces{FieldParams(3, 2), FieldParams(3, 3), FieldParams(5, 2), FieldParams(5, 3)};
  auto rows = parallel_map(spaces.size(), [&](std::size_t s) {
    const auto& params = spaces[s];
    SeededGenerator gen(0x0AC1 + 100 * params.q() + params.d());
    const std::size_t max_size = std::min<std::size_t>(30, params.size());
    std::vector<CheckRecord> out;
    for (std::size_t n = 0; n < kPerSpace; ++n) {
      const Stopwatch clock;
      const auto set = random_subset(params, gen.below(max_size + 1), gen);
      const std::size_t k = 1 + gen.below(3);
      const ChainType type(random_type(params.q(), k, gen));
      const auto dp = chain_count_dp(set, type).count;
      const auto oracle = chain_count_oracle(set, type);

      auto r = make_record("oracle.chain_count", params, space_key(params) + "_set" + std::to_string(n));
      r.set_size = set.size();
      r.values["t"] = residues_json(type.distances());
      r.values["k"] = k;
      r.values["dp"] = dp;
      r.values["oracle"] = oracle;
      r.status = status_from(dp == oracle);
      r.elapsed_ms = clock.ms();
      out.push_back(std::move(r));

      // ||f_k||_2^2 = C_{2k} for unit distance, k <= 3.
      const Stopwatch l2_clock;
      const auto profiles = chain_profiles(set, 1, 3);
      const auto counts = constant_chain_counts(set, 1, 6);
      Json squares = Json::array(), doubled = Json::array();
      bool equal = true;
      for (std::size_t j = 1; j <= 3; ++j) {
        const auto sq = sum_of_squares(profiles[j]);
        squares.push_back(sq);
        doubled.push_back(counts[2 * j]);
        equal = equal && sq == counts[2 * j];
      }
      auto l2 = make_record("oracle.l2_identity", params, space_key(params) + "_set" + std::to_string(n));
      l2.set_size = set.size();
      l2.values["sum_of_squares"] = squares;
      l2.values["c_2k"] = doubled;
      l2.status = status_from(equal);
      l2.elapsed_ms = l2_clock.ms();
      out.push_back(std::move(l2));
    }
    return out;
  });
  std::vector<CheckRecord> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// ---------------------------------------------------------------- criterion 5

std::vector<CheckRecord> criterion_fixed_values(const std::string& fault) {
  const FieldParams params(3, 2);
  const Instance inst{"q3_d2_full", params, PointSet::full(params)};
  std::vector<CheckRecord> out;

  auto fixed = [&](std::string name, std::uint64_t expected, const std::function<std::uint64_t()>& computed,
                   const std::function<std::uint64_t()>& oracle) {
    const Stopwatch clock;
    const auto value = computed();
    const auto check = oracle();
    auto r = make_record("fixed." + name, inst);
    r.values["expected"] = expected;
    r.values["computed"] = value;
    r.values["oracle"] = check;
    r.status = status_from(value == expected && check == expected);
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  };

  const auto& set = inst.set;
  fixed("sphere_cardinality", 4, [&] { return sphere_under_test(1, params, fault).size(); },
        [&] { return reference_sphere(1, params).size(); });
  fixed("c_1", 36, [&] { return chain_count_dp(set, ChainType::constant(1, 1)).count; },
        [&] { return chain_count_oracle(set, ChainType::constant(1, 1)); });
  fixed("c_3", 576, [&] { return chain_count_dp(set, ChainType::constant(1, 3)).count; },
        [&] { return chain_count_oracle(set, ChainType::constant(1, 3)); });
  fixed("g_2", 108, [&] { return nonoverlap_count(set, ChainType::constant(1, 2)).total; },
        [&] { return nonoverlap_count_oracle(set, ChainType::constant(1, 2)); });
  fixed("nu_2", 108, [&] { return star_count_exact(set, StarSpec({1, 1})); },
        [&] { return star_count_oracle(set, StarSpec({1, 1})); });

  const DegreeProfile profile(set);
  auto brute_tail = [&](std::uint64_t n) {
    std::uint64_t count = 0;
    for (auto x : set.members()) {
      std::uint64_t h = 0;
      for (auto y : set.members()) {
        h += norm(Point::from_index(x, params) - Point::from_index(y, params)) == 1;
      }
      count += h >= n;
    }
    return count;
  };
  fixed("h_4", 9, [&] { return profile.tail(1, 4); }, [&] { return brute_tail(4); });
  fixed("h_5", 0, [&] { return profile.tail(1, 5); }, [&] { return brute_tail(5); });
  return out;
}

// ------------------------------------------------------------ criteria 6 and 7

// Largest k <= cap whose constant-t path search fits the budget.
std::size_t feasible_path_length(const PointSet& set, Residue t, std::size_t cap) {
  std::size_t k = 0;
  while (k < cap &&
         path_search_estimate(set, ChainType::constant(t, k + 1)) <= static_cast<long double>(kEnumerationBudget)) {
    ++k;
  }
  return k;
}

struct CorpusChecks {
  std::vector<CheckRecord> unconditional;
  std::vector<CheckRecord> conditional;
};

const std::set<std::string> kUnconditional = {"chains.recurrence", "chains.upper_bound", "paths.count",
                                              "paths.recurrence", "stars.tail_bound",
                                              "stars.tail_intermediate"};

CorpusChecks corpus_checks(const Instance& inst) {
  std::vector<CheckRecord> all;
  auto append = [&all](std::vector<CheckRecord> more) {
    for (auto& r : more) all.push_back(std::move(r));
  };
  for (Residue t : {Residue{1}, Residue{2}}) {
    const std::size_t safe = max_safe_chain_length(inst.set, t);
    const std::size_t rec_k = std::min<std::size_t>(3, safe == 0 ? 0 : (safe - 1) / 2);
    append(recurrence_checks(inst, t, rec_k));
    append(upper_bound_checks(inst, t, std::min<std::size_t>(7, safe)));
  }
  append(lower_bound_checks(inst, 1, std::min<std::size_t>(5, max_safe_chain_length(inst.set, 1))));

  std::vector<std::vector<Residue>> types{{1}, {1, 1}, {1, 1, 1}, {1, 2}, {2, 1, 2}, {1, 1, 1, 1}, {1, 1, 1, 1, 1}};
  for (const auto& t : types) {
    const ChainType type(t);
    if (type.length() > 3 && type.length() > max_safe_chain_length(inst.set, 1)) continue;
    append(main_theorem_check(inst, type));
  }

  PathSweep paths;
  paths.t = 1;
  paths.max_k = feasible_path_length(inst.set, 1, 4);
  paths.recurrence = true;
  paths.corollary = true;
  append(path_checks(inst, paths));

  const DegreeProfile profile(inst.set);
  append(tail_checks(inst, profile));
  for (const auto& t : std::vector<std::vector<Residue>>{{1}, {1, 1}, {1, 2}, {2, 1, 1}}) {
    append(star_checks(inst, StarSpec(t)));
  }

  CorpusChecks out;
  for (auto& r : all) {
    (kUnconditional.count(r.check) ? out.unconditional : out.conditional).push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------------- summary

CriterionResult summarize(int id, std::string name, const std::vector<CheckRecord>& records, double elapsed_ms) {
  CriterionResult c;
  c.id = id;
  c.name = std::move(name);
  c.elapsed_ms = elapsed_ms;
  for (const auto& r : records) {
    if (r.status == "info") continue;
    ++c.checks;
    if (r.status == "violated") {
      ++c.violations;
      if (c.first_failure.empty()) c.first_failure = r.check + " on " + r.instance + " " + r.values.dump();
    } else if (r.status == "vacuous") {
      ++c.vacuous;
    } else if (r.status == "refused") {
      ++c.refused;
      if (c.first_failure.empty()) c.first_failure = r.check + " refused on " + r.instance;
    }
  }
  c.passed = c.violations == 0 && c.refused == 0 && c.checks > 0;
  return c;
}

void require(CriterionResult& c, bool ok, const std::string& what) {
  if (ok) return;
  c.passed = false;
  if (c.first_failure.empty()) c.first_failure = what;
}

std::size_t count_status(const std::vector<CheckRecord>& records, std::string_view check, std::string_view status) {
  std::size_t n = 0;
  for (const auto& r : records) n += r.check == check && r.status == status;
  return n;
}

CheckRecord summary_record(const CriterionResult& c) {
  CheckRecord r;
  r.check = "acceptance.criterion";
  r.instance = "criterion_" + std::to_string(c.id);
  r.status = c.passed ? "holds" : "violated";
  r.values["id"] = c.id;
  r.values["name"] = c.name;
  r.values["checks"] = c.checks;
  r.values["violations"] = c.violations;
  r.values["vacuous"] = c.vacuous;
  r.values["refused"] = c.refused;
  r.values["first_failure"] = c.first_failure;
  r.elapsed_ms = c.elapsed_ms;
  return r;
}

struct SuiteRun {
  std::vector<CriterionResult> criteria;
  std::vector<std::vector<CheckRecord>> records;
};

SuiteRun run_criteria(const AcceptanceOptions& options) {
  SuiteRun run;
  auto add = [&run](CriterionResult c, std::vector<CheckRecord> records) {
    run.criteria.push_back(std::move(c));
    run.records.push_back(std::move(records));
  };

  {
    const Stopwatch clock;
    auto records = criterion_sphere(options.fault);
    auto c = summarize(1, "sphere decay", records, clock.ms());
    add(std::move(c), std::move(records));
  }
  {
    const Stopwatch clock;
    auto records = criterion_fourier();
    auto c = summarize(2, "fourier identities", records, clock.ms());
    add(std::move(c), std::move(records));
  }
  {
    const Stopwatch clock;
    auto records = criterion_bilinear();
    auto c = summarize(3, "bilinear estimate", records, clock.ms());
    require(c, records.size() >= 200, "fewer than 200 bilinear instances");
    add(std::move(c), std::move(records));
  }
  {
    const Stopwatch clock;
    auto records = criterion_oracles();
    auto c = summarize(4, "oracle equivalence", records, clock.ms());
    const auto n = count_status(records, "oracle.chain_count", "holds");
    require(c, n >= 500, "fewer than 500 chain oracle agreements");
    add(std::move(c), std::move(records));
  }
  {
    const Stopwatch clock;
    auto records = criterion_fixed_values(options.fault);
    auto c = summarize(5, "fixed values", records, clock.ms());
    add(std::move(c), std::move(records));
  }
  {
    const Stopwatch clock;
    const auto entries = corpus();
    auto per_instance = parallel_map(entries.size(), [&](std::size_t i) {
      return corpus_checks(make_instance(entries[i].key, entries[i].params, entries[i].spec));
    });
    std::vector<CheckRecord> unconditional, conditional;
    for (auto& c : per_instance) {
      for (auto& r : c.unconditional) unconditional.push_back(std::move(r));
      for (auto& r : c.conditional) conditional.push_back(std::move(r));
    }
    const double ms = clock.ms();
    auto c6 = summarize(6, "unconditional inequalities", unconditional, ms);
    add(std::move(c6), std::move(unconditional));

    // Timed together with criterion 6.
    auto c7 = summarize(7, "conditional theorems", conditional, 0.0);
    for (const char* check : {"chains.main_theorem", "chains.lower_bound", "paths.corollary", "stars.theorem"}) {
      require(c7, count_status(conditional, check, "holds") > 0,
              std::string("no non-vacuous instance of ") + check);
    }
    add(std::move(c7), std::move(conditional));
  }
  return run;
}

}  // namespace

bool AcceptanceResult::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

std::optional<std::string> AcceptanceResult::first_failure() const {
  for (const auto& c : criteria) {
    if (!c.passed) return "criterion " + std::to_string(c.id) + " (" + c.name + "): " + c.first_failure;
  }
  return std::nullopt;
}

AcceptanceResult run_acceptance(const AcceptanceOptions& options) {
  Json config;
  config["command"] = "acceptance";
  config["corpus"] = kCorpusVersion;
  if (!options.fault.empty()) config["inject_fault"] = options.fault;

  AcceptanceResult result;
  result.report = Report("acceptance", config);

  auto first = run_criteria(options);
  for (auto& records : first.records) result.report.append(std::move(records));
  result.criteria = std::move(first.criteria);

  CriterionResult c8;
  c8.id = 8;
  c8.name = "determinism";
  if (options.determinism_rerun) {
    const Stopwatch clock;
    auto second = run_criteria(options);
    Report again("acceptance", config);
    for (auto& records : second.records) again.append(std::move(records));
    const auto a = result.report.data_section();
    const auto b = again.data_section();
    CheckRecord r;
    r.check = "determinism.data_section";
    r.instance = "acceptance_rerun";
    r.values["bytes"] = a.size();
    r.values["lines"] = std::count(a.begin(), a.end(), '\n');
    r.values["identical"] = a == b;
    r.status = status_from(a == b);
    c8 = summarize(8, "determinism", {r}, clock.ms());
    result.report.add(std::move(r));
  } else {
    c8.first_failure = "determinism rerun disabled";
  }
  result.criteria.push_back(c8);

  for (const auto& c : result.criteria) result.report.add(summary_record(c));
  return result;
}

}  // namespace fqdist
