#include "fqdist/runner.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include "fqdist/distance_graph.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/paths.hpp"
#include "fqdist/spectral.hpp"

namespace fqdist {

namespace {

Json point_json(const Point& p) {
  Json out = Json::array();
  for (Residue c : p.coords()) out.push_back(c);
  return out;
}

Json index_json(std::size_t index, const FieldParams& params) {
  return point_json(Point::from_index(index, params));
}

Json statement_json(const StarStatement& s) {
  Json j;
  j["threshold"] = s.threshold;
  j["limit"] = s.limit;
  j["hypothesis_met"] = s.hypothesis_met;
  j["applies"] = s.applies;
  return j;
}

std::string_view to_string(StarEvidence e) {
  switch (e) {
    case StarEvidence::none: return "none";
    case StarEvidence::exact_count: return "exact_count";
    case StarEvidence::pigeonhole_certificate: return "pigeonhole_certificate";
  }
  return "none";
}

// Largest n for which C_n of constant t is known not to overflow.
std::size_t safe_length(const PointSet& set, Residue t) { return max_safe_chain_length(set, t); }

CheckRecord refused_record(std::string check, const Instance& inst, Json values, std::string reason) {
  auto r = make_record(std::move(check), inst);
  r.status = "refused";
  r.values = std::move(values);
  r.values["reason"] = std::move(reason);
  return r;
}

ChainType config_type(const RunConfig& config) {
  if (config.t.empty()) return ChainType::constant(1, std::max<std::size_t>(config.k, 1));
  return ChainType(config.t);
}

std::vector<Residue> config_star_distances(const RunConfig& config) {
  if (config.t.empty()) return std::vector<Residue>(std::max<std::size_t>(config.k, 1), 1);
  return config.t;
}

Report finish(Report report, std::vector<std::vector<CheckRecord>> per_instance) {
  for (auto& records : per_instance) report.append(std::move(records));
  return report;
}

}  // namespace

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["q"] = q;
  j["d"] = d;
  if (use_corpus) {
    j["corpus"] = kCorpusVersion;
  } else {
    Json e;
    for (const auto& [key, value] : ensemble.to_key_values()) e[key] = value;
    j["ensemble"] = e;
  }
  j["t"] = residues_json(t);
  j["k"] = k;
  j["all_t"] = all_t;
  j["format"] = format;
  if (!inject_fault.empty()) j["inject_fault"] = inject_fault;
  return j;
}

Json residues_json(std::span<const Residue> values) {
  Json out = Json::array();
  for (Residue v : values) out.push_back(v);
  return out;
}

Instance make_instance(std::string key, const FieldParams& params, const EnsembleSpec& spec) {
  return Instance{std::move(key), params, generate(spec, params)};
}

std::vector<Instance> instances_for(const RunConfig& config) {
  std::vector<Instance> out;
  if (config.use_corpus) {
    for (const auto& entry : corpus()) out.push_back(make_instance(entry.key, entry.params, entry.spec));
    return out;
  }
  const FieldParams params(config.q, config.d);
  const std::string key =
      "q" + std::to_string(config.q) + "_d" + std::to_string(config.d) + "_" + config.ensemble.label();
  out.push_back(make_instance(key, params, config.ensemble));
  return out;
}

CheckRecord make_record(std::string check, const FieldParams& params, std::string instance) {
  CheckRecord r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  r.q = params.q();
  r.d = params.d();
  return r;
}

CheckRecord make_record(std::string check, const Instance& inst) {
  auto r = make_record(std::move(check), inst.params, inst.key);
  r.set_size = inst.set.size();
  return r;
}

std::vector<CheckRecord> sphere_checks(const FieldParams& params, Residue t) {
  const Stopwatch clock;
  const auto rep = sphere_decay_report(t, params);
  auto r = make_record("sphere.decay", params,
                       "q" + std::to_string(params.q()) + "_d" + std::to_string(params.d()) + "_sphere_t" +
                           std::to_string(t));
  r.set_size = rep.cardinality;
  r.values["t"] = t;
  r.values["cardinality"] = rep.cardinality;
  r.values["zero_frequency"] = rep.zero_frequency;
  r.values["max_nontrivial"] = rep.max_nontrivial;
  r.values["argmax"] = index_json(rep.argmax, params);
  r.values["bound"] = rep.bound;
  r.values["ratio"] = rep.ratio;
  r.status = status_from(rep.holds);
  r.elapsed_ms = clock.ms();
  return {r};
}

std::vector<CheckRecord> main_theorem_check(const Instance& inst, const ChainType& type) {
  const Stopwatch clock;
  const auto rep = verify_main_theorem(inst.set, type);
  auto r = make_record("chains.main_theorem", inst);
  r.values["t"] = residues_json(type.distances());
  r.values["k"] = rep.k;
  r.values["count"] = rep.count;
  r.values["main_term"] = rep.main_term;
  r.values["discrepancy"] = rep.discrepancy;
  r.values["stated_bound"] = rep.stated_bound;
  r.values["threshold"] = rep.threshold;
  r.values["hypothesis_met"] = rep.hypothesis_met;
  r.values["bound_holds"] = rep.bound_holds;
  r.values["positive"] = rep.positive;
  r.status = std::string(to_string(rep.verdict));
  r.elapsed_ms = clock.ms();
  return {r};
}

std::vector<CheckRecord> recurrence_checks(const Instance& inst, Residue t, std::size_t max_k) {
  std::vector<CheckRecord> out;
  if (max_k == 0) return out;
  const std::size_t safe = safe_length(inst.set, t);
  const std::size_t reachable = safe == 0 ? 0 : (safe - 1) / 2;
  const std::size_t run_k = std::min(max_k, reachable);
  if (run_k > 0) {
    const Stopwatch clock;
    const auto reports = verify_recurrences(inst.set, run_k, t);
    const double each = clock.ms() / static_cast<double>(reports.size());
    for (const auto& rep : reports) {
      auto r = make_record("chains.recurrence", inst);
      r.values["t"] = t;
      r.values["k"] = rep.k;
      r.values["c_k"] = rep.c_k;
      r.values["c_k_minus_1"] = rep.c_k_minus_1;
      r.values["c_2k_minus_2"] = rep.c_2k_minus_2;
      r.values["c_2k"] = rep.c_2k;
      r.values["c_2k_plus_1"] = rep.c_2k_plus_1;
      r.values["odd_remainder"] = rep.odd_remainder;
      r.values["odd_bound"] = rep.odd_bound;
      r.values["odd_holds"] = rep.odd_holds;
      r.values["even_remainder"] = rep.even_remainder;
      r.values["even_bound"] = rep.even_bound;
      r.values["even_holds"] = rep.even_holds;
      r.status = status_from(rep.odd_holds && rep.even_holds);
      r.elapsed_ms = each;
      out.push_back(std::move(r));
    }
  }
  for (std::size_t k = run_k + 1; k <= max_k; ++k) {
    Json v;
    v["t"] = t;
    v["k"] = k;
    out.push_back(refused_record("chains.recurrence", inst, v, "C_2k+1 would exceed 64 bits"));
  }
  return out;
}

std::vector<CheckRecord> upper_bound_checks(const Instance& inst, Residue t, std::size_t max_n) {
  std::vector<CheckRecord> out;
  const std::size_t safe = safe_length(inst.set, t);
  for (std::size_t n = 0; n <= max_n; ++n) {
    if (n > safe) {
      Json v;
      v["t"] = t;
      v["n"] = n;
      out.push_back(refused_record("chains.upper_bound", inst, v, "C_n would exceed 64 bits"));
      continue;
    }
    const Stopwatch clock;
    const auto rep = verify_upper_bound(inst.set, n, t);
    auto r = make_record("chains.upper_bound", inst);
    r.values["t"] = t;
    r.values["n"] = rep.n;
    r.values["count"] = rep.count;
    r.values["growth"] = rep.growth;
    r.values["bound"] = rep.bound;
    r.values["margin"] = rep.margin;
    r.status = status_from(rep.holds);
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckRecord> lower_bound_checks(const Instance& inst, Residue t, std::size_t max_n) {
  std::vector<CheckRecord> out;
  const std::size_t safe = safe_length(inst.set, t);
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (n > safe) {
      Json v;
      v["t"] = t;
      v["n"] = n;
      out.push_back(refused_record("chains.lower_bound", inst, v, "C_n would exceed 64 bits"));
      continue;
    }
    const Stopwatch clock;
    const auto rep = verify_lower_bound(inst.set, n, t);
    auto r = make_record("chains.lower_bound", inst);
    r.values["t"] = t;
    r.values["n"] = rep.n;
    r.values["count"] = rep.count;
    r.values["lower"] = rep.lower;
    r.values["threshold"] = rep.threshold;
    r.values["hypothesis_met"] = rep.hypothesis_met;
    r.values["inequality_holds"] = rep.inequality_holds;
    r.status = std::string(to_string(rep.verdict));
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckRecord> chain_checks(const Instance& inst, const ChainSweep& sweep) {
  std::vector<CheckRecord> out;
  const auto& type = sweep.type;
  type.check_against(inst.params);

  {
    const Stopwatch clock;
    auto r = make_record("chains.count", inst);
    r.values["t"] = residues_json(type.distances());
    r.values["k"] = type.length();
    const auto dp = chain_count_dp(inst.set, type);
    r.values["count"] = dp.count;
    r.status = "info";
    if (sweep.oracle) {
      try {
        const auto oracle = chain_count_oracle(inst.set, type);
        r.values["oracle"] = oracle;
        r.status = status_from(oracle == dp.count);
      } catch (const ScaleGuardError&) {
        r.values["oracle"] = "refused";
      }
    }
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  }

  auto append = [&out](std::vector<CheckRecord> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  append(main_theorem_check(inst, type));
  if (type.is_constant()) {
    append(recurrence_checks(inst, type[0], sweep.recurrence_k));
    append(upper_bound_checks(inst, type[0], sweep.bound_n));
    append(lower_bound_checks(inst, type[0], sweep.bound_n));
  }
  return out;
}

std::vector<CheckRecord> path_checks(const Instance& inst, const PathSweep& sweep) {
  std::vector<CheckRecord> out;
  std::vector<std::uint64_t> totals{inst.set.size()};
  const std::size_t safe = safe_length(inst.set, sweep.t);
  const auto chains = constant_chain_counts(inst.set, sweep.t, std::min(sweep.max_k, safe));

  for (std::size_t k = 1; k <= sweep.max_k; ++k) {
    const auto type = ChainType::constant(sweep.t, k);
    const long double estimate = path_search_estimate(inst.set, type);
    if (estimate > static_cast<long double>(kEnumerationBudget)) {
      Json v;
      v["t"] = sweep.t;
      v["k"] = k;
      v["search_estimate"] = static_cast<double>(estimate);
      out.push_back(refused_record("paths.count", inst, v, "search estimate exceeds enumeration budget"));
      break;
    }
    const Stopwatch clock;
    const auto profile = nonoverlap_count(inst.set, type);
    auto r = make_record("paths.count", inst);
    r.values["t"] = sweep.t;
    r.values["k"] = k;
    r.values["total"] = profile.total;
    if (k < chains.size()) {
      r.values["chain_count"] = chains[k];
      r.status = status_from(profile.total <= chains[k]);
    }
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
    totals.push_back(profile.total);
  }
  const std::size_t counted = totals.size() - 1;

  if (sweep.recurrence) {
    for (std::size_t n = 1; n < counted; ++n) {
      const Stopwatch clock;
      const auto rep = verify_path_recurrence(inst.set, n, sweep.t);
      auto r = make_record("paths.recurrence", inst);
      r.values["t"] = sweep.t;
      r.values["n"] = rep.n;
      r.values["next_total"] = rep.next_total;
      r.values["total"] = rep.total;
      r.values["bilinear"] = rep.bilinear;
      r.values["rhs"] = rep.rhs;
      r.status = status_from(rep.holds);
      r.elapsed_ms = clock.ms();
      out.push_back(std::move(r));
    }
  }

  if (sweep.corollary) {
    for (std::size_t k = 1; k <= counted; ++k) {
      const Stopwatch clock;
      const auto rep = corollary_report(inst.set, k, totals[k]);
      auto r = make_record("paths.corollary", inst);
      r.values["t"] = sweep.t;
      r.values["k"] = rep.k;
      r.values["total"] = rep.total;
      r.values["lower"] = rep.lower;
      r.values["threshold"] = rep.threshold;
      r.values["hypothesis_met"] = rep.hypothesis_met;
      r.values["inequality_holds"] = rep.inequality_holds;
      r.values["positive"] = rep.positive;
      r.status = std::string(to_string(rep.verdict));
      r.elapsed_ms = clock.ms();
      out.push_back(std::move(r));
    }
  }

  if (sweep.witness && counted == sweep.max_k) {
    const Stopwatch clock;
    const auto type = ChainType::constant(sweep.t, sweep.max_k);
    const auto witness = extract_path(inst.set, type);
    auto r = make_record("paths.witness", inst);
    r.values["t"] = sweep.t;
    r.values["k"] = sweep.max_k;
    r.values["found"] = witness.has_value();
    if (witness) {
      Json vertices = Json::array();
      for (const auto& v : witness->vertices) vertices.push_back(point_json(v));
      r.values["vertices"] = vertices;
      r.status = status_from(is_valid_path(*witness, inst.set));
    } else {
      r.status = status_from(totals[sweep.max_k] == 0);
    }
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  }

  if (sweep.longest && !inst.set.empty()) {
    const Stopwatch clock;
    const std::size_t cap = std::min<std::size_t>(inst.set.size() - 1, 64);
    const auto obs = longest_path_observed(inst.set, sweep.t, cap);
    auto r = make_record("paths.longest_observed", inst);
    r.values["t"] = sweep.t;
    r.values["cap"] = cap;
    r.values["length"] = obs.length;
    r.values["exhaustive"] = obs.exhaustive;
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckRecord> typed_path_checks(const Instance& inst, const ChainType& type) {
  type.check_against(inst.params);
  std::vector<CheckRecord> out;
  const long double estimate = path_search_estimate(inst.set, type);
  if (estimate > static_cast<long double>(kEnumerationBudget)) {
    Json v;
    v["t"] = residues_json(type.distances());
    v["k"] = type.length();
    v["search_estimate"] = static_cast<double>(estimate);
    out.push_back(refused_record("paths.count", inst, v, "search estimate exceeds enumeration budget"));
    return out;
  }
  const Stopwatch clock;
  const auto profile = nonoverlap_count(inst.set, type);
  const auto chains = chain_count_dp(inst.set, type);
  auto r = make_record("paths.count", inst);
  r.values["t"] = residues_json(type.distances());
  r.values["k"] = type.length();
  r.values["total"] = profile.total;
  r.values["chain_count"] = chains.count;
  r.status = status_from(profile.total <= chains.count);
  r.elapsed_ms = clock.ms();
  out.push_back(std::move(r));

  const Stopwatch witness_clock;
  const auto witness = extract_path(inst.set, type);
  auto w = make_record("paths.witness", inst);
  w.values["t"] = residues_json(type.distances());
  w.values["k"] = type.length();
  w.values["found"] = witness.has_value();
  if (witness) {
    Json vertices = Json::array();
    for (const auto& v : witness->vertices) vertices.push_back(point_json(v));
    w.values["vertices"] = vertices;
    w.status = status_from(is_valid_path(*witness, inst.set));
  } else {
    w.status = status_from(profile.total == 0);
  }
  w.elapsed_ms = witness_clock.ms();
  out.push_back(std::move(w));
  return out;
}

std::vector<CheckRecord> tail_checks(const Instance& inst, const DegreeProfile& profile) {
  std::vector<CheckRecord> out;
  const std::uint32_t q = inst.params.q();
  for (Residue j = 1; j < q; ++j) {
    const Stopwatch clock;
    const std::uint64_t last = profile.max_degree(j) + 1;
    std::optional<std::uint64_t> first_violation;
    double worst_margin = 0.0;
    for (std::uint64_t n = 0; n <= last; ++n) {
      const auto rep = tail_bound_report(profile, n);
      const auto& entry = rep.entries.at(j - 1);
      const double margin = static_cast<double>(entry.tail) - rep.bound;
      if (n == 0 || margin < worst_margin) worst_margin = margin;
      if (!entry.holds && !first_violation) first_violation = n;
    }
    auto r = make_record("stars.tail_bound", inst);
    r.values["j"] = j;
    r.values["max_degree"] = profile.max_degree(j);
    r.values["n_checked"] = last + 1;
    r.values["tails"] = Json(std::vector<std::size_t>(profile.tails(j).begin(), profile.tails(j).end()));
    r.values["worst_margin"] = worst_margin;
    r.values["first_violation"] = first_violation ? Json(*first_violation) : Json(nullptr);
    r.status = status_from(!first_violation);
    r.elapsed_ms = clock.ms();
    out.push_back(std::move(r));
  }
  const auto mid = tail_intermediate(profile, 1);
  auto r = make_record("stars.tail_intermediate", inst);
  r.values["j"] = 1;
  r.values["second_moment"] = mid.second_moment;
  r.values["stated_ceiling"] = mid.stated_ceiling;
  r.values["within"] = within_upper(mid.second_moment, mid.stated_ceiling);
  out.push_back(std::move(r));
  return out;
}

std::vector<CheckRecord> star_checks(const Instance& inst, const StarSpec& spec) {
  spec.check_against(inst.params);
  const Stopwatch clock;
  const auto rep = verify_star_theorem(inst.set, spec);
  auto r = make_record("stars.theorem", inst);
  r.values["t"] = residues_json(spec.distances());
  r.values["k"] = rep.k;
  r.values["nu_k"] = rep.count ? Json(*rep.count) : Json("refused");
  r.values["evidence"] = std::string(to_string(rep.evidence));
  r.values["certificate_center"] =
      rep.certificate_center ? index_json(*rep.certificate_center, inst.params) : Json(nullptr);
  r.values["first"] = statement_json(rep.first);
  r.values["second"] = statement_json(rep.second);
  r.values["positive"] = rep.positive;
  r.status = std::string(to_string(rep.verdict));
  r.elapsed_ms = clock.ms();
  return {r};
}

Report cmd_sphere(const RunConfig& config) {
  const FieldParams params(config.q, config.d);
  std::vector<Residue> radii;
  if (config.all_t) {
    for (Residue t = 1; t < config.q; ++t) radii.push_back(t);
  } else {
    radii = config.t.empty() ? std::vector<Residue>{1} : config.t;
  }
  for (Residue t : radii) {
    if (t == 0) throw DegenerateDistance("t = 0 is degenerate: S_0 is not a sphere of nonzero radius");
    if (t >= config.q) throw InvalidArgument("t must be a residue in 1..q-1");
  }
  auto rows = parallel_map(radii.size(), [&](std::size_t i) { return sphere_checks(params, radii[i]); });
  return finish(Report("sphere", config.to_json()), std::move(rows));
}

Report cmd_dft(const RunConfig& config) {
  const auto instances = instances_for(config);
  auto rows = parallel_map(instances.size(), [&](std::size_t i) {
    const auto& inst = instances[i];
    std::vector<CheckRecord> out;
    const auto f = indicator_function(inst.set);

    Stopwatch clock;
    const auto fast = dft(f);
    const double fast_ms = clock.ms();
    auto t1 = make_record("dft.fast", inst);
    t1.values["zero_frequency"] = fast[0].real();
    t1.status = "info";
    t1.elapsed_ms = fast_ms;
    out.push_back(std::move(t1));

    const auto total = static_cast<long double>(inst.params.size());
    const long double direct_cost = total * total;
    if (direct_cost <= static_cast<long double>(kEnumerationBudget)) {
      clock = Stopwatch();
      const auto direct = dft_direct(f);
      auto r = make_record("dft.direct", inst);
      double deviation = 0.0;
      for (std::size_t m = 0; m < fast.size(); ++m) deviation = std::max(deviation, std::abs(fast[m] - direct[m]));
      r.values["max_deviation"] = deviation;
      r.values["tolerance"] = 1e-9;
      r.status = status_from(deviation < 1e-9);
      r.elapsed_ms = clock.ms();
      out.push_back(std::move(r));
    } else {
      Json v;
      v["direct_cost"] = static_cast<double>(direct_cost);
      out.push_back(refused_record("dft.direct", inst, v, "direct transform exceeds enumeration budget"));
    }

    clock = Stopwatch();
    auto p = make_record("dft.plancherel", inst);
    const double defect = plancherel_defect(f);
    p.values["defect"] = defect;
    p.values["tolerance"] = 1e-10;
    p.status = status_from(defect < 1e-10);
    p.elapsed_ms = clock.ms();
    out.push_back(std::move(p));

    clock = Stopwatch();
    const auto back = inverse_dft(fast);
    double err = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) err = std::max(err, std::abs(back[x] - f[x]));
    auto rt = make_record("dft.round_trip", inst);
    rt.values["max_error"] = err;
    rt.values["tolerance"] = 1e-10;
    rt.status = status_from(err < 1e-10);
    rt.elapsed_ms = clock.ms();
    out.push_back(std::move(rt));
    return out;
  });
  return finish(Report("dft", config.to_json()), std::move(rows));
}

Report cmd_chains(const RunConfig& config) {
  const auto type = config_type(config);
  const auto instances = instances_for(config);
  auto rows = parallel_map(instances.size(), [&](std::size_t i) {
    ChainSweep sweep;
    sweep.type = type;
    sweep.recurrence_k = type.length();
    sweep.bound_n = type.length();
    return chain_checks(instances[i], sweep);
  });
  return finish(Report("chains", config.to_json()), std::move(rows));
}

Report cmd_paths(const RunConfig& config) {
  const auto type = config_type(config);
  const auto instances = instances_for(config);
  auto rows = parallel_map(instances.size(), [&](std::size_t i) {
    const auto& inst = instances[i];
    type.check_against(inst.params);
    if (!type.is_constant()) return typed_path_checks(inst, type);
    PathSweep sweep;
    sweep.t = type[0];
    sweep.max_k = type.length();
    sweep.witness = true;
    sweep.longest = true;
    return path_checks(inst, sweep);
  });
  return finish(Report("paths", config.to_json()), std::move(rows));
}

Report cmd_stars(const RunConfig& config) {
  const StarSpec spec(config_star_distances(config));
  const auto instances = instances_for(config);
  auto rows = parallel_map(instances.size(), [&](std::size_t i) {
    const auto& inst = instances[i];
    auto out = star_checks(inst, spec);
    const DegreeProfile profile(inst.set);
    for (auto& r : tail_checks(inst, profile)) out.push_back(std::move(r));
    return out;
  });
  return finish(Report("stars", config.to_json()), std::move(rows));
}

Report cmd_corpus(const RunConfig& config) {
  Report report("corpus", config.to_json());
  for (const auto& entry : corpus()) {
    const auto set = generate(entry.spec, entry.params);
    CheckRecord r = make_record("corpus.entry", entry.params, entry.key);
    r.set_size = set.size();
    r.values["corpus"] = kCorpusVersion;
    for (const auto& [key, value] : entry.spec.to_key_values()) r.values[key] = value;
    report.add(std::move(r));
  }
  return report;
}

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("FQDIST_MAX_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v >= 1) n = static_cast<unsigned>(std::min<long>(v, 256));
    } catch (const std::exception&) {
    }
  }
  return n;
}

}  // namespace fqdist
