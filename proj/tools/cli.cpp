#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fqdist/acceptance.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/runner.hpp"

namespace fqdist::cli {

namespace {

struct Options {
  std::uint32_t q = 3;
  std::uint32_t d = 2;
  std::vector<std::string> t;
  std::size_t k = 1;
  std::map<std::string, std::string> ensemble;
  bool full = false;
  bool corpus = false;
  bool all_t = false;
  std::string format = "json";
  std::string out;
  std::string fault;
  bool no_rerun = false;
};

int exit_for(const Report& report) {
  if (report.any_violation()) return kBoundViolation;
  if (report.count("refused") > 0) return kScaleGuard;
  return kSuccess;
}

void write_report(const Report& report, const Options& opts, std::ostream& out) {
  if (opts.out.empty()) {
    report.write(out, opts.format);
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw InvalidArgument("cannot open output file '" + opts.out + "'");
  report.write(file, opts.format);
}

RunConfig to_run_config(const std::string& command, const Options& opts) {
  RunConfig config;
  config.command = command;
  config.q = opts.q;
  config.d = opts.d;
  config.k = opts.k;
  config.all_t = opts.all_t;
  config.use_corpus = opts.corpus;
  config.format = opts.format;
  config.out = opts.out;
  if (!opts.t.empty()) {
    std::string joined;
    for (const auto& part : opts.t) joined += (joined.empty() ? "" : ",") + part;
    config.t = parse_residue_list(joined);
  }

  auto kv = opts.ensemble;
  if (opts.full) {
    if (kv.count("ensemble") && kv["ensemble"] != "full") {
      throw InvalidArgument("--full conflicts with --ensemble " + kv["ensemble"]);
    }
    kv["ensemble"] = "full";
  } else if (!kv.count("ensemble")) {
    if (kv.count("points")) {
      kv["ensemble"] = "explicit";
    } else if (kv.count("size")) {
      kv["ensemble"] = "random_size";
    } else if (kv.count("density")) {
      kv["ensemble"] = "random_density";
    }
  }
  config.ensemble = EnsembleSpec::from_key_values(kv);
  // Validates q and d before any work starts.
  if (!config.use_corpus) FieldParams(config.q, config.d);
  return config;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of distance-chain, path and star counts in F_q^d", "fqdist"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--q", opts.q, "Field size, an odd prime");
  app.add_option("--d", opts.d, "Dimension");
  app.add_option("--t", opts.t, "Distance or comma-separated chain/star type")->delimiter(',');
  app.add_option("--k", opts.k, "Chain, path or star length when --t is a single value or absent");
  for (const char* key : {"ensemble", "size", "seed", "density", "radii", "residues", "axis", "offset", "points"}) {
    app.add_option_function<std::string>(
        std::string("--") + key, [&opts, key](const std::string& v) { opts.ensemble[key] = v; },
        std::string("Ensemble parameter '") + key + "'");
  }
  app.add_flag("--full", opts.full, "Use the whole space as E");
  app.add_flag("--corpus", opts.corpus, "Run over the fixed acceptance corpus");
  app.add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opts.out, "Report path (default: standard output)");

  auto* sphere = app.add_subcommand("sphere", "Sphere sizes and Fourier decay");
  sphere->add_flag("--all-t", opts.all_t, "Every nonzero radius");
  app.add_subcommand("dft", "Fast and direct transforms of an indicator, with identities");
  app.add_subcommand("chains", "Chain counts, oracle agreement, theorem and lemma checks");
  app.add_subcommand("paths", "Non-overlapping path counts, witness and corollary checks");
  app.add_subcommand("stars", "Star counts, degree tails and star theorem checks");
  auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance suite");
  acceptance->add_option("--inject-fault", opts.fault, "Deliberate defect for testing the suite")
      ->check(CLI::IsMember({std::string(kFaultSphereOffByOne)}));
  acceptance->add_flag("--no-rerun", opts.no_rerun, "Skip the determinism rerun");
  app.add_subcommand("corpus", "List the acceptance corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidConfig;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    if (command == "acceptance") {
      AcceptanceOptions options;
      options.fault = opts.fault;
      options.determinism_rerun = !opts.no_rerun;
      const auto result = run_acceptance(options);
      for (const auto& c : result.criteria) {
        err << (c.passed ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << "  checks=" << c.checks
            << " violations=" << c.violations << " vacuous=" << c.vacuous << " refused=" << c.refused << '\n';
      }
      write_report(result.report, opts, out);
      if (const auto failure = result.first_failure()) {
        err << "fqdist: acceptance failed; first failed invariant: " << *failure << '\n';
        return kBoundViolation;
      }
      return kSuccess;
    }

    const auto config = to_run_config(command, opts);
    std::optional<Report> report;
    if (command == "sphere") report = cmd_sphere(config);
    if (command == "dft") report = cmd_dft(config);
    if (command == "chains") report = cmd_chains(config);
    if (command == "paths") report = cmd_paths(config);
    if (command == "stars") report = cmd_stars(config);
    if (command == "corpus") report = cmd_corpus(config);
    write_report(*report, opts, out);
    return exit_for(*report);
  } catch (const InvalidArgument& e) {
    err << "fqdist: invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const ScaleGuardError& e) {
    err << "fqdist: refused: " << e.what() << '\n';
    return kScaleGuard;
  }
}

}  // namespace fqdist::cli
