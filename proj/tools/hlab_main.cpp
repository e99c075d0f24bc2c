#include "hlab/acceptance.hpp"
#include "hlab/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace {

constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Config settings gathered from --config, dotted-key flags and short aliases.
struct SettingsOptions {
  std::string config_file;
  std::map<std::string, std::string> dotted;
  std::map<std::string, std::string> aliases;

  void attach(CLI::App& cmd, bool require_file) {
    auto* file = cmd.add_option("--config", config_file, "key=value config file");
    if (require_file) file->required();
    for (const auto key : hlab::config_keys()) {
      cmd.add_option("--" + std::string(key), dotted[std::string(key)], "override " + std::string(key));
    }
    const std::pair<const char*, const char*> short_forms[] = {
        {"--alg", "alg.kind"},      {"--bench", "bench.kind"}, {"--n", "bench.n"},      {"--k", "bench.k"},
        {"--noise", "noise.kind"},  {"--p", "noise.p"},        {"--q", "noise.q"},      {"--lambda", "alg.lambda"},
        {"--mu", "alg.mu"},         {"--budget", "run.budget"}, {"--replicates", "run.replicates"},
        {"--seed", "run.seed"},     {"--init", "run.init"},    {"--output", "output.path"},
        {"--format", "output.format"},
    };
    for (const auto& [flag, key] : short_forms) cmd.add_option(flag, aliases[key], std::string("alias of ") + key);
  }

  hlab::ExperimentConfig resolve() const {
    hlab::ConfigMap settings;
    if (!config_file.empty()) settings = hlab::read_config_file(config_file);
    for (const auto& source : {&dotted, &aliases}) {
      for (const auto& [key, value] : *source) {
        if (!value.empty()) settings[key] = value;
      }
    }
    return hlab::config_from_map(settings);
  }
};

void emit(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hlab::Error("cannot write '" + path + "'");
  out << payload;
}

std::set<int> parse_id_list(const std::string& text) {
  std::set<int> ids;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) ids.insert(std::stoi(item));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime experiments, exact oracles and statistical checks for randomized search heuristics", "hlab"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment and write per-replicate CSV or JSON");
  SettingsOptions run_opts;
  run_opts.attach(*run, true);
  std::size_t threads = 0;
  run->add_option("--threads", threads, "worker threads (default: HEURISTICS_LAB_THREADS or hardware)");

  auto* oracle = app.add_subcommand("oracle", "Exact Markov-chain hitting times and path probabilities as JSON");
  SettingsOptions oracle_opts;
  oracle_opts.attach(*oracle, false);
  std::string start;
  std::uint64_t horizon = 0;
  std::string chain = "auto";
  bool emit_matrix = false;
  oracle->add_option("--start", start, "start bit string (default: uniform start distribution)");
  oracle->add_option("--horizon", horizon, "path probability horizon (default n)");
  oracle->add_option("--chain", chain, "lumped, full or auto")->check(CLI::IsMember({"auto", "lumped", "full"}));
  oracle->add_flag("--emit-matrix", emit_matrix, "include the transition matrix");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite; exit 1 on any failure");
  std::string only;
  verify->add_option("--only", only, "comma-separated criterion numbers");

  auto* dist = app.add_subcommand("dist", "Runtime quantiles and dominance verdict against n*Geom((c/e)^n)");
  SettingsOptions dist_opts;
  dist_opts.attach(*dist, false);
  double confidence = 0.99;
  dist->add_option("--confidence", confidence, "DKW confidence level")->check(CLI::Range(0.5, 0.999999));
  dist->add_option("--threads", threads, "worker threads");

  auto* drift = app.add_subcommand("drift", "Per-level one-step drift estimates with the d0 threshold");
  SettingsOptions drift_opts;
  drift_opts.attach(*drift, false);
  std::vector<std::size_t> levels;
  std::size_t samples = 10000;
  std::optional<double> epsilon;
  drift->add_option("--levels", levels, "distance levels")->delimiter(',')->required();
  drift->add_option("--samples", samples, "samples per level");
  drift->add_option("--epsilon", epsilon, "exponent in d0 = 2e^2 n^epsilon / lambda");
  drift->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  hlab::ExperimentConfig config;
  try {
    if (*run) config = run_opts.resolve();
    if (*oracle) config = oracle_opts.resolve();
    if (*dist) config = dist_opts.resolve();
    if (*drift) config = drift_opts.resolve();
  } catch (const hlab::Error& e) {
    std::cerr << "hlab: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*run) {
      hlab::write_result(hlab::run_experiment(config, threads));
    } else if (*oracle) {
      hlab::OracleQuery query;
      if (!start.empty()) query.start = hlab::BitString::parse(start);
      if (horizon > 0) query.horizon = horizon;
      query.chain = chain;
      query.emit_matrix = emit_matrix;
      emit(hlab::oracle_report(config, query), config.output.path);
    } else if (*verify) {
      const auto results = hlab::run_acceptance(parse_id_list(only), std::cout);
      std::size_t failed = 0;
      for (const auto& r : results) failed += r.passed ? 0 : 1;
      std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
      return failed == 0 ? 0 : kFailure;
    } else if (*dist) {
      emit(hlab::dist_report(hlab::run_experiment(config, threads), confidence), config.output.path);
    } else if (*drift) {
      const auto estimate = hlab::estimate_drift(config.algorithm, config.benchmark, config.noise, levels, samples,
                                                 config.master_seed, epsilon, threads);
      emit(hlab::drift_report(estimate, config), config.output.path);
    }
  } catch (const std::exception& e) {
    std::cerr << "hlab: " << e.what() << "\n";
    return kFailure;
  }
  return 0;
}
