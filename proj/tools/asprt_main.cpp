// Command line front end: loads an experiment description, runs one of the
// four drivers, and writes the result files into the output directory.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "asprt/experiments.hpp"

namespace {

int exit_code_for(const std::string& category) {
  if (category == "config") return 2;
  if (category == "validation") return 3;
  if (category == "scenario") return 4;
  if (category == "conditioning") return 5;
  if (category == "degenerate_design") return 6;
  if (category == "tuning") return 7;
  if (category == "io") return 8;
  return 9;
}

int fail(const std::string& category, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = category;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
  return exit_code_for(category);
}

struct Options {
  std::string command;
  std::string config_path;
  std::string output_dir = ".";
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

// Precedence: --threads flag, then the ASPRT_THREADS variable, then 0 (auto).
int resolve_thread_request(const Options& opt) {
  if (opt.threads) return *opt.threads;
  if (const char* env = std::getenv("ASPRT_THREADS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw asprt::ConfigError(std::string("ASPRT_THREADS is not an integer: '") +
                               env + "'");
    }
  }
  return 0;
}

int run(const Options& opt) {
  asprt::ExperimentConfig cfg = asprt::load_config(opt.config_path);
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.seed) cfg.master_seed = *opt.seed;
  const int threads = resolve_thread_request(opt);

  const std::filesystem::path out_dir(opt.output_dir);
  nlohmann::ordered_json echo;
  echo["command"] = opt.command;

  if (opt.command == "accuracy") {
    const auto rows = asprt::run_accuracy(cfg, threads);
    const auto path = asprt::write_accuracy_csv(out_dir, cfg, rows);
    echo["rows"] = rows.size();
    echo["outputs"] = {path.string()};
  } else if (opt.command == "efficiency") {
    const auto rows = asprt::run_efficiency(cfg, threads);
    const auto path = asprt::write_efficiency_csv(out_dir, cfg, rows);
    echo["rows"] = rows.size();
    echo["outputs"] = {path.string()};
  } else if (opt.command == "predict") {
    const auto result = asprt::run_predict(cfg, threads);
    const auto path = asprt::write_predict_json(out_dir, cfg, result);
    echo["xi_star"] = result.xi_star;
    echo["asn"] = {{"h0", result.asn0}, {"h1", result.asn1}};
    echo["outputs"] = {path.string()};
  } else {
    const auto result = asprt::run_simulate(cfg, threads);
    const auto paths = asprt::write_simulate_outputs(out_dir, cfg, result);
    echo["h0"] = {{"alpha", result.h0.empirical_alpha},
                  {"asn", result.h0.asn_empirical}};
    echo["h1"] = {{"alpha", result.h1.empirical_alpha},
                  {"asn", result.h1.asn_empirical}};
    auto& outputs = echo["outputs"] = nlohmann::ordered_json::array();
    for (const auto& p : paths) outputs.push_back(p.string());
  }

  std::cout << echo.dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential detection with coarsely quantized receivers"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment description file")
        ->required();
    sub->add_option("--output", opt.output_dir,
                    "directory for result files (default: .)");
    sub->add_option("--trials", opt.trials, "override test.trials");
    sub->add_option("--seed", opt.seed, "override test.master_seed");
    sub->add_option("--threads", opt.threads,
                    "worker threads, 0 = all cores (overrides ASPRT_THREADS)");
  };
  add_common(app.add_subcommand(
      "accuracy", "sweep a hypothesis parameter, tabulate ALLR mean errors"));
  add_common(app.add_subcommand(
      "efficiency", "sweep a scenario parameter, tabulate efficiency ratios"));
  add_common(app.add_subcommand(
      "simulate", "Monte Carlo error rate and sample-size measurement"));
  add_common(app.add_subcommand(
      "predict", "analytic operating characteristics for one design"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    return fail("config", e.what());
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    return run(opt);
  } catch (const asprt::Error& e) {
    return fail(e.category(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
}
