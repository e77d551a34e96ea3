#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "subfrac/eigen.hpp"
#include "subfrac/experiments.hpp"
#include "subfrac/version.hpp"

namespace {

// exit codes: 0 ok, 2 config error, 3 non-convergence, 4 invariant violation
constexpr int kOk = 0, kConfigError = 2, kNonConvergence = 3, kInvariant = 4;

int run_cmd(const std::string& experiment, const std::string& config_file,
            const std::vector<std::pair<std::string, std::string>>& overrides, bool quiet) {
  subfrac::ExperimentConfig cfg;
  try {
    if (!config_file.empty()) cfg = subfrac::ExperimentConfig::from_file(config_file);
    if (!experiment.empty()) cfg.experiment = experiment;
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    const auto rows = subfrac::run_experiment(cfg);
    if (!quiet) {
      std::printf("%-32s %-12s %12s %12s %8s\n", "check", "param", "lhs", "margin", "pass");
      for (const auto& r : rows)
        std::printf("%-32s %-12g %12.6g %12.6g %8s\n", r.check_id.c_str(), r.param, r.lhs,
                    r.margin, r.pass ? "yes" : "NO");
      std::printf("run %s: %zu checks -> %s/%s-%s.csv\n", cfg.run_id().c_str(), rows.size(),
                  cfg.out.c_str(), cfg.experiment.c_str(), cfg.run_id().c_str());
    }
    for (const auto& r : rows)
      if (!r.pass) return kInvariant;
    return kOk;
  } catch (const subfrac::ConfigError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kConfigError;
  } catch (const subfrac::NonConvergenceError& e) {
    std::fprintf(stderr, "error: nonconvergence: %s\n", e.what());
    return kNonConvergence;
  } catch (const subfrac::InvariantViolation& e) {
    std::fprintf(stderr, "error: invariant: %s\n", e.what());
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional p-sub-Laplacian toolkit"};
  app.set_version_flag("--version", subfrac::kVersion);
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run an experiment");
  std::string experiment, config_file;
  run->add_option("experiment", experiment,
                  "sobolev-scan | hardy-mu | picone | levelset | lemma-lem1 | eigen | lyapunov");
  run->add_option("--config", config_file, "key=value config file (flags override it)");
  std::vector<std::pair<std::string, std::string>> overrides;
  bool quiet = false;
  run->add_flag("--quiet", quiet, "suppress the summary table");
  for (const char* key : {"group", "norm", "s", "p", "gamma", "theta", "n", "R", "resolution",
                          "seed", "out"}) {
    auto cb = [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); };
    run->add_option_function<std::string>(std::string("--") + key, cb);
  }
  bool deterministic = false;
  run->add_flag("--deterministic", deterministic, "fixed summation order and seeds (default on)");

  // report
  auto* report = app.add_subcommand("report", "summaries and plot data from a ledger");
  std::string ledger, report_out = "results";
  report->add_option("--ledger", ledger, "ledger.jsonl path")->required();
  report->add_option("--out", report_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (deterministic) overrides.emplace_back("deterministic", "1");
    return run_cmd(experiment, config_file, overrides, quiet);
  }
  if (report->parsed()) {
    try {
      subfrac::write_report(ledger, report_out);
      return kOk;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: report: %s\n", e.what());
      return 1;
    }
  }
  return kOk;
}
