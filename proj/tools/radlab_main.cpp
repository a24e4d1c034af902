// radlab command line: one subcommand per experiment kind, a config file as
// the single input, artifacts (CSV + report.json) written to --out.
#include <CLI11.hpp>
#include <cstdint>
#include <string>

#include "radlab/config.hpp"
#include "radlab/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"radlab: characteristic wave solver and estimate laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  const char* names[] = {"solve",       "verify-support", "carleman-sweep",
                         "lemma-check", "convergence",    "oracle-compare"};
  const char* descs[] = {
      "solve the per-mode characteristic problems and report residuals",
      "run the full pipeline and check the support thresholds both ways",
      "sweep the weighted-estimate ratio over gamma and eigenvalues",
      "property-check the integral lemmas on a random corpus",
      "manufactured-solution order-of-accuracy study",
      "compare the Euclidean pipeline against the closed-form reference"};

  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--threads", threads, "worker thread count (0 = runtime default)");
    sub->add_option("--seed", seed, "seed for random test-function corpora")
        ->each([&](const std::string&) { seed_given = true; });
  }

  CLI11_PARSE(app, argc, argv);

  std::string experiment = app.get_subcommands().front()->get_name();

  radlab::Config cfg;
  try {
    cfg = radlab::Config::parse_file(config_path);
  } catch (const radlab::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  radlab::RunOptions opts;
  opts.out_dir = out_dir;
  opts.threads = threads;
  opts.override_seed = seed_given;
  opts.seed = seed;

  radlab::RunOutcome outcome = radlab::run_experiment(std::move(cfg), experiment, opts);
  std::printf("%s: exit %d (report: %s)\n", experiment.c_str(), outcome.exit_code,
              outcome.report_path.c_str());
  return outcome.exit_code;
}
