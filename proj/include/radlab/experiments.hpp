// Experiment orchestration: builds domain objects from a Config, runs one of
// the experiment kinds, writes deterministic CSV artifacts plus a JSON report
// (embedding the fully resolved config and its hash), and maps failures to
// exit codes: 0 pass, 1 verdict fail, 2 invalid config, 3 numerical failure.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radlab/config.hpp"
#include "radlab/geometry.hpp"
#include "radlab/goursat.hpp"
#include "radlab/profile.hpp"

namespace radlab {

struct RunOutcome {
  int exit_code = 0;
  std::string report_path;
};

struct RunOptions {
  std::string out_dir = "out";
  int threads = 0;          // 0 keeps the runtime default
  bool override_seed = false;
  std::uint64_t seed = 0;
};

// `experiment` is one of: solve, verify-support, carleman-sweep, lemma-check,
// convergence, oracle-compare
RunOutcome run_experiment(Config cfg, const std::string& experiment, const RunOptions& opts);

// pieces shared with the acceptance suite
WarpedMetric metric_from_config(Config& cfg);
CharGrid grid_from_config(Config& cfg);
Profile profile_from_config(Config& cfg, const std::string& prefix);
std::vector<double> lambdas_from_config(Config& cfg);

struct ConvergenceStudy {
  std::vector<int> Ns;
  std::vector<double> errors;
  std::vector<double> orders;  // log2(e(N)/e(2N)), one fewer entry than Ns
};

// manufactured solution w = mu^2 nu^2 with matching forcing
ConvergenceStudy manufactured_convergence(const DerivedCoefficients& coeffs, double lambda,
                                          double T, const std::vector<int>& Ns,
                                          bool use_openmp = true);

}  // namespace radlab
