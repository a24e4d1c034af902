#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "radlab/config.hpp"
#include "radlab/experiments.hpp"

using namespace radlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("radlab_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json report_of(const fs::path& dir) {
  return nlohmann::json::parse(slurp(dir / "report.json"));
}

const char* kSupportCfg = R"(
# Euclidean support check
metric.n = 3
metric.psi = [1]
metric.eps = 4.0
boundary.kind = sphere
lambda_max = 0
data.f2.kind = bump
data.f2.support = [0.5, 1.0]
data.f2.width = 0.05
grid.T = 1.2
grid.N = 128
)";

}  // namespace

TEST_CASE("config parsing: types, comments, canonical form") {
  Config cfg = Config::parse_string(
      "a.number = 2.5\n"
      "b.list = [1, 2, 3]  # trailing comment\n"
      "c.flag = true\n"
      "d.name = torus\n");
  CHECK(cfg.number("a.number") == 2.5);
  CHECK(cfg.list("b.list") == std::vector<double>{1, 2, 3});
  CHECK(cfg.flag_or("c.flag", false));
  CHECK(cfg.str("d.name") == "torus");
  CHECK_THROWS_AS(cfg.number("d.name"), ConfigError);
  CHECK_THROWS_AS(cfg.number("missing"), ConfigError);

  // canonical text parses back to the same hash
  Config again = Config::parse_string(cfg.canonical());
  CHECK(again.hash() == cfg.hash());
}

TEST_CASE("config parsing errors") {
  CHECK_THROWS_AS(Config::parse_string("key_without_value\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("bad key! = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("l = [1, oops]\n"), ConfigError);
  Config cfg = Config::parse_string("n = 2.5\n");
  CHECK_THROWS_AS(cfg.integer("n"), ConfigError);
}

TEST_CASE("unknown keys are rejected with exit code 2") {
  fs::path dir = temp_dir("unknown_key");
  Config cfg = Config::parse_string(std::string(kSupportCfg) + "grid.typo_key = 1\n");
  RunOptions opts;
  opts.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg, "verify-support", opts);
  CHECK(out.exit_code == 2);
  auto rep = report_of(dir);
  CHECK(rep["error"].get<std::string>().find("typo_key") != std::string::npos);
}

TEST_CASE("invalid metric is a config error") {
  fs::path dir = temp_dir("bad_metric");
  Config cfg = Config::parse_string("metric.psi = [2]\n");
  RunOptions opts;
  opts.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg, "solve", opts);
  CHECK(out.exit_code == 2);
  auto rep = report_of(dir);
  CHECK(rep["error"].get<std::string>().find("psi(0) must equal 1") != std::string::npos);
}

TEST_CASE("full-precision serialization") {
  CHECK(format_full(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_full(2.0) == "2");
}

TEST_CASE("verify-support runs green on the Euclidean bump") {
  fs::path dir = temp_dir("support_run");
  RunOptions opts;
  opts.out_dir = dir.string();
  RunOutcome out = run_experiment(Config::parse_string(kSupportCfg), "verify-support", opts);
  CHECK(out.exit_code == 0);
  auto rep = report_of(dir);
  CHECK(rep["verdict"] == "PASS");
  CHECK(rep["x1"].get<double>() == doctest::Approx(0.5));
  CHECK(std::abs(rep["mu_star"].get<double>() - 0.5) <= 2.0 * (1.2 / 128));
  CHECK(fs::exists(dir / "fields.csv"));

  SUBCASE("two runs produce identical CSV bytes") {
    fs::path dir2 = temp_dir("support_run2");
    RunOptions opts2;
    opts2.out_dir = dir2.string();
    run_experiment(Config::parse_string(kSupportCfg), "verify-support", opts2);
    CHECK(slurp(dir / "fields.csv") == slurp(dir2 / "fields.csv"));
    CHECK(report_of(dir)["config_hash"] == report_of(dir2)["config_hash"]);
  }
  SUBCASE("re-running from the embedded resolved config reproduces the verdict") {
    fs::path dir3 = temp_dir("support_run3");
    RunOptions opts3;
    opts3.out_dir = dir3.string();
    Config resolved = Config::parse_string(report_of(dir)["resolved_config"]);
    RunOutcome out3 = run_experiment(resolved, "verify-support", opts3);
    CHECK(out3.exit_code == 0);
    CHECK(report_of(dir3)["verdict"] == "PASS");
    CHECK(report_of(dir3)["config_hash"] == report_of(dir)["config_hash"]);
    CHECK(slurp(dir / "fields.csv") == slurp(dir3 / "fields.csv"));
  }
}

TEST_CASE("convergence experiment reports order two") {
  fs::path dir = temp_dir("conv_run");
  Config cfg = Config::parse_string(
      "metric.n = 3\n"
      "metric.psi = [1, 0, 1]\n"
      "metric.eps = 4.0\n"
      "grid.T = 0.5\n"
      "convergence.Ns = [32, 64, 128]\n"
      "convergence.lambda = 2\n");
  RunOptions opts;
  opts.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg, "convergence", opts);
  CHECK(out.exit_code == 0);
  auto rep = report_of(dir);
  for (const auto& p : rep["orders"]) {
    CHECK(p.get<double>() >= 1.8);
    CHECK(p.get<double>() <= 2.2);
  }
  CHECK(fs::exists(dir / "convergence.csv"));
}

TEST_CASE("solve experiment writes residuals and optional dumps") {
  fs::path dir = temp_dir("solve_run");
  Config cfg = Config::parse_string(
      "metric.psi = [1]\n"
      "metric.eps = 4.0\n"
      "boundary.kind = sphere\n"
      "lambda_max = 2\n"
      "data.f2.kind = bump\n"
      "data.f2.support = [0.3, 0.6]\n"
      "data.f2.width = 0.06\n"
      "grid.T = 0.8\n"
      "grid.N = 32\n"
      "output.dump_solution = true\n");
  RunOptions opts;
  opts.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg, "solve", opts);
  CHECK(out.exit_code == 0);
  auto rep = report_of(dir);
  CHECK(rep["modes"].size() == 2);  // lambda = 0 and 2
  CHECK(fs::exists(dir / "solution_k1.csv"));
  CHECK(fs::exists(dir / "solution_k2.csv"));
  std::string head = slurp(dir / "solution_k1.csv").substr(0, 7);
  CHECK(head == "mu,nu,w");
}

TEST_CASE("experiment name mismatch is rejected") {
  fs::path dir = temp_dir("mismatch");
  Config cfg = Config::parse_string("experiment = solve\n");
  RunOptions opts;
  opts.out_dir = dir.string();
  CHECK(run_experiment(cfg, "convergence", opts).exit_code == 2);
}
