#include "radlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "radlab/boundary_spectrum.hpp"
#include "radlab/inequality_lab.hpp"
#include "radlab/oracle_euclidean.hpp"
#include "radlab/radiation.hpp"

namespace radlab {

namespace {

using nlohmann::json;

// keys every experiment accepts
const std::set<std::string> kCommonKeys = {
    "experiment",     "seed",
    "metric.n",       "metric.psi",        "metric.eps",
    "boundary.kind",  "boundary.params",   "boundary.eigenvalues",
    "lambda_max",     "threads",
    "grid.T",         "grid.N",            "grid.corner_cutoff",
    "data.f1.kind",   "data.f1.support",   "data.f1.width",
    "data.f1.poly",   "data.f1.alpha",
    "data.f2.kind",   "data.f2.support",   "data.f2.width",
    "data.f2.poly",   "data.f2.alpha",
    "output.dump_solution",
};

std::set<std::string> with_common(std::initializer_list<std::string> extra) {
  std::set<std::string> keys = kCommonKeys;
  for (const auto& k : extra) keys.insert(k);
  return keys;
}

bool log_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("RADLAB_LOG");
    return v != nullptr && std::string(v) == "debug";
  }();
  return on;
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::fprintf(stderr, "[radlab] %s\n", msg.c_str());
}

class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
    out_ << header << "\n";
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ",";
      out_ << format_full(values[i]);
    }
    out_ << "\n";
  }
  void raw_row(const std::string& line) { out_ << line << "\n"; }

private:
  std::ofstream out_;
};

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void resolve_common(Config& cfg, const std::string& experiment) {
  if (cfg.has("experiment")) {
    if (cfg.str("experiment") != experiment)
      throw ConfigError("config experiment '" + cfg.str("experiment") +
                        "' does not match subcommand '" + experiment + "'");
  } else {
    cfg.set_string("experiment", experiment);
  }
  cfg.number_or("seed", 12345);
  cfg.integer_or("threads", 0);
}

}  // namespace

WarpedMetric metric_from_config(Config& cfg) {
  WarpedMetric m;
  m.n = cfg.integer_or("metric.n", 3);
  m.psi = Poly::from_doubles(cfg.list_or("metric.psi", {1.0}));
  m.eps = cfg.number_or("metric.eps", 4.0);
  m.validate();
  return m;
}

CharGrid grid_from_config(Config& cfg) {
  CharGrid g;
  g.T = cfg.number_or("grid.T", 0.5);
  g.N = cfg.integer_or("grid.N", 64);
  // corner cutoff configured in units of h
  double cells = cfg.number_or("grid.corner_cutoff", 4.0);
  g.delta = cells * g.h();
  g.validate();
  return g;
}

Profile profile_from_config(Config& cfg, const std::string& prefix) {
  std::string kind = cfg.str_or(prefix + ".kind", "zero");
  if (kind == "zero") return Profile::zero();
  if (kind == "poly") return Profile::poly(cfg.list_or(prefix + ".poly", {1.0}));
  if (kind == "bump") {
    auto sup = cfg.list_or(prefix + ".support", {0.5, 1.0});
    if (sup.size() != 2) throw ConfigError(prefix + ".support must be [lo, hi]");
    double w = cfg.number_or(prefix + ".width", 0.25 * (sup[1] - sup[0]));
    return Profile::bump(sup[0], sup[1], w, cfg.list_or(prefix + ".poly", {1.0}));
  }
  if (kind == "schwartz") {
    auto sup = cfg.list_or(prefix + ".support", {0.0, 0.5});
    if (sup.size() != 2) throw ConfigError(prefix + ".support must be [lo, hi]");
    double w = cfg.number_or(prefix + ".width", 0.25 * sup[1]);
    double alpha = cfg.number_or(prefix + ".alpha", 0.3);
    return Profile::schwartz_tail(alpha, sup[1], w, cfg.list_or(prefix + ".poly", {1.0}));
  }
  throw ConfigError(prefix + ".kind must be zero|poly|bump|schwartz");
}

std::vector<double> lambdas_from_config(Config& cfg) {
  std::string kind = cfg.str_or("boundary.kind", "sphere");
  double lmax = cfg.number_or("lambda_max", 0.0);
  BoundaryModel model = [&] {
    if (kind == "sphere") return BoundaryModel::sphere2();
    if (kind == "torus")
      return BoundaryModel::torus(cfg.list_or("boundary.params", {2.0 * std::numbers::pi}));
    if (kind == "custom") return BoundaryModel::custom(cfg.list("boundary.eigenvalues"));
    throw ConfigError("boundary.kind must be sphere|torus|custom");
  }();
  std::vector<double> lams;
  for (const Mode& m : model.enumerate_modes(lmax)) lams.push_back(m.lambda);
  return lams;
}

ConvergenceStudy manufactured_convergence(const DerivedCoefficients& coeffs, double lambda,
                                          double T, const std::vector<int>& Ns,
                                          bool use_openmp) {
  ConvergenceStudy study;
  study.Ns = Ns;
  Profile q1 = Profile::poly({0, 0, 0, 0, 1});     // mu^4
  Profile q2 = Profile::poly({0, 0, 0, 2});        // 2 mu^3
  for (int N : Ns) {
    CharGrid grid{T, N, 0.0};
    DiagonalData data = diagonal_data_direct(q1, q2, grid);
    Forcing forcing = [&coeffs, lambda](double mu, double nu) {
      double r = mu + nu;
      double x = x_of_char(mu, nu);
      double w = mu * mu * nu * nu;
      return r * r * 4.0 * mu * nu - coeffs.lambda_phi_plus_B(lambda, x) * w;
    };
    ModeSolution sol = solve_mode(coeffs, lambda, data, grid, forcing, use_openmp);
    double err = max_error_against(
        sol, [](double mu, double nu) { return mu * mu * nu * nu; }, false);
    study.errors.push_back(err);
  }
  for (std::size_t i = 0; i + 1 < study.errors.size(); ++i)
    study.orders.push_back(std::log2(study.errors[i] / study.errors[i + 1]));
  return study;
}

namespace {

// ---------------------------------------------------------------- solve ----
int run_solve(Config& cfg, const std::filesystem::path& out, json& rep) {
  cfg.require_known(with_common({"tol.residual"}));
  WarpedMetric metric = metric_from_config(cfg);
  DerivedCoefficients coeffs = derive_coefficients(metric);
  CharGrid grid = grid_from_config(cfg);
  Profile f1 = profile_from_config(cfg, "data.f1");
  Profile f2 = profile_from_config(cfg, "data.f2");
  std::vector<double> lams = lambdas_from_config(cfg);
  bool dump = cfg.flag_or("output.dump_solution", false);

  DiagonalData data = build_diagonal_data(coeffs, f1, f2, grid);
  CoefficientGrid cgrid = CoefficientGrid::build(coeffs, grid);

  json modes = json::array();
  for (std::size_t k = 0; k < lams.size(); ++k) {
    log_line("solve: mode lambda=" + format_full(lams[k]));
    ModeSolution sol = solve_mode(cgrid, lams[k], data, grid);
    ResidualNorms res = discrete_residual(sol, coeffs, lams[k]);
    json jm;
    jm["k"] = k + 1;
    jm["lambda"] = lams[k];
    jm["residual_max"] = res.max_norm;
    jm["residual_l2"] = res.l2_norm;
    jm["scale"] = res.scale;
    jm["pinned_nodes"] = sol.pinned_nodes;
    modes.push_back(jm);
    if (dump) {
      CsvWriter csv(out / ("solution_k" + std::to_string(k + 1) + ".csv"), "mu,nu,w");
      for (int i = 0; i <= grid.N; ++i)
        for (int j = 0; j <= grid.N; ++j)
          csv.row({grid.coord(i), grid.coord(j), sol.at(i, j)});
    }
  }
  rep["modes"] = modes;
  rep["verdict"] = "pass";
  return 0;
}

// ------------------------------------------------------- verify-support ----
int run_verify_support(Config& cfg, const std::filesystem::path& out, json& rep) {
  cfg.require_known(with_common({"tol.support_rel", "tol.converse_slack"}));
  WarpedMetric metric = metric_from_config(cfg);
  SupportExperiment exp;
  exp.coeffs = derive_coefficients(metric);
  exp.grid = grid_from_config(cfg);
  exp.f2 = profile_from_config(cfg, "data.f2");
  exp.lambdas = lambdas_from_config(cfg);
  exp.rel_tol = cfg.number_or("tol.support_rel", 1e-6);
  exp.converse_slack = cfg.number_or("tol.converse_slack", 2.0);

  Profile f1 = profile_from_config(cfg, "data.f1");
  if (!f1.is_zero()) throw ConfigError("verify-support: odd data required (data.f1.kind = zero)");

  SupportReport sr = run_support_report(exp);

  CsvWriter csv(out / "fields.csv", "s,mu,mode_k,value");
  for (std::size_t k = 0; k < sr.per_mode_fields.size(); ++k)
    for (const auto& smp : sr.per_mode_fields[k].samples)
      csv.row({smp.s, smp.edge, static_cast<double>(k + 1), smp.value});

  rep["x1"] = sr.x1;
  rep["mu_star"] = sr.mu_star;
  rep["h"] = sr.h;
  rep["verdict"] = sr.verdict;
  rep["forward_ok"] = sr.forward_ok;
  rep["converse_ok"] = sr.converse_ok;
  json pm = json::array();
  for (const auto& m : sr.per_mode)
    pm.push_back({{"lambda", m.lambda}, {"mu_star", m.mu_star}, {"vanishes", m.vanishes}});
  rep["per_mode"] = pm;
  return sr.verdict == "FAIL" ? 1 : 0;
}

// ------------------------------------------------------- carleman-sweep ----
int run_carleman_sweep(Config& cfg, const std::filesystem::path& out, json& rep) {
  cfg.require_known(with_common({"carleman.gammas", "carleman.lambdas", "carleman.support",
                                 "carleman.power_s", "carleman.power_c", "carleman.panels",
                                 "carleman.c_min", "carleman.stab", "carleman.demo",
                                 "carleman.demo_gammas"}));
  WarpedMetric metric = metric_from_config(cfg);
  DerivedCoefficients coeffs = derive_coefficients(metric);
  auto gammas = cfg.list_or("carleman.gammas", {8, 16, 32, 64, 128});
  auto lambdas = cfg.list_or("carleman.lambdas", {0, 2, 6});
  auto support = cfg.list_or("carleman.support", {0.3, 0.6});
  if (support.size() != 2) throw ConfigError("carleman.support must be [ra, rb]");
  int ps = cfg.integer_or("carleman.power_s", 4);
  int pc = cfg.integer_or("carleman.power_c", 4);
  int panels = cfg.integer_or("carleman.panels", 16);
  double c_min = cfg.number_or("carleman.c_min", 0.01);
  double stab = cfg.number_or("carleman.stab", 1.5);

  Func2D u = Func2D::cone_bump(support[0], support[1], ps, pc);

  // the (lambda, gamma) instances are independent; run them in parallel and
  // aggregate in sweep order so the CSV bytes do not depend on thread count
  struct Point {
    double lambda = 0, gamma = 0;
    CarlemanResult result;
    std::string error;
  };
  std::vector<Point> points;
  for (double lam : lambdas)
    for (double g : gammas) points.push_back({lam, g, {}, {}});
#pragma omp parallel for schedule(dynamic)
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    CarlemanInstance inst;
    inst.u = u;
    inst.ra = support[0];
    inst.rb = support[1];
    inst.coeffs = &coeffs;
    inst.lambda = points[pi].lambda;
    inst.gamma = points[pi].gamma;
    inst.panels = panels;
    try {
      points[pi].result = carleman_check(inst);
    } catch (const std::exception& e) {
      points[pi].error = e.what();
    }
  }
  for (const Point& p : points)
    if (!p.error.empty()) throw NumericalError(p.error);

  CsvWriter csv(out / "sweep.csv", "gamma,lambda,lhs,rhs1,rhs2,rhs3,rhs1_carle3,ratio");
  json per_lambda = json::array();
  bool all_ok = true;
  double prev_gamma0 = 0.0;
  std::size_t pi = 0;
  for (double lam : lambdas) {
    std::vector<std::pair<double, double>> sweep;
    for (double g : gammas) {
      const CarlemanResult& r = points[pi++].result;
      csv.row({g, lam, r.raw(r.lhs), r.raw(r.rhs1), r.raw(r.rhs2), r.raw(r.rhs3),
               r.raw(r.rhs1_alt), r.ratio});
      sweep.emplace_back(g, r.ratio);
      log_line("carleman: lambda=" + format_full(lam) + " gamma=" + format_full(g) +
               " ratio=" + format_full(r.ratio));
    }
    double g0 = detect_gamma0(sweep, c_min, stab);
    double cbound = std::numeric_limits<double>::infinity();
    for (const auto& [g, ratio] : sweep)
      if (g >= g0) cbound = std::min(cbound, ratio);
    json jl;
    jl["lambda"] = lam;
    jl["gamma0"] = g0;
    jl["c_lower_bound"] = std::isfinite(cbound) ? cbound : 0.0;
    json ratios = json::array();
    for (const auto& [g, ratio] : sweep) ratios.push_back({{"gamma", g}, {"ratio", ratio}});
    jl["sweep"] = ratios;
    per_lambda.push_back(jl);
    if (!std::isfinite(g0) || !(cbound >= c_min)) all_ok = false;
    if (g0 + 1e-12 < prev_gamma0) all_ok = false;  // gamma0 must be nondecreasing in lambda
    prev_gamma0 = g0;
  }
  rep["per_lambda"] = per_lambda;

  if (cfg.flag_or("carleman.demo", false)) {
    CharGrid grid = grid_from_config(cfg);
    Profile f2 = profile_from_config(cfg, "data.f2");
    DiagonalData data = build_diagonal_data(coeffs, Profile::zero(), f2, grid);
    double lam = lambdas.empty() ? 0.0 : lambdas.front();
    ModeSolution sol = solve_mode(coeffs, lam, data, grid);
    auto demo_gammas = cfg.list_or("carleman.demo_gammas", {4, 8, 12, 16, 20});
    VanishingDemoReport demo = carleman_vanishing_demo(sol, coeffs, lam, demo_gammas);
    CsvWriter dcsv(out / "demo.csv", "gamma,pchi_norm_sq,ball_norm_sq,implied_bound");
    for (const auto& row : demo.rows)
      dcsv.row({row.gamma, row.pchi_norm_sq, row.ball_norm_sq, row.implied_bound});
    rep["demo_monotone"] = demo.monotone_nonincreasing;
    rep["demo_w_ball_l2"] = demo.w_ball_l2;
    if (!demo.monotone_nonincreasing) all_ok = false;
  }

  rep["verdict"] = all_ok ? "pass" : "fail";
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------- lemma-check ----

// one corpus case of any family, pre-drawn so that the member stream does not
// depend on the execution order; checks run in parallel and are aggregated by
// index, so the artifacts are identical for any thread count
struct LemmaCase {
  enum class Family { bound0, decay, fubini } family;
  int index = 0;
  int order = 0;  // k or m
  double p1 = 0, p2 = 0;
  Func2D w;
  double lhs = 0, rhs = 0, drift = 0;
  bool pass = false;
  std::string error;
};

int run_lemma_check(Config& cfg, const std::filesystem::path& out, json& rep) {
  cfg.require_known(with_common({"lemma.count", "lemma.T", "lemma.bound0_panels",
                                 "lemma.fubini_panels", "lemma.decay_panels"}));
  int count = cfg.integer_or("lemma.count", 100);
  double T = cfg.number_or("lemma.T", 0.8);
  int pb = cfg.integer_or("lemma.bound0_panels", 8);
  int pf = cfg.integer_or("lemma.fubini_panels", 5);
  int pd = cfg.integer_or("lemma.decay_panels", 6);
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.number("seed"));

  Func2DCorpus corpus(seed);
  std::vector<LemmaCase> cases;
  for (int i = 0; i < count; ++i) {
    LemmaCase c;
    c.family = LemmaCase::Family::bound0;
    c.index = i;
    c.order = i % 3;
    c.w = corpus.smooth_member(T);
    c.p1 = corpus.uniform(0.05 * T, 0.45 * T);
    c.p2 = corpus.uniform(c.p1 + 0.25 * T, T);
    cases.push_back(std::move(c));
  }
  for (int i = 0; i < count; ++i) {
    LemmaCase c;
    c.family = LemmaCase::Family::decay;
    c.index = i;
    c.order = i % 4;
    c.w = corpus.corner_flat_member(T, 3);
    cases.push_back(std::move(c));
  }
  for (int i = 0; i < count; ++i) {
    LemmaCase c;
    c.family = LemmaCase::Family::fubini;
    c.index = i;
    c.w = corpus.smooth_member(T, 0.5);
    c.p1 = corpus.uniform(0.0, 0.3 * T);
    c.p2 = corpus.uniform(0.6 * T, T);
    cases.push_back(std::move(c));
  }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    LemmaCase& c = cases[ci];
    try {
      switch (c.family) {
        case LemmaCase::Family::bound0: {
          Bound0Result r = check_bound0(c.w, c.order, c.p1, c.p2, pb);
          c.lhs = r.lhs;
          c.rhs = r.rhs;
          c.drift = r.quad_drift;
          c.pass = r.pass;
          break;
        }
        case LemmaCase::Family::decay: {
          DecayResult r = check_decay(c.w, c.order, T, pd);
          c.lhs = r.lhs;
          c.rhs = r.rhs_diag + r.rhs_grad;
          c.drift = r.quad_drift;
          c.pass = r.pass;
          break;
        }
        case LemmaCase::Family::fubini: {
          FubiniResult r = check_fubini(c.w, c.p1, c.p2, pf);
          c.lhs = r.lhs;
          c.rhs = r.rhs;
          c.drift = r.quad_drift;
          c.pass = r.pass;
          break;
        }
      }
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  }

  CsvWriter csv(out / "lemma.csv", "family,case_index,order,param1,param2,lhs,rhs,drift,pass");
  int fails = 0;
  double max_drift = 0.0;
  for (const LemmaCase& c : cases) {
    if (!c.error.empty()) throw NumericalError(c.error);
    const char* fam = c.family == LemmaCase::Family::bound0   ? "bound0"
                      : c.family == LemmaCase::Family::decay ? "decay"
                                                             : "fubini";
    csv.raw_row(std::string(fam) + "," + std::to_string(c.index) + "," +
                std::to_string(c.order) + "," + format_full(c.p1) + "," + format_full(c.p2) +
                "," + format_full(c.lhs) + "," + format_full(c.rhs) + "," +
                format_full(c.drift) + "," + (c.pass ? "1" : "0"));
    if (!c.pass) ++fails;
    max_drift = std::max(max_drift, c.drift);
  }

  rep["cases_per_family"] = count;
  rep["failures"] = fails;
  rep["max_quad_drift"] = max_drift;
  bool ok = fails == 0 && max_drift < 1e-6;
  rep["verdict"] = ok ? "pass" : "fail";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------- convergence ----
int run_convergence(Config& cfg, const std::filesystem::path& out, json& rep) {
  cfg.require_known(with_common({"convergence.Ns", "convergence.lambda"}));
  WarpedMetric metric = metric_from_config(cfg);
  DerivedCoefficients coeffs = derive_coefficients(metric);
  double T = cfg.number_or("grid.T", 0.5);
  double lambda = cfg.number_or("convergence.lambda", 2.0);
  auto NsList = cfg.list_or("convergence.Ns", {32, 64, 128});
  std::vector<int> Ns;
  for (double n : NsList) Ns.push_back(static_cast<int>(n));

  ConvergenceStudy study = manufactured_convergence(coeffs, lambda, T, Ns);

  CsvWriter csv(out / "convergence.csv", "N,max_error,observed_order");
  for (std::size_t i = 0; i < study.Ns.size(); ++i)
    csv.row({static_cast<double>(study.Ns[i]), study.errors[i],
             i > 0 ? study.orders[i - 1] : 0.0});

  bool ok = true;
  for (double p : study.orders)
    if (!(p >= 1.8 && p <= 2.2)) ok = false;
  json jo = json::array();
  for (double p : study.orders) jo.push_back(p);
  rep["orders"] = jo;
  rep["verdict"] = ok ? "pass" : "fail";
  return ok ? 0 : 1;
}

// -------------------------------------------------------- oracle-compare ----
int run_oracle_compare(Config& cfg, const std::filesystem::path& out, json& rep) {
  cfg.require_known(with_common({"tol.compare_rel", "oracle.r_values"}));
  WarpedMetric metric = metric_from_config(cfg);
  if (metric.n != 3 || metric.psi.degree() != 0)
    throw ConfigError("oracle-compare requires the Euclidean case (n=3, psi = [1])");
  DerivedCoefficients coeffs = derive_coefficients(metric);
  CharGrid grid = grid_from_config(cfg);
  Profile f2 = profile_from_config(cfg, "data.f2");
  double tol = cfg.number_or("tol.compare_rel", 1e-3);
  auto r_values = cfg.list_or("oracle.r_values", {50, 100});

  DiagonalData data = build_diagonal_data(coeffs, Profile::zero(), f2, grid);
  ModeSolution sol = solve_mode(coeffs, 0.0, data, grid);
  RadiationField field = extract_field(sol, Direction::forward);

  RadialProfile oracle = RadialProfile::from_x_profile(f2);

  CsvWriter csv(out / "compare.csv", "s,mu,pipeline,oracle,abs_err");
  double max_err = 0.0, norm = 0.0;
  for (const auto& smp : field.samples) {
    double ref = radiation_field_radial(oracle, smp.s);
    double err = std::abs(smp.value - ref);
    max_err = std::max(max_err, err);
    norm = std::max(norm, std::abs(ref));
    csv.row({smp.s, smp.edge, smp.value, ref, err});
  }
  double rel = norm > 0.0 ? max_err / norm : 0.0;
  rep["max_abs_err"] = max_err;
  rep["field_norm"] = norm;
  rep["max_rel_err"] = rel;

  // translation-representation comparison on the same profile
  LaxPhillipsReport lp = lax_phillips_compare(oracle);
  rep["lax_phillips"] = {{"c_fit", lp.c_fit},
                         {"c_expected", 1.0 / (4.0 * std::numbers::pi)},
                         {"rel_residual", lp.rel_residual}};

  // finite-radius field against the closed form (exact in odd dimensions, so
  // the 1/r envelope holds with margin)
  json fin = json::array();
  double smid = -0.5 * (oracle.lo + oracle.hi);
  for (double r : r_values) {
    double approx = radiation_field_finite_r(oracle, smid, r);
    double exact = radiation_field_radial(oracle, smid);
    fin.push_back({{"r", r}, {"s", smid}, {"finite_r", approx}, {"closed_form", exact}});
  }
  rep["finite_r"] = fin;

  bool ok = rel <= tol && lp.rel_residual <= 1e-3 &&
            std::abs(lp.c_fit * 4.0 * std::numbers::pi - 1.0) < 5e-3;
  rep["verdict"] = ok ? "pass" : "fail";
  return ok ? 0 : 1;
}

}  // namespace

RunOutcome run_experiment(Config cfg, const std::string& experiment, const RunOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
  std::filesystem::path out(opts.out_dir);

  RunOutcome outcome;
  outcome.report_path = (out / "report.json").string();

  json rep;
  Timer timer;
  int code = 0;
  std::string error;

  try {
    resolve_common(cfg, experiment);
    if (opts.override_seed) cfg.set_number("seed", static_cast<double>(opts.seed));
    int threads = opts.threads > 0 ? opts.threads : cfg.integer_or("threads", 0);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    rep["threads"] = threads;

    if (experiment == "solve")
      code = run_solve(cfg, out, rep);
    else if (experiment == "verify-support")
      code = run_verify_support(cfg, out, rep);
    else if (experiment == "carleman-sweep")
      code = run_carleman_sweep(cfg, out, rep);
    else if (experiment == "lemma-check")
      code = run_lemma_check(cfg, out, rep);
    else if (experiment == "convergence")
      code = run_convergence(cfg, out, rep);
    else if (experiment == "oracle-compare")
      code = run_oracle_compare(cfg, out, rep);
    else
      throw ConfigError("unknown experiment: " + experiment);
  } catch (const ConfigError& e) {
    code = 2;
    error = e.what();
  } catch (const std::invalid_argument& e) {
    code = 2;
    error = e.what();
  } catch (const NumericalError& e) {
    code = 3;
    error = e.what();
  }

  rep["experiment"] = experiment;
  rep["exit_code"] = code;
  rep["wall_time_s"] = timer.seconds();
  rep["resolved_config"] = cfg.canonical();
  rep["config_hash"] = hash_hex(cfg.hash());
  if (cfg.has("seed")) rep["seed"] = static_cast<std::uint64_t>(cfg.number("seed"));
  if (!error.empty()) rep["error"] = error;

  std::ofstream rf(outcome.report_path);
  rf << rep.dump(2) << "\n";

  if (!error.empty()) std::fprintf(stderr, "error: %s\n", error.c_str());
  outcome.exit_code = code;
  return outcome;
}

}  // namespace radlab
