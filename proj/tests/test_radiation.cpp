#include <doctest.h>

#include <cmath>

#include "radlab/oracle_euclidean.hpp"
#include "radlab/radiation.hpp"

using namespace radlab;

namespace {

DerivedCoefficients euclid() {
  WarpedMetric m;
  m.eps = 4.0;
  return derive_coefficients(m);
}

// a ModeSolution carrying a closed-form grid function (not solver output)
ModeSolution synthetic(const CharGrid& g, double (*f)(double, double)) {
  ModeSolution s;
  s.grid = g;
  int M = g.nodes();
  s.w.assign(static_cast<std::size_t>(M) * M, 0.0);
  s.pin.assign(static_cast<std::size_t>(M) * M, 0);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      s.w[static_cast<std::size_t>(i) * M + j] = f(g.coord(i), g.coord(j));
  return s;
}

double quartic_sum(double mu, double nu) {
  return 0.5 * (mu * mu * mu * mu + nu * nu * nu * nu);
}

}  // namespace

TEST_CASE("zero solution yields the zero field") {
  CharGrid g{0.5, 32, 0.0};
  ModeSolution s = synthetic(g, [](double, double) { return 0.0; });
  RadiationField f = extract_field(s, Direction::forward);
  CHECK_FALSE(f.samples.empty());
  for (const auto& smp : f.samples) CHECK(smp.value == 0.0);
}

TEST_CASE("field of the closed-form test solution") {
  // w = (mu^4 + nu^4)/2: forward field = mu^2 * 2 mu^3 = 2 mu^5 at s = -1/mu
  CharGrid g{0.5, 128, 0.0};
  ModeSolution s = synthetic(g, quartic_sum);
  RadiationField f = extract_field(s, Direction::forward);
  double h = g.h();
  for (const auto& smp : f.samples) {
    CHECK(smp.s == doctest::Approx(-1.0 / smp.edge).epsilon(1e-15));
    double mu = smp.edge;
    CHECK(std::abs(smp.value - 2.0 * std::pow(mu, 5)) <= 6.0 * mu * mu * h * h);
  }
  // backward field: the mirror formula nu^2 d_nu w(0,nu) = 2 nu^5 at s = +1/nu
  RadiationField b = extract_field(s, Direction::backward);
  for (const auto& smp : b.samples) {
    CHECK(smp.s == doctest::Approx(1.0 / smp.edge).epsilon(1e-15));
    CHECK(std::abs(smp.value - 2.0 * std::pow(smp.edge, 5)) <=
          6.0 * smp.edge * smp.edge * h * h);
  }
}

TEST_CASE("threshold detector on constructed fields") {
  RadiationField f;
  f.h = 0.01;
  SUBCASE("identically zero field") {
    for (int i = 10; i <= 100; ++i)
      f.samples.push_back({i * 0.01, -1.0 / (i * 0.01), 0.0});
    ThresholdEstimate t = support_threshold(f, 1e-6);
    CHECK(t.vanishes);
    CHECK(t.mu_star == doctest::Approx(1.0));
  }
  SUBCASE("ramp past 0.3") {
    for (int i = 1; i <= 100; ++i) {
      double mu = i * 0.01;
      f.samples.push_back({mu, -1.0 / mu, mu < 0.3 ? 0.0 : mu - 0.3 + 0.05});
    }
    ThresholdEstimate t = support_threshold(f, 1e-6);
    CHECK_FALSE(t.vanishes);
    CHECK(std::abs(t.mu_star - 0.3) <= 0.01 + 1e-12);
  }
  SUBCASE("an isolated spike does not trigger the onset") {
    for (int i = 1; i <= 100; ++i) {
      double mu = i * 0.01;
      double v = mu < 0.5 ? 0.0 : 1.0;
      if (i == 20) v = 0.8;  // noise
      f.samples.push_back({mu, -1.0 / mu, v});
    }
    ThresholdEstimate t = support_threshold(f, 1e-3);
    CHECK(std::abs(t.mu_star - 0.5) <= 0.01 + 1e-12);
  }
}

TEST_CASE("Euclidean bump: threshold within one cell of the support edge") {
  DerivedCoefficients c = euclid();
  SupportExperiment exp;
  exp.coeffs = c;
  exp.lambdas = {0.0};
  exp.f2 = Profile::bump(0.5, 1.0, 0.05);
  exp.grid = CharGrid{1.2, 128, 0.0};
  SupportReport rep = run_support_report(exp);
  CHECK(rep.x1 == doctest::Approx(0.5));
  CHECK(std::abs(rep.mu_star - 0.5) <= rep.h + 1e-12);
  CHECK(rep.verdict == "PASS");
}

TEST_CASE("zero data reports trivially consistent") {
  DerivedCoefficients c = euclid();
  SupportExperiment exp;
  exp.coeffs = c;
  exp.lambdas = {0.0, 2.0};
  exp.f2 = Profile::zero();
  exp.grid = CharGrid{0.5, 32, 0.0};
  SupportReport rep = run_support_report(exp);
  CHECK(rep.verdict == "trivially consistent");
}

TEST_CASE("odd data: backward field is the negative mirror of the forward one") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.8, 96, 0.0};
  DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::bump(0.3, 0.6, 0.06), g);
  ModeSolution sol = solve_mode(c, 0.0, d, g);
  ResidualNorms res = discrete_residual(sol, c, 0.0);
  RadiationField fwd = extract_field(sol, Direction::forward);
  RadiationField bwd = extract_field(sol, Direction::backward);
  REQUIRE(fwd.samples.size() == bwd.samples.size());
  double scale = 0.0;
  for (const auto& s : fwd.samples) scale = std::max(scale, std::abs(s.value));
  for (std::size_t i = 0; i < fwd.samples.size(); ++i)
    CHECK(std::abs(bwd.samples[i].value + fwd.samples[i].value) <=
          1e-10 * scale + 10.0 * res.max_norm / g.h());
}

TEST_CASE("threshold monotonicity under support shrinking") {
  DerivedCoefficients c = euclid();
  SupportExperiment exp;
  exp.coeffs = c;
  exp.lambdas = {0.0};
  exp.grid = CharGrid{0.8, 128, 0.0};
  exp.f2 = Profile::bump(0.3, 0.6, 0.04);
  double mu_orig = run_support_report(exp).mu_star;
  exp.f2 = Profile::bump(0.4, 0.6, 0.04);  // tighter support
  double mu_tight = run_support_report(exp).mu_star;
  CHECK(mu_tight >= mu_orig - exp.grid.h() - 1e-12);
}

TEST_CASE("edge values vanish below the detected threshold") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.8, 128, 0.0};
  Profile f2 = Profile::bump(0.4, 0.6, 0.04);
  DiagonalData d = build_diagonal_data(c, Profile::zero(), f2, g);
  ModeSolution sol = solve_mode(c, 0.0, d, g);
  RadiationField f = extract_field(sol, Direction::forward);
  ThresholdEstimate t = support_threshold(f, 1e-6);
  double scale = 0.0;
  for (int i = 0; i <= g.N; ++i) scale = std::max(scale, std::abs(sol.at(i, 0)));
  double h = g.h();
  for (int i = 1; i < g.N; ++i) {
    double mu = g.coord(i);
    if (mu >= t.mu_star - h - 1e-12) continue;
    CHECK(std::abs(sol.at(i, 0)) <= 1e-6 * scale + 1e-300);
    double dn = (-3.0 * sol.at(i, 0) + 4.0 * sol.at(i, 1) - sol.at(i, 2)) / (2.0 * h);
    CHECK(std::abs(dn) <= 1e-6 * scale / h + 1e-300);
  }
}

TEST_CASE("pipeline field matches the Euclidean closed form") {
  DerivedCoefficients c = euclid();
  Profile f2 = Profile::bump(0.5, 1.0, 0.25);
  CharGrid g{1.2, 128, 0.0};
  DiagonalData d = build_diagonal_data(c, Profile::zero(), f2, g);
  ModeSolution sol = solve_mode(c, 0.0, d, g);
  RadiationField field = extract_field(sol, Direction::forward);
  RadialProfile oracle = RadialProfile::from_x_profile(f2);
  double err = 0.0, norm = 0.0;
  for (const auto& s : field.samples) {
    double ref = radiation_field_radial(oracle, s.s);
    err = std::max(err, std::abs(s.value - ref));
    norm = std::max(norm, std::abs(ref));
  }
  CHECK(err / norm < 4e-3);  // the acceptance suite checks 1e-3 at N=256
}
