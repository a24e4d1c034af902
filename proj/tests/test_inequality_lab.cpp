#include <doctest.h>

#include <cmath>

#include "radlab/inequality_lab.hpp"

using namespace radlab;

namespace {

DerivedCoefficients euclid() {
  WarpedMetric m;
  m.eps = 4.0;
  return derive_coefficients(m);
}

DerivedCoefficients warped() {
  WarpedMetric m;
  m.psi = Poly::from_doubles({1.0, 0.0, 1.0});
  m.eps = 4.0;
  return derive_coefficients(m);
}

}  // namespace

TEST_CASE("trace inequality: zero and simple cases") {
  CHECK(check_bound0(Func2D::zero(), 0, 0.1, 0.5).pass);
  // w = mu nu
  Func2D w = Func2D::poly2({{0, 0}, {0, 1}});
  for (int k : {0, 1, 2}) {
    Bound0Result r = check_bound0(w, k, 0.1, 0.5);
    CHECK(r.pass);
    CHECK(r.lhs > 0.0);
    CHECK(r.quad_drift < 1e-6);
  }
}

TEST_CASE("trace inequality on a random corpus") {
  Func2DCorpus corpus(314159);
  for (int i = 0; i < 30; ++i) {
    Func2D w = corpus.smooth_member(0.8);
    double mu = corpus.uniform(0.05, 0.3), b = corpus.uniform(0.4, 0.8);
    Bound0Result r = check_bound0(w, i % 3, mu, b);
    CHECK(r.pass);
  }
}

TEST_CASE("layer-cake identity: exact polynomial cases") {
  FubiniResult one = check_fubini(Func2D::poly2({{1}}), 0.1, 0.7);
  CHECK(one.pass);
  CHECK(one.residual <= 1e-12 * one.scale);
  FubiniResult xy = check_fubini(Func2D::poly2({{0, 0}, {0, 1}}), 0.0, 0.9);
  CHECK(xy.pass);
  CHECK(xy.residual <= 1e-10 * xy.scale);
}

TEST_CASE("layer-cake identity on a random member") {
  Func2DCorpus corpus(2718);
  for (int i = 0; i < 5; ++i) {
    Func2D F = corpus.smooth_member(0.8, 0.5);
    FubiniResult r = check_fubini(F, corpus.uniform(0.0, 0.2), corpus.uniform(0.5, 0.8));
    CHECK(r.pass);
    CHECK(r.residual <= 1e-8 * r.scale);
  }
}

TEST_CASE("corner decay inequality") {
  CHECK(check_decay(Func2D::zero(), 0, 1.0).pass);
  // w = (mu nu)^3, m = 2, T = 1
  DecayResult r = check_decay(Func2D::pow_product(3), 2, 1.0);
  CHECK(r.pass);
  CHECK(r.lhs > 0.0);
  CHECK(std::isfinite(r.rhs_diag));
  CHECK(std::isfinite(r.rhs_grad));

  Func2DCorpus corpus(555);
  for (int i = 0; i < 24; ++i) {
    Func2D w = corpus.corner_flat_member(1.0, 3);
    DecayResult rr = check_decay(w, i % 4, 1.0);
    CHECK(rr.pass);
  }
}

TEST_CASE("fixed-mu energy against the weighted data norms") {
  DerivedCoefficients ce = euclid();
  SUBCASE("zero data is flagged trivial") {
    CharGrid g{0.5, 32, 0.0};
    DiagonalData d = build_diagonal_data(ce, Profile::zero(), Profile::zero(), g);
    ModeSolution sol = solve_mode(ce, 0.0, d, g);
    EnergyResult e = check_energy(sol, d);
    CHECK(e.trivial);
  }
  SUBCASE("reduced-case solution: ratio stable under refinement") {
    double ratios[2];
    int idx = 0;
    for (int N : {64, 128}) {
      CharGrid g{0.5, N, 0.0};
      DiagonalData d = diagonal_data_direct(Profile::poly({0, 0, 0, 0, 1}),
                                            Profile::poly({0, 0, 0, 2}), g);
      ModeSolution sol = solve_mode(ce, 0.0, d, g);
      EnergyResult e = check_energy(sol, d);
      CHECK_FALSE(e.trivial);
      CHECK(e.ratio > 0.0);
      ratios[idx++] = e.ratio;
    }
    CHECK(ratios[0] < 2.0 * ratios[1]);
    CHECK(ratios[1] < 2.0 * ratios[0]);
  }
  SUBCASE("warped Schwartz data: ratio stable under refinement") {
    DerivedCoefficients cw = warped();
    double ratios[2];
    int idx = 0;
    for (int N : {64, 128}) {
      CharGrid g{0.6, N, 0.0};
      DiagonalData d =
          build_diagonal_data(cw, Profile::zero(), Profile::schwartz_tail(0.4, 0.5, 0.1), g);
      ModeSolution sol = solve_mode(cw, 2.0, d, g);
      EnergyResult e = check_energy(sol, d);
      CHECK_FALSE(e.trivial);
      ratios[idx++] = e.ratio;
    }
    CHECK(ratios[0] < 2.0 * ratios[1]);
    CHECK(ratios[1] < 2.0 * ratios[0]);
  }
}

TEST_CASE("weighted estimate: zero function and the reference instance") {
  DerivedCoefficients c = euclid();
  CarlemanInstance inst;
  inst.coeffs = &c;
  inst.ra = 0.3;
  inst.rb = 0.6;
  inst.panels = 12;
  SUBCASE("u == 0") {
    inst.u = Func2D::zero();
    inst.gamma = 20.0;
    CarlemanResult r = carleman_check(inst);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs1 == 0.0);
    CHECK(r.rhs2 == 0.0);
    CHECK(r.rhs3 == 0.0);
  }
  SUBCASE("cone bump at gamma = 20") {
    inst.u = Func2D::cone_bump(0.3, 0.6, 4, 4);
    inst.gamma = 20.0;
    CarlemanResult r = carleman_check(inst);
    CHECK(r.ratio > 0.01);
    CHECK(r.quad_drift < 1e-6);
    CHECK(r.rhs1_alt > 0.0);
    CHECK(r.rhs1_alt != r.rhs1);  // the restated operator order differs
  }
}

TEST_CASE("gamma sweep: stable positive ratio, gamma0 nondecreasing in lambda") {
  DerivedCoefficients c = euclid();
  Func2D u = Func2D::cone_bump(0.3, 0.6, 4, 4);
  double prev_gamma0 = 0.0;
  for (double lam : {0.0, 2.0, 6.0}) {
    std::vector<std::pair<double, double>> sweep;
    for (double g : {8.0, 16.0, 32.0, 64.0, 128.0}) {
      CarlemanInstance inst;
      inst.u = u;
      inst.ra = 0.3;
      inst.rb = 0.6;
      inst.coeffs = &c;
      inst.lambda = lam;
      inst.gamma = g;
      inst.panels = 12;
      CarlemanResult r = carleman_check(inst);
      CHECK(r.quad_drift < 1e-6);
      sweep.emplace_back(g, r.ratio);
    }
    double g0 = detect_gamma0(sweep);
    CHECK(std::isfinite(g0));
    CHECK(g0 >= prev_gamma0);
    prev_gamma0 = g0;
    for (const auto& [g, ratio] : sweep)
      if (g >= g0) CHECK(ratio >= 0.01);
  }
}

TEST_CASE("large-gamma overflow guard") {
  DerivedCoefficients c = euclid();
  CarlemanInstance inst;
  inst.u = Func2D::cone_bump(0.02, 0.6, 4, 4);
  inst.ra = 0.02;
  inst.rb = 0.6;
  inst.coeffs = &c;
  inst.gamma = 128.0;
  CHECK_THROWS_AS(carleman_check(inst), NumericalError);
}

TEST_CASE("gamma0 detection rule") {
  // stabilizes from the second entry on
  std::vector<std::pair<double, double>> s1 = {{8, 3.0}, {16, 1.6}, {32, 1.4}, {64, 1.35}};
  CHECK(detect_gamma0(s1) == 16.0);
  // never stabilizes above c_min
  std::vector<std::pair<double, double>> s2 = {{8, 0.5}, {16, 0.001}, {32, 0.5}};
  CHECK(!std::isfinite(detect_gamma0(s2)));
}

TEST_CASE("cutoff argument demo: squeeze for solutions, growth for non-solutions") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.4, 128, 0.0};
  std::vector<double> gammas = {4, 8, 12, 16, 20};

  SUBCASE("zero solution") {
    DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::zero(), g);
    ModeSolution sol = solve_mode(c, 0.0, d, g);
    VanishingDemoReport rep = carleman_vanishing_demo(sol, c, 0.0, gammas);
    CHECK(rep.monotone_nonincreasing);
    for (const auto& row : rep.rows) CHECK(row.implied_bound == 0.0);
  }
  SUBCASE("Schwartz-tail solution: implied bound decreases in gamma") {
    DiagonalData d =
        build_diagonal_data(c, Profile::zero(), Profile::schwartz_tail(1.0, 0.35, 0.1), g);
    ModeSolution sol = solve_mode(c, 0.0, d, g);
    VanishingDemoReport rep = carleman_vanishing_demo(sol, c, 0.0, gammas);
    CHECK(rep.monotone_nonincreasing);
    CHECK(rep.rows.front().implied_bound > rep.rows.back().implied_bound);
  }
  SUBCASE("negative control: (mu nu)^6 is not a solution") {
    ModeSolution fake;
    fake.grid = g;
    int M = g.nodes();
    fake.w.assign(static_cast<std::size_t>(M) * M, 0.0);
    fake.pin.assign(static_cast<std::size_t>(M) * M, 0);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        fake.w[static_cast<std::size_t>(i) * M + j] =
            std::pow(g.coord(i) * g.coord(j), 6.0);
    VanishingDemoReport rep = carleman_vanishing_demo(fake, c, 0.0, gammas);
    CHECK_FALSE(rep.monotone_nonincreasing);
    CHECK(rep.rows.back().implied_bound > rep.rows.front().implied_bound);
  }
}
