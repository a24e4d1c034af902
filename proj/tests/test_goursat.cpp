#include <doctest.h>

#include <cmath>
#include <cstring>

#include "radlab/experiments.hpp"
#include "radlab/goursat.hpp"

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

double sup_norm(const ModeSolution& s) {
  double v = 0.0;
  for (double w : s.w) v = std::max(v, std::abs(w));
  return v;
}

}  // namespace

TEST_CASE("diagonal data transformation: reference cases") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.5, 64, 0.0};

  SUBCASE("zero data stays zero") {
    DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::zero(), g);
    for (double v : d.q1_nodes) CHECK(v == 0.0);
    for (double v : d.q2_nodes) CHECK(v == 0.0);
  }
  SUBCASE("f2 = x^4 gives q2 = mu^3/2") {
    DiagonalData d = build_diagonal_data(c, Profile::zero(),
                                         Profile::poly({0, 0, 0, 0, 1}), g);
    for (int i = 1; i <= g.N; ++i) {
      double mu = g.coord(i);
      CHECK(d.q2_nodes[i] == doctest::Approx(0.5 * mu * mu * mu).epsilon(1e-13));
    }
  }
  SUBCASE("f1 = x^3 gives q1 = mu^4 and q2 = 2 mu^3") {
    DiagonalData d = build_diagonal_data(c, Profile::poly({0, 0, 0, 1}),
                                         Profile::zero(), g);
    for (int i = 1; i <= g.N; ++i) {
      double mu = g.coord(i);
      CHECK(d.q1_nodes[i] == doctest::Approx(mu * mu * mu * mu).epsilon(1e-13));
      CHECK(d.q2_nodes[i] == doctest::Approx(2.0 * mu * mu * mu).epsilon(1e-13));
    }
  }
}

TEST_CASE("data with support touching the boundary is rejected") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.5, 64, 0.0};
  CHECK_THROWS_WITH_AS(build_diagonal_data(c, Profile::zero(), Profile::poly({1.0}), g),
                       doctest::Contains("support touches boundary"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_diagonal_data(c, Profile::poly({0.5}), Profile::zero(), g),
                  std::invalid_argument);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS((CharGrid{0.5, 8, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CharGrid{0.5, 64, 0.5 / 64}.validate()), std::invalid_argument);
  DerivedCoefficients c = euclid();  // eps = 4
  CHECK_THROWS_AS((CharGrid{2.5, 64, 0.0}.validate_against(c)), std::invalid_argument);
}

TEST_CASE("zero data solves to the zero grid") {
  DerivedCoefficients c = warped();
  CharGrid g{0.5, 32, 0.0};
  DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::zero(), g);
  ModeSolution sol = solve_mode(c, 2.0, d, g);
  CHECK(sup_norm(sol) == 0.0);
}

TEST_CASE("reduced equation is reproduced exactly") {
  // n=3, psi=1, lambda=0: the equation degenerates to d_mu d_nu w = 0 and the
  // scheme telescopes the data without quadrature error
  DerivedCoefficients c = euclid();
  CharGrid g{0.5, 64, 0.0};
  DiagonalData d = diagonal_data_direct(Profile::poly({0, 0, 0, 0, 1}),
                                        Profile::poly({0, 0, 0, 2}), g);
  ModeSolution sol = solve_mode(c, 0.0, d, g);
  auto exact = [](double mu, double nu) {
    return 0.5 * (mu * mu * mu * mu + nu * nu * nu * nu);
  };
  CHECK(max_error_against(sol, exact) <= 1e-10 * sup_norm(sol));

  ResidualNorms res = discrete_residual(sol, c, 0.0);
  CHECK(res.max_norm <= 1e-10 * res.scale);
}

TEST_CASE("manufactured solution: order two and residual decay") {
  DerivedCoefficients c = warped();
  ConvergenceStudy study = manufactured_convergence(c, 2.0, 0.5, {32, 64, 128});
  REQUIRE(study.orders.size() == 2);
  for (double p : study.orders) {
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
  }

  // residual of the discrete solution falls at the same rate
  Forcing forcing = [&](double mu, double nu) {
    double r = mu + nu, x = x_of_char(mu, nu);
    return r * r * 4.0 * mu * nu - c.lambda_phi_plus_B(2.0, x) * mu * mu * nu * nu;
  };
  double res_prev = 0.0;
  for (int N : {32, 64}) {
    CharGrid g{0.5, N, 0.0};
    DiagonalData d = diagonal_data_direct(Profile::poly({0, 0, 0, 0, 1}),
                                          Profile::poly({0, 0, 0, 2}), g);
    ModeSolution sol = solve_mode(c, 2.0, d, g, forcing);
    ResidualNorms res = discrete_residual(sol, c, 2.0, forcing);
    if (N == 32) res_prev = res.max_norm;
    else {
      // at least second-order decay of the interior residual
      CHECK(res_prev / res.max_norm > 3.5);
    }
  }
}

TEST_CASE("odd data antisymmetry") {
  DerivedCoefficients c = warped();
  CharGrid g{0.8, 96, 0.0};
  DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::bump(0.3, 0.6, 0.06), g);
  ModeSolution sol = solve_mode(c, 2.0, d, g);
  ResidualNorms res = discrete_residual(sol, c, 2.0);
  double anti = 0.0;
  for (int i = 0; i <= g.N; ++i)
    for (int j = 0; j <= g.N; ++j)
      anti = std::max(anti, std::abs(sol.at(i, j) + sol.at(j, i)));
  CHECK(anti <= 10.0 * res.max_norm + 1e-13 * res.scale);
}

TEST_CASE("solver is linear in the data") {
  DerivedCoefficients c = warped();
  CharGrid g{0.8, 64, 0.0};
  Profile f2a = Profile::bump(0.3, 0.6, 0.06);
  Profile f2b = Profile::bump(0.45, 0.75, 0.08);
  DiagonalData da = build_diagonal_data(c, Profile::zero(), f2a, g);
  DiagonalData db = build_diagonal_data(c, Profile::zero(), f2b, g);
  DiagonalData dscaled =
      build_diagonal_data(c, Profile::zero(), Profile::scale(2.0, f2a), g);
  DiagonalData dsum =
      build_diagonal_data(c, Profile::zero(), Profile::sum(f2a, f2b), g);

  ModeSolution sa = solve_mode(c, 2.0, da, g);
  ModeSolution sb = solve_mode(c, 2.0, db, g);
  ModeSolution s2 = solve_mode(c, 2.0, dscaled, g);
  ModeSolution ss = solve_mode(c, 2.0, dsum, g);

  double scale = sup_norm(sa), err2 = 0.0, errs = 0.0;
  for (std::size_t k = 0; k < sa.w.size(); ++k) {
    err2 = std::max(err2, std::abs(s2.w[k] - 2.0 * sa.w[k]));
    errs = std::max(errs, std::abs(ss.w[k] - sa.w[k] - sb.w[k]));
  }
  CHECK(err2 <= 1e-12 * scale);
  CHECK(errs <= 1e-10 * scale);
}

TEST_CASE("edge decay of Schwartz data toward the corner") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.4, 128, 0.0};
  DiagonalData d =
      build_diagonal_data(c, Profile::zero(), Profile::schwartz_tail(0.6, 0.35, 0.1), g);
  ModeSolution sol = solve_mode(c, 0.0, d, g);
  double bands[3] = {g.T / 4.0, g.T / 8.0, g.T / 16.0};
  double maxima[3] = {0, 0, 0};
  for (int i = 0; i <= g.N; ++i)
    for (int j = 0; j <= g.N; ++j) {
      double r = g.coord(i) + g.coord(j);
      for (int b = 0; b < 3; ++b)
        if (r <= bands[b]) maxima[b] = std::max(maxima[b], std::abs(sol.at(i, j)));
    }
  REQUIRE(maxima[0] > 0.0);
  // least-squares slope of log max against log rho; vanishing bands count as
  // arbitrarily fast decay
  if (maxima[1] == 0.0 || maxima[2] == 0.0) {
    CHECK(true);
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int b = 0; b < 3; ++b) {
      double x = std::log(bands[b]), y = std::log(maxima[b]);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    CHECK(slope >= 2.5);
  }
}

TEST_CASE("serial reference and wavefront kernel agree bitwise") {
  DerivedCoefficients c = warped();
  CharGrid g{0.8, 64, 0.0};
  DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::bump(0.3, 0.6, 0.06), g);
  Forcing forcing = [](double mu, double nu) { return std::sin(3.0 * mu) * nu; };
  ModeSolution serial = solve_mode(c, 2.0, d, g, forcing, false);
  ModeSolution wavefront = solve_mode(c, 2.0, d, g, forcing, true);
  REQUIRE(serial.w.size() == wavefront.w.size());
  CHECK(std::memcmp(serial.w.data(), wavefront.w.data(),
                    serial.w.size() * sizeof(double)) == 0);
}

TEST_CASE("corner cutoff bookkeeping") {
  DerivedCoefficients c = euclid();
  CharGrid g{0.5, 32, 0.0};  // delta = 4h: nodes with i+j <= 3 pinned
  DiagonalData d = build_diagonal_data(c, Profile::zero(), Profile::bump(0.2, 0.4, 0.05), g);
  ModeSolution sol = solve_mode(c, 0.0, d, g);
  CHECK(sol.pinned_nodes == 10);
  CHECK(sol.pinned(0, 0));
  CHECK(sol.pinned(1, 2));
  CHECK_FALSE(sol.pinned(2, 2));
  CHECK(sol.at(1, 2) == 0.0);
}
