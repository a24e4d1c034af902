// Discrete verification of the energy lemmas and the Carleman estimate.
//
// All checks evaluate both sides of the target inequality or identity by
// Gauss-Legendre panel quadrature and re-evaluate at doubled panel count; a
// relative change above 1e-6 is treated as quadrature non-convergence.
//
// The Carleman check works in rotated coordinates (tau = nu - mu, r = mu + nu)
// with P = r^2 d_r^2 - r^2 d_tau^2 + F(tau,r), F = -(lambda*phi(x) + B(x)) at
// x = (r^2 - tau^2)/(2r), the sign for which P annihilates mode solutions.
// Weighted norms carry the common factor rb^{-2 gamma} separately (log-space)
// so large gamma cannot overflow the accumulation.
#pragma once

#include <utility>
#include <vector>

#include "radlab/func2d.hpp"
#include "radlab/geometry.hpp"
#include "radlab/goursat.hpp"

namespace radlab {

struct Bound0Result {
  double lhs = 0, rhs = 0;
  double quad_drift = 0;
  bool pass = false;
};

// both sides of the weighted trace inequality on the segment nu in [mu, b]
Bound0Result check_bound0(const Func2D& w, int k, double mu, double b, int panels = 8);

struct FubiniResult {
  double lhs = 0, rhs = 0, residual = 0, scale = 1;
  double quad_drift = 0;
  bool pass = false;
};

// layer-cake identity: int_{a0}^b (int_{Omega_ab} F) da = int_{Omega_{a0 b}} (mu-a0) F
FubiniResult check_fubini(const Func2D& F, double a0, double b, int panels = 5);

struct DecayResult {
  double lhs = 0, rhs_diag = 0, rhs_grad = 0;
  double quad_drift = 0;
  bool pass = false;
};

// corner-weight decay inequality; the diagonal term is the proof-consistent
//   2^{-m} int mu^{-m-2} |w(mu,mu)|^2 dmu
DecayResult check_decay(const Func2D& w, int m, double T, int panels = 6);

struct EnergyResult {
  double energy_max = 0;      // max over grid mu of the fixed-mu energy
  double data_norm_sq = 0;    // ||q1||_{1,1}^2 + ||q2||_{1,1}^2
  double ratio = 0;           // empirical constant
  bool trivial = false;
};

EnergyResult check_energy(const ModeSolution& sol, const DiagonalData& data, int panels = 8);

struct CarlemanInstance {
  Func2D u;         // test function in (tau, r)
  double ra = 0.3;  // r-support of u
  double rb = 0.6;
  const DerivedCoefficients* coeffs = nullptr;
  double lambda = 0.0;
  double gamma = 8.0;
  int panels = 24;
};

struct CarlemanResult {
  // values carry the common factor exp(log_common) = rb^{-2 gamma}
  double lhs = 0, rhs1 = 0, rhs2 = 0, rhs3 = 0;
  double rhs1_alt = 0;  // the restated operator-order variant, reported only
  double ratio = 0;     // lhs / (rhs1 + rhs2 + rhs3), scale-free
  double log_common = 0;
  double quad_drift = 0;

  double raw(double scaled) const;  // scaled * exp(log_common), inf on overflow
};

CarlemanResult carleman_check(const CarlemanInstance& inst);

// empirical gamma_0: smallest sweep gamma from which on the ratio stays above
// c_min and successive ratios agree within the factor `stab`
double detect_gamma0(const std::vector<std::pair<double, double>>& gamma_ratio,
                     double c_min = 0.01, double stab = 1.5);

struct VanishingDemoRow {
  double gamma = 0;
  double pchi_norm_sq = 0;      // ||(r/r0)^{-gamma-2} P(chi w)||^2 on the grid
  double ball_norm_sq = 0;      // gamma^4 ||(r/r0)^{-gamma-2} w||^2 on r <= r0
  double implied_bound = 0;     // pchi_norm_sq / gamma^4
};

struct VanishingDemoReport {
  std::vector<VanishingDemoRow> rows;
  double w_ball_l2 = 0;         // unweighted l2 of w on the ball r <= T/4
  bool monotone_nonincreasing = false;
};

// numerical enactment of the cutoff argument: chi = 1 for r < T/4, 0 past T/2
VanishingDemoReport carleman_vanishing_demo(const ModeSolution& sol,
                                            const DerivedCoefficients& coeffs, double lambda,
                                            const std::vector<double>& gammas);

}  // namespace radlab
