// Warped-product collar geometry:
//
//   g = dx^2/x^4 + psi(x) h0 / x^2   on [0,eps) x boundary,  psi(0)=1, psi>0.
//
// Conjugating the (positive) Laplacian by F(x) = x^{(n-1)/2} psi(x)^{-(n-1)/4}
// removes the first-order radial term and yields
//
//   F^{-1} Dg F = -(x^2 d/dx)^2 + x^2 phi(x) Dh0 + x^2 B(x),
//
// with phi = 1/psi and a potential B determined by psi.  For polynomial psi
// everything except F itself is a rational function of x; those are derived
// here in exact rational arithmetic so that, e.g., B(0) = (n-1)(n-3)/4 holds
// exactly and not merely to rounding.
//
// Also provides the coordinate charts used by the characteristic solver:
//   s+ = t - 1/x,  s- = t + 1/x,   mu = -1/s+,  nu = 1/s-,
//   x  = 2 mu nu/(mu+nu),          t  = (mu-nu)/(2 mu nu),
//   r  = mu+nu,   tau = nu-mu,     x  = (r^2-tau^2)/(2r).
#pragma once

#include <cstddef>
#include <vector>

#include "radlab/rational_poly.hpp"

namespace radlab {

// rational function compiled to double coefficients for fast evaluation
struct CompiledRF {
  std::vector<double> num{0.0}, den{1.0};
  double eval(double x) const {
    double n = 0.0, d = 0.0;
    for (std::size_t i = num.size(); i-- > 0;) n = n * x + num[i];
    for (std::size_t i = den.size(); i-- > 0;) d = d * x + den[i];
    return n / d;
  }
  static CompiledRF from(const RatFunc& f) {
    CompiledRF c;
    c.num = f.num().is_zero() ? std::vector<double>{0.0} : f.num().coeffs_as_double();
    c.den = f.den().coeffs_as_double();
    return c;
  }
};

struct WarpedMetric {
  int n = 3;                      // dim X, must be >= 3
  Poly psi = Poly({Rat(1)});      // psi(0) = 1, psi > 0 on [0,eps]
  double eps = 1.0;               // collar width
  int max_degree = 8;

  // throws std::invalid_argument when an invariant fails
  void validate() const;
};

struct DerivedCoefficients {
  int n = 3;
  double eps = 1.0;
  Poly psi;

  // exact forms
  RatFunc phi, phi_d1, phi_d2;    // 1/psi and derivatives
  RatFunc B, B_d1, B_d2;          // potential of the conjugated operator
  RatFunc A;                      // (n-1)/2 * psi'/psi  (first-order coefficient)
  RatFunc G, G_d1;                // G = F'/F (logarithmic derivative of F)

  // fast evaluators
  CompiledRF phi_c, phi_d1_c, phi_d2_c, B_c, B_d1_c, B_d2_c, A_c, G_c, G_d1_c;

  Rat B_at0() const { return B.at0(); }

  // F(x) = x^{(n-1)/2} psi(x)^{-(n-1)/4}; F itself is not rational
  double F(double x) const;
  double F_d1(double x) const;    // = F*G away from 0, with the x=0 limit
  double F_d2(double x) const;    // = F*(G' + G^2), x > 0 only

  double lambda_phi_plus_B(double lambda, double x) const {
    return lambda * phi_c.eval(x) + B_c.eval(x);
  }
};

// Derives phi, A, B, G from the metric via exact rational-function algebra:
// with a = (n-1)/2,
//   G = F'/F = a/x - (a/2) psi'/psi,
//   B = -x^2 (G' + G^2) + (n-3) x G - x^2 A G.
// Throws std::invalid_argument for invalid metrics.
DerivedCoefficients derive_coefficients(const WarpedMetric& m);

struct CharCoords {
  double mu = 0, nu = 0;
  double t = 0, x = 0;
  double s_plus = 0, s_minus = 0;
  double r = 0, tau = 0;
};

// x > 0 and |t| < 1/x required; throws std::domain_error otherwise
CharCoords to_char_coords(double t, double x);

// mu > 0 and nu > 0 required
CharCoords from_char_coords(double mu, double nu);

// boundary-defining coordinate in the two parametrizations (edges allowed)
double x_of_char(double mu, double nu);
double x_of_rot(double tau, double r);

}  // namespace radlab
