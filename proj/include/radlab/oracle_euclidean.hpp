// Closed-form Euclidean R^3 reference for the psi==1, n=3 pipeline.
//
// For the radial wave problem u_tt = lap u, u(0)=0, u_t(0)=f (f radial,
// compactly supported away from the origin):
//
//   u(t,r) = (1/(2r)) int_{r-t}^{r+t} rho ftilde(rho) drho,   ftilde even,
//   forward field  = -(s/2) f(|s|)      at s < 0,
//   radial Radon   R f(s) = 2 pi int_{|s|}^inf rho f(rho) drho,
//
// and the field is proportional to d/ds R f (the translation-representation
// link), with constant 1/(4 pi) in these normalizations.
#pragma once

#include <vector>

#include "radlab/profile.hpp"

namespace radlab {

struct RadialProfile {
  Profile f;            // profile in the Euclidean radius r
  double lo = 0.0, hi = 0.0;

  static RadialProfile bump(double ra, double rb, double width,
                            std::vector<double> poly = {1.0});

  // data identification with the collar pipeline: a profile given in the
  // boundary coordinate x corresponds to f(r) = fx(1/r) / r^2 (the
  // F^2-conjugation of D_t u(0) data for n=3)
  static RadialProfile from_x_profile(const Profile& fx);

  double even(double rho) const { return f.v(std::abs(rho)); }
};

// spherical-means solution, adaptive quadrature to ~1e-10
double dalembert_radial(const RadialProfile& f, double t, double r);

// closed-form forward field at s (exact for s < 0 outside the backward cone)
double radiation_field_radial(const RadialProfile& f, double s);

// finite-radius approximation d/ds [ r u(s+r, r) ], differenced in s
double radiation_field_finite_r(const RadialProfile& f, double s, double r);

double radon_radial(const RadialProfile& f, double s);

struct LaxPhillipsReport {
  double c_fit = 0.0;        // fitted constant in field ~ c * d/ds R f
  double rel_residual = 0.0; // l2 misfit relative to the field norm
  int n_samples = 0;
};

LaxPhillipsReport lax_phillips_compare(const RadialProfile& f, int n_samples = 161);

}  // namespace radlab
