// Radiation fields on the characteristic edges.
//
// The forward field lives on {nu=0}, parametrized by mu with s = -1/mu, and
// equals mu^2 d_mu w(mu,0) (the s-derivative of the edge limit; psi(0)=1 makes
// the conformal correction trivial there).  The backward field on {mu=0} uses
// the mirror formula nu^2 d_nu w(0,nu) at s = +1/nu.  Edge derivatives use
// one-sided second-order stencils along the edge row.  Support thresholds are
// detected against a relative tolerance with a three-consecutive-sample rule.
#pragma once

#include <string>
#include <vector>

#include "radlab/boundary_spectrum.hpp"
#include "radlab/goursat.hpp"

namespace radlab {

enum class Direction { forward, backward };

struct FieldSample {
  double edge = 0.0;   // mu (forward) or nu (backward)
  double s = 0.0;      // -1/mu or +1/nu
  double value = 0.0;
};

struct RadiationField {
  Direction direction = Direction::forward;
  double h = 0.0;
  std::vector<FieldSample> samples;  // ascending edge coordinate, cutoff excluded
};

RadiationField extract_field(const ModeSolution& sol, Direction dir);

struct ThresholdEstimate {
  double mu_star = 0.0;
  double uncertainty = 0.0;  // +- h
  bool vanishes = false;     // field identically below tolerance
};

ThresholdEstimate support_threshold(const RadiationField& field, double rel_tol);

struct SupportExperiment {
  DerivedCoefficients coeffs;
  std::vector<double> lambdas;  // one solve per eigenvalue
  Profile f2;                   // odd data (f1 = 0, D_t u(0) = f per mode)
  CharGrid grid;
  double rel_tol = 1e-6;
  double converse_slack = 2.0;  // allowed overshoot of mu* past x1, in units of h
  bool use_openmp = true;
};

struct SupportReport {
  double x1 = 0.0;       // inf of the data support in x
  double mu_star = 0.0;  // aggregated threshold
  double h = 0.0;
  bool vanishes = false;
  bool forward_ok = false;   // finite speed: mu* >= x1 - h
  bool converse_ok = false;  // support direction: mu* <= x1 + slack*h
  std::string verdict;       // PASS | FAIL | trivially consistent

  struct PerMode {
    double lambda = 0.0;
    double mu_star = 0.0;
    bool vanishes = false;
  };
  std::vector<PerMode> per_mode;
  std::vector<FieldSample> aggregate;            // rss over modes per edge node
  std::vector<RadiationField> per_mode_fields;
};

SupportReport run_support_report(const SupportExperiment& exp);

}  // namespace radlab
