// Closed-form two-variable test functions with analytic first and second
// partial derivatives, for the quadrature checks of the energy and Carleman
// inequalities.  The variable pair is abstract: (mu,nu) for the square-domain
// checks, (tau,r) for the cone-supported Carleman instances.
#pragma once

#include <memory>
#include <random>
#include <vector>

#include "radlab/profile.hpp"

namespace radlab {

struct Eval2 {
  double v = 0, da = 0, db = 0, daa = 0, dab = 0, dbb = 0;
};

class Func2DImpl {
public:
  virtual ~Func2DImpl() = default;
  virtual Eval2 eval(double a, double b) const = 0;
};

class Func2D {
public:
  Func2D();  // identically zero
  explicit Func2D(std::shared_ptr<const Func2DImpl> impl) : impl_(std::move(impl)) {}

  Eval2 eval(double a, double b) const { return impl_->eval(a, b); }
  double v(double a, double b) const { return impl_->eval(a, b).v; }

  static Func2D zero();
  // sum_{i,j} c[i][j] a^i b^j
  static Func2D poly2(std::vector<std::vector<double>> coeffs);
  static Func2D separable(Profile fa, Profile fb);
  static Func2D pow_product(int p);  // (a b)^p
  static Func2D product(Func2D f, Func2D g);
  static Func2D scale(double s, Func2D f);
  // in (tau=a, r=b): ((r-ra)(rb-r))_+^p * ((r^2-tau^2)/r^2)^q, supported in
  // the cone |tau| <= r, ra <= r <= rb
  static Func2D cone_bump(double ra, double rb, int p, int q);

private:
  std::shared_ptr<const Func2DImpl> impl_;
};

// seeded random members for the property sweeps
struct Func2DCorpus {
  explicit Func2DCorpus(std::uint64_t seed) : rng_(seed) {}

  // smooth on the closed square: polynomial, sometimes times a bump pair;
  // width_factor sets the smoothstep width relative to the window
  Func2D smooth_member(double T, double width_factor = 0.4);
  // carries a (mu nu)^p factor with p >= p_min (corner flatness for decay)
  Func2D corner_flat_member(double T, int p_min);
  // cone-supported member for Carleman sweeps
  Func2D cone_member(double r_lo, double r_hi);

  double uniform(double a, double b);
  int uniform_int(int a, int b);

private:
  std::mt19937_64 rng_;
};

}  // namespace radlab
