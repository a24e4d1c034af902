#include "radlab/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace radlab {

void WarpedMetric::validate() const {
  if (n < 3) throw std::invalid_argument("metric: dimension n must be >= 3");
  if (!(eps > 0.0)) throw std::invalid_argument("metric: eps must be positive");
  if (psi.degree() > max_degree)
    throw std::invalid_argument("metric: psi degree exceeds maximum");
  if (psi.at0() != 1) throw std::invalid_argument("metric: psi(0) must equal 1");
  // positivity on [0,eps] by dense sampling; psi is a low-degree polynomial
  const int samples = 4096;
  for (int i = 0; i <= samples; ++i) {
    double x = eps * static_cast<double>(i) / samples;
    if (!(psi.eval(x) > 0.0))
      throw std::invalid_argument("metric: psi must be positive on [0,eps]");
  }
}

DerivedCoefficients derive_coefficients(const WarpedMetric& m) {
  m.validate();

  const Rat a(m.n - 1, 2);
  const Poly x = Poly::x();
  const Poly psi = m.psi;
  const Poly dpsi = psi.derivative();

  DerivedCoefficients out;
  out.n = m.n;
  out.eps = m.eps;
  out.psi = psi;

  out.phi = RatFunc(Poly({Rat(1)}), psi);
  out.A = RatFunc(a * dpsi, psi);
  out.G = RatFunc(a * psi - (a / 2) * (x * dpsi), x * psi);
  out.G_d1 = out.G.derivative();

  RatFunc x2 = RatFunc::from_poly(x * x);
  RatFunc xr = RatFunc::from_poly(x);
  out.B = Rat(-1) * (x2 * (out.G_d1 + out.G * out.G)) +
          Rat(m.n - 3) * (xr * out.G) - x2 * out.A * out.G;

  // the pole of G at x=0 must cancel; B is regular with the exact value below
  if (out.B.den().at0() == 0)
    throw std::logic_error("derive_coefficients: B has a spurious pole at 0");
  if (out.B.at0() != Rat((m.n - 1) * (m.n - 3), 4))
    throw std::logic_error("derive_coefficients: B(0) != (n-1)(n-3)/4");

  out.phi_d1 = out.phi.derivative();
  out.phi_d2 = out.phi_d1.derivative();
  out.B_d1 = out.B.derivative();
  out.B_d2 = out.B_d1.derivative();

  out.phi_c = CompiledRF::from(out.phi);
  out.phi_d1_c = CompiledRF::from(out.phi_d1);
  out.phi_d2_c = CompiledRF::from(out.phi_d2);
  out.B_c = CompiledRF::from(out.B);
  out.B_d1_c = CompiledRF::from(out.B_d1);
  out.B_d2_c = CompiledRF::from(out.B_d2);
  out.A_c = CompiledRF::from(out.A);
  out.G_c = CompiledRF::from(out.G);
  out.G_d1_c = CompiledRF::from(out.G_d1);
  return out;
}

double DerivedCoefficients::F(double x) const {
  if (x == 0.0) return 0.0;  // n >= 3 so the exponent is >= 1
  double a = 0.5 * (n - 1);
  return std::pow(x, a) * std::pow(psi.eval(x), -0.5 * a);
}

double DerivedCoefficients::F_d1(double x) const {
  if (x == 0.0) {
    // F ~ x^a (1 + O(x)); the derivative at 0 is 1 for n=3 and 0 for n>3
    return n == 3 ? 1.0 : 0.0;
  }
  return F(x) * G_c.eval(x);
}

double DerivedCoefficients::F_d2(double x) const {
  if (!(x > 0.0)) throw std::domain_error("F_d2 requires x > 0");
  double g = G_c.eval(x);
  return F(x) * (G_d1_c.eval(x) + g * g);
}

CharCoords to_char_coords(double t, double x) {
  if (!(x > 0.0)) throw std::domain_error("to_char_coords: x must be positive");
  if (!(std::abs(t) < 1.0 / x))
    throw std::domain_error("to_char_coords: |t| >= 1/x is outside the chart");
  CharCoords c;
  c.t = t;
  c.x = x;
  c.s_plus = t - 1.0 / x;
  c.s_minus = t + 1.0 / x;
  c.mu = -1.0 / c.s_plus;
  c.nu = 1.0 / c.s_minus;
  c.r = c.mu + c.nu;
  c.tau = c.nu - c.mu;
  return c;
}

CharCoords from_char_coords(double mu, double nu) {
  if (!(mu > 0.0) || !(nu > 0.0))
    throw std::domain_error("from_char_coords: mu and nu must be positive");
  CharCoords c;
  c.mu = mu;
  c.nu = nu;
  c.x = 2.0 * mu * nu / (mu + nu);
  c.t = (mu - nu) / (2.0 * mu * nu);
  c.s_plus = -1.0 / mu;
  c.s_minus = 1.0 / nu;
  c.r = mu + nu;
  c.tau = nu - mu;
  return c;
}

double x_of_char(double mu, double nu) {
  double s = mu + nu;
  if (s <= 0.0) return 0.0;
  return 2.0 * mu * nu / s;
}

double x_of_rot(double tau, double r) {
  if (r <= 0.0) return 0.0;
  return (r * r - tau * tau) / (2.0 * r);
}

}  // namespace radlab
