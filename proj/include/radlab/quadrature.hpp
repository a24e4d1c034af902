// Quadrature helpers: composite Gauss-Legendre panels for the inequality
// checks (where panel-doubling self-consistency is part of the contract) and
// adaptive Gauss-Kronrod for the Euclidean oracle integrals.
#pragma once

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cstddef>
#include <stdexcept>

namespace radlab::quad {

// full 16-point Gauss-Legendre rule on [-1,1]
struct GL16 {
  std::array<double, 16> x{}, w{};
  GL16() {
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& ax = rule::abscissa();  // nonnegative half
    const auto& aw = rule::weights();
    for (std::size_t i = 0; i < 8; ++i) {
      x[2 * i] = -ax[7 - i];
      w[2 * i] = aw[7 - i];
      x[2 * i + 1] = ax[7 - i];
      w[2 * i + 1] = aw[7 - i];
    }
  }
};

inline const GL16& gl16() {
  static const GL16 rule;
  return rule;
}

// composite Gauss-Legendre with `panels` equal panels on [a,b]
template <typename F>
double gl_panels(F&& f, double a, double b, int panels) {
  if (!(b > a)) return 0.0;
  if (panels < 1) throw std::invalid_argument("gl_panels: panels must be >= 1");
  const auto& rule = gl16();
  const double hp = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double pa = a + p * hp;
    double mid = pa + 0.5 * hp, half = 0.5 * hp;
    double acc = 0.0;
    for (std::size_t i = 0; i < 16; ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
    total += acc * half;
  }
  return total;
}

// integral over the triangle {a <= u <= v <= b} of f(u,v)
template <typename F>
double gl_triangle(F&& f, double a, double b, int panels) {
  return gl_panels(
      [&](double u) {
        return gl_panels([&](double v) { return f(u, v); }, u, b, panels);
      },
      a, b, panels);
}

// adaptive Gauss-Kronrod; tolerance is on the relative error estimate
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-10) {
  if (!(b > a)) return 0.0;
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  return gk::integrate(std::forward<F>(f), a, b, 15, tol);
}

}  // namespace radlab::quad
