#include "radlab/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radlab/quadrature.hpp"

namespace radlab {

namespace {

constexpr double kTiny = 1e-280;
constexpr double kPassSlack = 1e-8;

// panel-doubling drift relative to the dominant scale of the check; a
// negligible integral may wobble relatively without meaning anything
double drift_of(double coarse, double fine, double scale) {
  return std::abs(coarse - fine) / std::max({std::abs(fine), scale, kTiny});
}

void require_converged(double drift, const char* what) {
  if (drift > 1e-6)
    throw NumericalError(std::string(what) + ": quadrature non-convergence under panel doubling");
}

}  // namespace

Bound0Result check_bound0(const Func2D& w, int k, double mu, double b, int panels) {
  if (k < 0) throw std::invalid_argument("check_bound0: k must be >= 0");
  if (!(mu > 0.0) || !(b > mu)) throw std::invalid_argument("check_bound0: need 0 < mu < b");

  auto lhs_at = [&](int P) {
    return quad::gl_panels(
        [&](double nu) {
          double v = w.v(mu, nu);
          return std::pow(mu + nu, -1.0 - k) * v * v;
        },
        mu, b, P);
  };
  auto grad_at = [&](int P) {
    return quad::gl_panels(
        [&](double nu) {
          double dv = w.eval(mu, nu).db;
          return std::pow(mu + nu, static_cast<double>(-k)) * dv * dv;
        },
        mu, b, P);
  };

  double wd = w.v(mu, mu);
  double diag = 2.0 * b * std::pow(mu, -1.0 - k) * wd * wd;

  Bound0Result r;
  double l1 = lhs_at(panels), l2 = lhs_at(2 * panels);
  double g1 = grad_at(panels), g2 = grad_at(2 * panels);
  r.lhs = l2;
  r.rhs = diag + b * g2;
  double scale = std::max(r.lhs, r.rhs);
  r.quad_drift = std::max(drift_of(l1, l2, scale), drift_of(b * g1, b * g2, scale));
  require_converged(r.quad_drift, "check_bound0");
  r.pass = r.lhs <= r.rhs * (1.0 + kPassSlack) + kTiny;
  return r;
}

FubiniResult check_fubini(const Func2D& F, double a0, double b, int panels) {
  if (!(b > a0) || a0 < 0.0) throw std::invalid_argument("check_fubini: need 0 <= a0 < b");

  auto lhs_at = [&](int P) {
    return quad::gl_panels(
        [&](double a) {
          return quad::gl_triangle([&](double m, double n) { return F.v(m, n); }, a, b, P);
        },
        a0, b, P);
  };
  auto rhs_at = [&](int P) {
    return quad::gl_triangle([&](double m, double n) { return (m - a0) * F.v(m, n); }, a0, b,
                             P);
  };

  FubiniResult r;
  double l1 = lhs_at(panels), l2 = lhs_at(2 * panels);
  double h1 = rhs_at(panels), h2 = rhs_at(2 * panels);
  r.lhs = l2;
  r.rhs = h2;
  double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.quad_drift = std::max(drift_of(l1, l2, scale), drift_of(h1, h2, scale));
  require_converged(r.quad_drift, "check_fubini");
  r.residual = std::abs(r.lhs - r.rhs);
  r.scale = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-30});
  r.pass = r.residual <= 1e-8 * r.scale;
  return r;
}

DecayResult check_decay(const Func2D& w, int m, double T, int panels) {
  if (m < 0) throw std::invalid_argument("check_decay: m must be >= 0");
  if (!(T > 0.0)) throw std::invalid_argument("check_decay: T must be positive");

  auto lhs_at = [&](int P) {
    return quad::gl_panels(
        [&](double mu) {
          return quad::gl_panels(
              [&](double nu) {
                double v = w.v(mu, nu);
                return std::pow(mu + nu, -m - 2.0) * v * v;
              },
              0.0, T, P);
        },
        0.0, T, P);
  };
  auto diag_at = [&](int P) {
    return std::pow(2.0, static_cast<double>(-m)) *
           quad::gl_panels(
               [&](double mu) {
                 double v = w.v(mu, mu);
                 return std::pow(mu, -m - 2.0) * v * v;
               },
               0.0, T, P);
  };
  auto grad_at = [&](int P) {
    return quad::gl_panels(
        [&](double mu) {
          return quad::gl_panels(
              [&](double nu) {
                Eval2 e = w.eval(mu, nu);
                double d = e.db - e.da;
                return std::pow(mu + nu, static_cast<double>(-m)) * d * d;
              },
              0.0, T, P);
        },
        0.0, T, P);
  };

  DecayResult r;
  double l1 = lhs_at(panels), l2 = lhs_at(2 * panels);
  double d1 = diag_at(panels), d2 = diag_at(2 * panels);
  double g1 = grad_at(panels), g2 = grad_at(2 * panels);
  if (!std::isfinite(l2) || !std::isfinite(d2) || !std::isfinite(g2))
    throw NumericalError("check_decay: divergent weighted integral");
  r.lhs = l2;
  r.rhs_diag = d2;
  r.rhs_grad = g2;
  double scale = std::max(r.lhs, r.rhs_diag + r.rhs_grad);
  r.quad_drift =
      std::max({drift_of(l1, l2, scale), drift_of(d1, d2, scale), drift_of(g1, g2, scale)});
  require_converged(r.quad_drift, "check_decay");
  r.pass = r.lhs <= (r.rhs_diag + r.rhs_grad) * (1.0 + kPassSlack) + kTiny;
  return r;
}

EnergyResult check_energy(const ModeSolution& sol, const DiagonalData& data, int panels) {
  const CharGrid& grid = sol.grid;
  const int N = grid.N;
  const double h = grid.h();
  const double lam = sol.lambda;

  EnergyResult out;
  // fixed-mu energy by the trapezoid rule on the grid
  for (int i = 0; i <= N; ++i) {
    double mu = grid.coord(i);
    double acc = 0.0;
    for (int j = 0; j <= N; ++j) {
      double nu = grid.coord(j);
      if (i + j == 0) continue;
      double dnw;
      if (j == 0)
        dnw = (-3.0 * sol.at(i, 0) + 4.0 * sol.at(i, 1) - sol.at(i, 2)) / (2.0 * h);
      else if (j == N)
        dnw = (3.0 * sol.at(i, N) - 4.0 * sol.at(i, N - 1) + sol.at(i, N - 2)) / (2.0 * h);
      else
        dnw = (sol.at(i, j + 1) - sol.at(i, j - 1)) / (2.0 * h);
      double wv = sol.at(i, j);
      double r = mu + nu;
      double integrand = dnw * dnw + (lam * wv * wv + wv * wv) / (r * r);
      acc += (j == 0 || j == N ? 0.5 : 1.0) * integrand;
    }
    out.energy_max = std::max(out.energy_max, acc * h);
  }

  auto h11_sq = [&](const Profile& q) {
    return quad::gl_panels(
        [&](double mu) {
          Deriv2 e = q.eval(mu);
          double a = e.v / mu;
          double b = e.d1 / mu - e.v / (mu * mu);
          return a * a + b * b;
        },
        0.0, grid.T, panels);
  };
  out.data_norm_sq = h11_sq(data.q1) + h11_sq(data.q2);
  out.trivial = out.data_norm_sq < kTiny;
  out.ratio = out.trivial ? 0.0 : out.energy_max / out.data_norm_sq;
  return out;
}

double CarlemanResult::raw(double scaled) const {
  double lg = std::log(std::max(scaled, 0.0)) + log_common;
  if (scaled == 0.0) return 0.0;
  if (lg > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(lg);
}

CarlemanResult carleman_check(const CarlemanInstance& inst) {
  if (!inst.coeffs) throw std::invalid_argument("carleman_check: missing coefficients");
  if (!(inst.gamma >= 1.0)) throw std::invalid_argument("carleman_check: gamma must be >= 1");
  if (!(0.0 < inst.ra && inst.ra < inst.rb))
    throw std::invalid_argument("carleman_check: bad r-support");
  const double g = inst.gamma, ra = inst.ra, rb = inst.rb;
  // all norms are accumulated with weight (r/rb)^{-2 gamma}; the common factor
  // rb^{-2 gamma} is carried in log space (the spec'd overflow guard)
  if (2.0 * g * std::log(rb / ra) > 600.0)
    throw NumericalError("carleman_check: weight overflow; narrow the support or reduce gamma");

  const DerivedCoefficients& C = *inst.coeffs;
  const double lam = inst.lambda;

  struct Sums {
    double L = 0, R1 = 0, R1a = 0, R2 = 0, R3 = 0;
  };
  auto sweep = [&](int P) {
    Sums s;
    const auto& rule = quad::gl16();
    double hr = (rb - ra) / P;
    for (int pr = 0; pr < P; ++pr) {
      double rm = ra + (pr + 0.5) * hr, rh = 0.5 * hr;
      for (int ir = 0; ir < 16; ++ir) {
        double r = rm + rh * rule.x[ir];
        double wr = rule.w[ir] * rh;
        double W = std::exp(2.0 * g * std::log(rb / r));
        double ht = 2.0 * r / P;
        for (int pt = 0; pt < P; ++pt) {
          double tm = -r + (pt + 0.5) * ht, th = 0.5 * ht;
          for (int it = 0; it < 16; ++it) {
            double tau = tm + th * rule.x[it];
            double wq = wr * rule.w[it] * th * W;
            Eval2 e = inst.u.eval(tau, r);
            if (e.v == 0.0 && e.da == 0.0 && e.db == 0.0 && e.daa == 0.0 && e.dbb == 0.0)
              continue;
            double xc = x_of_rot(tau, r);
            double Fk = -(lam * C.phi_c.eval(xc) + C.B_c.eval(xc));
            double Pu = r * r * (e.dbb - e.daa) + Fk * e.v;
            double r2 = r * r, r4 = r2 * r2;
            s.L += wq * Pu * Pu / r4;
            double t1 = e.db - g * e.v / r;
            s.R1 += wq * g * g * t1 * t1 / r2;
            double t1a = e.db - e.v / r;
            s.R1a += wq * g * g * t1a * t1a / r2;
            s.R2 += wq * g * g * e.da * e.da / r2;
            s.R3 += wq * g * g * g * g * e.v * e.v / r4;
          }
        }
      }
    }
    return s;
  };

  Sums c = sweep(inst.panels), f = sweep(2 * inst.panels);
  CarlemanResult out;
  double scale = std::max(f.L, f.R1 + f.R2 + f.R3);
  out.quad_drift = std::max({drift_of(c.L, f.L, scale), drift_of(c.R1, f.R1, scale),
                             drift_of(c.R2, f.R2, scale), drift_of(c.R3, f.R3, scale)});
  require_converged(out.quad_drift, "carleman_check");
  out.lhs = f.L;
  out.rhs1 = f.R1;
  out.rhs1_alt = f.R1a;
  out.rhs2 = f.R2;
  out.rhs3 = f.R3;
  double denom = f.R1 + f.R2 + f.R3;
  out.ratio = denom > 0.0 ? f.L / denom : 0.0;
  out.log_common = -2.0 * g * std::log(rb);
  return out;
}

double detect_gamma0(const std::vector<std::pair<double, double>>& gamma_ratio, double c_min,
                     double stab) {
  const int n = static_cast<int>(gamma_ratio.size());
  // the last sweep point alone cannot confirm stabilization
  for (int i = 0; i + 1 < n; ++i) {
    bool ok = true;
    for (int j = i; j < n && ok; ++j) {
      if (gamma_ratio[j].second < c_min) ok = false;
      if (j + 1 < n) {
        double a = gamma_ratio[j].second, b = gamma_ratio[j + 1].second;
        if (b > a * stab || a > b * stab) ok = false;
      }
    }
    if (ok) return gamma_ratio[i].first;
  }
  return std::numeric_limits<double>::infinity();
}

VanishingDemoReport carleman_vanishing_demo(const ModeSolution& sol,
                                            const DerivedCoefficients& coeffs, double lambda,
                                            const std::vector<double>& gammas) {
  const CharGrid& grid = sol.grid;
  const int N = grid.N;
  const double h = grid.h();
  const double T = grid.T;
  const double r0 = 0.25 * T;
  const double delta = grid.cutoff();

  // chi(r) = 1 for r <= T/4, 0 for r >= T/2
  auto chi = [&](double r) { return smoothstep((0.5 * T - r) / r0); };

  const int M = grid.nodes();
  std::vector<double> v(static_cast<std::size_t>(M) * M, 0.0);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      double r = grid.coord(i) + grid.coord(j);
      v[static_cast<std::size_t>(i) * M + j] = chi(r).v * sol.at(i, j);
    }
  auto vat = [&](int i, int j) { return v[static_cast<std::size_t>(i) * M + j]; };

  VanishingDemoReport rep;
  double ball_sq = 0.0;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      if (grid.coord(i) + grid.coord(j) <= r0) ball_sq += sol.at(i, j) * sol.at(i, j);
  rep.w_ball_l2 = h * std::sqrt(ball_sq);

  // P(chi w) by the centered cross stencil (r^2 d_mu d_nu = r^2(d_r^2-d_tau^2))
  std::vector<double> pv(static_cast<std::size_t>(M) * M, 0.0);
  for (int i = 1; i < N; ++i)
    for (int j = 1; j < N; ++j) {
      double mu = grid.coord(i), nu = grid.coord(j);
      double r = mu + nu;
      if (r < delta) continue;
      double cross =
          (vat(i + 1, j + 1) - vat(i - 1, j + 1) - vat(i + 1, j - 1) + vat(i - 1, j - 1)) /
          (4.0 * h * h);
      double x = x_of_char(mu, nu);
      double Fk = -(lambda * coeffs.phi_c.eval(x) + coeffs.B_c.eval(x));
      pv[static_cast<std::size_t>(i) * M + j] = r * r * cross + Fk * vat(i, j);
    }

  for (double g : gammas) {
    if (2.0 * g * std::log(r0 / delta) > 600.0)
      throw NumericalError("carleman_vanishing_demo: weight overflow at large gamma");
    VanishingDemoRow row;
    row.gamma = g;
    double a = 0.0, ball = 0.0;
    for (int i = 1; i < N; ++i)
      for (int j = 1; j < N; ++j) {
        double r = grid.coord(i) + grid.coord(j);
        if (r < delta) continue;
        double W = std::exp((-2.0 * g - 4.0) * std::log(r / r0));
        double p = pv[static_cast<std::size_t>(i) * M + j];
        if (p != 0.0) a += W * p * p;
        if (r <= r0) {
          double wv = sol.at(i, j);
          ball += W * wv * wv;
        }
      }
    row.pchi_norm_sq = h * h * a;
    row.ball_norm_sq = g * g * g * g * h * h * ball;
    row.implied_bound = row.pchi_norm_sq / (g * g * g * g);
    rep.rows.push_back(row);
  }

  rep.monotone_nonincreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].implied_bound >
        rep.rows[i - 1].implied_bound * (1.0 + 1e-9) + kTiny)
      rep.monotone_nonincreasing = false;
  return rep;
}

}  // namespace radlab
