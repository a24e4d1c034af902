#include "radlab/goursat.hpp"

#include <algorithm>
#include <cmath>

namespace radlab {

namespace {

// transformed diagonal data as closed-form profiles
class Q1Func final : public ProfileImpl {
public:
  Q1Func(DerivedCoefficients c, Profile f1) : c_(std::move(c)), f1_(std::move(f1)) {}
  Deriv2 eval(double x) const override {
    if (x <= 0.0) return {};
    Deriv2 f = f1_.eval(x);
    double F = c_.F(x), F1 = c_.F_d1(x), F2 = c_.F_d2(x);
    return {F * f.v, F1 * f.v + F * f.d1, F2 * f.v + 2.0 * F1 * f.d1 + F * f.d2};
  }
  double lo() const override { return std::max(0.0, f1_.lo()); }
  double hi() const override { return f1_.hi(); }

private:
  DerivedCoefficients c_;
  Profile f1_;
};

class Q2Func final : public ProfileImpl {
public:
  Q2Func(DerivedCoefficients c, Profile f1, Profile f2)
      : c_(std::move(c)), f1_(std::move(f1)), f2_(std::move(f2)) {}
  Deriv2 eval(double x) const override {
    if (x <= 0.0) return {};
    double F = c_.F(x), F1 = c_.F_d1(x), F2 = c_.F_d2(x);
    Deriv2 out{};
    if (!f2_.is_zero()) {
      Deriv2 f = f2_.eval(x);
      double p = F * f.v;                 // (F f2)
      double p1 = F1 * f.v + F * f.d1;    // (F f2)'
      out.v += 0.5 * p / (x * x);
      out.d1 += 0.5 * p1 / (x * x) - p / (x * x * x);
    }
    if (!f1_.is_zero()) {
      Deriv2 f = f1_.eval(x);
      out.v += 0.5 * (F1 * f.v + F * f.d1);
      out.d1 += 0.5 * (F2 * f.v + 2.0 * F1 * f.d1 + F * f.d2);
    }
    // second derivative only serves diagnostics; difference the analytic d1
    double e = 1e-6 * std::max(1.0, std::abs(x));
    if (x - e > 0.0) {
      Deriv2 a = evald1_only(x + e), b = evald1_only(x - e);
      out.d2 = (a.d1 - b.d1) / (2.0 * e);
    }
    return out;
  }
  double lo() const override { return 0.0; }
  double hi() const override { return std::max(f1_.hi(), f2_.hi()); }

private:
  Deriv2 evald1_only(double x) const {
    Deriv2 out{};
    double F = c_.F(x), F1 = c_.F_d1(x), F2 = c_.F_d2(x);
    if (!f2_.is_zero()) {
      Deriv2 f = f2_.eval(x);
      out.d1 += 0.5 * (F1 * f.v + F * f.d1) / (x * x) - F * f.v / (x * x * x);
    }
    if (!f1_.is_zero()) {
      Deriv2 f = f1_.eval(x);
      out.d1 += 0.5 * (F2 * f.v + 2.0 * F1 * f.d1 + F * f.d2);
    }
    return out;
  }
  DerivedCoefficients c_;
  Profile f1_, f2_;
};

std::vector<double> sample_nodes(const Profile& p, const CharGrid& g) {
  std::vector<double> v(g.nodes());
  for (int i = 0; i <= g.N; ++i) v[i] = p.v(g.coord(i));
  return v;
}

// 3-point Gauss-Legendre on [a,b]; exact through degree 5, so the reduced
// equation with polynomial data up to degree 5 in q2 marches exactly
double gauss3(const Profile& f, double a, double b) {
  static const double xg = std::sqrt(0.6);
  static const double w0 = 8.0 / 9.0, w1 = 5.0 / 9.0;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  return half * (w0 * f.v(mid) + w1 * (f.v(mid - half * xg) + f.v(mid + half * xg)));
}

struct MarchContext {
  int N;
  double h;
  std::vector<double> c;      // (lambda*phi+B)/(mu+nu)^2 at nodes; 0 where pinned
  std::vector<double> g;      // G/(mu+nu)^2 at nodes; 0 where pinned
  std::vector<double> iq2;    // iq2[i] = int_{mu_i}^{mu_{i+1}} q2
  const std::vector<double>* q1n;
  std::vector<std::uint8_t> pin;

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * (N + 1) + j; }
};

inline double phi_at(const MarchContext& m, const std::vector<double>& w, int i, int j) {
  std::size_t k = m.idx(i, j);
  return m.c[k] * w[k] + m.g[k];
}

inline void check_denom(double denom) {
  if (std::abs(denom) < 1e-8)
    throw NumericalError("degenerate cell: per-cell coefficient vanished (shrink h)");
}

// first off-diagonal node on either side of the diagonal, from the identity
// w(mu,nu) = q1(nu) - int q2 - intint Phi over the triangle against the
// diagonal; the triangle integral anchors Phi at the diagonal vertex, where
// the data lives
inline double start_node(const MarchContext& m, const std::vector<double>& w, int i, bool upper) {
  const double h2_2 = m.h * m.h / 2.0;
  double known = upper ? (*m.q1n)[i + 1] - m.iq2[i] : (*m.q1n)[i] + m.iq2[i];
  return known - h2_2 * phi_at(m, w, i, i);
}

// interior cell solve; (bi,bj),(ci,cj),(di,dj) are the known corners
inline double cell_node(const MarchContext& m, const std::vector<double>& w, int ai, int aj,
                        int bi, int bj, int ci, int cj, int di, int dj) {
  const double h2_4 = m.h * m.h / 4.0;
  std::size_t a = m.idx(ai, aj);
  double rhs = w[m.idx(bi, bj)] + w[m.idx(ci, cj)] - w[m.idx(di, dj)] -
               h2_4 * (phi_at(m, w, bi, bj) + phi_at(m, w, ci, cj) + phi_at(m, w, di, dj) +
                       m.g[a]);
  double denom = 1.0 + h2_4 * m.c[a];
  check_denom(denom);
  return rhs / denom;
}

void march_serial(const MarchContext& m, std::vector<double>& w) {
  const int N = m.N;
  // upper triangle, row-ordered: node (i,j) needs (i+1,j), (i,j-1), (i+1,j-1)
  for (int i = N - 1; i >= 0; --i)
    for (int j = i + 1; j <= N; ++j) {
      std::size_t k = m.idx(i, j);
      if (m.pin[k]) continue;
      w[k] = (j == i + 1) ? start_node(m, w, i, true)
                          : cell_node(m, w, i, j, i + 1, j, i, j - 1, i + 1, j - 1);
    }
  // lower triangle mirror
  for (int j = N - 1; j >= 0; --j)
    for (int i = j + 1; i <= N; ++i) {
      std::size_t k = m.idx(i, j);
      if (m.pin[k]) continue;
      w[k] = (i == j + 1) ? start_node(m, w, j, false)
                          : cell_node(m, w, i, j, i, j + 1, i - 1, j, i - 1, j + 1);
    }
}

void march_wavefront(const MarchContext& m, std::vector<double>& w) {
  const int N = m.N;
  // nodes on one anti-diagonal wavefront (fixed |i-j|) are independent given
  // the previous two wavefronts; per-node arithmetic is identical to the
  // serial reference, so the result is bitwise-identical for any thread count.
  // one team for the whole march; the implicit barrier after each worksharing
  // loop orders the layers
#pragma omp parallel
  {
    for (int l = 1; l <= N; ++l) {
#pragma omp for schedule(static)
      for (int i = 0; i <= N - l; ++i) {
        int j = i + l;
        std::size_t k = m.idx(i, j);
        if (m.pin[k]) continue;
        w[k] = (l == 1) ? start_node(m, w, i, true)
                        : cell_node(m, w, i, j, i + 1, j, i, j - 1, i + 1, j - 1);
      }
    }
    for (int l = 1; l <= N; ++l) {
#pragma omp for schedule(static)
      for (int j = 0; j <= N - l; ++j) {
        int i = j + l;
        std::size_t k = m.idx(i, j);
        if (m.pin[k]) continue;
        w[k] = (l == 1) ? start_node(m, w, j, false)
                        : cell_node(m, w, i, j, i, j + 1, i - 1, j, i - 1, j + 1);
      }
    }
  }
}

}  // namespace

DiagonalData build_diagonal_data(const DerivedCoefficients& coeffs, const Profile& f1,
                                 const Profile& f2, const CharGrid& grid) {
  grid.validate_against(coeffs);
  // data must not touch the boundary x=0
  double s1 = std::abs(f1.v(0.0)), s2 = std::abs(f2.v(0.0));
  if (s1 > 0.0 || s2 > 0.0)
    throw std::invalid_argument("diagonal data: support touches boundary (f(0) != 0)");

  DiagonalData d;
  d.q1 = Profile(std::make_shared<Q1Func>(coeffs, f1));
  d.q2 = Profile(std::make_shared<Q2Func>(coeffs, f1, f2));
  d.q1_nodes = sample_nodes(d.q1, grid);
  d.q2_nodes = sample_nodes(d.q2, grid);

  for (double v : d.q1_nodes)
    if (!std::isfinite(v))
      throw std::invalid_argument("diagonal data: q1 not finite on the grid");
  for (double v : d.q2_nodes)
    if (!std::isfinite(v))
      throw std::invalid_argument("diagonal data: support touches boundary (q2 overflow)");

  // the 1/(2 mu^2) factor must not blow up below mu_floor = 2h; for admissible
  // data q2 stays at interior scale there, so a corner value that dominates
  // the whole profile flags non-vanishing f2
  const double mu_floor = 2.0 * grid.h();
  double interior_scale = 0.0;
  for (int i = 0; i <= grid.N; ++i)
    if (grid.coord(i) >= mu_floor)
      interior_scale = std::max(interior_scale, std::abs(d.q2_nodes[i]));
  for (int i = 1; i <= grid.N; ++i) {
    double mu = grid.coord(i);
    if (mu < mu_floor && std::abs(d.q2_nodes[i]) > 10.0 * interior_scale + 1e-280)
      throw std::invalid_argument("diagonal data: support touches boundary (q2 blow-up)");
  }
  return d;
}

DiagonalData diagonal_data_direct(const Profile& q1, const Profile& q2, const CharGrid& grid) {
  grid.validate();
  DiagonalData d;
  d.q1 = q1;
  d.q2 = q2;
  d.q1_nodes = sample_nodes(q1, grid);
  d.q2_nodes = sample_nodes(q2, grid);
  return d;
}

CoefficientGrid CoefficientGrid::build(const DerivedCoefficients& coeffs, const CharGrid& grid) {
  grid.validate_against(coeffs);
  const int M = grid.nodes();
  CoefficientGrid cg;
  cg.phi.assign(static_cast<std::size_t>(M) * M, 0.0);
  cg.B.assign(static_cast<std::size_t>(M) * M, 0.0);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      double x = x_of_char(grid.coord(i), grid.coord(j));
      std::size_t k = static_cast<std::size_t>(i) * M + j;
      cg.phi[k] = coeffs.phi_c.eval(x);
      cg.B[k] = coeffs.B_c.eval(x);
    }
  return cg;
}

ModeSolution solve_mode(const CoefficientGrid& cgrid, double lambda, const DiagonalData& data,
                        const CharGrid& grid, const Forcing& forcing, bool use_openmp) {
  grid.validate();
  const int N = grid.N;
  const int M = grid.nodes();
  const double delta = grid.cutoff();

  MarchContext m;
  m.N = N;
  m.h = grid.h();
  m.q1n = &data.q1_nodes;
  m.pin.assign(static_cast<std::size_t>(M) * M, 0);
  m.c.assign(static_cast<std::size_t>(M) * M, 0.0);
  m.g.assign(static_cast<std::size_t>(M) * M, 0.0);

  ModeSolution sol;
  sol.lambda = lambda;
  sol.grid = grid;
  sol.used_openmp = use_openmp;
  sol.w.assign(static_cast<std::size_t>(M) * M, 0.0);

  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      std::size_t k = static_cast<std::size_t>(i) * M + j;
      double mu = grid.coord(i), nu = grid.coord(j);
      if (mu + nu < delta) {
        m.pin[k] = 1;
        ++sol.pinned_nodes;
        continue;
      }
      double r2 = (mu + nu) * (mu + nu);
      m.c[k] = (lambda * cgrid.phi[k] + cgrid.B[k]) / r2;
      if (forcing) m.g[k] = forcing(mu, nu) / r2;
    }

  m.iq2.assign(N, 0.0);
  for (int i = 0; i < N; ++i) m.iq2[i] = gauss3(data.q2, grid.coord(i), grid.coord(i + 1));

  for (int i = 0; i <= N; ++i) {
    std::size_t k = m.idx(i, i);
    sol.w[k] = m.pin[k] ? 0.0 : data.q1_nodes[i];
  }

  if (use_openmp)
    march_wavefront(m, sol.w);
  else
    march_serial(m, sol.w);

  sol.pin = std::move(m.pin);
  return sol;
}

ModeSolution solve_mode(const DerivedCoefficients& coeffs, double lambda,
                        const DiagonalData& data, const CharGrid& grid, const Forcing& forcing,
                        bool use_openmp) {
  CoefficientGrid cgrid = CoefficientGrid::build(coeffs, grid);
  return solve_mode(cgrid, lambda, data, grid, forcing, use_openmp);
}

ResidualNorms discrete_residual(const ModeSolution& sol, const DerivedCoefficients& coeffs,
                                double lambda, const Forcing& forcing) {
  const CharGrid& grid = sol.grid;
  const int N = grid.N;
  const double h = grid.h();
  const double delta = grid.cutoff();

  ResidualNorms out;
  for (double v : sol.w) out.scale = std::max(out.scale, std::abs(v));

  double sumsq = 0.0;
  for (int i = 1; i < N; ++i)
    for (int j = 1; j < N; ++j) {
      double mu = grid.coord(i), nu = grid.coord(j);
      if (mu + nu < delta) continue;
      // interior to the marched triangles: the stencil must neither straddle
      // the diagonal data curve nor touch pinned nodes
      if (std::abs(i - j) < 2) continue;
      if (sol.pinned(i - 1, j - 1) || sol.pinned(i + 1, j - 1) || sol.pinned(i - 1, j + 1) ||
          sol.pinned(i + 1, j + 1))
        continue;
      double cross = (sol.at(i + 1, j + 1) - sol.at(i - 1, j + 1) - sol.at(i + 1, j - 1) +
                      sol.at(i - 1, j - 1)) /
                     (4.0 * h * h);
      double x = x_of_char(mu, nu);
      double res = (mu + nu) * (mu + nu) * cross -
                   coeffs.lambda_phi_plus_B(lambda, x) * sol.at(i, j) -
                   (forcing ? forcing(mu, nu) : 0.0);
      out.max_norm = std::max(out.max_norm, std::abs(res));
      sumsq += res * res;
    }
  out.l2_norm = h * std::sqrt(sumsq);
  return out;
}

double max_error_against(const ModeSolution& sol,
                         const std::function<double(double, double)>& exact,
                         bool exclude_cutoff_strips) {
  const CharGrid& grid = sol.grid;
  const double delta = grid.cutoff();
  double err = 0.0;
  for (int i = 0; i <= grid.N; ++i)
    for (int j = 0; j <= grid.N; ++j) {
      double mu = grid.coord(i), nu = grid.coord(j);
      if (exclude_cutoff_strips && std::min(mu, nu) < delta) continue;
      if (sol.pinned(i, j)) continue;
      err = std::max(err, std::abs(sol.at(i, j) - exact(mu, nu)));
    }
  return err;
}

}  // namespace radlab
