// Per-mode degenerate Goursat problem on the characteristic square:
//
//   (mu+nu)^2 d_mu d_nu w = (lambda*phi(x) + B(x)) w + G,   x = 2 mu nu/(mu+nu),
//   w(mu,mu) = q1(mu),  d_mu w(mu,mu) = q2(mu),
//
// solved by trapezoidal characteristic marching away from the diagonal.  The
// first off-diagonal layer comes from the exact identity
//
//   w(mu,nu) = q1(nu) - int_mu^nu q2 - int int_T Phi   (nu > mu),
//
// which encodes the tangential relation d_nu w(mu,mu) = q1'(mu) - q2(mu);
// interior cells use the four-corner trapezoidal rule, solved per cell for the
// new value (the right side is linear in it).  Cells under the corner cutoff
// mu+nu < delta are pinned to zero and flagged.
//
// Two marchers produce bitwise-identical grids: a serial row-ordered reference
// and an OpenMP kernel parallel over anti-diagonal wavefronts.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "radlab/geometry.hpp"
#include "radlab/profile.hpp"

namespace radlab {

// numerical failures (degenerate cells, non-convergent quadrature): exit code 3
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CharGrid {
  double T = 0.5;
  int N = 64;
  double delta = 0.0;  // corner cutoff; 0 requests the default 4h

  double h() const { return T / N; }
  double cutoff() const { return delta > 0.0 ? delta : 4.0 * h(); }
  int nodes() const { return N + 1; }
  double coord(int i) const { return i * h(); }

  void validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("grid: T must be positive");
    if (N < 16) throw std::invalid_argument("grid: N must be >= 16");
    if (cutoff() < 2.0 * h() - 1e-15 * T)
      throw std::invalid_argument("grid: corner cutoff must be >= 2h");
  }
  void validate_against(const DerivedCoefficients& c) const {
    validate();
    if (!(T <= 0.5 * c.eps))
      throw std::invalid_argument("grid: need T <= eps/2 for the coordinate patch");
  }
};

struct DiagonalData {
  Profile q1, q2;                  // diagonal value and transversal derivative
  std::vector<double> q1_nodes, q2_nodes;
};

// q1 = F f1,  q2 = (1/(2 mu^2)) F f2 + (1/2) F' f1 + (1/2) F f1'.
// Rejects data whose support touches the boundary x=0 (q2 blowing up under
// the 1/(2 mu^2) factor, or f_j(0) != 0).
DiagonalData build_diagonal_data(const DerivedCoefficients& coeffs, const Profile& f1,
                                 const Profile& f2, const CharGrid& grid);

// direct (q1,q2) construction for manufactured-solution work
DiagonalData diagonal_data_direct(const Profile& q1, const Profile& q2, const CharGrid& grid);

using Forcing = std::function<double(double mu, double nu)>;

// phi and B sampled at x(mu_i,nu_j); shared between modes (the lambda
// recombination is linear, so one grid serves every eigenvalue)
struct CoefficientGrid {
  std::vector<double> phi, B;
  static CoefficientGrid build(const DerivedCoefficients& coeffs, const CharGrid& grid);
};

struct ModeSolution {
  double lambda = 0.0;
  CharGrid grid;
  std::vector<double> w;           // (N+1)^2 row-major, index i*(N+1)+j
  std::vector<std::uint8_t> pin;   // corner-cutoff mask
  int pinned_nodes = 0;
  bool used_openmp = false;

  double at(int i, int j) const { return w[static_cast<std::size_t>(i) * (grid.N + 1) + j]; }
  bool pinned(int i, int j) const {
    return pin[static_cast<std::size_t>(i) * (grid.N + 1) + j] != 0;
  }
};

ModeSolution solve_mode(const DerivedCoefficients& coeffs, double lambda,
                        const DiagonalData& data, const CharGrid& grid,
                        const Forcing& forcing = {}, bool use_openmp = true);

// variant with a shared coefficient grid (mode-cache path)
ModeSolution solve_mode(const CoefficientGrid& cgrid, double lambda, const DiagonalData& data,
                        const CharGrid& grid, const Forcing& forcing = {},
                        bool use_openmp = true);

struct ResidualNorms {
  double max_norm = 0.0;
  double l2_norm = 0.0;
  double scale = 0.0;  // max |w| over the grid
};

// centered-difference residual of the discrete solution over interior nodes
// with mu+nu >= delta
ResidualNorms discrete_residual(const ModeSolution& sol, const DerivedCoefficients& coeffs,
                                double lambda, const Forcing& forcing = {});

// max |w - exact| over nodes outside the corner cutoff's influence strips
// (min(mu,nu) >= delta); used by the exactness and convergence checks
double max_error_against(const ModeSolution& sol,
                         const std::function<double(double, double)>& exact,
                         bool exclude_cutoff_strips = true);

}  // namespace radlab
