// Spectrum of the boundary Laplacian for the concrete boundary models and
// projection of sampled data onto its eigenfunctions.
//
//   flat torus:   lambda = sum_j (2 pi m_j / L_j)^2,  m in Z^d
//   round S^2:    lambda = l(l+1), multiplicity 2l+1
//   custom:       user-supplied eigenvalue list (labels only, no synthesis)
//
// Eigenfunction synthesis (projection / reconstruction) is provided for the
// d=1 torus (Fourier basis) and S^2 (real spherical harmonics, l <= 32).
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace radlab {

struct Mode {
  int k = 1;           // 1-based index over distinct eigenvalues
  double lambda = 0.0; // eigenvalue of the positive boundary Laplacian
  int multiplicity = 1;
};

class BoundaryModel {
public:
  enum class Kind { flat_torus, round_sphere2, custom };

  static BoundaryModel torus(std::vector<double> lengths);
  static BoundaryModel sphere2();
  static BoundaryModel custom(std::vector<double> eigenvalues);

  Kind kind() const { return kind_; }
  const std::vector<double>& lengths() const { return lengths_; }

  // all distinct eigenvalues <= lambda_max, ascending, lambda_1 = 0 first
  std::vector<Mode> enumerate_modes(double lambda_max) const;

  bool supports_synthesis() const;

private:
  BoundaryModel() = default;
  Kind kind_ = Kind::custom;
  std::vector<double> lengths_;      // torus side lengths
  std::vector<double> eigenvalues_;  // custom list
};

// quadrature grid on the boundary used for projections
struct BoundaryGrid {
  std::vector<std::array<double, 2>> nodes;  // torus: {theta,0}; S^2: {u=cos(theta), phi}
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// torus: `resolution` equispaced nodes; S^2: resolution Gauss-Legendre nodes in
// cos(theta) by 2*resolution equispaced nodes in phi
BoundaryGrid boundary_grid(const BoundaryModel& model, int resolution);

// L2-normalized eigenfunction value for mode k (distinct eigenvalue index,
// 1-based) and branch b (0-based within the multiplicity)
double eigenfunction(const BoundaryModel& model, const Mode& mode, int branch,
                     const std::array<double, 2>& node);

struct ProjectedMode {
  Mode mode;
  // branches[b][ix]: <f(x_ix, .), phi_{k,b}> per radial node
  std::vector<std::vector<double>> branches;
};

// samples[j][ix]: boundary node j (matching `grid`), radial node ix.
// Throws std::invalid_argument on a grid/model mismatch.
std::vector<ProjectedMode> project_data(const BoundaryModel& model, const BoundaryGrid& grid,
                                        const std::vector<std::vector<double>>& samples,
                                        double lambda_max);

}  // namespace radlab
