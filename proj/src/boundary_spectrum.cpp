#include "radlab/boundary_spectrum.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace radlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSphereSynthesisLmax = 32;

// group nearly-equal eigenvalues (lattice sums may repeat inexactly)
std::vector<Mode> group_eigenvalues(std::vector<double> lams) {
  std::sort(lams.begin(), lams.end());
  std::vector<Mode> modes;
  for (double lam : lams) {
    if (!modes.empty() &&
        std::abs(lam - modes.back().lambda) <= 1e-9 * std::max(1.0, lam)) {
      modes.back().multiplicity += 1;
    } else {
      Mode m;
      m.k = static_cast<int>(modes.size()) + 1;
      m.lambda = lam;
      modes.push_back(m);
    }
  }
  return modes;
}

double sphere_ylm_norm(int l, int m) {
  // sqrt((2l+1)/(4pi) * (l-m)!/(l+m)!)
  double lg = std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0);
  return std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * std::exp(lg));
}

int sphere_l_of(const Mode& mode) {
  // lambda = l(l+1)
  int l = static_cast<int>(std::lround(0.5 * (std::sqrt(4.0 * mode.lambda + 1.0) - 1.0)));
  return l;
}

}  // namespace

BoundaryModel BoundaryModel::torus(std::vector<double> lengths) {
  if (lengths.empty()) throw std::invalid_argument("torus: need at least one side length");
  for (double L : lengths)
    if (!(L > 0.0)) throw std::invalid_argument("torus: side lengths must be positive");
  BoundaryModel m;
  m.kind_ = Kind::flat_torus;
  m.lengths_ = std::move(lengths);
  return m;
}

BoundaryModel BoundaryModel::sphere2() {
  BoundaryModel m;
  m.kind_ = Kind::round_sphere2;
  return m;
}

BoundaryModel BoundaryModel::custom(std::vector<double> eigenvalues) {
  if (eigenvalues.empty())
    throw std::invalid_argument("custom boundary: eigenvalue list is empty");
  std::sort(eigenvalues.begin(), eigenvalues.end());
  if (eigenvalues.front() != 0.0)
    throw std::invalid_argument("custom boundary: lambda_1 must be 0");
  BoundaryModel m;
  m.kind_ = Kind::custom;
  m.eigenvalues_ = std::move(eigenvalues);
  return m;
}

bool BoundaryModel::supports_synthesis() const {
  return kind_ == Kind::round_sphere2 ||
         (kind_ == Kind::flat_torus && lengths_.size() == 1);
}

std::vector<Mode> BoundaryModel::enumerate_modes(double lambda_max) const {
  if (lambda_max < 0.0) throw std::invalid_argument("enumerate_modes: lambda_max < 0");
  switch (kind_) {
    case Kind::round_sphere2: {
      std::vector<Mode> modes;
      for (int l = 0;; ++l) {
        double lam = static_cast<double>(l) * (l + 1.0);
        if (lam > lambda_max && l > 0) break;
        if (lam > lambda_max) break;
        Mode m;
        m.k = l + 1;
        m.lambda = lam;
        m.multiplicity = 2 * l + 1;
        modes.push_back(m);
      }
      return modes;
    }
    case Kind::flat_torus: {
      // enumerate the lattice box |m_j| <= L_j sqrt(lambda_max)/(2 pi)
      std::vector<int> bound(lengths_.size());
      for (std::size_t j = 0; j < lengths_.size(); ++j)
        bound[j] = static_cast<int>(std::floor(lengths_[j] * std::sqrt(lambda_max) / kTwoPi));
      std::vector<double> lams;
      std::vector<int> m(lengths_.size(), 0);
      for (std::size_t j = 0; j < m.size(); ++j) m[j] = -bound[j];
      while (true) {
        double lam = 0.0;
        for (std::size_t j = 0; j < m.size(); ++j) {
          double f = kTwoPi * m[j] / lengths_[j];
          lam += f * f;
        }
        if (lam <= lambda_max + 1e-12 * std::max(1.0, lambda_max)) lams.push_back(lam);
        std::size_t j = 0;
        for (; j < m.size(); ++j) {
          if (m[j] < bound[j]) {
            ++m[j];
            break;
          }
          m[j] = -bound[j];
        }
        if (j == m.size()) break;
      }
      return group_eigenvalues(std::move(lams));
    }
    case Kind::custom: {
      std::vector<double> lams;
      for (double lam : eigenvalues_)
        if (lam <= lambda_max) lams.push_back(lam);
      return group_eigenvalues(std::move(lams));
    }
  }
  return {};
}

BoundaryGrid boundary_grid(const BoundaryModel& model, int resolution) {
  if (resolution < 2) throw std::invalid_argument("boundary_grid: resolution too small");
  BoundaryGrid g;
  if (model.kind() == BoundaryModel::Kind::flat_torus) {
    if (model.lengths().size() != 1)
      throw std::invalid_argument("boundary_grid: synthesis only for the d=1 torus");
    double L = model.lengths()[0];
    for (int j = 0; j < resolution; ++j) {
      g.nodes.push_back({L * j / resolution, 0.0});
      g.weights.push_back(L / resolution);
    }
    return g;
  }
  if (model.kind() == BoundaryModel::Kind::round_sphere2) {
    using rule = boost::math::quadrature::gauss<double, 48>;
    if (resolution != 48)
      throw std::invalid_argument("boundary_grid: S^2 grid uses 48 Gauss nodes");
    const auto& ax = rule::abscissa();
    const auto& aw = rule::weights();
    std::vector<double> u, wu;
    for (int i = 23; i >= 0; --i) {
      u.push_back(-ax[i]);
      wu.push_back(aw[i]);
    }
    for (int i = 0; i < 24; ++i) {
      u.push_back(ax[i]);
      wu.push_back(aw[i]);
    }
    int nphi = 2 * resolution;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (int j = 0; j < nphi; ++j) {
        g.nodes.push_back({u[i], kTwoPi * j / nphi});
        g.weights.push_back(wu[i] * kTwoPi / nphi);
      }
    return g;
  }
  throw std::invalid_argument("boundary_grid: custom models carry no grid");
}

double eigenfunction(const BoundaryModel& model, const Mode& mode, int branch,
                     const std::array<double, 2>& node) {
  if (model.kind() == BoundaryModel::Kind::flat_torus) {
    double L = model.lengths()[0];
    if (mode.lambda == 0.0) return 1.0 / std::sqrt(L);
    int m = static_cast<int>(std::lround(L * std::sqrt(mode.lambda) / kTwoPi));
    double arg = kTwoPi * m * node[0] / L;
    double norm = std::sqrt(2.0 / L);
    return branch == 0 ? norm * std::cos(arg) : norm * std::sin(arg);
  }
  if (model.kind() == BoundaryModel::Kind::round_sphere2) {
    int l = sphere_l_of(mode);
    if (l > kSphereSynthesisLmax)
      throw std::invalid_argument("eigenfunction: S^2 synthesis limited to l <= 32");
    int m = branch - l;  // branch 0..2l maps to m = -l..l
    double u = node[0], phi = node[1];
    int am = std::abs(m);
    double p = std::assoc_legendre(l, am, u);
    double norm = sphere_ylm_norm(l, am);
    if (m == 0) return norm * p;
    double trig = m > 0 ? std::cos(am * phi) : std::sin(am * phi);
    return std::numbers::sqrt2 * norm * p * trig;
  }
  throw std::invalid_argument("eigenfunction: custom models have no synthesis");
}

std::vector<ProjectedMode> project_data(const BoundaryModel& model, const BoundaryGrid& grid,
                                        const std::vector<std::vector<double>>& samples,
                                        double lambda_max) {
  if (!model.supports_synthesis())
    throw std::invalid_argument("project_data: model has no eigenfunction synthesis");
  if (samples.size() != grid.size())
    throw std::invalid_argument("project_data: samples do not match the boundary grid");
  std::size_t nx = samples.empty() ? 0 : samples[0].size();
  for (const auto& row : samples)
    if (row.size() != nx)
      throw std::invalid_argument("project_data: ragged radial sampling");

  std::vector<ProjectedMode> out;
  for (const Mode& mode : model.enumerate_modes(lambda_max)) {
    ProjectedMode pm;
    pm.mode = mode;
    pm.branches.assign(mode.multiplicity, std::vector<double>(nx, 0.0));
    for (int b = 0; b < mode.multiplicity; ++b) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        double phi = eigenfunction(model, mode, b, grid.nodes[j]) * grid.weights[j];
        if (phi == 0.0) continue;
        for (std::size_t ix = 0; ix < nx; ++ix)
          pm.branches[b][ix] += phi * samples[j][ix];
      }
    }
    out.push_back(std::move(pm));
  }
  return out;
}

}  // namespace radlab
