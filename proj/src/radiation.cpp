#include "radlab/radiation.hpp"

#include <algorithm>
#include <cmath>

namespace radlab {

namespace {

// second-order derivative along an edge row: centered where both neighbors
// exist, one-sided at the row ends
double edge_derivative(const std::vector<double>& e, int i, double h) {
  const int n = static_cast<int>(e.size());
  if (i >= 1 && i + 1 < n) return (e[i + 1] - e[i - 1]) / (2.0 * h);
  if (i >= 2) return (3.0 * e[i] - 4.0 * e[i - 1] + e[i - 2]) / (2.0 * h);
  if (i + 2 < n) return (-3.0 * e[i] + 4.0 * e[i + 1] - e[i + 2]) / (2.0 * h);
  return 0.0;
}

}  // namespace

RadiationField extract_field(const ModeSolution& sol, Direction dir) {
  const CharGrid& grid = sol.grid;
  if (grid.N < 16) throw std::invalid_argument("extract_field: grid too coarse (N < 16)");
  const int N = grid.N;
  const double h = grid.h();
  const double delta = grid.cutoff();

  std::vector<double> edge(N + 1);
  for (int i = 0; i <= N; ++i)
    edge[i] = dir == Direction::forward ? sol.at(i, 0) : sol.at(0, i);

  RadiationField field;
  field.direction = dir;
  field.h = h;
  for (int i = 1; i <= N; ++i) {
    double c = grid.coord(i);
    if (c < delta) continue;  // corner cutoff excluded from output
    FieldSample smp;
    smp.edge = c;
    smp.s = dir == Direction::forward ? -1.0 / c : 1.0 / c;
    smp.value = c * c * edge_derivative(edge, i, h);
    field.samples.push_back(smp);
  }
  return field;
}

ThresholdEstimate support_threshold(const RadiationField& field, double rel_tol) {
  ThresholdEstimate est;
  est.uncertainty = field.h;

  double norm = 0.0;
  for (const auto& s : field.samples) norm = std::max(norm, std::abs(s.value));
  if (field.samples.empty() || norm == 0.0) {
    est.vanishes = true;
    est.mu_star = field.samples.empty() ? 0.0 : field.samples.back().edge;
    return est;
  }

  const double thr = rel_tol * norm;
  const int n = static_cast<int>(field.samples.size());
  auto above = [&](int i) { return std::abs(field.samples[i].value) > thr; };

  // onset = first sample above threshold confirmed by the next two samples
  // (isolated spikes from the one-sided edge stencils do not count)
  int onset = -1;
  for (int i = 0; i + 2 < n; ++i)
    if (above(i) && above(i + 1) && above(i + 2)) {
      onset = i;
      break;
    }
  if (onset < 0) {
    for (int i = 0; i < n; ++i)
      if (above(i)) {
        onset = i;
        break;
      }
  }
  if (onset < 0) {
    est.vanishes = true;
    est.mu_star = field.samples.back().edge;
    return est;
  }
  est.mu_star = field.samples[onset].edge;
  return est;
}

SupportReport run_support_report(const SupportExperiment& exp) {
  SupportReport rep;
  rep.h = exp.grid.h();
  rep.x1 = std::max(0.0, exp.f2.lo());

  CoefficientGrid cgrid = CoefficientGrid::build(exp.coeffs, exp.grid);
  DiagonalData data = build_diagonal_data(exp.coeffs, Profile::zero(), exp.f2, exp.grid);

  std::vector<RadiationField> fields;
  for (double lam : exp.lambdas) {
    ModeSolution sol = solve_mode(cgrid, lam, data, exp.grid, {}, exp.use_openmp);
    RadiationField f = extract_field(sol, Direction::forward);
    ThresholdEstimate t = support_threshold(f, exp.rel_tol);
    rep.per_mode.push_back({lam, t.mu_star, t.vanishes});
    fields.push_back(std::move(f));
  }
  rep.per_mode_fields = fields;

  // aggregate across modes: root sum of squares per edge node
  if (!fields.empty()) {
    rep.aggregate = fields[0].samples;
    for (auto& s : rep.aggregate) s.value = 0.0;
    for (const auto& f : fields)
      for (std::size_t i = 0; i < f.samples.size(); ++i)
        rep.aggregate[i].value += f.samples[i].value * f.samples[i].value;
    for (auto& s : rep.aggregate) s.value = std::sqrt(s.value);
  }

  RadiationField agg;
  agg.direction = Direction::forward;
  agg.h = rep.h;
  agg.samples = rep.aggregate;
  ThresholdEstimate t = support_threshold(agg, exp.rel_tol);
  rep.mu_star = t.mu_star;
  rep.vanishes = t.vanishes;

  if (t.vanishes && exp.f2.is_zero()) {
    rep.verdict = "trivially consistent";
    rep.forward_ok = rep.converse_ok = true;
    return rep;
  }
  if (t.vanishes) {
    // data nonzero but field below tolerance everywhere: consistent only if
    // the data support starts beyond the window
    rep.forward_ok = true;
    rep.converse_ok = rep.x1 >= exp.grid.T - rep.h;
    rep.verdict = rep.converse_ok ? "PASS" : "FAIL";
    return rep;
  }
  rep.forward_ok = rep.mu_star >= rep.x1 - rep.h;
  rep.converse_ok = rep.mu_star <= rep.x1 + exp.converse_slack * rep.h;
  rep.verdict = (rep.forward_ok && rep.converse_ok) ? "PASS" : "FAIL";
  return rep;
}

}  // namespace radlab
