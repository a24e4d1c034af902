// Benchmark: serial reference marcher vs the OpenMP wavefront kernel on the
// same mode problem, verifying bitwise-identical grids while timing both.
#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "radlab/experiments.hpp"
#include "radlab/goursat.hpp"

using namespace radlab;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main(int argc, char** argv) {
  int max_n = argc > 1 ? std::atoi(argv[1]) : 1024;

  WarpedMetric metric;
  metric.n = 3;
  metric.psi = Poly::from_doubles({1.0, 0.0, 1.0});
  metric.eps = 4.0;
  DerivedCoefficients coeffs = derive_coefficients(metric);

  Profile f2 = Profile::bump(0.4, 0.9, 0.1);
  const double lambda = 2.0;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
  std::printf("%8s %14s %14s %10s %10s\n", "N", "serial [s]", "openmp [s]", "speedup",
              "bitwise");

  for (int N = 256; N <= max_n; N *= 2) {
    CharGrid grid{1.0, N, 0.0};
    DiagonalData data = build_diagonal_data(coeffs, Profile::zero(), f2, grid);
    CoefficientGrid cgrid = CoefficientGrid::build(coeffs, grid);

    double t0 = now_s();
    ModeSolution serial = solve_mode(cgrid, lambda, data, grid, {}, false);
    double t1 = now_s();
    ModeSolution parallel = solve_mode(cgrid, lambda, data, grid, {}, true);
    double t2 = now_s();

    bool same = serial.w.size() == parallel.w.size() &&
                std::memcmp(serial.w.data(), parallel.w.data(),
                            serial.w.size() * sizeof(double)) == 0;
    std::printf("%8d %14.4f %14.4f %9.2fx %10s\n", N, t1 - t0, t2 - t1,
                (t1 - t0) / (t2 - t1), same ? "yes" : "NO");
    if (!same) return 1;
  }
  return 0;
}
