// Wall-clock comparison of the OpenMP kernels against their serial
// references. Usage: bench_kernels [resolution] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "otto/optimize.hpp"
#include "otto/regimes.hpp"

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int k = 0; k < repeats; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.4f s  parallel %9.4f s  speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 512;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads %d, resolution %zu, best of %d\n", omp_get_max_threads(), n, repeats);

  otto::ControlPlane plane;
  plane.family = otto::CaseFamily::Jz;
  plane.r1 = 3.0;
  plane.r2 = 0.05;
  plane.tc = 1.0;
  plane.th = 2.0;
  const otto::Window window{-3.0, 5.0, -3.0, 5.0};

  report("region_map",
         best_of(repeats, [&] { otto::region_map_serial(plane, window, n, n); }),
         best_of(repeats, [&] { otto::region_map(plane, window, n, n); }));

  otto::OptimizationProblem problem;
  problem.plane = plane;
  problem.window = window;
  problem.grid = n;
  report("coarse_scan", best_of(repeats, [&] { otto::coarse_scan_serial(problem); }),
         best_of(repeats, [&] { otto::coarse_scan(problem); }));
  report("find_minima", best_of(repeats, [&] { otto::find_minima_serial(problem); }),
         best_of(repeats, [&] { otto::find_minima(problem); }));
  return 0;
}
