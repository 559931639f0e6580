// Serial reference vs OpenMP kernels: multi-start optimization and grid search.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "ecsbell/measures.hpp"

using namespace ecsbell;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  SearchConfig cfg;
  cfg.starts = 128;
  const Objective gen = bell_objective(StateFamily::c_minus, Measure::cv_generalized, 2.0, clock_from_r(0.1),
                                       AxisMode::full);
  OptimizationReport par, ser;
  const double tp = seconds([&] { par = maximize(gen, cfg); });
  const double ts = seconds([&] { ser = maximize_serial(gen, cfg); });
  std::printf("maximize       parallel %8.3f s  serial %8.3f s  speedup %.2f  identical %s  B = %.12f\n", tp, ts,
              ts / tp, par.best_settings == ser.best_settings && par.best_value == ser.best_value ? "yes" : "no",
              par.best_value);

  const Objective bw = bell_objective(StateFamily::c_minus, Measure::cv_bw_restricted, 2.0, {}, AxisMode::full);
  GridResult gp, gs;
  const double gtp = seconds([&] { gp = grid_search(bw, 1.0, 0.1); });
  const double gts = seconds([&] { gs = grid_search_serial(bw, 1.0, 0.1); });
  std::printf("grid_search    parallel %8.3f s  serial %8.3f s  speedup %.2f  identical %s  points %zu\n", gtp, gts,
              gts / gtp, gp.best_settings == gs.best_settings && gp.best_value == gs.best_value ? "yes" : "no",
              gp.points);
  return 0;
}
