// Benchmark comparing the serial and OpenMP simplex elimination kernels and
// their effect on whole LP solves. Prints one table row per size.
//
//   bench_simplex [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "drrpvt/milp.hpp"
#include "drrpvt/rng.hpp"
#include "drrpvt/simplex_kernel.hpp"

using namespace drrpvt;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Dense transportation-style LP: feasible, bounded, needs real pivoting.
MilpProblem random_lp(int m, int n, uint64_t seed) {
  Rng rng(seed);
  MilpProblem p;
  for (int j = 0; j < n; ++j) {
    p.add_var(0.0, 10.0, rng.uniform(0.1, 3.0), false);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < n; ++j) {
      if (rng.uniform01() < 0.5) terms.push_back({j, rng.uniform(0.2, 2.0)});
    }
    if (terms.empty()) terms.push_back({i % n, 1.0});
    p.add_constraint(std::move(terms), Relation::LessEqual,
                     rng.uniform(5.0, 40.0));
  }
  return p;
}

double bench_kernel(int rows, int width, int reps, bool parallel) {
  Rng rng(1234);
  std::vector<double> tab(static_cast<size_t>(rows) * width);
  for (auto& v : tab) v = rng.uniform(-2.0, 2.0);
  int pr = rows / 2, pc = width / 3;
  tab[static_cast<size_t>(pr) * width + pc] = 1.0;
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    if (parallel) {
      eliminate_rows_parallel(tab.data(), rows, width, pr, pc);
    } else {
      eliminate_rows_serial(tab.data(), rows, width, pr, pc);
    }
    // Re-seed the pivot column so later iterations keep doing work.
    for (int i = 0; i < rows; ++i) {
      tab[static_cast<size_t>(i) * width + pc] = (i % 7) * 0.25 - 0.5;
    }
    tab[static_cast<size_t>(pr) * width + pc] = 1.0;
  }
  return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled\n");
#endif

  std::printf("\n-- elimination kernel --\n");
  std::printf("%8s %8s %6s %12s %12s %8s\n", "rows", "width", "reps",
              "serial_s", "parallel_s", "speedup");
  std::vector<std::pair<int, int>> sizes = {{64, 256}, {256, 1024},
                                            {512, 2048}, {1024, 4096}};
  if (quick) sizes.resize(2);
  for (auto [rows, width] : sizes) {
    int reps = quick ? 20 : 100;
    double ts = bench_kernel(rows, width, reps, false);
    double tp = bench_kernel(rows, width, reps, true);
    std::printf("%8d %8d %6d %12.4f %12.4f %8.2f\n", rows, width, reps, ts, tp,
                ts / tp);
  }

  std::printf("\n-- full LP solves --\n");
  std::printf("%8s %8s %12s %12s %8s %14s\n", "rows", "vars", "serial_s",
              "parallel_s", "speedup", "objective");
  std::vector<std::pair<int, int>> lps = {{60, 120}, {150, 300}, {300, 600}};
  if (quick) lps.resize(1);
  for (auto [m, n] : lps) {
    MilpProblem p = random_lp(m, n, 99);
    SolverOptions serial_opt;
    serial_opt.parallel_pivot = false;
    SolverOptions parallel_opt;
    parallel_opt.parallel_pivot = true;

    auto t0 = std::chrono::steady_clock::now();
    auto rs = solve_lp(p, serial_opt);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto rp = solve_lp(p, parallel_opt);
    double tp = seconds_since(t0);

    if (rs.value != rp.value) {
      std::printf("MISMATCH: serial %.12g vs parallel %.12g\n", rs.value,
                  rp.value);
      return 1;
    }
    std::printf("%8d %8d %12.4f %12.4f %8.2f %14.6f\n", m, n, ts, tp, ts / tp,
                rs.value);
  }
  return 0;
}
