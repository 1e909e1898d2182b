#include "drrpvt/simplex_kernel.hpp"

#include <cmath>

namespace drrpvt {

namespace {

inline void eliminate_one_row(double* row, const double* pivot_row, int width,
                              int pivot_col) {
  double f = row[pivot_col];
  if (f == 0.0) return;
  for (int k = 0; k < width; ++k) row[k] -= f * pivot_row[k];
  row[pivot_col] = 0.0;  // exact, avoids leftover roundoff in the unit column
}

}  // namespace

void eliminate_rows_serial(double* tableau, int num_rows, int width,
                           int pivot_row, int pivot_col) {
  const double* prow = tableau + static_cast<size_t>(pivot_row) * width;
  for (int i = 0; i < num_rows; ++i) {
    if (i == pivot_row) continue;
    eliminate_one_row(tableau + static_cast<size_t>(i) * width, prow, width,
                      pivot_col);
  }
}

void eliminate_rows_parallel(double* tableau, int num_rows, int width,
                             int pivot_row, int pivot_col) {
  const double* prow = tableau + static_cast<size_t>(pivot_row) * width;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < num_rows; ++i) {
    if (i == pivot_row) continue;
    eliminate_one_row(tableau + static_cast<size_t>(i) * width, prow, width,
                      pivot_col);
  }
}

void eliminate_rows(double* tableau, int num_rows, int width, int pivot_row,
                    int pivot_col, bool parallel) {
  size_t cells = static_cast<size_t>(num_rows) * width;
  if (parallel && cells >= kParallelCellThreshold) {
    eliminate_rows_parallel(tableau, num_rows, width, pivot_row, pivot_col);
  } else {
    eliminate_rows_serial(tableau, num_rows, width, pivot_row, pivot_col);
  }
}

}  // namespace drrpvt
