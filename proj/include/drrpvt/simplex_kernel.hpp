#pragma once

// Rank-1 elimination kernel of the simplex pivot: for every tableau row
// except the pivot row, subtract multiplier * pivot_row so the pivot column
// becomes a unit column. Rows are independent, which makes the kernel
// data-parallel; the OpenMP variant partitions rows across threads and is
// bit-identical to the serial reference because each row's arithmetic is
// unchanged.
//
// The serial reference is kept both for small tableaus (parallel overhead
// dominates below ~64k cells) and as the comparison baseline for tests and
// the bench_simplex target.

#include <cstddef>

namespace drrpvt {

// tableau: row-major [num_rows x width]; the pivot row must already be
// normalized (tableau[pivot_row*width + pivot_col] == 1).
void eliminate_rows_serial(double* tableau, int num_rows, int width,
                           int pivot_row, int pivot_col);

void eliminate_rows_parallel(double* tableau, int num_rows, int width,
                             int pivot_row, int pivot_col);

// Dispatches on `parallel` and the cell count threshold.
void eliminate_rows(double* tableau, int num_rows, int width, int pivot_row,
                    int pivot_col, bool parallel);

// Cells below this run serially even when parallel is requested.
inline constexpr size_t kParallelCellThreshold = 1u << 16;

}  // namespace drrpvt
