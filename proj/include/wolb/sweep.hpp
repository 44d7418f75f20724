#pragma once

// Parameter sweep over a (w,d) grid in (0,1]^2.  Cells are computed
// concurrently and assembled in row-major (w,d) order, so the CSV is
// byte-identical across runs.

#include <iosfwd>

namespace wolb {

struct SweepConfig {
    int w_cells = 10;  // w takes i/w_cells for i = 1..w_cells
    int d_cells = 10;
    int threads = 0;   // 0 = hardware concurrency
};

/// Writes `w,d,n_fixed_points,x2_roots,discriminant,commutator_norm,dibaric`
/// rows; x2_roots is ';'-joined.  Throws std::invalid_argument for grids
/// smaller than 2x2.
void run_sweep(const SweepConfig& cfg, std::ostream& os);

}  // namespace wolb
