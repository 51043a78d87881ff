#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sav/arith.hpp"

namespace sav {

/// Position of prefix length N inside the block schedule.
struct BlockCursor {
    int k = 0;       // current (possibly incomplete) block index
    int64_t j = 0;   // points taken from block k
};
BlockCursor block_cursor(const ArithParams& params, int64_t N);

/// mu_N^(theta) = (1/N) sum_{i<=N} e(n_i . theta), direct.
std::complex<double> mu_hat(const ArithParams& params, int64_t N, const std::vector<double>& theta);

/// nu_N^(theta): weighted box averages, Dirichlet-kernel closed form per block.
std::complex<double> nu_hat(const ArithParams& params, int64_t N, const std::vector<double>& theta);

struct OscGridRow {
    int64_t N = 0;
    double sup_diff = 0;       // grid sup of |mu_N^ - nu_N^|
    double max_grad_nu = 0;    // measured grid gradient of |nu_N^| (finite differences)
};

/// Evaluates sup over the uniform grid (res points per axis) at the end of
/// each complete block index in `blocks`.
std::vector<OscGridRow> osc_supdiff_rows(const ArithParams& params, const std::vector<int>& blocks,
                                         int grid_res);

/// V_t sharp-cutoff multipliers: ||V_{t_{n-1}} f - V_{t_n} f||_2^2 computed as
/// the exact torus-box integrals of |f^|^2 over nested sup-norm boxes with
/// half-widths c_n = 1/p_{k(t_n)}. Returns the per-step squared norms.
std::vector<double> vt_telescoping(const ArithParams& params, const SparseMeasure& f,
                                   const std::vector<int64_t>& ts);

/// sup over the grid of sum_{t in I} |nu_t^(alpha) - V_t^(alpha)|.
double fmult_sum_sup(const ArithParams& params, const std::vector<int64_t>& lacunary_I,
                     int grid_res);

}  // namespace sav
