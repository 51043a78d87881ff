#pragma once

#include <cstdint>

#include "sav/rational.hpp"

namespace sav {

/// Trapezoid cutoff on Z_{3p} identified with [-p, 2p-1] (p odd): 1 on
/// [0, p-1], 0 on [-p, (-p-1)/2] and [(3/2)(p-1), 2p-1], affine between.
Rat trapezoid_phi(int64_t p, int64_t n);

struct PsiL1Report {
    int64_t p = 0;
    double eta = 0;
    double psi_hat_l1 = 0;       // sum_xi | sum_j phi(j) e(j eta) e(j xi / 3p) |
    double ratio_to_p = 0;       // psi_hat_l1 / p
    double xi0_term = 0;         // the xi = 0 term, <= 3p trivially
    double delta2_phi_l1 = 0;    // || Delta^2 Phi ||_1 on Z_{3p}
    double geom_factor = 0;      // sum_{xi != 0} |e(xi/3p) - 1|^{-2}
};

/// Direct DFT evaluation of the smoothing chain pieces from the l1 estimate.
PsiL1Report smoothing_psi_l1(int64_t p, double eta);

}  // namespace sav
