#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "sav/plaid.hpp"
#include "sav/speckled.hpp"

namespace sav {

struct SpeckledCancelRow {
    long j = 0;
    uint64_t support_size = 0;   // r_j = #supp mu_j
    int64_t support_radius = 0;  // R_j (outer shell radius)
    Rat at0;                     // nu*nu~(0) = ||nu||_2^2
    Rat sup_punctured;           // max_{x != 0} |nu*nu~(x)|, exact
    double log2_sup = 0.0;
    double origin_ratio = 0.0;   // at0 / 2^{(gamma-d)j}
    bool degenerate = false;     // empty sample, excluded from the slope fit
};

struct SpeckledProfile {
    uint64_t seed = 0;
    std::vector<SpeckledCancelRow> rows;
    double fitted_slope = 0.0;  // OLS of log2(sup_punctured) against j
};

/// Exact cancellation statistics of nu_j * nu_j~ for j in [jmin, jmax].
/// d = 2 runs the banded difference-counting engine (feasible to j ~ 13);
/// d = 1 runs a dense exact path. Deterministic for fixed (cfg.seed).
SpeckledProfile speckled_cancellation_profile(SpeckledConfig cfg, int jmin, int jmax,
                                              int threads = 2);

/// Pattern mask bit i set <=> coordinate i nonzero. chi_{j,I} is the
/// restriction of nu*nu~ to the cells matching I exactly.
struct PlaidCancelRow {
    long j = 0;
    uint64_t support_size = 0;
    Rat at0;
    std::array<Rat, 4> sup_by_pattern;  // d=2: masks 00,01,10,11
    bool reconstruction_ok = false;     // sum_I chi_I == nu*nu~ (total-sum oracle)
    Rat total_sum;                      // sum_x nu*nu~(x); equals (sum nu)^2
};

struct PlaidProfile {
    uint64_t seed = 0;
    std::vector<PlaidCancelRow> rows;
};

PlaidProfile plaid_cancellation_profile(PlaidConfig cfg, int jmin, int jmax);

/// Test oracle: exact chi-decomposition of an explicitly materialized
/// convolution, keyed by nonzero-coordinate mask.
std::map<uint32_t, SparseMeasure> split_by_support_pattern(const SparseMeasure& conv);

}  // namespace sav
