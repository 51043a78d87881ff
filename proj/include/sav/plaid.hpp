#pragma once

#include <cstdint>
#include <vector>

#include "sav/lattice.hpp"
#include "sav/rng.hpp"

namespace sav {

/// Product-structure randomness: independent per-axis bits with
/// P(xi_{i,n} = 1) = n^{-alpha} (n >= 1); a point is kept when every axis bit
/// fires. Axis streams are shared across scales.
struct PlaidConfig {
    int d = 2;
    Rat alpha = Rat(2, 5);
    uint64_t seed = 1;
    int jmin = 1;
    int jmax = 10;
    bool diagonal = false;  // xi_{i,n} = xi_{1,n}; excluded (see validate)

    void validate() const {
        if (d < 1) throw std::invalid_argument("PlaidConfig: d >= 1");
        if (sgn(alpha) < 0 || alpha >= 1)
            throw std::invalid_argument("PlaidConfig: alpha in [0, 1) required");
        if (jmin < 1 || jmax < jmin) throw std::invalid_argument("PlaidConfig: bad j range");
        if (diagonal)
            throw std::invalid_argument("PlaidConfig: the plaid-diagonal variant is not supported");
    }
};

/// Realized per-axis probability for coordinate value n >= 1 (24-bit dyadic).
DyadicProb plaid_axis_prob(const PlaidConfig& cfg, int64_t n);
bool plaid_axis_hit(const PlaidConfig& cfg, int axis, int64_t n);

struct PlaidSample {
    long j;
    Rat amplitude;     // dyadic quantization of 2^{d(alpha-1)j}
    SparseMeasure mu{1};  // amplitude * prod xi on the positive-quadrant shell
    SparseMeasure nu{1};  // mu - E mu (exact mean-zero companion)
};

PlaidSample sample_plaid(const PlaidConfig& cfg, long j, size_t shell_budget = 3'000'000);

}  // namespace sav
