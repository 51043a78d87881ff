#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sav/lattice.hpp"
#include "sav/rng.hpp"

namespace sav {

/// Independent per-point bits: P(xi_n = 1) = 2^{-gamma j} on the sup-norm
/// shell 2^j <= |n| < 2^{j+1}. A point's coin depends on (seed, n) only, so
/// xi_n is one i.i.d. family shared by every scale.
struct SpeckledConfig {
    int d = 2;
    Rat gamma = Rat(4, 5);
    uint64_t seed = 1;
    int jmin = 0;
    int jmax = 13;

    void validate() const {
        if (d < 1) throw std::invalid_argument("SpeckledConfig: d >= 1");
        if (sgn(gamma) <= 0 || gamma >= Rat(d))
            throw std::invalid_argument("SpeckledConfig: gamma in (0, d) required");
        if (jmin < 0 || jmax < jmin) throw std::invalid_argument("SpeckledConfig: bad j range");
    }
};

/// Realized (dyadic) shell probability for scale j.
DyadicProb speckled_shell_prob(const SpeckledConfig& cfg, long j);

/// Per-point coin for n (uses the point's own shell probability).
bool speckled_hit(const SpeckledConfig& cfg, const Pt& n);

/// Shell point count #{n : 2^j <= |n| < 2^{j+1}} (sup-norm).
Int shell_count(int d, long j);

struct SpeckledSample {
    long j;
    DyadicProb p;      // realized per-point probability
    Rat amplitude;     // 2^{-dj}/p, so E mu_j(n) = 2^{-dj} exactly
    SparseMeasure mu{1};  // amplitude * xi on the shell
    SparseMeasure nu{1};  // mu - 2^{-dj} on the whole shell (exact mean-zero companion)
};

/// Materializes (mu_j, nu_j) as exact sparse measures. nu is supported on the
/// whole shell, so this path is budget-guarded; the cancellation engine works
/// on the compact representation instead.
SpeckledSample sample_speckled(const SpeckledConfig& cfg, long j, size_t shell_budget = 3'000'000);

/// Enumeration of the sampled set sorted by sup-norm, ties lexicographic.
std::vector<Pt> enumerate_speckled(const SpeckledConfig& cfg, size_t count,
                                   int64_t radius_budget = 1'000'000);

/// Visits the sup-norm ring {|n| = r} in lexicographic order.
void for_each_ring_point(int d, int64_t r, const std::function<void(const Pt&)>& fn);

}  // namespace sav
