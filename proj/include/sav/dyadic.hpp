#pragma once

#include <map>
#include <vector>

#include "sav/lattice.hpp"

namespace sav {

/// Origin-anchored dyadic cube prod_i [k_i 2^s, (k_i+1) 2^s) at level s.
struct DyadicCube {
    int s = 0;
    Pt k;

    bool contains(const Pt& p) const;
    int64_t cell_count_log2(int d) const { return (int64_t)d * s; }
    bool operator<(const DyadicCube& o) const {
        return s != o.s ? s < o.s : k < o.k;
    }
    bool operator==(const DyadicCube& o) const { return s == o.s && k == o.k; }
};

int64_t floor_div_pow2(int64_t x, int s);
DyadicCube cube_of(const Pt& p, int s);

/// Calderon-Zygmund decomposition at height lambda: f = g + sum b_{s,k},
/// bad parts on maximal dyadic cubes with average > lambda.
struct CZDecomposition {
    Rat lambda;
    int d = 1;
    SparseMeasure g;
    std::vector<std::pair<DyadicCube, SparseMeasure>> bad;

    CZDecomposition(int dim, Rat lam) : lambda(std::move(lam)), d(dim), g(dim) {}

    SparseMeasure reconstruct() const;
    /// Checks all five structural invariants; returns a failure description or "".
    std::string check_invariants(const SparseMeasure& f) const;
};

CZDecomposition cz_decompose(const SparseMeasure& f, const Rat& lambda);

/// One level's height split: b^(j) keeps the entries above the threshold,
/// B^(j) the rest, so b = b^(j) + B^(j) pointwise.
struct HeightSplit {
    int level_s;
    SparseMeasure tall;   // b^(j)_s
    SparseMeasure flat;   // B^(j)_s
    HeightSplit(int s, int d) : level_s(s), tall(d), flat(d) {}
};

/// Speckled split: entry selected iff |b_s(n)| > 2^{(d-gamma)j}. gamma exact.
std::vector<HeightSplit> split_by_height_speckled(const CZDecomposition& cz, long j,
                                                  const Rat& gamma);

/// Plaid split: entry selected iff the partial l1 sum of b_s over the
/// coordinates in I, within the level-j dyadic cube of n, exceeds
/// 2^{(d - alpha(d-#I) + eps)j}. Selection removes whole fibers, so the
/// retained part obeys the mixed-norm bound by construction.
std::vector<HeightSplit> split_by_height_plaid(const CZDecomposition& cz, long j,
                                               const Rat& alpha, const Rat& eps,
                                               const std::vector<int>& axes_I);

}  // namespace sav
