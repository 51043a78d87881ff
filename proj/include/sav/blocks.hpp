#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sav/lattice.hpp"

namespace sav {

/// Union of disjoint closed integer intervals, kept sorted and merged.
/// Lets A(k,r) and its difference sets be counted exactly without
/// materializing points.
class IntervalSet {
  public:
    void add(int64_t lo, int64_t hi);  // closed [lo,hi]
    int64_t size() const;
    const std::vector<std::pair<int64_t, int64_t>>& intervals() const { return iv_; }
    IntervalSet difference_set() const;  // {a-b : a,b in set}
    bool contains_set(const IntervalSet& o) const;

  private:
    std::vector<std::pair<int64_t, int64_t>> iv_;
};

/// One axis of a plaid block plan: blocks [u_k+1, u_k+a_k].
struct BlockAxis {
    std::vector<int64_t> u;
    std::vector<int64_t> a;
};

struct BlockPlan {
    BlockAxis x, y;
    Rat regularity_C = 1;            // a_k >= C u_{k-1}
    Rat growth_threshold = Rat(1, 10);  // final sum_{i<k} a_i / a_k must be below

    /// Returns "" if wellspaced/growingblocks/regularity all hold, else the violated
    /// condition's name.
    std::string validate() const;
};

/// Default generator: a_k = ceil(rho k^2 a_{k-1}), u_k = u_{k-1} + 2 a_{k-1}.
BlockPlan generate_block_plan(int k_count, const Rat& rho = 1, const Rat& C = 1);

/// A(k,r) = A(k-1) union [u_k+1, u_k+r], 1 <= r <= a_k.
IntervalSet intermediate_set(const BlockAxis& axis, int k, int64_t r);

struct TempelmanReport {
    Rat ratio;                      // #(F-F)/#F
    std::vector<Rat> folner_defect; // #(gF delta F)/#F per generator
    int64_t size = 0;
    int64_t diff_size = 0;
};

/// Exact report for a finite subset of Z^d; generators default to +-e_i.
TempelmanReport tempelman_folner_report(const std::vector<Pt>& F);
TempelmanReport tempelman_folner_report(const IntervalSet& F);

/// Divergence witness construction on Z^2 (exact bigint counting).
/// Blocks are w_k x w_k point squares at (a_k, 0); with diameters
/// l_k = sqrt(2) w_k the admissibility conditions read:
///   (2) 2 w_k^2 <= a_k, (3) w_{k+1} > (2 sum_{i<=k} w_i^2)^2,
///   spacing a_{k+1} - a_k > sqrt(2) w_k, and l_k >= C a_{k-1}.
struct WitnessPlan {
    std::vector<Int> w;  // side point counts
    std::vector<Int> a;  // x-offsets
    std::string validate() const;  // "" or violated condition name
};

WitnessPlan generate_witness_plan(int k_max, const Int& w1 = 2);

struct WitnessRow {
    int k;
    Rat left_face_avg;   // average of f over S cap B_{r_k} (Euclidean ball)
    Rat left_face_bound; // w_k / (sum_{i<k} w_i^2 + w_k), which the average beats
    Rat block_end_avg;   // average over complete blocks 1..k
};

std::vector<WitnessRow> divergence_witness(const WitnessPlan& plan, int k_max);

/// Corners-first variant: diagonal shifts, cubes of side w_k; reports the
/// exact Tempelman ratio of S cap B_r (Euclidean) over a radius grid.
struct CornersFirstRow {
    int64_t r;
    int64_t count;       // #(S cap B_r)
    int64_t diff_count;  // #((S cap B_r) - (S cap B_r))
    Rat ratio;
};

struct CornersFirstPlan {
    int d = 2;
    std::vector<int64_t> w;  // cube side point counts
    std::vector<int64_t> a;  // diagonal offsets: shift = (a_k,...,a_k)
    std::string validate() const;
};

CornersFirstPlan generate_corners_plan(int d, int k_count);
std::vector<CornersFirstRow> corners_first_check(const CornersFirstPlan& plan,
                                                 const std::vector<int64_t>& radii);

/// #E_n = #{(r,s): r s <= n} = sum_{r<=n} floor(n/r), plus ratio to n ln n.
struct UnrestrictedCount {
    Int count;
    double ratio_to_nlogn;
};
UnrestrictedCount unrestricted_divergence_count(int64_t n);

}  // namespace sav
