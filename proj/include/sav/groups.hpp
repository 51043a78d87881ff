#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sav/lattice.hpp"
#include "sav/rng.hpp"

namespace sav {

enum class GroupKind { Zd, Heis3, ZmodL };

/// Finitely generated group with an integer-tuple normal form. Built-ins:
/// Z^d (d <= 3) with generators {e, +-e_i}, and the discrete Heisenberg group
/// H3(Z) with normal form (x,y,z), (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y'),
/// generators {e, X^{+-1}, Y^{+-1}}.
struct GroupModel {
    using El = std::array<int64_t, 3>;

    GroupKind kind = GroupKind::Zd;
    int zd_dim = 2;
    int64_t mod_l = 0;  // ZmodL only

    static GroupModel zd(int d);
    static GroupModel heis3();
    static GroupModel zmod(int64_t L);  // cyclic Z/L, the torsion test model

    El identity() const { return {0, 0, 0}; }
    El mul(const El& a, const El& b) const;
    El inv(const El& a) const;
    std::vector<El> generators() const;  // symmetric, contains identity
    int growth_degree() const { return kind == GroupKind::Heis3 ? 4 : zd_dim; }
    std::string name() const;
};

struct ElHash {
    size_t operator()(const GroupModel::El& e) const {
        size_t h = 1469598103934665603ull;
        for (int64_t c : e) {
            h ^= (size_t)c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Breadth-first word balls A^0 .. A^{N_max}; elements kept in BFS order.
struct WordBalls {
    GroupModel model;
    int n_max = 0;
    std::vector<GroupModel::El> elements;
    std::vector<size_t> ball_size;  // ball_size[N] = #A^N
    std::unordered_map<GroupModel::El, int, ElHash> depth;

    int rho(const GroupModel::El& g) const {  // word length, or -1 if outside
        auto it = depth.find(g);
        return it == depth.end() ? -1 : it->second;
    }
    /// elements with depth <= N (prefix of BFS order)
    std::vector<GroupModel::El> ball(int N) const;
};

WordBalls word_balls(const GroupModel& g, int n_max, size_t budget = 4'000'000);

struct GrowthReport {
    std::vector<size_t> sizes;    // #A^N, N = 0..n_max
    int inferred_degree = 0;      // best integer slope of log #A^N vs log N
    std::vector<double> ratios;   // #A^N / N^inferred_degree, N >= 1
};
GrowthReport word_ball_growth(const GroupModel& g, int n_max);

struct GroupTempelman {
    int64_t size = 0;
    int64_t diff_size = 0;  // #(S S^{-1})
    Rat ratio;
    std::vector<Rat> folner_defect;  // per non-identity generator
};
GroupTempelman group_tempelman(const GroupModel& g, const std::vector<GroupModel::El>& S,
                               size_t pair_budget = 400'000'000);

/// Shifted-ball block sequence S(k,r) = (U_{i<=k} a_i A^{l_i}) U a_{k+1} A^r.
struct GroupBlockPlan {
    std::vector<int> ell;                  // l_1 .. l_K
    std::vector<GroupModel::El> shifts;    // a_1 .. a_K
    Rat C = 1;                             // l_k >= C rho(a_{k-1}, e)
};
std::string validate_group_plan(const GroupModel& g, const GroupBlockPlan& plan,
                                const WordBalls& balls);
std::vector<GroupModel::El> group_block_set(const GroupModel& g, const GroupBlockPlan& plan,
                                            const WordBalls& balls, int k, int r);

/// Finitely supported signed function on the group, exact values.
struct GroupMeasure {
    GroupModel model;
    std::map<GroupModel::El, Rat> v;

    void add(const GroupModel::El& g, const Rat& x) {
        auto it = v.find(g);
        if (it == v.end()) {
            if (sgn(x) != 0) v.emplace(g, x);
        } else {
            it->second += x;
            if (sgn(it->second) == 0) v.erase(it);
        }
    }
    Rat at(const GroupModel::El& g) const {
        auto it = v.find(g);
        return it == v.end() ? Rat(0) : it->second;
    }
    GroupMeasure reflect() const;  // nu~(g) = nu(g^{-1})
    Rat l1() const;
    Rat l2_sq() const;
};

GroupMeasure group_convolve(const GroupMeasure& a, const GroupMeasure& b,
                            size_t pair_budget = 100'000'000);

/// Z^d instance of a group measure as a lattice SparseMeasure.
SparseMeasure to_sparse(const GroupMeasure& m);

struct GroupRandomSample {
    long j = 0;
    Rat amplitude;       // dyadic quantization of 2^{(alpha-d)j}
    GroupMeasure mu, nu, e_mu;
    uint64_t r_support = 0;   // #supp mu
    int64_t R_radius = 0;     // 2^j
};

/// Random measures on A^{2^j}: mu = A xi_g, nu = mu - E mu; xi keyed by
/// (seed, normal form); P(xi_g = 1) = rho(g,e)^{-alpha} (1 at e), quantized.
GroupRandomSample sample_group_random(const GroupModel& g, const WordBalls& balls, const Rat& alpha,
                                      long j, uint64_t seed);

/// Expected mass sum_{g in A^N} E xi_g for growth-exponent checks.
Rat expected_xi_mass(const GroupModel& g, const WordBalls& balls, const Rat& alpha, int N);

/// sigma_N radial weights a_{n,N} induced by E mu_N (normalized to sum 1).
std::vector<Rat> sigma_radial_weights(const GroupModel& g, const WordBalls& balls, const Rat& alpha,
                                      int N);

struct TTStarReport {
    Rat power_l1;      // ||(nu~ * nu)^M||_1
    Rat power_l2_sq;   // ||(nu~ * nu)^M||_2^2
    double op_bound;   // power_l1^{1/2M}
};
TTStarReport tt_star_norm(const GroupMeasure& nu, int M, size_t pair_budget = 100'000'000);

struct TTStarSweepRow {
    long j = 0;
    double mean_l2sq_ratio = 0;  // E ||nu~ * nu||_2^2 / (sum Var eta)^2, M = 1
    int seeds = 0;
};

/// Z^2 dense engine for the M = 1 moment check; the seed-independent P*P
/// correlation is cached per scale so many seeds are cheap.
std::vector<TTStarSweepRow> ttstar_zd2_sweep(const Rat& alpha, int jmin, int jmax, int seeds,
                                             uint64_t seed0, int threads = 2);

/// Three-coloring of the pair graph {g, hg} on E cap h^{-1}E: classes whose
/// variable pairs use disjoint group elements.
struct ThreeColoring {
    std::vector<std::vector<GroupModel::El>> classes;  // <= 3
    bool valid = false;  // disjoint, covering, dependency-disjoint per class
};
ThreeColoring three_color_partition(const GroupModel& g, const std::vector<GroupModel::El>& E,
                                    const GroupModel::El& h);

struct GapProfile {
    std::vector<int> Ms;                       // grid
    std::vector<std::vector<Rat>> beta;        // beta[j][mi] = 2^{-j} #Gamma_{j,M}
    std::vector<int> schedule;                 // chosen M_j
    std::vector<size_t> thinned_index;         // kept indices (0-based)
    std::vector<double> nk_over_k;             // per kept position
};

/// Gamma_{j,M} = {n in [2^j, 2^{j+1}): min_{m<n} rho(g_n, g_m) < M}; greedy
/// schedule keeps sum_j beta_{j,M_j} <= budget; thinned = complement.
GapProfile gap_profile_and_thin(const GroupModel& g, const std::vector<GroupModel::El>& seq,
                                const std::vector<int>& M_grid, const Rat& budget);

struct BanachRow {
    int N = 0;
    Rat ratio;  // sup over sampled shifts of #(gF cap A^N)/#A^N (lower bound)
};
std::vector<BanachRow> banach_density_estimate(const GroupModel& g, const WordBalls& balls,
                                               const std::vector<GroupModel::El>& F,
                                               const std::vector<int>& Ns, int shift_samples,
                                               uint64_t seed,
                                               const std::vector<GroupModel::El>& extra_shifts = {});

}  // namespace sav
