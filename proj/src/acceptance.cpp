#include "sav/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <unordered_set>

#include "sav/arith.hpp"
#include "sav/blocks.hpp"
#include "sav/cancellation.hpp"
#include "sav/dyadic.hpp"
#include "sav/dynamics.hpp"
#include "sav/finfield.hpp"
#include "sav/groups.hpp"
#include "sav/oscillation.hpp"
#include "sav/report.hpp"
#include "sav/smoothing.hpp"
#include "sav/speckled.hpp"
#include "sav/transfer.hpp"
#include "sav/weak11.hpp"

namespace sav {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SparseMeasure random_measure(uint64_t seed, int tag, int d, int max_pts, int64_t coord_range,
                             bool nonneg) {
    SparseMeasure m(d, "random");
    int64_t key[2] = {tag, 0};
    int n = 1 + (int)(rng::hashn(seed, 101, key, 2) % (uint64_t)max_pts);
    for (int i = 0; i < n; ++i) {
        Pt p(d);
        for (int c = 0; c < d; ++c) {
            int64_t k2[3] = {tag, i, c};
            p[c] = (int64_t)(rng::hashn(seed, 102, k2, 3) % (uint64_t)(2 * coord_range + 1)) -
                   coord_range;
        }
        int64_t k3[2] = {tag, i};
        int64_t num = (int64_t)(rng::hashn(seed, 103, k3, 2) % 41) - 20;
        int64_t den = 1 + (int64_t)(rng::hashn(seed, 104, k3, 2) % 20);
        if (nonneg && num < 0) num = -num;
        if (num != 0) m.add(p, Rat(num, den));
    }
    return m;
}

std::string rat_str(const Rat& r) {
    std::ostringstream ss;
    ss << r.get_num().get_str() << "/" << r.get_den().get_str();
    return ss.str();
}

// ---------- criterion 1 ----------
CriterionResult c1_weil(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{1, "weil-exhaustive", true, "", "", 0};
    int64_t pmax = opt.smoke ? 31 : 101;
    int violations = 0, checked = 0;
    double worst_equality_gap = 0;
    for (int m = 2; m <= 4; ++m) {
        for (int64_t p = m + 2; p <= pmax; ++p) {
            if (!is_prime_u64((uint64_t)p)) continue;
            WeilReport rep = weil_check(p, m, opt.threads);
            ++checked;
            if (!rep.pass) ++violations;
            if (m == 2) {
                double gap = std::fabs(rep.max_nonzero - 1.0 / std::sqrt((double)p));
                worst_equality_gap = std::max(worst_equality_gap, gap);
                if (p <= 13) {  // independent brute force on the small ones
                    double bf = weil_max_bruteforce(p, m);
                    worst_equality_gap = std::max(worst_equality_gap, std::fabs(bf - rep.max_nonzero));
                }
            }
        }
    }
    res.seconds = elapsed(t0);
    bool runtime_ok = res.seconds < 60.0;
    res.pass = violations == 0 && worst_equality_gap <= 1e-9 && runtime_ok;
    std::ostringstream ss;
    ss << "checked=" << checked << " violations=" << violations << " m2_equality_gap="
       << worst_equality_gap;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s (cap 60s: " +
                 (runtime_ok ? "ok" : "FAIL") + ")";
    return res;
}

// ---------- criterion 2 ----------
CriterionResult c2_convolution(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{2, "convolution-identities", true, "", "", 0};
    int fails = 0;
    int trials = opt.smoke ? 40 : 200;
    for (int t = 0; t < trials; ++t) {
        int d = 1 + (t % 2);
        SparseMeasure a = random_measure(opt.seed, t * 3, d, 6, 15, false);
        SparseMeasure b = random_measure(opt.seed, t * 3 + 1, d, 6, 15, false);
        SparseMeasure c = random_measure(opt.seed, t * 3 + 2, d, 6, 15, false);
        Rat alpha(3, 7), beta(-5, 3);
        // bilinearity
        SparseMeasure lhs = convolve(a.scaled(alpha) + b.scaled(beta), c);
        SparseMeasure rhs = convolve(a, c).scaled(alpha) + convolve(b, c).scaled(beta);
        if (!(lhs == rhs)) ++fails;
        // commutativity
        if (!(convolve(a, b) == convolve(b, a))) ++fails;
        // associativity against an independent triple-sum oracle
        SparseMeasure assoc = convolve(convolve(a, b), c);
        SparseMeasure oracle(d, "triple");
        for (const auto& [pa, va] : a.entries())
            for (const auto& [pb, vb] : b.entries())
                for (const auto& [pc, vc] : c.entries())
                    oracle.add(pt_add(pt_add(pa, pb), pc), va * vb * vc);
        if (!(assoc == oracle)) ++fails;
        if (!(convolve(a, convolve(b, c)) == oracle)) ++fails;
        // (a * a~)(0) = ||a||_2^2
        Pt zero(d, 0);
        if (!(convolve(a, a.reflect()).at(zero) == measure_stats(a).l2_sq)) ++fails;
        // reflection identities
        if (!(a.reflect().reflect() == a)) ++fails;
        if (!(convolve(a, b).reflect() == convolve(b.reflect(), a.reflect()))) ++fails;
    }
    res.seconds = elapsed(t0);
    bool runtime_ok = res.seconds < 10.0;
    res.pass = fails == 0 && runtime_ok;
    std::ostringstream ss;
    ss << "trials=" << trials << " fails=" << fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s (cap 10s: " +
                 (runtime_ok ? "ok" : "FAIL") + ")";
    return res;
}

// ---------- criterion 3 ----------
CriterionResult c3_cz(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{3, "cz-invariants", true, "", "", 0};
    int fails = 0;
    int trials = opt.smoke ? 20 : 100;
    Rat gamma(4, 5);
    for (int t = 0; t < trials; ++t) {
        int d = 1 + (t % 2);
        SparseMeasure f = random_measure(opt.seed ^ 0xcc, t, d, 10, 40, true);
        if (f.support_size() == 0) continue;
        for (const Rat& lam : {Rat(1, 4), Rat(1), Rat(4)}) {
            CZDecomposition cz = cz_decompose(f, lam);
            std::string bad = cz.check_invariants(f);
            if (!bad.empty()) ++fails;
            for (long j = 2; j <= 6; ++j) {
                auto splits = split_by_height_speckled(cz, j, gamma);
                Rat e = (Rat(d) - gamma) * j;
                long num = (long)e.get_num().get_si(), den = (long)e.get_den().get_si();
                for (const auto& hs : splits) {
                    // partition and the flat-part sup bound
                    SparseMeasure sum = hs.tall + hs.flat;
                    SparseMeasure orig(d);
                    for (const auto& [q, b] : cz.bad)
                        if (q.s == hs.level_s)
                            for (const auto& [p, x] : b.entries()) orig.add(p, x);
                    if (!(sum == orig)) ++fails;
                    for (const auto& [p, x] : hs.flat.entries())
                        if (cmp_pow2_frac(abs(x), num, den) > 0) ++fails;
                }
            }
        }
    }
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "trials=" << trials << " fails=" << fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 4 ----------
CriterionResult c4_speckled(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{4, "speckled-cancellation-slope", true, "", "", 0};
    SpeckledConfig cfg;
    cfg.d = 2;
    cfg.gamma = Rat(4, 5);
    int jmin = opt.smoke ? 5 : 8;
    int jmax = opt.smoke ? 8 : 13;
    int seeds = opt.smoke ? 3 : 20;
    cfg.jmin = 0;
    cfg.jmax = jmax;
    // the smoke profile runs low scales where the log-factor correction is
    // still large; the contract bound applies to the full j = 8..13 run
    double slope_bound = to_double(cfg.gamma) - 3.0 * cfg.d / 2.0 + (opt.smoke ? 0.45 : 0.15);
    int slope_ok = 0, origin_ok = 0;
    std::ostringstream rowdump;
    for (int s = 0; s < seeds; ++s) {
        cfg.seed = opt.seed + (uint64_t)s;
        SpeckledProfile prof = speckled_cancellation_profile(cfg, jmin, jmax, opt.threads);
        if (prof.fitted_slope <= slope_bound) ++slope_ok;
        double rmin = 1e300, rmax = 0;
        for (const auto& row : prof.rows) {
            rmin = std::min(rmin, row.origin_ratio);
            rmax = std::max(rmax, row.origin_ratio);
        }
        if (rmax / rmin <= 3.0) ++origin_ok;
        rowdump << " seed" << s << ":slope=" << prof.fitted_slope;
        std::fprintf(stderr, "[c4] seed %d/%d slope=%.4f (bound %.2f) elapsed=%.1fs\n", s + 1,
                     seeds, prof.fitted_slope, slope_bound, elapsed(t0));
    }
    res.seconds = elapsed(t0);
    bool slope_pass = slope_ok >= (int)std::ceil(0.95 * seeds);
    bool origin_pass = origin_ok == seeds;
    bool runtime_ok = res.seconds < 300.0;
    res.pass = slope_pass && origin_pass && runtime_ok;
    std::ostringstream ss;
    ss << "slope_ok=" << slope_ok << "/" << seeds << "(bound " << slope_bound << ") origin_ok="
       << origin_ok << "/" << seeds;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s (cap 300s: " +
                 (runtime_ok ? "ok" : "FAIL") + ")";
    return res;
}

// ---------- criterion 5 ----------
CriterionResult c5_plaid(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{5, "plaid-chi-decomposition", true, "", "", 0};
    PlaidConfig cfg;
    cfg.d = 2;
    cfg.alpha = Rat(2, 5);
    int jmin = opt.smoke ? 4 : 6;
    int jmax = opt.smoke ? 6 : 10;
    int seeds = opt.smoke ? 3 : 10;
    cfg.jmin = 1;
    cfg.jmax = jmax;
    int recon_fails = 0, order_fails = 0;
    for (int s = 0; s < seeds; ++s) {
        cfg.seed = opt.seed + 1000 + (uint64_t)s;
        PlaidProfile prof = plaid_cancellation_profile(cfg, jmin, jmax);
        for (const auto& row : prof.rows)
            if (!row.reconstruction_ok) ++recon_fails;
        const auto& last = prof.rows.back();
        // I subset I' => sup_{I'} <= sup_I  (masks: 0 < {1},{2} < {1,2})
        if (!(last.sup_by_pattern[1] <= last.sup_by_pattern[0] &&
              last.sup_by_pattern[2] <= last.sup_by_pattern[0] &&
              last.sup_by_pattern[3] <= last.sup_by_pattern[1] &&
              last.sup_by_pattern[3] <= last.sup_by_pattern[2]))
            ++order_fails;
    }
    res.seconds = elapsed(t0);
    res.pass = recon_fails == 0 && order_fails == 0;
    std::ostringstream ss;
    ss << "seeds=" << seeds << " recon_fails=" << recon_fails << " order_fails=" << order_fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 6 ----------
CriterionResult c6_tempelman(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{6, "tempelman-diagnostics", true, "", "", 0};
    int fails = 0;
    // interval ratio (2N-1)/N
    for (int64_t N : {1, 2, 5, 50, 1000}) {
        IntervalSet F;
        F.add(1, N);
        if (!(tempelman_folner_report(F).ratio == Rat(2 * N - 1, N))) ++fails;
    }
    // generated plan: grid ratios bounded by the plan constant, running max
    // stabilized (last three within 1%; exact equality is unattainable since
    // the r=1 ratio increases strictly toward its asymptote)
    BlockPlan plan = generate_block_plan(8);
    Rat running_max;
    std::vector<Rat> running_at_k;
    for (int k = 1; k <= 8; ++k) {
        int64_t ak = plan.x.a[k - 1];
        for (int64_t r : {int64_t(1), (ak + 1) / 2, ak}) {
            if (r < 1 || r > ak) continue;
            Rat ratio = tempelman_folner_report(intermediate_set(plan.x, k, r)).ratio;
            if (!(ratio < Rat(4))) ++fails;  // M4+M5 surrogate for this family
            if (ratio > running_max) running_max = ratio;
        }
        running_at_k.push_back(running_max);
    }
    size_t K = running_at_k.size();
    Rat inc1 = running_at_k[K - 2] - running_at_k[K - 3];
    Rat inc2 = running_at_k[K - 1] - running_at_k[K - 2];
    if (!(inc2 <= inc1)) ++fails;  // increments shrink ...
    if (!(running_at_k[K - 1] <= running_at_k[K - 2] * Rat(101, 100))) ++fails;  // ... below 1%
    // product identity on random pairs
    int pairs = opt.smoke ? 10 : 50;
    for (int t = 0; t < pairs; ++t) {
        SparseMeasure mx = random_measure(opt.seed ^ 0x66, 2 * t, 1, 8, 30, false);
        SparseMeasure my = random_measure(opt.seed ^ 0x66, 2 * t + 1, 1, 8, 30, false);
        if (mx.support_size() == 0 || my.support_size() == 0) continue;
        std::vector<int64_t> X, Y;
        for (const auto& [p, v] : mx.entries()) X.push_back(p[0]);
        for (const auto& [p, v] : my.entries()) Y.push_back(p[0]);
        std::unordered_set<int64_t> dx, dy;
        for (int64_t a : X)
            for (int64_t b : X) dx.insert(a - b);
        for (int64_t a : Y)
            for (int64_t b : Y) dy.insert(a - b);
        std::vector<Pt> XY;
        for (int64_t a : X)
            for (int64_t b : Y) XY.push_back({a, b});
        TempelmanReport rep = tempelman_folner_report(XY);
        if (rep.diff_size != (int64_t)dx.size() * (int64_t)dy.size()) ++fails;
    }
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "fails=" << fails << " plan_running_max=" << rat_str(running_max);
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 7 ----------
CriterionResult c7_divergence(const AcceptanceOptions& opt) {
    (void)opt;
    auto t0 = Clock::now();
    CriterionResult res{7, "divergence-witness", true, "", "", 0};
    int fails = 0;
    WitnessPlan plan = generate_witness_plan(5);
    auto rows = divergence_witness(plan, 5);
    Rat half(1, 2);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].left_face_avg > half)) ++fails;
        if (!(rows[i].left_face_avg >= rows[i].left_face_bound)) ++fails;
        if (i >= 1 && !(rows[i].block_end_avg < rows[i - 1].block_end_avg)) ++fails;
    }
    if (!(rows.back().block_end_avg < Rat(1, 10))) ++fails;
    UnrestrictedCount uc = unrestricted_divergence_count(100000);
    if (!(uc.ratio_to_nlogn >= 0.9 && uc.ratio_to_nlogn <= 1.3)) ++fails;
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "fails=" << fails << " count_ratio=" << uc.ratio_to_nlogn << " last_end_avg~"
       << to_double(rows.back().block_end_avg);
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 8 ----------
CriterionResult c8_psi(const AcceptanceOptions& opt) {
    (void)opt;
    auto t0 = Clock::now();
    CriterionResult res{8, "psi-hat-l1-stability", true, "", "", 0};
    double rmin = 1e300, rmax = 0, dmin = 1e300, dmax = 0;
    for (int64_t p = 11; p <= 199; ++p) {
        if (!is_prime_u64((uint64_t)p)) continue;
        PsiL1Report rep = smoothing_psi_l1(p, 1.0 / (2.0 * (double)p));
        rmin = std::min(rmin, rep.ratio_to_p);
        rmax = std::max(rmax, rep.ratio_to_p);
        double dp = rep.delta2_phi_l1 * (double)p;
        dmin = std::min(dmin, dp);
        dmax = std::max(dmax, dp);
    }
    res.seconds = elapsed(t0);
    bool ratio_ok = rmax / rmin <= 2.0;
    bool d2_ok = dmax / dmin <= 3.0;
    res.pass = ratio_ok && d2_ok;
    std::ostringstream ss;
    ss << "psi_ratio_spread=" << rmax / rmin << "(<=2:" << (ratio_ok ? "ok" : "FAIL")
       << ") d2_spread=" << dmax / dmin << "(<=3:" << (d2_ok ? "ok" : "FAIL") << ")";
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 9 ----------
CriterionResult c9_transfer(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{9, "transfer-operators", true, "", "", 0};
    int fails = 0;
    for (int64_t p : {2, 3, 5, 7, 11})
        for (int q : {1, 2})
            for (int d : {1, 2})
                if (!freiman_bijective_check(p, q, d)) ++fails;
    double max_gap = 0;
    for (int64_t p : {5, 7})
        for (int q : {1, 2})
            for (int d : {1, 2}) {
                if (q * d > 3 && p > 5) continue;  // keep the lift table small
                auto rep = gamma_fourier_identity(p, q, d, opt.smoke ? 25 : 100, opt.seed);
                max_gap = std::max(max_gap, rep.max_gap);
            }
    if (max_gap > 1e-9) ++fails;
    int64_t pmax = opt.smoke ? 31 : 101;
    for (int64_t p = 11; p <= pmax; ++p) {
        if (!is_prime_u64((uint64_t)p)) continue;
        for (int q : {1, 2})
            for (int d : {1, 2}) {
                if (!mu_triple_majorizes(p, q, d)) ++fails;
                Rat l1 = nu_triple_l1(p, q, d);
                Rat bound = 1;
                for (int i = 0; i < q * d; ++i) bound *= 3;
                if (!(l1 <= bound + Rat(1, 100))) ++fails;
            }
    }
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "fails=" << fails << " fourier_gap=" << max_gap;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 10 ----------
CriterionResult c10_oscillation(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{10, "oscillation-bookkeeping", true, "", "", 0};
    int fails = 0;
    ArithParams params = default_arith_params(2, 1, 6);
    // telescoping for random f
    int trials = opt.smoke ? 5 : 20;
    for (int t = 0; t < trials; ++t) {
        int d = 1 + (t % 2);
        ArithParams pd = default_arith_params(d, 1, 6);
        SparseMeasure f = random_measure(opt.seed ^ 0x10, t, d, 8, 10, false);
        if (f.support_size() == 0) continue;
        // lacunary times at block ends
        std::vector<int64_t> ts;
        int64_t acc = 0;
        for (int k = 0; k < 5; ++k) {
            acc += pd.primes.p[k];
            ts.push_back(acc);
        }
        auto pieces = vt_telescoping(pd, f, ts);
        double total = 0;
        for (double x : pieces) total += x;
        double l2 = to_double(measure_stats(f).l2_sq);
        if (!(total <= l2 + 1e-9)) ++fails;
    }
    // sup|mu^ - nu^| strictly decreasing over three complete blocks
    for (int d : {1, 2}) {
        ArithParams pd = default_arith_params(d, 1, 4);
        auto rows = osc_supdiff_rows(pd, {0, 1, 2}, 64);
        if (!(rows[1].sup_diff < rows[0].sup_diff && rows[2].sup_diff < rows[1].sup_diff)) ++fails;
    }
    (void)params;
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "fails=" << fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 11 ----------
CriterionResult c11_growth(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{11, "heisenberg-growth", true, "", "", 0};
    int fails = 0;
    int nmax = opt.smoke ? 14 : 18;
    GrowthReport heis = word_ball_growth(GroupModel::heis3(), nmax);
    if (heis.inferred_degree != 4) ++fails;
    double rmin = 1e300, rmax = 0;
    for (int N = 12; N <= nmax; ++N) {
        double r = (double)heis.sizes[N] / std::pow((double)N, 4);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (!(rmax / rmin < 1.2)) ++fails;
    WordBalls z2 = word_balls(GroupModel::zd(2), 30);
    for (int N = 0; N <= 30; ++N)
        if (z2.ball_size[N] != (size_t)(2 * (int64_t)N * N + 2 * N + 1)) ++fails;
    res.seconds = elapsed(t0);
    bool runtime_ok = res.seconds < 120.0;
    res.pass = fails == 0 && runtime_ok;
    std::ostringstream ss;
    ss << "fails=" << fails << " heis_band=" << rmax / rmin;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s (cap 120s: " +
                 (runtime_ok ? "ok" : "FAIL") + ")";
    return res;
}

// ---------- criterion 12 ----------
CriterionResult c12_coloring(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{12, "three-coloring", true, "", "", 0};
    int fails = 0;
    int trials = opt.smoke ? 40 : 200;
    for (int t = 0; t < trials; ++t) {
        GroupModel g = (t % 2) ? GroupModel::heis3() : GroupModel::zd(1);
        WordBalls balls = word_balls(g, 6);
        // random E from the radius-6 ball, random h != e
        std::vector<GroupModel::El> E;
        size_t bs = balls.elements.size();
        int ne = 3 + (int)(rng::hash2(opt.seed, 900 + t, t, 0) % 40);
        for (int i = 0; i < ne; ++i)
            E.push_back(balls.elements[rng::hash2(opt.seed, 901 + t, i, 1) % bs]);
        // index 0 is the identity; draw from the rest
        GroupModel::El h = balls.elements[1 + rng::hash2(opt.seed, 902 + t, t, 2) % (bs - 1)];
        ThreeColoring col = three_color_partition(g, E, h);
        if (!col.valid || col.classes.size() > 3) ++fails;
    }
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "trials=" << trials << " fails=" << fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 13 ----------
CriterionResult c13_gaps(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{13, "gap-machinery", true, "", "", 0};
    int fails = 0;
    // Cantor set: sums of distinct powers of 3, indices through 2^15
    int bits = opt.smoke ? 13 : 15;
    {
        std::vector<GroupModel::El> seq;
        size_t count = size_t(1) << bits;
        for (size_t mask = 1; mask <= count; ++mask) {  // masks are already sorted by value
            int64_t v = 0, m = (int64_t)mask;
            int64_t pw = 1;
            while (m) {
                if (m & 1) v += pw;
                pw *= 3;
                m >>= 1;
            }
            seq.push_back({v, 0, 0});
        }
        GapProfile prof =
            gap_profile_and_thin(GroupModel::zd(1), seq, std::vector<int>{2}, Rat(1, 100));
        for (size_t j = 2; j < prof.beta.size(); ++j)
            if (!(prof.beta[j][0] >= Rat(1, 5))) ++fails;  // beta_{j,2} bounded away from 0
    }
    // speckled thinned sequence
    {
        SpeckledConfig cfg;
        cfg.d = 2;
        cfg.gamma = Rat(4, 5);
        cfg.seed = opt.seed + 7;
        size_t want = opt.smoke ? 2300 : 11500;
        auto pts = enumerate_speckled(cfg, want);
        std::vector<GroupModel::El> seq;
        for (const auto& p : pts) seq.push_back({p[0], p[1], 0});
        GapProfile prof = gap_profile_and_thin(GroupModel::zd(2), seq,
                                               std::vector<int>{2, 3, 4, 6, 8}, Rat(1, 10));
        size_t kwant = opt.smoke ? 1500 : 10000;
        if (prof.thinned_index.size() < kwant) {
            ++fails;
        } else if (!(prof.nk_over_k[kwant - 1] <= 1.1)) {
            ++fails;
        }
        // schedule must eventually exceed the smallest grid value
        if (prof.schedule.empty() || prof.schedule.back() < 2) ++fails;
    }
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "fails=" << fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 14 ----------
CriterionResult c14_dynamics(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{14, "dynamics", true, "", "", 0};
    int fails = 0;
    // finite torus full orbit: average over k full cycles equals the mean
    {
        FiniteTorusShift act;
        act.d = 1;
        act.D = 1;
        act.L = 101;
        act.shift = {Pt{1}};
        CellObservable f;
        f.corner = {0};
        f.extent = {13};
        std::vector<Pt> en;
        for (int64_t n = 1; n <= 404; ++n) en.push_back({n});
        auto rows = evaluate_average_finite(act, f, Pt{0}, en, {101, 202, 404});
        for (size_t i = 0; i + 1 < rows.size(); ++i)
            if (!(rows[i].value == f.space_mean(act.L, act.D))) ++fails;
        // constant observable
        CellObservable one;
        one.corner = {0};
        one.extent = {101};
        auto rows1 = evaluate_average_finite(act, one, Pt{5}, en, {7, 101, 300});
        for (const auto& r : rows1)
            if (!(r.value == Rat(1))) ++fails;
    }
    // torus rotation along the arithmetic set
    {
        int blocks = opt.smoke ? 12 : 17;
        ArithParams params = default_arith_params(2, 1, blocks);
        int64_t N = 0;
        for (int64_t p : params.primes.p) N += p;
        auto en = arith_enumeration(params, (size_t)N);
        TorusRotation rot = default_torus_rotation();
        TrigObservable f;
        f.freq = {Pt{1, 0}};
        f.cos_coef = {1.0};
        f.sin_coef = {0.0};
        auto rows = evaluate_average_torus(rot, f, {0.1, 0.2}, en, {N});
        if (!(std::fabs(rows[0].value) < 0.05)) ++fails;
        if (!((size_t)N <= 1000000)) ++fails;
    }
    // transference on Z_128^2
    {
        FiniteTorusShift act;
        act.d = 2;
        act.D = 2;
        act.L = 128;
        act.shift = {Pt{1, 0}, Pt{0, 1}};
        CellObservable f;
        f.corner = {0, 0};
        f.extent = {1, 1};
        std::vector<SparseMeasure> family;
        for (int r : {0, 1}) {
            SparseMeasure mu(2, "ball");
            int64_t cells = (2 * r + 1) * (2 * r + 1);
            for (int64_t x = -r; x <= r; ++x)
                for (int64_t y = -r; y <= r; ++y) mu.set({x, y}, Rat(1, cells));
            family.push_back(mu);
        }
        std::vector<Rat> lambdas{Rat(1, 1024), Rat(1, 64), Rat(1, 16), Rat(1, 4)};
        TransferenceReport rep = transference_check(act, f, Pt{3, 7}, family, 16, lambdas);
        if (!rep.pointwise_identity) ++fails;
        if (!rep.level_sets_ok) ++fails;
        if (!(rep.edge_factor <= 1.2)) ++fails;
    }
    res.seconds = elapsed(t0);
    res.pass = fails == 0;
    std::ostringstream ss;
    ss << "fails=" << fails;
    res.detail = ss.str();
    res.timing = "runtime=" + std::to_string(res.seconds) + "s";
    return res;
}

// ---------- criterion 15 ----------
std::string smoke_digest(const AcceptanceOptions& base) {
    // deterministic digest of several module outputs at smoke scale
    std::ostringstream ss;
    SpeckledConfig cfg;
    cfg.d = 2;
    cfg.gamma = Rat(4, 5);
    cfg.seed = base.seed;
    SpeckledProfile prof = speckled_cancellation_profile(cfg, 3, 6, base.threads);
    for (const auto& r : prof.rows)
        ss << r.j << ":" << rat_str(r.sup_punctured) << ":" << rat_str(r.at0) << ";";
    PlaidConfig pc;
    pc.seed = base.seed;
    PlaidProfile pp = plaid_cancellation_profile(pc, 3, 5);
    for (const auto& r : pp.rows) ss << rat_str(r.total_sum) << ";";
    auto en = enumerate_speckled(cfg, 50);
    for (const auto& p : en) ss << p[0] << "," << p[1] << ";";
    WeilReport w = weil_check(13, 3, base.threads);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", w.max_nonzero);
    ss << buf;
    return ss.str();
}

CriterionResult c15_reproducibility(const AcceptanceOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult res{15, "reproducibility", true, "", "", 0};
    std::string a = smoke_digest(opt);
    std::string b = smoke_digest(opt);
    res.seconds = elapsed(t0);
    res.pass = (a == b) && !a.empty();
    res.detail = std::string("digest_match=") + (res.pass ? "yes" : "NO") + " bytes=" +
                 std::to_string(a.size());
    return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    std::vector<CriterionResult> rows;
    using Fn = CriterionResult (*)(const AcceptanceOptions&);
    const Fn fns[] = {c1_weil,     c2_convolution, c3_cz,       c4_speckled,
                      c5_plaid,    c6_tempelman,   c7_divergence, c8_psi,
                      c9_transfer, c10_oscillation, c11_growth,  c12_coloring,
                      c13_gaps,    c14_dynamics,   c15_reproducibility};
    for (Fn fn : fns) {
        rows.push_back(fn(opt));
        const auto& r = rows.back();
        std::fprintf(stderr, "[acceptance] %2d %-28s %s (%.1fs)\n", r.id, r.name.c_str(),
                     r.pass ? "pass" : "FAIL", r.seconds);
    }
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        CsvWriter csv(opt.out_dir + "/acceptance.csv", {"id", "name", "pass", "detail"});
        for (const auto& r : rows)
            csv.row({std::to_string(r.id), r.name, r.pass ? "1" : "0", r.detail});
    }
    return rows;
}

int print_acceptance(const std::vector<CriterionResult>& rows) {
    int fails = 0;
    for (const auto& r : rows) {
        std::printf("criterion %2d %-32s %s  (%s; %s)\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.timing.c_str());
        if (!r.pass) ++fails;
    }
    std::printf("acceptance: %zu criteria, %d failing\n", rows.size(), fails);
    return fails;
}

}  // namespace sav
