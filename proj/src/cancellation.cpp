#include "sav/cancellation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

namespace sav {

namespace {

using i128 = __int128;

Int int_from_i128(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    Int hi((unsigned long)(uint64_t)(u >> 64));
    Int lo((unsigned long)(uint64_t)(u & 0xffffffffffffffffull));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

i128 iabs128(i128 v) { return v < 0 ? -v : v; }

double log2_rat(const Rat& x) {
    signed long en, ed;
    double mn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    return std::log2(std::fabs(mn / md)) + (double)(en - ed);
}

// ================= speckled engine (d = 2) =================
//
// nu = mu - 2^{-dj} 1_shell with mu = c 1_S, c = 2^{-dj}/p, p = P/2^32.
// Writing N(x) = #(S cap (S+x)), M(x) = #(S cap (shell+x)), M'(x) = M(-x),
// G(x) = #(shell cap (shell+x)):
//   nu*nu~(x) = 2^{-2dj} V(x) / P^2,  V = 2^64 N - 2^32 P (M+M') + P^2 G,
// so V is integer-exact and the punctured sup reduces to max |V| over x != 0.
// V is symmetric, so only dy >= 0 is scanned.

struct SpeckledRun {
    int64_t R1, R2;  // shell = Box(R2) \ Box(R1)
    uint64_t P = 0;  // probability P / 2^32
    std::vector<std::vector<int32_t>> rows;  // selected x's by row y + R2
    uint64_t n_sel = 0;
};

inline int64_t seg_overlap(int64_t Ra, int64_t Rb, int64_t x) {
    int64_t lo = std::max(-Ra, x - Rb), hi = std::min(Ra, x + Rb);
    return hi >= lo ? hi - lo + 1 : 0;
}

inline int64_t shell_overlap(const SpeckledRun& s, int64_t dx, int64_t dy) {
    auto box = [&](int64_t Ra, int64_t Rb) {
        return seg_overlap(Ra, Rb, dx) * seg_overlap(Ra, Rb, dy);
    };
    return box(s.R2, s.R2) - box(s.R2, s.R1) - box(s.R1, s.R2) + box(s.R1, s.R1);
}

SpeckledRun sample_speckled_rows(const SpeckledConfig& cfg, long j) {
    SpeckledRun s;
    s.R1 = (int64_t(1) << j) - 1;
    s.R2 = (int64_t(1) << (j + 1)) - 1;
    DyadicProb p = speckled_shell_prob(cfg, j);
    s.P = p.num32;
    const bool all = p.num32 >= (1ull << 32);
    const uint64_t thr = all ? ~0ull : (p.num32 << 32);
    s.rows.assign(2 * s.R2 + 1, {});
    const uint64_t h0 =
        rng::combine(rng::mix(cfg.seed ^ 0x853c49e6748fea9bull), 0x53b6c0ff33d1e5ceull);
    for (int64_t y = -s.R2; y <= s.R2; ++y) {
        auto& row = s.rows[y + s.R2];
        auto scan = [&](int64_t xlo, int64_t xhi) {
            for (int64_t x = xlo; x <= xhi; ++x) {
                uint64_t h = rng::combine(rng::combine(h0, (uint64_t)x), (uint64_t)y);
                if (all || h < thr) row.push_back((int32_t)x);
            }
        };
        if (y > s.R1 || y < -s.R1) {
            scan(-s.R2, s.R2);
        } else {
            scan(-s.R2, -s.R1 - 1);
            scan(s.R1 + 1, s.R2);
        }
        s.n_sel += row.size();
    }
    return s;
}

struct BandOut {
    i128 max_abs = 0;
    Int sum_pos;   // sum of V over dy > 0 cells in the band
    Int sum_row0;  // sum of V over dy = 0, dx != 0
};

void process_band(const SpeckledRun& s, int64_t D0, int64_t D1, std::vector<uint32_t>& N,
                  BandOut& out) {
    const int64_t R1 = s.R1, R2 = s.R2;
    const int64_t W = 4 * R2 + 1, offX = 2 * R2;
    std::memset(N.data(), 0, sizeof(uint32_t) * (size_t)(D1 - D0) * (size_t)W);

    // difference counts N(dx, dy) for dy in the band
    for (int64_t dy = D0; dy < D1; ++dy) {
        uint32_t* base = N.data() + (size_t)(dy - D0) * W;
        for (int64_t ya = std::max(-R2, dy - R2); ya <= R2; ++ya) {
            const auto& ra = s.rows[ya + R2];
            const auto& rb = s.rows[ya - dy + R2];
            if (ra.empty() || rb.empty()) continue;
            for (int32_t ax : ra) {
                uint32_t* rp = base + (ax + offX);
                for (int32_t bx : rb) ++rp[-(int64_t)bx];
            }
        }
    }

    // sliding y-window column counts for M (center dy) and M' (center -dy)
    const size_t CW = (size_t)(2 * R2 + 1);
    std::vector<int32_t> c2(CW, 0), c1(CW, 0), c2m(CW, 0), c1m(CW, 0);
    auto add_rows = [&](std::vector<int32_t>& cnt, int64_t ylo, int64_t yhi, int dir) {
        ylo = std::max(ylo, -R2);
        yhi = std::min(yhi, R2);
        for (int64_t y = ylo; y <= yhi; ++y)
            for (int32_t x : s.rows[y + R2]) cnt[x + R2] += dir;
    };
    add_rows(c2, D0 - R2, D0 + R2, +1);
    add_rows(c1, D0 - R1, D0 + R1, +1);
    add_rows(c2m, -D0 - R2, -D0 + R2, +1);
    add_rows(c1m, -D0 - R1, -D0 + R1, +1);

    std::vector<int64_t> pre2(CW + 1), pre1(CW + 1), pre2m(CW + 1), pre1m(CW + 1);
    const uint64_t P = s.P;
    i128 best = 0;
    Int sum_pos, sum_row0;

    for (int64_t dy = D0; dy < D1; ++dy) {
        if (dy > D0) {
            add_rows(c2, dy + R2, dy + R2, +1);
            add_rows(c2, dy - R2 - 1, dy - R2 - 1, -1);
            add_rows(c1, dy + R1, dy + R1, +1);
            add_rows(c1, dy - R1 - 1, dy - R1 - 1, -1);
            add_rows(c2m, -dy - R2, -dy - R2, +1);
            add_rows(c2m, -dy + R2 + 1, -dy + R2 + 1, -1);
            add_rows(c1m, -dy - R1, -dy - R1, +1);
            add_rows(c1m, -dy + R1 + 1, -dy + R1 + 1, -1);
        }
        for (size_t i = 0; i < CW; ++i) {
            pre2[i + 1] = pre2[i] + c2[i];
            pre1[i + 1] = pre1[i] + c1[i];
            pre2m[i + 1] = pre2m[i] + c2m[i];
            pre1m[i + 1] = pre1m[i] + c1m[i];
        }
        auto win = [&](const std::vector<int64_t>& p, int64_t center, int64_t radius) {
            int64_t lo = std::max(center - radius, -R2) + R2;
            int64_t hi = std::min(center + radius, R2) + R2;
            return hi >= lo ? p[hi + 1] - p[lo] : 0;
        };
        const uint32_t* Nrow = N.data() + (size_t)(dy - D0) * W;
        i128 row_sum = 0;
        for (int64_t dx = -2 * R2; dx <= 2 * R2; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int64_t M = win(pre2, dx, R2) - win(pre1, dx, R1);
            int64_t Mp = win(pre2m, -dx, R2) - win(pre1m, -dx, R1);
            int64_t G = shell_overlap(s, dx, dy);
            i128 V = ((i128)Nrow[dx + offX] << 64) - ((i128)(P * (uint64_t)(M + Mp)) << 32) +
                     (i128)P * (i128)P * G;
            i128 a = iabs128(V);
            if (a > best) best = a;
            row_sum += V;
        }
        (dy == 0 ? sum_row0 : sum_pos) += int_from_i128(row_sum);
    }
    out.max_abs = best;
    out.sum_pos = sum_pos;
    out.sum_row0 = sum_row0;
}

SpeckledCancelRow
speckled_row_engine2d(const SpeckledConfig& cfg, long j, int threads) {
    SpeckledRun s = sample_speckled_rows(cfg, j);
    SpeckledCancelRow row;
    row.j = j;
    row.support_size = s.n_sel;
    row.support_radius = s.R2;

    Rat p = Rat(Int((unsigned long)s.P)) / pow2q(32);
    Rat e_mu = pow2q(-(long)cfg.d * j);
    Rat c = e_mu / p;
    row.at0 = Rat((unsigned long)s.n_sel) * (c - e_mu) * (c - e_mu) +
              (Rat(shell_count(cfg.d, j)) - Rat((unsigned long)s.n_sel)) * e_mu * e_mu;

    const int64_t H = 2 * s.R2 + 1;
    const int64_t W = 4 * s.R2 + 1;
    const int64_t BAND = std::max<int64_t>(64, std::min<int64_t>(1024, (int64_t)(1 << 26) / W));
    std::vector<int64_t> starts;
    for (int64_t D = 0; D < H; D += BAND) starts.push_back(D);
    std::vector<BandOut> outs(starts.size());

    int nt = std::max(1, std::min<int>(threads, (int)starts.size()));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        std::vector<uint32_t> N((size_t)BAND * (size_t)W);
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= starts.size()) break;
            process_band(s, starts[i], std::min<int64_t>(H, starts[i] + BAND), N, outs[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    i128 best = 0;
    Int sum_pos, sum_row0;
    for (const auto& o : outs) {
        if (o.max_abs > best) best = o.max_abs;
        sum_pos += o.sum_pos;
        sum_row0 += o.sum_row0;
    }
    // total-sum identity: sum_x V(x) = (2^32 n_sel - P #shell)^2, which pins
    // the banded counts, the sliding windows and the closed-form geometry
    // against each other on every run.
    Int nsel_i((unsigned long)s.n_sel);
    Int P_i((unsigned long)s.P);
    Int shell_i = shell_count(cfg.d, j);
    Int v0 = (nsel_i << 64) - ((P_i * nsel_i) << 33) + P_i * P_i * shell_i;
    Int total = 2 * sum_pos + sum_row0 + v0;
    Int want = (nsel_i << 32) - P_i * shell_i;
    if (total != want * want)
        throw std::runtime_error("speckled engine: total-sum identity failed at j=" +
                                 std::to_string(j));

    Rat Pq(Int((unsigned long)s.P));
    row.sup_punctured = Rat(int_from_i128(best)) * pow2q(-2 * (long)cfg.d * j) / (Pq * Pq);
    row.degenerate = (s.n_sel == 0);
    row.log2_sup = sgn(row.sup_punctured) > 0 ? log2_rat(row.sup_punctured) : -1e9;
    row.origin_ratio =
        to_double(row.at0) / std::exp2((to_double(cfg.gamma) - cfg.d) * (double)j);
    return row;
}

// dense exact path for d = 1 (supports are tiny)
SpeckledCancelRow speckled_row_dense1d(const SpeckledConfig& cfg, long j) {
    SpeckledCancelRow row;
    row.j = j;
    const int64_t R1 = (int64_t(1) << j) - 1, R2 = (int64_t(1) << (j + 1)) - 1;
    DyadicProb p = speckled_shell_prob(cfg, j);
    std::vector<int64_t> sel;
    for (int64_t x = -R2; x <= R2; ++x) {
        if (x >= -R1 && x <= R1) continue;
        if (p.hit(rng::hashn(cfg.seed, 0x53b6c0ff33d1e5ceull, &x, 1))) sel.push_back(x);
    }
    row.support_size = sel.size();
    row.support_radius = R2;
    const uint64_t P = p.num32;
    Rat e_mu = pow2q(-j);
    Rat c = e_mu / p.value();
    row.at0 = Rat((unsigned long)sel.size()) * (c - e_mu) * (c - e_mu) +
              (Rat(shell_count(1, j)) - Rat((unsigned long)sel.size())) * e_mu * e_mu;
    const int64_t W = 4 * R2 + 1, off = 2 * R2;
    std::vector<uint32_t> N(W, 0);
    for (int64_t a : sel)
        for (int64_t b : sel) ++N[a - b + off];
    auto shell_cnt = [&](int64_t x) {
        return seg_overlap(R2, R2, x) - 2 * seg_overlap(R2, R1, x) + seg_overlap(R1, R1, x);
    };
    auto in_shell = [&](int64_t x) {
        int64_t ax = x < 0 ? -x : x;
        return ax > R1 && ax <= R2;
    };
    i128 best = 0;
    for (int64_t dx = -2 * R2; dx <= 2 * R2; ++dx) {
        if (dx == 0) continue;
        int64_t M = 0, Mp = 0;
        for (int64_t a : sel) {
            if (in_shell(a - dx)) ++M;
            if (in_shell(a + dx)) ++Mp;
        }
        i128 V = ((i128)N[dx + off] << 64) - ((i128)(P * (uint64_t)(M + Mp)) << 32) +
                 (i128)P * (i128)P * shell_cnt(dx);
        if (iabs128(V) > best) best = iabs128(V);
    }
    Rat Pq(Int((unsigned long)P));
    row.sup_punctured = Rat(int_from_i128(best)) * pow2q(-2 * j) / (Pq * Pq);
    row.degenerate = sel.empty();
    row.log2_sup = sgn(row.sup_punctured) > 0 ? log2_rat(row.sup_punctured) : -1e9;
    row.origin_ratio = to_double(row.at0) / std::exp2((to_double(cfg.gamma) - 1) * (double)j);
    return row;
}

}  // namespace

SpeckledProfile speckled_cancellation_profile(SpeckledConfig cfg, int jmin, int jmax, int threads) {
    cfg.validate();
    if (cfg.d > 2)
        throw std::runtime_error("speckled_cancellation_profile: engine supports d <= 2");
    SpeckledProfile prof;
    prof.seed = cfg.seed;
    for (int j = jmin; j <= jmax; ++j)
        prof.rows.push_back(cfg.d == 2 ? speckled_row_engine2d(cfg, j, threads)
                                       : speckled_row_dense1d(cfg, j));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : prof.rows) {
        if (r.degenerate) continue;
        sx += r.j;
        sy += r.log2_sup;
        sxx += (double)r.j * r.j;
        sxy += r.j * r.log2_sup;
        ++n;
    }
    prof.fitted_slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    return prof;
}

// ================= plaid engine (d = 2) =================
//
// nu = A (1_S - q) on the positive-quadrant shell, where q(n) = p1(n1) p2(n2)
// is the product of the realized (24-bit dyadic) axis probabilities and A is
// the (dyadic) amplitude. With Q(u) := 2^48 q(u) 1_qshell(u) integer-valued,
//   nu*nu~(x) = A^2 U(x) / 2^96,
//   U = 2^96 N(x) - 2^48 (W(x) + W(-x)) + Z(x),
// N = ordered difference counts of S, W = 1_S (*) Q correlation, Z = Q (*) Q.
// The quadrant shell is bigbox [1,hi]^2 minus smallbox [1,lo-1]^2, so W and Z
// split into separable box terms.

namespace {

struct PlaidRun {
    int64_t lo, hi;
    std::vector<int64_t> P1, P2;             // 24-bit scaled axis probs, index 0 unused
    std::vector<std::vector<int32_t>> rows;  // S rows by y in [1, hi]
    uint64_t n_sel = 0;
};

PlaidRun sample_plaid_rows(const PlaidConfig& cfg, long j) {
    PlaidRun r;
    r.lo = int64_t(1) << j;
    r.hi = (int64_t(1) << (j + 1)) - 1;
    r.P1.assign(r.hi + 1, 0);
    r.P2.assign(r.hi + 1, 0);
    std::vector<int32_t> cols;
    std::vector<uint8_t> b2(r.hi + 1, 0);
    for (int64_t n = 1; n <= r.hi; ++n) {
        r.P1[n] = r.P2[n] = (int64_t)(plaid_axis_prob(cfg, n).num32 >> 8);
        if (plaid_axis_hit(cfg, 0, n)) cols.push_back((int32_t)n);
        b2[n] = plaid_axis_hit(cfg, 1, n) ? 1 : 0;
    }
    r.rows.assign(r.hi + 1, {});
    for (int64_t y = 1; y <= r.hi; ++y) {
        if (!b2[y]) continue;
        auto& row = r.rows[y];
        if (y >= r.lo) {
            row = cols;
        } else {
            for (int32_t x : cols)
                if (x >= r.lo) row.push_back(x);
        }
        r.n_sel += row.size();
    }
    return r;
}

// axis correlation c[t] = sum_{u in [1,ma], u-t in [1,mb]} P[u] P[u-t]
std::vector<int64_t> axis_corr(const std::vector<int64_t>& P, int64_t ma, int64_t mb,
                               int64_t Wd, int64_t off) {
    std::vector<int64_t> c(Wd, 0);
    for (int64_t u = 1; u <= ma; ++u) {
        int64_t pu = P[u];
        if (!pu) continue;
        for (int64_t v = 1; v <= mb; ++v) c[u - v + off] += pu * P[v];
    }
    return c;
}

}  // namespace

PlaidProfile plaid_cancellation_profile(PlaidConfig cfg, int jmin, int jmax) {
    cfg.validate();
    if (cfg.d != 2) throw std::runtime_error("plaid_cancellation_profile: engine is d = 2");
    if (jmax > 11) throw std::runtime_error("plaid_cancellation_profile: jmax <= 11 budget");
    PlaidProfile prof;
    prof.seed = cfg.seed;

    for (int j = jmin; j <= jmax; ++j) {
        PlaidRun s = sample_plaid_rows(cfg, j);
        const int64_t hi = s.hi, lo = s.lo;
        const int64_t Wd = 2 * hi - 1, off = hi - 1;
        if (s.n_sel >= (1ull << 15))
            throw std::runtime_error("plaid_cancellation_profile: support too large for int64 W");
        PlaidCancelRow row;
        row.j = j;
        row.support_size = s.n_sel;

        // N plane
        std::vector<uint32_t> N((size_t)Wd * Wd, 0);
        for (int64_t ya = 1; ya <= hi; ++ya) {
            if (s.rows[ya].empty()) continue;
            for (int64_t yb = 1; yb <= hi; ++yb) {
                const auto& rb = s.rows[yb];
                if (rb.empty()) continue;
                uint32_t* base = N.data() + (size_t)(ya - yb + off) * Wd + off;
                for (int32_t ax : s.rows[ya])
                    for (int32_t bx : rb) ++base[ax - bx];
            }
        }

        // W plane = 1_S (*) (Qb - Qs)
        std::vector<int64_t> Wp((size_t)Wd * Wd, 0);
        {
            std::vector<int64_t> Rb(Wd), Rs(Wd);
            for (int64_t y = 1; y <= hi; ++y) {
                if (s.rows[y].empty()) continue;
                std::fill(Rb.begin(), Rb.end(), 0);
                std::fill(Rs.begin(), Rs.end(), 0);
                for (int32_t ax : s.rows[y]) {
                    for (int64_t u = 1; u <= hi; ++u) Rb[ax - u + off] += s.P1[u];
                    for (int64_t u = 1; u < lo; ++u) Rs[ax - u + off] += s.P1[u];
                }
                for (int64_t u = 1; u <= hi; ++u) {  // big box on axis 2
                    int64_t x2 = y - u;
                    if (x2 < -off || x2 > off) continue;
                    int64_t w = s.P2[u];
                    int64_t* dst = Wp.data() + (size_t)(x2 + off) * Wd;
                    for (int64_t t = 0; t < Wd; ++t) dst[t] += w * Rb[t];
                }
                for (int64_t u = 1; u < lo; ++u) {  // small box subtracts
                    int64_t x2 = y - u;
                    if (x2 < -off || x2 > off) continue;
                    int64_t w = s.P2[u];
                    int64_t* dst = Wp.data() + (size_t)(x2 + off) * Wd;
                    for (int64_t t = 0; t < Wd; ++t) dst[t] -= w * Rs[t];
                }
            }
        }

        // Z = Q (*) Q~ separable pieces
        auto cbb1 = axis_corr(s.P1, hi, hi, Wd, off);
        auto cbs1 = axis_corr(s.P1, hi, lo - 1, Wd, off);
        auto csb1 = axis_corr(s.P1, lo - 1, hi, Wd, off);
        auto css1 = axis_corr(s.P1, lo - 1, lo - 1, Wd, off);
        auto cbb2 = axis_corr(s.P2, hi, hi, Wd, off);
        auto cbs2 = axis_corr(s.P2, hi, lo - 1, Wd, off);
        auto csb2 = axis_corr(s.P2, lo - 1, hi, Wd, off);
        auto css2 = axis_corr(s.P2, lo - 1, lo - 1, Wd, off);

        // scan: per-pattern sup and exact sums
        std::array<i128, 4> best{};
        std::array<Int, 4> sums{};
        i128 at0_u = 0;
        for (int64_t dy = -off; dy <= off; ++dy) {
            const uint32_t* Nrow = N.data() + (size_t)(dy + off) * Wd;
            const int64_t* Wrow = Wp.data() + (size_t)(dy + off) * Wd;
            const int64_t* Wmrow = Wp.data() + (size_t)(-dy + off) * Wd;
            i128 partial[4] = {0, 0, 0, 0};
            int cnt = 0;
            for (int64_t dx = -off; dx <= off; ++dx) {
                i128 Z = (i128)cbb1[dx + off] * cbb2[dy + off] -
                         (i128)cbs1[dx + off] * cbs2[dy + off] -
                         (i128)csb1[dx + off] * csb2[dy + off] +
                         (i128)css1[dx + off] * css2[dy + off];
                i128 U = ((i128)Nrow[dx + off] << 96) -
                         ((i128)(Wrow[dx + off] + Wmrow[-dx + off]) << 48) + Z;
                int mask = (dx != 0 ? 1 : 0) | (dy != 0 ? 2 : 0);
                if (mask == 0) at0_u = U;
                i128 a = iabs128(U);
                if (a > best[mask]) best[mask] = a;
                partial[mask] += U;
                if (++cnt == 64) {
                    for (int m = 0; m < 4; ++m) {
                        if (partial[m] != 0) sums[m] += int_from_i128(partial[m]);
                        partial[m] = 0;
                    }
                    cnt = 0;
                }
            }
            for (int m = 0; m < 4; ++m)
                if (partial[m] != 0) sums[m] += int_from_i128(partial[m]);
        }

        // reconstruction oracle: sum_x U(x) = (2^48 n_sel - sum Q)^2
        Int sp1b = 0, sp1s = 0, sp2b = 0, sp2s = 0;
        for (int64_t u = 1; u <= hi; ++u) {
            sp1b += s.P1[u];
            sp2b += s.P2[u];
            if (u < lo) {
                sp1s += s.P1[u];
                sp2s += s.P2[u];
            }
        }
        Int sumQ = sp1b * sp2b - sp1s * sp2s;
        Int B = (Int(1) << 48) * Int((unsigned long)s.n_sel) - sumQ;
        Int total = sums[0] + sums[1] + sums[2] + sums[3];
        row.reconstruction_ok = (total == B * B);

        Rat amp(std::exp2(2.0 * (to_double(cfg.alpha) - 1.0) * (double)j));
        Rat scale = amp * amp / pow2q(96);
        row.at0 = Rat(int_from_i128(at0_u)) * scale;
        for (int m = 0; m < 4; ++m) row.sup_by_pattern[m] = Rat(int_from_i128(best[m])) * scale;
        row.total_sum = Rat(total) * scale;
        prof.rows.push_back(std::move(row));
    }
    return prof;
}

std::map<uint32_t, SparseMeasure> split_by_support_pattern(const SparseMeasure& conv) {
    std::map<uint32_t, SparseMeasure> out;
    for (const auto& [p, x] : conv.entries()) {
        uint32_t mask = 0;
        for (size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0) mask |= (1u << i);
        auto it = out.try_emplace(mask, SparseMeasure(conv.dim(), "chi")).first;
        it->second.set(p, x);
    }
    return out;
}

}  // namespace sav
