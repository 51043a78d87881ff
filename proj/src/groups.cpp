#include "sav/groups.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>
#include <unordered_set>

namespace sav {

GroupModel GroupModel::zd(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("GroupModel::zd: d in 1..3");
    GroupModel g;
    g.kind = GroupKind::Zd;
    g.zd_dim = d;
    return g;
}

GroupModel GroupModel::heis3() {
    GroupModel g;
    g.kind = GroupKind::Heis3;
    return g;
}

GroupModel GroupModel::zmod(int64_t L) {
    if (L < 2) throw std::invalid_argument("GroupModel::zmod: L >= 2");
    GroupModel g;
    g.kind = GroupKind::ZmodL;
    g.zd_dim = 1;
    g.mod_l = L;
    return g;
}

GroupModel::El GroupModel::mul(const El& a, const El& b) const {
    if (kind == GroupKind::ZmodL) return {((a[0] + b[0]) % mod_l + mod_l) % mod_l, 0, 0};
    if (kind == GroupKind::Zd) return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
}

GroupModel::El GroupModel::inv(const El& a) const {
    if (kind == GroupKind::ZmodL) return {(mod_l - a[0]) % mod_l, 0, 0};
    if (kind == GroupKind::Zd) return {-a[0], -a[1], -a[2]};
    return {-a[0], -a[1], a[0] * a[1] - a[2]};
}

std::vector<GroupModel::El> GroupModel::generators() const {
    if (kind == GroupKind::ZmodL) return {identity(), {1, 0, 0}, {mod_l - 1, 0, 0}};
    std::vector<El> gen{identity()};
    int axes = kind == GroupKind::Heis3 ? 2 : zd_dim;
    for (int i = 0; i < axes; ++i) {
        El g{0, 0, 0};
        g[i] = 1;
        gen.push_back(g);
        g[i] = -1;
        gen.push_back(g);
    }
    return gen;
}

std::string GroupModel::name() const {
    if (kind == GroupKind::Heis3) return "heis3";
    if (kind == GroupKind::ZmodL) return "zmod" + std::to_string(mod_l);
    return "z" + std::to_string(zd_dim);
}

WordBalls word_balls(const GroupModel& g, int n_max, size_t budget) {
    WordBalls wb;
    wb.model = g;
    wb.n_max = n_max;
    wb.elements.push_back(g.identity());
    wb.depth.emplace(g.identity(), 0);
    wb.ball_size.push_back(1);
    auto gens = g.generators();
    size_t frontier_begin = 0;
    for (int N = 1; N <= n_max; ++N) {
        size_t frontier_end = wb.elements.size();
        for (size_t i = frontier_begin; i < frontier_end; ++i) {
            GroupModel::El e = wb.elements[i];
            for (const auto& s : gens) {
                GroupModel::El x = g.mul(e, s);
                if (wb.depth.emplace(x, N).second) {
                    wb.elements.push_back(x);
                    if (wb.elements.size() > budget)
                        throw std::runtime_error("word_balls: element budget exceeded");
                }
            }
        }
        frontier_begin = frontier_end;
        wb.ball_size.push_back(wb.elements.size());
    }
    return wb;
}

std::vector<GroupModel::El> WordBalls::ball(int N) const {
    if (N < 0 || N > n_max) throw std::invalid_argument("WordBalls::ball: N out of range");
    return {elements.begin(), elements.begin() + (long)ball_size[N]};
}

GrowthReport word_ball_growth(const GroupModel& g, int n_max) {
    WordBalls wb = word_balls(g, n_max);
    GrowthReport rep;
    rep.sizes = wb.ball_size;
    // OLS slope of log #A^N vs log N over the top half of the range
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int N = std::max(1, n_max / 2); N <= n_max; ++N) {
        double x = std::log((double)N), y = std::log((double)wb.ball_size[N]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    double slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    rep.inferred_degree = (int)std::lround(slope);
    for (int N = 1; N <= n_max; ++N)
        rep.ratios.push_back((double)wb.ball_size[N] / std::pow((double)N, rep.inferred_degree));
    return rep;
}

GroupTempelman group_tempelman(const GroupModel& g, const std::vector<GroupModel::El>& S,
                               size_t pair_budget) {
    if (S.empty()) throw std::invalid_argument("group_tempelman: empty set");
    if (S.size() * S.size() > pair_budget)
        throw std::runtime_error("group_tempelman: pair budget exceeded");
    GroupTempelman rep;
    rep.size = (int64_t)S.size();
    std::unordered_set<GroupModel::El, ElHash> set(S.begin(), S.end());
    std::unordered_set<GroupModel::El, ElHash> diff;
    diff.reserve(S.size() * 4);
    for (const auto& a : S)
        for (const auto& b : S) diff.insert(g.mul(a, g.inv(b)));
    rep.diff_size = (int64_t)diff.size();
    rep.ratio = Rat(rep.diff_size, rep.size);
    for (const auto& s : g.generators()) {
        if (s == g.identity()) continue;
        int64_t out = 0;
        for (const auto& a : S) {
            if (!set.count(g.mul(s, a))) ++out;           // in gS \ S
            if (!set.count(g.mul(g.inv(s), a))) ++out;    // in S \ gS
        }
        rep.folner_defect.emplace_back(out, rep.size);
    }
    return rep;
}

std::string validate_group_plan(const GroupModel& g, const GroupBlockPlan& plan,
                                const WordBalls& balls) {
    if (plan.ell.empty() || plan.ell.size() != plan.shifts.size()) return "empty-plan";
    for (size_t k = 0; k < plan.ell.size(); ++k) {
        if (plan.ell[k] < 0 || plan.ell[k] > balls.n_max) return "ell-range";
        int rho = balls.rho(plan.shifts[k]);
        if (rho < 0) return "shift-outside-computed-balls";
        if (k >= 1) {
            int prev = balls.rho(plan.shifts[k - 1]);
            if (!(rho > prev + plan.ell[k - 1])) return "spacing";
            if (Rat(plan.ell[k]) < plan.C * Rat(prev)) return "ell-ge-C-rho";
        }
    }
    (void)g;
    return "";
}

std::vector<GroupModel::El> group_block_set(const GroupModel& g, const GroupBlockPlan& plan,
                                            const WordBalls& balls, int k, int r) {
    std::string bad = validate_group_plan(g, plan, balls);
    if (!bad.empty()) throw std::invalid_argument("group_block_set: plan violates " + bad);
    if (k < 0 || (size_t)k >= plan.ell.size())
        throw std::invalid_argument("group_block_set: k out of range");
    if (r < 0) throw std::invalid_argument("group_block_set: r >= 0 required");
    if (r > 0) {  // r = 0 is the complete-blocks set
        if ((size_t)(k + 1) >= plan.ell.size())
            throw std::invalid_argument("group_block_set: no block k+1 for the partial part");
        if (r > plan.ell[k + 1]) throw std::invalid_argument("group_block_set: r out of range");
    }
    std::unordered_set<GroupModel::El, ElHash> acc;
    auto add_shifted_ball = [&](const GroupModel::El& a, int radius) {
        for (const auto& e : balls.ball(radius)) acc.insert(g.mul(a, e));
    };
    for (int i = 0; i <= k; ++i) add_shifted_ball(plan.shifts[i], plan.ell[i]);
    if ((size_t)(k + 1) < plan.shifts.size() && r > 0) add_shifted_ball(plan.shifts[k + 1], r);
    std::vector<GroupModel::El> out(acc.begin(), acc.end());
    std::sort(out.begin(), out.end());
    return out;
}

GroupMeasure GroupMeasure::reflect() const {
    GroupMeasure r;
    r.model = model;
    for (const auto& [g, x] : v) r.v.emplace(model.inv(g), x);
    return r;
}

Rat GroupMeasure::l1() const {
    Rat s;
    for (const auto& [g, x] : v) s += abs(x);
    return s;
}

Rat GroupMeasure::l2_sq() const {
    Rat s;
    for (const auto& [g, x] : v) s += x * x;
    return s;
}

GroupMeasure group_convolve(const GroupMeasure& a, const GroupMeasure& b, size_t pair_budget) {
    if (a.model.kind != b.model.kind || a.model.zd_dim != b.model.zd_dim ||
        a.model.mod_l != b.model.mod_l)
        throw std::invalid_argument("group_convolve: model mismatch");
    if (a.v.size() * b.v.size() > pair_budget)
        throw std::runtime_error("group_convolve: pair budget exceeded");
    GroupMeasure r;
    r.model = a.model;
    for (const auto& [g, x] : a.v)
        for (const auto& [h, y] : b.v) r.add(a.model.mul(g, h), x * y);
    return r;
}

SparseMeasure to_sparse(const GroupMeasure& m) {
    if (m.model.kind != GroupKind::Zd) throw std::invalid_argument("to_sparse: Zd models only");
    SparseMeasure s(m.model.zd_dim, "group");
    for (const auto& [g, x] : m.v) {
        Pt p(g.begin(), g.begin() + m.model.zd_dim);
        s.set(p, x);
    }
    return s;
}

namespace {
constexpr uint64_t kGroupSalt = 0x6ab5a5c3917fd30dull;

DyadicProb rho_prob(const Rat& alpha, int rho) {
    if (rho == 0) return DyadicProb{1ull << 32};
    return DyadicProb::quantize(std::pow((double)rho, -to_double(alpha)));
}
}  // namespace

GroupRandomSample sample_group_random(const GroupModel& g, const WordBalls& balls, const Rat& alpha,
                                      long j, uint64_t seed) {
    if (sgn(alpha) <= 0 || alpha >= Rat(g.growth_degree()))
        throw std::invalid_argument("sample_group_random: alpha in (0, d) required");
    int R = 1 << j;
    if (R > balls.n_max) throw std::invalid_argument("sample_group_random: ball radius not computed");
    GroupRandomSample out;
    out.j = j;
    out.R_radius = R;
    out.amplitude = Rat(std::exp2((to_double(alpha) - g.growth_degree()) * (double)j));
    out.mu.model = out.nu.model = out.e_mu.model = g;
    for (const auto& e : balls.ball(R)) {
        DyadicProb p = rho_prob(alpha, balls.rho(e));
        Rat ep = out.amplitude * p.value();
        bool hit = p.hit(rng::hashn(seed, kGroupSalt, e.data(), 3));
        if (hit) {
            out.mu.add(e, out.amplitude);
            ++out.r_support;
        }
        out.e_mu.add(e, ep);
        out.nu.add(e, (hit ? out.amplitude : Rat(0)) - ep);
    }
    return out;
}

Rat expected_xi_mass(const GroupModel& g, const WordBalls& balls, const Rat& alpha, int N) {
    (void)g;
    Rat s;
    for (const auto& e : balls.ball(N)) s += rho_prob(alpha, balls.rho(e)).value();
    return s;
}

std::vector<Rat> sigma_radial_weights(const GroupModel& g, const WordBalls& balls, const Rat& alpha,
                                      int N) {
    (void)g;
    // w_r = value of E mu_N on the radius-r sphere; a_{n,N} picks up the
    // telescoped ball averages, normalized to total mass 1.
    std::vector<Rat> w(N + 2);
    for (int r = 0; r <= N; ++r) w[r] = rho_prob(alpha, r).value();
    w[N + 1] = 0;
    std::vector<Rat> a(N + 1);
    Rat total;
    for (int n = 0; n <= N; ++n) {
        Rat ball_n((unsigned long)balls.ball_size[n]);
        a[n] = (w[n] - w[n + 1]) * ball_n;
        total += a[n];
    }
    for (auto& an : a) an /= total;
    return a;
}

TTStarReport tt_star_norm(const GroupMeasure& nu, int M, size_t pair_budget) {
    if (M < 1 || M > 3) throw std::invalid_argument("tt_star_norm: M in {1,2,3}");
    GroupMeasure base = group_convolve(nu.reflect(), nu, pair_budget);
    GroupMeasure power = base;
    for (int i = 1; i < M; ++i) power = group_convolve(power, base, pair_budget);
    TTStarReport rep;
    rep.power_l1 = power.l1();
    rep.power_l2_sq = power.l2_sq();
    rep.op_bound = std::pow(to_double(rep.power_l1), 1.0 / (2.0 * M));
    return rep;
}

// ---------------- Z^2 dense M=1 sweep with cached P*P ----------------

std::vector<TTStarSweepRow> ttstar_zd2_sweep(const Rat& alpha, int jmin, int jmax, int seeds,
                                             uint64_t seed0, int threads) {
    std::vector<TTStarSweepRow> rows;
    for (int j = jmin; j <= jmax; ++j) {
        const int64_t R = int64_t(1) << j;
        const int64_t Wd = 4 * R + 1, off = 2 * R;  // h in [-2R, 2R]^2
        // radius-indexed 24-bit probabilities, and Var eta (exact)
        std::vector<int64_t> P24(R + 1);
        std::vector<uint64_t> thr(R + 1);
        Rat var_sum;
        for (int64_t r = 0; r <= R; ++r) {
            DyadicProb p = rho_prob(alpha, (int)r);
            P24[r] = (int64_t)(p.num32 >> 8);
            thr[r] = p.num32 >= (1ull << 32) ? ~0ull : (p.num32 << 32);
            Rat pv = p.value();
            int64_t ring = r == 0 ? 1 : 4 * r;  // l1 sphere size in Z^2
            var_sum += Rat(ring) * pv * (1 - pv);
        }

        // cached P * P~ correlation over h (seed independent)
        std::vector<int64_t> pp((size_t)Wd * Wd, 0);
        {
            int nt = std::max(1, threads);
            std::vector<std::vector<int64_t>> parts(nt);
            std::atomic<int64_t> next{-R};
            std::vector<std::thread> pool;
            for (int t = 0; t < nt; ++t)
                pool.emplace_back([&, t]() {
                    auto& plane = parts[t];
                    plane.assign((size_t)Wd * Wd, 0);
                    while (true) {
                        int64_t ya = next.fetch_add(1);
                        if (ya > R) break;
                        for (int64_t xa = -(R - std::abs(ya)); xa <= R - std::abs(ya); ++xa) {
                            int64_t pa = P24[std::abs(xa) + std::abs(ya)];
                            for (int64_t yb = -R; yb <= R; ++yb) {
                                int64_t* dst =
                                    plane.data() + (size_t)(ya - yb + off) * Wd + (xa + off);
                                int64_t w = R - std::abs(yb), ay = std::abs(yb);
                                for (int64_t xb = -w; xb <= w; ++xb)
                                    dst[-xb] += pa * P24[std::abs(xb) + ay];
                            }
                        }
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& plane : parts)
                for (size_t i = 0; i < pp.size(); ++i) pp[i] += plane[i];
        }

        TTStarSweepRow row;
        row.j = j;
        row.seeds = seeds;
        double acc_ratio = 0;
        for (int sdx = 0; sdx < seeds; ++sdx) {
            uint64_t seed = seed0 + (uint64_t)sdx;
            std::vector<std::array<int64_t, 2>> sel;
            for (int64_t y = -R; y <= R; ++y)
                for (int64_t x = -(R - std::abs(y)); x <= R - std::abs(y); ++x) {
                    int64_t el[3] = {x, y, 0};
                    uint64_t t = thr[std::abs(x) + std::abs(y)];
                    if (t == ~0ull || rng::hashn(seed, kGroupSalt, el, 3) < t) sel.push_back({x, y});
                }
            // w(h) = 2^48 N(h) - 2^24 [S(h) + S(-h)] + (P*P)(h), P in 24-bit units
            std::vector<uint32_t> N((size_t)Wd * Wd, 0);
            for (const auto& a : sel)
                for (const auto& b : sel) ++N[(size_t)(a[1] - b[1] + off) * Wd + (a[0] - b[0] + off)];
            std::vector<int64_t> S((size_t)Wd * Wd, 0);
            for (const auto& a : sel) {
                for (int64_t yb = -R; yb <= R; ++yb) {
                    int64_t w = R - std::abs(yb), ay = std::abs(yb);
                    int64_t* dst = S.data() + (size_t)(a[1] - yb + off) * Wd + (a[0] + off);
                    for (int64_t xb = -w; xb <= w; ++xb) dst[-xb] += P24[std::abs(xb) + ay];
                }
            }
            Int sum_sq;
            for (int64_t dy = -2 * R; dy <= 2 * R; ++dy)
                for (int64_t dx = -2 * R; dx <= 2 * R; ++dx) {
                    size_t i = (size_t)(dy + off) * Wd + (dx + off);
                    size_t im = (size_t)(-dy + off) * Wd + (-dx + off);
                    __int128 w = ((__int128)N[i] << 48) - ((__int128)(S[i] + S[im]) << 24) +
                                 (__int128)pp[i];
                    // accumulate w^2 exactly
                    bool neg = w < 0;
                    unsigned __int128 uw = neg ? (unsigned __int128)(-w) : (unsigned __int128)w;
                    Int wi = (Int((unsigned long)(uint64_t)(uw >> 64)) << 64) +
                             Int((unsigned long)(uint64_t)uw);
                    sum_sq += wi * wi;
                }
            // ratio = ||X~*X||_2^2 / (sum Var)^2 with X = eta (24-bit units 2^{-48} scale)
            Rat l2sq = Rat(sum_sq) / pow2q(96);
            Rat denom = var_sum * var_sum;
            acc_ratio += to_double(l2sq / denom);
        }
        row.mean_l2sq_ratio = acc_ratio / seeds;
        rows.push_back(row);
    }
    return rows;
}

ThreeColoring three_color_partition(const GroupModel& g, const std::vector<GroupModel::El>& E,
                                    const GroupModel::El& h) {
    if (h == g.identity()) throw std::invalid_argument("three_color_partition: h != e required");
    ThreeColoring out;
    out.classes.assign(3, {});
    std::set<GroupModel::El> eset(E.begin(), E.end());
    // vertices g with edge (g, hg); successors follow left multiplication
    std::set<GroupModel::El> dom;  // E cap h^{-1} E
    for (const auto& e : eset)
        if (eset.count(g.mul(h, e))) dom.insert(e);

    std::set<GroupModel::El> seen;  // vertices whose outgoing edge was colored
    for (const auto& start : dom) {
        if (seen.count(start)) continue;
        // walk back to the component's tail (or detect a cycle)
        GroupModel::El tail = start;
        bool cycle = false;
        while (true) {
            GroupModel::El prev = g.mul(g.inv(h), tail);
            if (!dom.count(prev)) break;
            if (prev == start) {
                cycle = true;
                break;
            }
            tail = prev;
        }
        // color edges along the path/cycle
        std::vector<GroupModel::El> edges;
        GroupModel::El cur = tail;
        while (dom.count(cur) && !seen.count(cur)) {
            edges.push_back(cur);
            seen.insert(cur);
            cur = g.mul(h, cur);
        }
        for (size_t i = 0; i < edges.size(); ++i) {
            int color = (int)(i % 2);
            if (cycle && i + 1 == edges.size() && (edges.size() % 2) == 1 && edges.size() > 1)
                color = 2;
            out.classes[color].push_back(edges[i]);
        }
    }
    while (!out.classes.empty() && out.classes.back().empty()) out.classes.pop_back();

    // structural validation: disjoint cover and per-class dependency disjointness
    size_t total = 0;
    std::set<GroupModel::El> covered;
    bool ok = true;
    for (const auto& cls : out.classes) {
        std::set<GroupModel::El> deps;
        for (const auto& e : cls) {
            total += 1;
            if (!covered.insert(e).second) ok = false;
            if (!deps.insert(e).second) ok = false;
            if (!deps.insert(g.mul(h, e)).second) ok = false;
        }
    }
    ok = ok && (total == dom.size());
    for (const auto& e : dom)
        if (!covered.count(e)) ok = false;
    out.valid = ok;
    return out;
}

GapProfile gap_profile_and_thin(const GroupModel& g, const std::vector<GroupModel::El>& seq,
                                const std::vector<int>& M_grid, const Rat& budget) {
    if (M_grid.empty()) throw std::invalid_argument("gap_profile_and_thin: empty grid");
    int m_max = *std::max_element(M_grid.begin(), M_grid.end());
    WordBalls nbhd = word_balls(g, m_max);
    GapProfile out;
    out.Ms = M_grid;

    // min distance to any predecessor, capped at m_max (m_max+1 means ">= cap")
    std::unordered_set<GroupModel::El, ElHash> pred;
    std::vector<int> dist(seq.size(), m_max + 1);
    for (size_t n = 0; n < seq.size(); ++n) {
        for (size_t i = 1; i < nbhd.elements.size(); ++i) {  // skip identity
            const auto& w = nbhd.elements[i];
            // rho(g_n, g_m) = ell  <=>  g_n g_m^{-1} = w with rho(w) = ell
            GroupModel::El cand = g.mul(g.inv(w), seq[n]);
            if (pred.count(cand)) {
                dist[n] = nbhd.rho(w);
                break;  // BFS order: first hit is the minimum distance
            }
        }
        pred.insert(seq[n]);
    }

    int jmax = 0;
    while ((size_t(1) << (jmax + 1)) <= seq.size()) ++jmax;
    std::vector<size_t> removed_flag(seq.size(), 0);
    Rat running;
    for (int j = 0; (size_t(1) << j) < seq.size(); ++j) {
        size_t lo = size_t(1) << j, hi = std::min(seq.size(), size_t(1) << (j + 1));
        std::vector<Rat> betas;
        for (int M : M_grid) {
            int64_t cnt = 0;
            for (size_t n = lo; n < hi; ++n)
                if (dist[n] < M) ++cnt;
            betas.emplace_back(cnt, int64_t(1) << j);
        }
        out.beta.push_back(betas);
        // largest admissible M from the grid
        int chosen = 0;
        Rat chosen_beta = 0;
        for (size_t mi = 0; mi < M_grid.size(); ++mi) {
            if (running + betas[mi] <= budget && M_grid[mi] > chosen) {
                chosen = M_grid[mi];
                chosen_beta = betas[mi];
            }
        }
        out.schedule.push_back(chosen);
        running += chosen_beta;
        if (chosen > 0)
            for (size_t n = lo; n < hi; ++n)
                if (dist[n] < chosen) removed_flag[n] = 1;
    }
    for (size_t n = 0; n < seq.size(); ++n)
        if (!removed_flag[n]) {
            out.thinned_index.push_back(n);
            out.nk_over_k.push_back((double)(n + 1) / (double)out.thinned_index.size());
        }
    return out;
}

std::vector<BanachRow> banach_density_estimate(const GroupModel& g, const WordBalls& balls,
                                               const std::vector<GroupModel::El>& F,
                                               const std::vector<int>& Ns, int shift_samples,
                                               uint64_t seed,
                                               const std::vector<GroupModel::El>& extra_shifts) {
    std::vector<BanachRow> rows;
    for (int N : Ns) {
        if (2 * N > balls.n_max)
            throw std::invalid_argument("banach_density_estimate: balls too small for 2N");
        std::unordered_set<GroupModel::El, ElHash> ballN;
        for (const auto& e : balls.ball(N)) ballN.insert(e);
        std::vector<GroupModel::El> shifts{g.identity()};
        size_t b2 = balls.ball_size[2 * N];
        for (int t = 0; t < shift_samples; ++t) {
            int64_t key[2] = {N, t};
            shifts.push_back(balls.elements[rng::hashn(seed, 0xba7ac5ull, key, 2) % b2]);
        }
        for (const auto& e : extra_shifts) shifts.push_back(e);
        Rat best;
        for (const auto& s : shifts) {
            int64_t cnt = 0;
            for (const auto& f : F)
                if (ballN.count(g.mul(s, f))) ++cnt;
            Rat r(cnt, (int64_t)balls.ball_size[N]);
            if (r > best) best = r;
        }
        rows.push_back({N, best});
    }
    return rows;
}

}  // namespace sav
