#include "sav/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace sav {

void IntervalSet::add(int64_t lo, int64_t hi) {
    if (lo > hi) return;
    iv_.emplace_back(lo, hi);
    std::sort(iv_.begin(), iv_.end());
    std::vector<std::pair<int64_t, int64_t>> merged;
    for (auto& [l, h] : iv_) {
        if (!merged.empty() && l <= merged.back().second + 1)
            merged.back().second = std::max(merged.back().second, h);
        else
            merged.emplace_back(l, h);
    }
    iv_ = std::move(merged);
}

int64_t IntervalSet::size() const {
    int64_t n = 0;
    for (auto& [l, h] : iv_) n += h - l + 1;
    return n;
}

IntervalSet IntervalSet::difference_set() const {
    IntervalSet d;
    for (auto& [l1, h1] : iv_)
        for (auto& [l2, h2] : iv_) d.add(l1 - h2, h1 - l2);
    return d;
}

bool IntervalSet::contains_set(const IntervalSet& o) const {
    for (auto& [l, h] : o.iv_) {
        bool ok = false;
        for (auto& [L, H] : iv_)
            if (L <= l && h <= H) ok = true;
        if (!ok) return false;
    }
    return true;
}

std::string BlockPlan::validate() const {
    for (const BlockAxis* ax : {&x, &y}) {
        size_t n = ax->u.size();
        if (n != ax->a.size() || n == 0) return "empty-axis";
        for (size_t k = 0; k + 1 < n; ++k)
            if (ax->u[k + 1] < ax->u[k] + ax->a[k]) return "wellspaced";
        for (size_t k = 1; k < n; ++k)
            if (Rat(ax->a[k]) < regularity_C * Rat(ax->u[k - 1])) return "regularity";
        // growingblocks: prefix-sum ratios monotone decreasing, final below threshold
        Rat prev;
        int64_t prefix = 0;
        for (size_t k = 0; k < n; ++k) {
            if (k >= 1) {
                Rat ratio(prefix, ax->a[k]);
                if (k >= 2 && ratio >= prev) return "growingblocks";
                prev = ratio;
                if (k + 1 == n && ratio >= growth_threshold) return "growingblocks";
            }
            prefix += ax->a[k];
        }
    }
    return "";
}

BlockPlan generate_block_plan(int k_count, const Rat& rho, const Rat& C) {
    if (k_count < 2) throw std::invalid_argument("generate_block_plan: k_count >= 2");
    BlockAxis ax;
    int64_t u = 1, a = 1;
    ax.u.push_back(u);
    ax.a.push_back(a);
    for (int k = 2; k <= k_count; ++k) {
        u = u + 2 * a;
        // a_k = ceil(rho k^2 a_{k-1}), floored at C u_k which is > C u_{k-1}
        Rat want = rho * Rat(k) * Rat(k) * Rat(a);
        Rat reg_floor = C * Rat(u);
        Int cand = want.get_num() / want.get_den() + 1;
        Int reg = reg_floor.get_num() / reg_floor.get_den() + 1;
        Int pick = cand > reg ? cand : reg;
        a = (int64_t)pick.get_si();
        ax.u.push_back(u);
        ax.a.push_back(a);
    }
    BlockPlan plan;
    plan.x = ax;
    plan.y = ax;
    plan.regularity_C = C;
    std::string bad = plan.validate();
    if (!bad.empty()) throw std::runtime_error("generate_block_plan: generated plan violates " + bad);
    return plan;
}

IntervalSet intermediate_set(const BlockAxis& axis, int k, int64_t r) {
    if (k < 1 || (size_t)k > axis.u.size()) throw std::invalid_argument("intermediate_set: k out of range");
    if (r < 1 || r > axis.a[k - 1]) throw std::invalid_argument("intermediate_set: r out of range");
    IntervalSet s;
    for (int i = 0; i < k - 1; ++i) s.add(axis.u[i] + 1, axis.u[i] + axis.a[i]);
    s.add(axis.u[k - 1] + 1, axis.u[k - 1] + r);
    return s;
}

namespace {
struct PtHash {
    size_t operator()(const Pt& p) const {
        size_t h = 1469598103934665603ull;
        for (int64_t c : p) {
            h ^= (size_t)c + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};
}  // namespace

TempelmanReport tempelmen_report_impl(const std::vector<Pt>& F) {
    if (F.empty()) throw std::invalid_argument("tempelman_folner_report: empty set");
    TempelmanReport rep;
    rep.size = (int64_t)F.size();
    std::unordered_set<Pt, PtHash> fs(F.begin(), F.end());
    std::unordered_set<Pt, PtHash> diff;
    diff.reserve(F.size() * 2);
    for (const Pt& a : F)
        for (const Pt& b : F) diff.insert(pt_sub(a, b));
    rep.diff_size = (int64_t)diff.size();
    rep.ratio = Rat(rep.diff_size, rep.size);
    int d = (int)F[0].size();
    for (int i = 0; i < d; ++i) {
        for (int sign : {+1, -1}) {
            Pt g(d, 0);
            g[i] = sign;
            int64_t sym = 0;
            for (const Pt& a : F) {
                if (!fs.count(pt_add(a, g))) ++sym;  // in gF \ F
                if (!fs.count(pt_sub(a, g))) ++sym;  // in F \ gF
            }
            rep.folner_defect.emplace_back(sym, rep.size);
        }
    }
    return rep;
}

TempelmanReport tempelman_folner_report(const std::vector<Pt>& F) {
    return tempelmen_report_impl(F);
}

TempelmanReport tempelman_folner_report(const IntervalSet& F) {
    if (F.size() == 0) throw std::invalid_argument("tempelman_folner_report: empty set");
    TempelmanReport rep;
    rep.size = F.size();
    IntervalSet d = F.difference_set();
    rep.diff_size = d.size();
    rep.ratio = Rat(rep.diff_size, rep.size);
    // Folner defect for g=+-1: #(F+g \ F) counted from interval endpoints
    for (int sign : {+1, -1}) {
        IntervalSet shifted;
        for (auto& [l, h] : F.intervals()) shifted.add(l + sign, h + sign);
        // |A delta B| = |A| + |B| - 2|A cap B|; compute intersection size
        int64_t inter = 0;
        size_t i = 0, j = 0;
        const auto& A = F.intervals();
        const auto& B = shifted.intervals();
        while (i < A.size() && j < B.size()) {
            int64_t lo = std::max(A[i].first, B[j].first);
            int64_t hi = std::min(A[i].second, B[j].second);
            if (lo <= hi) inter += hi - lo + 1;
            (A[i].second < B[j].second ? i : j)++;
        }
        rep.folner_defect.emplace_back(2 * (F.size() - inter), rep.size);
    }
    return rep;
}

// ---------- divergence witness ----------

std::string WitnessPlan::validate() const {
    size_t n = w.size();
    if (n == 0 || n != a.size()) return "empty-plan";
    Int sumsq = 0;
    for (size_t k = 0; k < n; ++k) {
        if (w[k] < 2) return "condition-1-square";           // need a genuine 2-d square
        if (a[k] < 2 * w[k] * w[k]) return "condition-2-l2-le-a";
        if (k >= 1) {
            Int rhs = 2 * sumsq;
            if (w[k] <= rhs * rhs) return "condition-3-growth";
            // |a_{k}| > |a_{k-1}| + l_{k-1}: (a_k - a_{k-1})^2 > 2 w_{k-1}^2
            Int da = a[k] - a[k - 1];
            if (da <= 0 || da * da <= 2 * w[k - 1] * w[k - 1]) return "spacing";
            // l_k >= C |a_{k-1}| with C = 1: 2 w_k^2 >= a_{k-1}^2
            if (2 * w[k] * w[k] < a[k - 1] * a[k - 1]) return "l-ge-C-a";
        }
        sumsq += w[k] * w[k];
    }
    return "";
}

WitnessPlan generate_witness_plan(int k_max, const Int& w1) {
    WitnessPlan p;
    Int sumsq = 0;
    for (int k = 0; k < k_max; ++k) {
        Int wk = (k == 0) ? w1 : Int(4 * sumsq * sumsq + 1);
        p.w.push_back(wk);
        p.a.push_back(2 * wk * wk);
        sumsq += wk * wk;
    }
    std::string bad = p.validate();
    if (!bad.empty()) throw std::runtime_error("generate_witness_plan: violates " + bad);
    return p;
}

std::vector<WitnessRow> divergence_witness(const WitnessPlan& plan, int k_max) {
    std::string bad = plan.validate();
    if (!bad.empty()) throw std::invalid_argument("divergence_witness: plan violates " + bad);
    if (k_max < 1 || (size_t)k_max > plan.w.size())
        throw std::invalid_argument("divergence_witness: k_max out of range");
    std::vector<WitnessRow> rows;
    Int sum_w = 0, sum_sq = 0;
    for (int k = 1; k <= k_max; ++k) {
        const Int& wk = plan.w[k - 1];
        const Int& ak = plan.a[k - 1];
        // ball with r_k^2 = a_k^2 + w_k^2 keeps exactly the left face of block k:
        // earlier blocks must sit fully inside, deeper columns fully outside.
        Int rk2 = ak * ak + wk * wk;
        for (int i = 0; i < k - 1; ++i) {
            Int far = (plan.a[i] + plan.w[i] - 1);
            Int far2 = far * far + (plan.w[i] - 1) * (plan.w[i] - 1);
            if (far2 > rk2) throw std::runtime_error("divergence_witness: ball misses block");
        }
        if (2 * ak + 1 <= wk * wk)
            throw std::runtime_error("divergence_witness: ball reaches past left face");
        WitnessRow row;
        row.k = k;
        row.left_face_avg = Rat(sum_w + wk, sum_sq + wk);
        row.left_face_bound = Rat(wk, sum_sq + wk);
        sum_w += wk;
        sum_sq += wk * wk;
        row.block_end_avg = Rat(sum_w, sum_sq);
        rows.push_back(row);
    }
    return rows;
}

// ---------- corners-first ----------

std::string CornersFirstPlan::validate() const {
    size_t n = w.size();
    if (n == 0 || n != a.size() || d < 1) return "empty-plan";
    for (size_t k = 0; k < n; ++k) {
        if (w[k] < 1) return "block-size";
        if (k >= 1) {
            // |a_k| > |a_{k-1}| + l_{k-1} with diagonal shifts, Euclidean lengths:
            // sqrt(d) a_k > sqrt(d) a_{k-1} + sqrt(d) w_{k-1}  <=>  a_k > a_{k-1} + w_{k-1}
            if (a[k] <= a[k - 1] + w[k - 1]) return "spacing";
            if (w[k] < a[k - 1]) return "l-ge-C-a";
        }
    }
    return "";
}

CornersFirstPlan generate_corners_plan(int d, int k_count) {
    CornersFirstPlan p;
    p.d = d;
    int64_t a = 4, w = 4;
    for (int k = 0; k < k_count; ++k) {
        p.w.push_back(w);
        p.a.push_back(a);
        int64_t na = a + 2 * w;
        w = std::max<int64_t>(na, 2 * w);
        a = na + w;
    }
    std::string bad = p.validate();
    if (!bad.empty()) throw std::runtime_error("generate_corners_plan: violates " + bad);
    return p;
}

std::vector<CornersFirstRow> corners_first_check(const CornersFirstPlan& plan,
                                                 const std::vector<int64_t>& radii) {
    std::string bad = plan.validate();
    if (!bad.empty()) throw std::invalid_argument("corners_first_check: plan violates " + bad);
    const int d = plan.d;
    std::vector<CornersFirstRow> rows;
    for (int64_t r : radii) {
        // gather S cap B_r exactly (Euclidean ball)
        std::vector<Pt> pts;
        for (size_t k = 0; k < plan.w.size(); ++k) {
            std::vector<int64_t> idx(d, 0);
            while (true) {
                int64_t norm2 = 0;
                for (int i = 0; i < d; ++i) {
                    int64_t c = plan.a[k] + idx[i];
                    norm2 += c * c;
                }
                if (norm2 <= r * r) {
                    Pt p(d);
                    for (int i = 0; i < d; ++i) p[i] = plan.a[k] + idx[i];
                    pts.push_back(p);
                }
                int i = 0;
                while (i < d && ++idx[i] >= plan.w[k]) idx[i++] = 0;
                if (i == d) break;
            }
            if (pts.size() > 6000) throw std::runtime_error("corners_first_check: budget exceeded");
        }
        if (pts.empty()) continue;  // r below the first prism: skip
        TempelmanReport rep = tempelman_folner_report(pts);
        rows.push_back({r, rep.size, rep.diff_size, rep.ratio});
    }
    return rows;
}

UnrestrictedCount unrestricted_divergence_count(int64_t n) {
    if (n < 1) throw std::invalid_argument("unrestricted_divergence_count: n >= 1 required");
    Int total = 0;
    // divisor-sum in O(sqrt n) blocks
    for (int64_t r = 1; r <= n;) {
        int64_t q = n / r;
        int64_t rmax = n / q;
        total += Int(q) * Int(rmax - r + 1);
        r = rmax + 1;
    }
    UnrestrictedCount out;
    out.count = total;
    out.ratio_to_nlogn = n == 1 ? 0.0 : total.get_d() / ((double)n * std::log((double)n));
    return out;
}

}  // namespace sav
