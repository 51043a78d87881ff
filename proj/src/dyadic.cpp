#include "sav/dyadic.hpp"

#include <algorithm>
#include <functional>

namespace sav {

int64_t floor_div_pow2(int64_t x, int s) {
    return x >> s;  // arithmetic shift: floor division for negatives
}

DyadicCube cube_of(const Pt& p, int s) {
    DyadicCube q;
    q.s = s;
    q.k.resize(p.size());
    for (size_t i = 0; i < p.size(); ++i) q.k[i] = floor_div_pow2(p[i], s);
    return q;
}

bool DyadicCube::contains(const Pt& p) const {
    for (size_t i = 0; i < p.size(); ++i)
        if (floor_div_pow2(p[i], s) != k[i]) return false;
    return true;
}

CZDecomposition cz_decompose(const SparseMeasure& f, const Rat& lambda) {
    if (sgn(lambda) <= 0) throw std::invalid_argument("cz_decompose: lambda > 0 required");
    const int d = f.dim();
    CZDecomposition cz(d, lambda);
    if (f.support_size() == 0) return cz;

    std::vector<std::pair<Pt, Rat>> pts;
    Rat total;
    for (const auto& [p, x] : f.entries()) {
        if (sgn(x) < 0) throw std::invalid_argument("cz_decompose: f must be nonnegative");
        pts.emplace_back(p, x);
        total += x;
    }

    // Top level: every level-S cube has mass <= ||f||_1, so avg <= lambda once
    // 2^{dS} >= ||f||_1 / lambda.
    int S = 0;
    while (pow2q((long)d * S) * lambda < total) ++S;

    // Descend: a cube arrives here only if its average is <= lambda; children
    // whose average exceeds lambda are maximal bad cubes.
    std::function<void(int, std::vector<size_t>&)> descend = [&](int s, std::vector<size_t>& idx) {
        if (s == 0 || idx.empty()) return;  // singletons with f(x) <= lambda stay good
        std::map<Pt, std::pair<Rat, std::vector<size_t>>> children;
        for (size_t i : idx) {
            Pt key = cube_of(pts[i].first, s - 1).k;
            auto& slot = children[key];
            slot.first += pts[i].second;
            slot.second.push_back(i);
        }
        for (auto& [key, slot] : children) {
            Rat avg_den = pow2q((long)d * (s - 1));  // #cells
            if (slot.first > lambda * avg_den) {
                DyadicCube q{s - 1, key};
                SparseMeasure b(d, "cz-bad");
                for (size_t i : slot.second) b.set(pts[i].first, pts[i].second);
                cz.bad.emplace_back(q, std::move(b));
            } else {
                descend(s - 1, slot.second);
            }
        }
    };

    std::map<Pt, std::vector<size_t>> top;
    for (size_t i = 0; i < pts.size(); ++i) top[cube_of(pts[i].first, S).k].push_back(i);
    for (auto& [key, idx] : top) {
        Rat mass;
        for (size_t i : idx) mass += pts[i].second;
        if (mass > lambda * pow2q((long)d * S)) {
            DyadicCube q{S, key};
            SparseMeasure b(d, "cz-bad");
            for (size_t i : idx) b.set(pts[i].first, pts[i].second);
            cz.bad.emplace_back(q, std::move(b));
        } else {
            descend(S, idx);
        }
    }
    std::sort(cz.bad.begin(), cz.bad.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    cz.g = f;
    for (const auto& [q, b] : cz.bad)
        for (const auto& [p, x] : b.entries()) cz.g.add(p, -x);
    return cz;
}

SparseMeasure CZDecomposition::reconstruct() const {
    SparseMeasure f = g;
    for (const auto& [q, b] : bad)
        for (const auto& [p, x] : b.entries()) f.add(p, x);
    return f;
}

std::string CZDecomposition::check_invariants(const SparseMeasure& f) const {
    if (!(reconstruct() == f)) return "reconstruction f = g + sum b_{s,k} failed";
    Rat bound = pow2q(d) * lambda;
    for (const auto& [p, x] : g.entries())
        if (abs(x) > bound) return "||g||_inf > 2^d lambda";
    // pairwise disjoint cubes (no nesting, no equality)
    for (size_t i = 0; i < bad.size(); ++i)
        for (size_t j = i + 1; j < bad.size(); ++j) {
            const auto& a = bad[i].first;
            const auto& b = bad[j].first;
            const auto& lo = a.s <= b.s ? a : b;
            const auto& hi = a.s <= b.s ? b : a;
            Pt up(lo.k.size());
            for (size_t t = 0; t < lo.k.size(); ++t) up[t] = floor_div_pow2(lo.k[t] << lo.s, hi.s);
            if (up == hi.k) return "bad cubes not pairwise disjoint";
        }
    Rat cells_total, l1;
    for (const auto& [q, b] : bad) {
        Rat cells = pow2q(q.cell_count_log2(d));
        cells_total += cells;
        Rat m;
        for (const auto& [p, x] : b.entries()) {
            if (!q.contains(p)) return "bad part escapes its cube";
            m += abs(x);
        }
        if (m > bound * cells) return "||b_{s,k}||_1 > 2^d lambda #Q";
    }
    for (const auto& [p, x] : f.entries()) l1 += abs(x);
    if (cells_total * lambda > pow2q(d) * l1) return "sum #Q > (2^d/lambda)||f||_1";
    return "";
}

namespace {

// exact comparison |x| > 2^(num/den)
bool above_pow2(const Rat& x, long num, long den) {
    return cmp_pow2_frac(abs(x), num, den) > 0;
}

}  // namespace

std::vector<HeightSplit> split_by_height_speckled(const CZDecomposition& cz, long j,
                                                  const Rat& gamma) {
    // threshold 2^{(d-gamma)j}
    Rat e = (Rat(cz.d) - gamma) * j;
    long num = (long)e.get_num().get_si();
    long den = (long)e.get_den().get_si();
    std::map<int, HeightSplit> by_level;
    for (const auto& [q, b] : cz.bad) {
        auto it = by_level.try_emplace(q.s, HeightSplit(q.s, cz.d)).first;
        for (const auto& [p, x] : b.entries()) {
            if (above_pow2(x, num, den))
                it->second.tall.add(p, x);
            else
                it->second.flat.add(p, x);
        }
    }
    std::vector<HeightSplit> out;
    for (auto& [s, hs] : by_level) out.push_back(std::move(hs));
    return out;
}

std::vector<HeightSplit> split_by_height_plaid(const CZDecomposition& cz, long j,
                                               const Rat& alpha, const Rat& eps,
                                               const std::vector<int>& axes_I) {
    if ((long)axes_I.size() >= cz.d)
        throw std::invalid_argument("split_by_height_plaid: I must be a proper subset of axes");
    for (int a : axes_I)
        if (a < 0 || a >= cz.d) throw std::invalid_argument("split_by_height_plaid: bad axis");
    // threshold 2^{(d - alpha(d-#I) + eps) j}
    Rat e = (Rat(cz.d) - alpha * Rat(cz.d - (long)axes_I.size()) + eps) * j;
    long num = (long)e.get_num().get_si();
    long den = (long)e.get_den().get_si();

    std::vector<bool> in_I(cz.d, false);
    for (int a : axes_I) in_I[a] = true;

    std::map<int, HeightSplit> by_level;
    for (const auto& [q, b] : cz.bad) {
        auto it = by_level.try_emplace(q.s, HeightSplit(q.s, cz.d)).first;
        // fiber key: level-j cube index plus the coordinates off I
        std::map<std::pair<Pt, Pt>, Rat> fiber_sum;
        auto key_of = [&](const Pt& p) {
            Pt perp;
            for (int t = 0; t < cz.d; ++t)
                if (!in_I[t]) perp.push_back(p[t]);
            return std::make_pair(cube_of(p, (int)j).k, perp);
        };
        for (const auto& [p, x] : b.entries()) fiber_sum[key_of(p)] += abs(x);
        for (const auto& [p, x] : b.entries()) {
            if (above_pow2(fiber_sum[key_of(p)], num, den))
                it->second.tall.add(p, x);
            else
                it->second.flat.add(p, x);
        }
    }
    std::vector<HeightSplit> out;
    for (auto& [s, hs] : by_level) out.push_back(std::move(hs));
    return out;
}

}  // namespace sav
