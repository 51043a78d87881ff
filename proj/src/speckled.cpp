#include "sav/speckled.hpp"

#include <cmath>
#include <functional>

namespace sav {

namespace {
constexpr uint64_t kSpeckleSalt = 0x53b6c0ff33d1e5ceull;

long shell_of(int64_t norm) {
    long j = 0;
    while ((int64_t(1) << (j + 1)) <= norm) ++j;
    return j;
}
}  // namespace

DyadicProb speckled_shell_prob(const SpeckledConfig& cfg, long j) {
    double p = std::exp2(-to_double(cfg.gamma) * (double)j);
    return DyadicProb::quantize(p);
}

bool speckled_hit(const SpeckledConfig& cfg, const Pt& n) {
    int64_t norm = sup_norm(n);
    if (norm == 0) return false;
    DyadicProb p = speckled_shell_prob(cfg, shell_of(norm));
    return p.hit(rng::hashn(cfg.seed, kSpeckleSalt, n.data(), (int)n.size()));
}

Int shell_count(int d, long j) {
    auto box = [&](Int r) {
        Int side = 2 * r + 1, c = 1;
        for (int i = 0; i < d; ++i) c *= side;
        return c;
    };
    return box(Int((int64_t(1) << (j + 1)) - 1)) - box(Int((int64_t(1) << j) - 1));
}

void for_each_ring_point(int d, int64_t r, const std::function<void(const Pt&)>& fn) {
    // lexicographic walk of {|n| = r}
    Pt p(d);
    std::function<void(int, bool)> rec = [&](int axis, bool pinned) {
        if (axis == d) {
            fn(p);
            return;
        }
        if (axis == d - 1 && !pinned) {
            p[axis] = -r;
            rec(axis + 1, true);
            p[axis] = r;
            rec(axis + 1, true);
            return;
        }
        for (int64_t c = -r; c <= r; ++c) {
            p[axis] = c;
            rec(axis + 1, pinned || c == r || c == -r);
        }
    };
    if (r == 0) {
        Pt z(d, 0);
        fn(z);
        return;
    }
    rec(0, false);
}

SpeckledSample sample_speckled(const SpeckledConfig& cfg, long j, size_t shell_budget) {
    cfg.validate();
    if (j < cfg.jmin || j > cfg.jmax) throw std::invalid_argument("sample_speckled: j out of range");
    Int cells = shell_count(cfg.d, j);
    if (cells > Int((unsigned long)shell_budget))
        throw std::runtime_error("sample_speckled: shell budget exceeded at j=" + std::to_string(j));

    SpeckledSample out;
    out.j = j;
    out.p = speckled_shell_prob(cfg, j);
    if (out.p.zero()) throw std::runtime_error("sample_speckled: probability underflow");
    Rat e_mu = pow2q(-(long)cfg.d * j);
    out.amplitude = e_mu / out.p.value();
    out.mu = SparseMeasure(cfg.d, "speckled-mu");
    out.nu = SparseMeasure(cfg.d, "speckled-nu");
    for (int64_t r = int64_t(1) << j; r < (int64_t(1) << (j + 1)); ++r) {
        for_each_ring_point(cfg.d, r, [&](const Pt& n) {
            bool hit = out.p.hit(rng::hashn(cfg.seed, kSpeckleSalt, n.data(), cfg.d));
            if (hit) {
                out.mu.set(n, out.amplitude);
                out.nu.set(n, out.amplitude - e_mu);
            } else {
                out.nu.set(n, -e_mu);
            }
        });
    }
    return out;
}

std::vector<Pt> enumerate_speckled(const SpeckledConfig& cfg, size_t count, int64_t radius_budget) {
    cfg.validate();
    std::vector<Pt> seq;
    seq.reserve(count);
    for (int64_t r = 1; (size_t)seq.size() < count; ++r) {
        if (r > radius_budget)
            throw std::runtime_error("enumerate_speckled: radius budget exhausted before count");
        DyadicProb p = speckled_shell_prob(cfg, shell_of(r));
        for_each_ring_point(cfg.d, r, [&](const Pt& n) {
            if (seq.size() < count && p.hit(rng::hashn(cfg.seed, kSpeckleSalt, n.data(), cfg.d)))
                seq.push_back(n);
        });
    }
    return seq;
}

}  // namespace sav
