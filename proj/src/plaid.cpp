#include "sav/plaid.hpp"

#include <cmath>

namespace sav {

namespace {
constexpr uint64_t kPlaidSalt = 0x9d2c5680f1a5b3c7ull;
}

DyadicProb plaid_axis_prob(const PlaidConfig& cfg, int64_t n) {
    if (n < 1) throw std::invalid_argument("plaid_axis_prob: n >= 1 required");
    // quantize to k/2^24 so that four-factor products stay well inside 128 bits
    double p = std::pow((double)n, -to_double(cfg.alpha));
    uint64_t k = (uint64_t)(p * 16777216.0 + 0.5);
    if (k > (1ull << 24)) k = 1ull << 24;
    DyadicProb dp;
    dp.num32 = k << 8;  // stored on the common 2^-32 grid
    return dp;
}

bool plaid_axis_hit(const PlaidConfig& cfg, int axis, int64_t n) {
    DyadicProb p = plaid_axis_prob(cfg, n);
    return p.hit(rng::hash2(cfg.seed, kPlaidSalt + (uint64_t)axis, n, 0));
}

PlaidSample sample_plaid(const PlaidConfig& cfg, long j, size_t shell_budget) {
    cfg.validate();
    if (j < cfg.jmin || j > cfg.jmax) throw std::invalid_argument("sample_plaid: j out of range");
    const int64_t lo = int64_t(1) << j, hi = (int64_t(1) << (j + 1)) - 1;
    // positive-quadrant shell: all n_i in [1, hi], max n_i >= lo
    Int big = 1, small = 1;
    for (int i = 0; i < cfg.d; ++i) {
        big *= Int(hi);
        small *= Int(lo - 1);
    }
    if (big - small > Int((unsigned long)shell_budget))
        throw std::runtime_error("sample_plaid: shell budget exceeded at j=" + std::to_string(j));

    PlaidSample out;
    out.j = j;
    out.amplitude = Rat(std::exp2((double)cfg.d * (to_double(cfg.alpha) - 1.0) * (double)j));
    out.mu = SparseMeasure(cfg.d, "plaid-mu");
    out.nu = SparseMeasure(cfg.d, "plaid-nu");

    Pt n(cfg.d, 1);
    while (true) {
        int64_t norm = sup_norm(n);
        if (norm >= lo && norm <= hi) {
            bool all = true;
            Rat eprob = 1;
            for (int i = 0; i < cfg.d; ++i) {
                all = all && plaid_axis_hit(cfg, i, n[i]);
                eprob *= plaid_axis_prob(cfg, n[i]).value();
            }
            Rat e_mu = out.amplitude * eprob;
            if (all) {
                out.mu.set(n, out.amplitude);
                out.nu.set(n, out.amplitude - e_mu);
            } else {
                out.nu.set(n, -e_mu);
            }
        }
        int i = 0;
        while (i < cfg.d && ++n[i] > hi) n[i++] = 1;
        if (i == cfg.d) break;
    }
    return out;
}

}  // namespace sav
