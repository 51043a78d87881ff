#include "sav/finfield.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sav/arith.hpp"
#include "sav/rng.hpp"

namespace sav {

FiniteFieldFn::FiniteFieldFn(std::vector<int64_t> moduli, int m) : mods_(std::move(moduli)), m_(m) {
    if (mods_.empty() || m < 1) throw std::invalid_argument("FiniteFieldFn: bad group");
    size_t n = 1;
    for (int64_t p : mods_) {
        if (p < 2) throw std::invalid_argument("FiniteFieldFn: bad modulus");
        for (int i = 0; i < m_; ++i) {
            if (n > (size_t)4'000'000 / (size_t)p)
                throw std::runtime_error("FiniteFieldFn: group too large to materialize");
            n *= (size_t)p;
        }
    }
    v_.assign(n, {0.0, 0.0});
}

std::vector<int64_t> FiniteFieldFn::digits(size_t idx) const {
    std::vector<int64_t> d(mods_.size() * m_);
    for (size_t f = 0; f < mods_.size(); ++f)
        for (int i = 0; i < m_; ++i) {
            d[f * m_ + i] = (int64_t)(idx % (size_t)mods_[f]);
            idx /= (size_t)mods_[f];
        }
    return d;
}

size_t FiniteFieldFn::index(const std::vector<int64_t>& dig) const {
    size_t idx = 0, scale = 1;
    for (size_t f = 0; f < mods_.size(); ++f)
        for (int i = 0; i < m_; ++i) {
            int64_t p = mods_[f];
            int64_t c = ((dig[f * m_ + i] % p) + p) % p;
            idx += (size_t)c * scale;
            scale *= (size_t)p;
        }
    return idx;
}

FiniteFieldFn FiniteFieldFn::dft(size_t op_budget) const {
    size_t n = v_.size();
    if (n * n > op_budget) throw std::runtime_error("FiniteFieldFn::dft: op budget exceeded");
    // per-factor root tables
    std::vector<std::vector<std::complex<double>>> roots;
    for (int64_t p : mods_) {
        std::vector<std::complex<double>> r(p);
        for (int64_t k = 0; k < p; ++k) {
            double t = 2.0 * std::numbers::pi * (double)k / (double)p;
            r[k] = {std::cos(t), std::sin(t)};
        }
        roots.push_back(std::move(r));
    }
    FiniteFieldFn out(mods_, m_);
    std::vector<std::vector<int64_t>> dig(n);
    for (size_t i = 0; i < n; ++i) dig[i] = digits(i);
    for (size_t xi = 0; xi < n; ++xi) {
        std::complex<double> acc{0, 0};
        const auto& dxi = dig[xi];
        for (size_t x = 0; x < n; ++x) {
            if (v_[x] == std::complex<double>{0, 0}) continue;
            std::complex<double> w{1, 0};
            const auto& dx = dig[x];
            for (size_t f = 0; f < mods_.size(); ++f) {
                int64_t p = mods_[f];
                int64_t phase = 0;
                for (int i = 0; i < m_; ++i) phase = (phase + dx[f * m_ + i] * dxi[f * m_ + i]) % p;
                w *= roots[f][phase];
            }
            acc += v_[x] * w;
        }
        out[xi] = acc;
    }
    return out;
}

double FiniteFieldFn::parseval_gap(const FiniteFieldFn& hat) const {
    double a = 0, b = 0;
    for (const auto& z : v_) a += std::norm(z);
    for (size_t i = 0; i < hat.size(); ++i) b += std::norm(hat[i]);
    return std::fabs(a - b / (double)v_.size());
}

FiniteFieldFn curve_measure(int64_t p, int m) {
    FiniteFieldFn f({p}, m);
    std::vector<int64_t> dig(m);
    for (int64_t j = 0; j < p; ++j) {
        int64_t v = 1;  // dig[i] = j^{i+1} mod p
        for (int i = 0; i < m; ++i) {
            v = (int64_t)((unsigned __int128)v * (uint64_t)j % (uint64_t)p);
            dig[i] = v;
        }
        f[f.index(dig)] += std::complex<double>{1.0 / (double)p, 0.0};
    }
    return f;
}

// Streaming exhaustive Weil check. Frequencies are grouped by true degree
// `deg` (top nonzero coefficient); for each fixed (theta_deg..theta_2) the
// linear coefficient runs innermost with an incremental phase update.
WeilReport weil_check(int64_t p, int m, int threads) {
    if (!is_prime_u64((uint64_t)p)) throw std::invalid_argument("weil_check: p must be prime");
    if (p <= m) throw std::invalid_argument("weil_check: requires p > m (Weil hypothesis)");
    WeilReport rep;
    rep.p = p;
    rep.m = m;
    rep.bound = (double)(m - 1) / std::sqrt((double)p);
    rep.at_zero = 1.0;

    std::vector<double> tre(p), tim(p);
    for (int64_t k = 0; k < p; ++k) {
        double t = 2.0 * std::numbers::pi * (double)k / (double)p;
        tre[k] = std::cos(t);
        tim[k] = std::sin(t);
    }
    // powers[t][j] = j^t mod p, t = 1..m
    std::vector<std::vector<int32_t>> powers(m + 1, std::vector<int32_t>(p));
    for (int64_t j = 0; j < p; ++j) {
        int64_t v = 1;
        for (int t = 1; t <= m; ++t) {
            v = (int64_t)((unsigned __int128)v * (uint64_t)j % (uint64_t)p);
            powers[t][j] = (int32_t)v;
        }
    }

    auto scan_block = [&](int deg, int64_t top) {
        // theta_deg = top fixed; theta_{deg-1}..theta_2 odometer; theta_1 inner
        double best2 = 0;
        std::vector<int64_t> mid(std::max(0, deg - 2), 0);
        std::vector<int32_t> acc(p);
        while (true) {
            for (int64_t j = 0; j < p; ++j) {
                int64_t a = (int64_t)top * powers[deg][j] % p;
                for (int t = 2; t < deg; ++t) a = (a + mid[t - 2] * powers[t][j]) % p;
                acc[j] = (int32_t)a;
            }
            for (int64_t th1 = 0; th1 < p; ++th1) {
                // four independent partial sums keep the FP adds off the
                // critical path
                double r0 = 0, r1 = 0, r2 = 0, r3 = 0, i0 = 0, i1 = 0, i2 = 0, i3 = 0;
                int64_t j = 0;
                if (th1 == 0) {
                    for (; j + 4 <= p; j += 4) {
                        r0 += tre[acc[j]];
                        i0 += tim[acc[j]];
                        r1 += tre[acc[j + 1]];
                        i1 += tim[acc[j + 1]];
                        r2 += tre[acc[j + 2]];
                        i2 += tim[acc[j + 2]];
                        r3 += tre[acc[j + 3]];
                        i3 += tim[acc[j + 3]];
                    }
                    for (; j < p; ++j) {
                        r0 += tre[acc[j]];
                        i0 += tim[acc[j]];
                    }
                } else {
                    const int32_t pp = (int32_t)p;
                    auto step = [&](int64_t u, double& rr, double& ii) {
                        int32_t a = acc[u] + (int32_t)u;
                        if (a >= pp) a -= pp;
                        acc[u] = a;
                        rr += tre[a];
                        ii += tim[a];
                    };
                    for (; j + 4 <= p; j += 4) {
                        step(j, r0, i0);
                        step(j + 1, r1, i1);
                        step(j + 2, r2, i2);
                        step(j + 3, r3, i3);
                    }
                    for (; j < p; ++j) step(j, r0, i0);
                }
                double sre = (r0 + r1) + (r2 + r3), sim = (i0 + i1) + (i2 + i3);
                double n2 = sre * sre + sim * sim;
                if (n2 > best2) best2 = n2;
            }
            // odometer on mid digits; acc is rebuilt at loop top
            size_t i = 0;
            while (i < mid.size() && ++mid[i] == p) mid[i++] = 0;
            if (i == mid.size()) break;
        }
        return best2;
    };

    double best2 = 0;  // |sum|^2, unnormalized
    // deg = 1: complete linear sums vanish; start at deg = 2
    for (int deg = 2; deg <= m; ++deg) {
        std::vector<double> worst(p, 0.0);
        std::atomic<int64_t> next{1};
        int nt = std::max(1, threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    int64_t top = next.fetch_add(1);
                    if (top >= p) break;
                    worst[top] = scan_block(deg, top);
                }
            });
        for (auto& th : pool) th.join();
        for (int64_t top = 1; top < p; ++top) best2 = std::max(best2, worst[top]);
    }
    rep.max_nonzero = std::sqrt(best2) / (double)p;
    rep.pass = rep.max_nonzero <= rep.bound + 1e-9;
    return rep;
}

double weil_max_bruteforce(int64_t p, int m) {
    size_t n = 1;
    for (int i = 0; i < m; ++i) n *= (size_t)p;
    double best2 = 0;
    std::vector<int64_t> theta(m, 0);
    for (size_t idx = 1; idx < n; ++idx) {
        size_t t = idx;
        for (int i = 0; i < m; ++i) {
            theta[i] = (int64_t)(t % (size_t)p);
            t /= (size_t)p;
        }
        double sre = 0, sim = 0;
        for (int64_t j = 0; j < p; ++j) {
            int64_t ph = 0, v = 1;
            for (int i = 0; i < m; ++i) {
                v = (int64_t)((unsigned __int128)v * (uint64_t)j % (uint64_t)p);
                ph = (ph + theta[i] * v) % p;
            }
            double a = 2.0 * std::numbers::pi * (double)ph / (double)p;
            sre += std::cos(a);
            sim += std::sin(a);
        }
        best2 = std::max(best2, sre * sre + sim * sim);
    }
    return std::sqrt(best2) / (double)p;
}

ProductWeilReport product_weil_check(const std::vector<int64_t>& ps, int m) {
    ProductWeilReport rep;
    rep.p = ps;
    rep.m = m;
    size_t total = 1;
    for (int64_t p : ps) {
        size_t pm = 1;
        for (int i = 0; i < m; ++i) pm *= (size_t)p;
        if (total > 40'000'000 / pm) throw std::runtime_error("product_weil_check: too large");
        total *= pm;
    }
    // per-factor transforms |mu_p^(theta_i)|
    std::vector<std::vector<std::complex<double>>> hats;
    for (int64_t p : ps) {
        FiniteFieldFn mu = curve_measure(p, m);
        FiniteFieldFn h = mu.dft();
        std::vector<std::complex<double>> v(h.size());
        for (size_t i = 0; i < h.size(); ++i) v[i] = h[i];
        hats.push_back(std::move(v));
    }
    rep.bound_all_nonzero = 1.0;
    for (int64_t p : ps) rep.bound_all_nonzero *= (double)(m - 1) / std::sqrt((double)p);
    rep.per_pattern_pass = true;
    std::vector<size_t> idx(ps.size(), 0);
    std::vector<size_t> sizes;
    for (size_t f = 0; f < ps.size(); ++f) sizes.push_back(hats[f].size());
    while (true) {
        bool all_zero = true, all_nonzero = true;
        double mag = 1.0, bound = 1.0;
        for (size_t f = 0; f < ps.size(); ++f) {
            mag *= std::abs(hats[f][idx[f]]);
            if (idx[f] == 0) {
                all_nonzero = false;
            } else {
                all_zero = false;
                bound *= (double)(m - 1) / std::sqrt((double)ps[f]);
            }
        }
        if (!all_zero) {
            if (mag > bound + 1e-9) rep.per_pattern_pass = false;
            rep.max_overall_nonzero = std::max(rep.max_overall_nonzero, mag);
            if (all_nonzero) rep.max_all_nonzero = std::max(rep.max_all_nonzero, mag);
        }
        size_t f = 0;
        while (f < ps.size() && ++idx[f] == sizes[f]) idx[f++] = 0;
        if (f == ps.size()) break;
    }
    return rep;
}

bool product_factorization_check(const std::vector<int64_t>& ps, int m, int trials, uint64_t seed,
                                 double tol) {
    // direct transform of the product measure vs product of factor transforms
    for (int t = 0; t < trials; ++t) {
        std::vector<std::vector<int64_t>> theta;
        for (size_t f = 0; f < ps.size(); ++f) {
            std::vector<int64_t> th(m);
            for (int i = 0; i < m; ++i)
                th[i] =
                    (int64_t)(rng::hashn(seed, 77 + f, std::vector<int64_t>{t, i}.data(), 2) %
                              (uint64_t)ps[f]);
            theta.push_back(std::move(th));
        }
        std::complex<double> factored{1, 0};
        for (size_t f = 0; f < ps.size(); ++f) {
            std::complex<double> s{0, 0};
            int64_t p = ps[f];
            for (int64_t j = 0; j < p; ++j) {
                int64_t ph = 0, v = 1;
                for (int i = 0; i < m; ++i) {
                    v = (int64_t)((unsigned __int128)v * (uint64_t)j % (uint64_t)p);
                    ph = (ph + theta[f][i] * v) % p;
                }
                double a = 2.0 * std::numbers::pi * (double)ph / (double)p;
                s += std::complex<double>{std::cos(a), std::sin(a)};
            }
            factored *= s / (double)p;
        }
        // direct: sum over the product curve (j_1, ..., j_r)
        std::complex<double> direct{0, 0};
        std::vector<int64_t> js(ps.size(), 0);
        double norm = 1;
        for (int64_t p : ps) norm *= (double)p;
        while (true) {
            double phase = 0;
            for (size_t f = 0; f < ps.size(); ++f) {
                int64_t p = ps[f], ph = 0, v = 1;
                for (int i = 0; i < m; ++i) {
                    v = (int64_t)((unsigned __int128)v * (uint64_t)js[f] % (uint64_t)p);
                    ph = (ph + theta[f][i] * v) % p;
                }
                phase += (double)ph / (double)p;
            }
            double a = 2.0 * std::numbers::pi * phase;
            direct += std::complex<double>{std::cos(a), std::sin(a)};
            size_t f = 0;
            while (f < ps.size() && ++js[f] == ps[f]) js[f++] = 0;
            if (f == ps.size()) break;
        }
        direct /= norm;
        if (std::abs(direct - factored) > tol) return false;
    }
    return true;
}

}  // namespace sav
