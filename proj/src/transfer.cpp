#include "sav/transfer.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_set>

#include "sav/arith.hpp"
#include "sav/rng.hpp"
#include "sav/smoothing.hpp"

namespace sav {

Pt freiman_collapse(int64_t p, int q, int d, const std::vector<int64_t>& j) {
    if ((int)j.size() != q * d) throw std::invalid_argument("freiman_collapse: m != qd");
    Pt n(d, 0);
    for (int a = 0; a < d; ++a) {
        int64_t scale = 1, c = 0;
        for (int i = 0; i < q; ++i) {
            c += scale * j[a * q + i];
            scale *= p;
        }
        n[a] = c;
    }
    return n;
}

bool freiman_bijective_check(int64_t p, int q, int d) {
    const int m = q * d;
    size_t total = 1;
    for (int i = 0; i < m; ++i) {
        if (total > 100'000'000 / (size_t)p)
            throw std::runtime_error("freiman_bijective_check: too large");
        total *= (size_t)p;
    }
    std::unordered_set<int64_t> seen;
    seen.reserve(total * 2);
    std::vector<int64_t> j(m, 0);
    int64_t pq = 1;
    for (int i = 0; i < q; ++i) pq *= p;
    while (true) {
        Pt n = freiman_collapse(p, q, d, j);
        int64_t key = 0;
        for (int a = 0; a < d; ++a) {
            if (n[a] < 0 || n[a] >= pq) return false;  // must land in [0, p^q-1]^d
            key = key * pq + n[a];
        }
        if (!seen.insert(key).second) return false;  // injectivity
        int i = 0;
        while (i < m && ++j[i] == p) j[i++] = 0;
        if (i == m) break;
    }
    return seen.size() == total;
}

SparseMeasure gamma1_apply(int64_t p, int q, int d, const SparseMeasure& f_on_zpm) {
    const int m = q * d;
    if (f_on_zpm.dim() != m) throw std::invalid_argument("gamma1_apply: f dimension != m");
    SparseMeasure out(m, "gamma1");
    // lifts of each support point to [-p, 2p-1]^m: j_i in {x_i - p, x_i, x_i + p}
    for (const auto& [x, v] : f_on_zpm.entries()) {
        std::vector<int> t(m, 0);  // 0,1,2 -> offset -p, 0, +p
        while (true) {
            Pt j(m);
            Rat phi = 1;
            for (int i = 0; i < m; ++i) {
                j[i] = x[i] + ((int64_t)t[i] - 1) * p;
                if (j[i] < -p || j[i] > 2 * p - 1) {
                    phi = 0;
                    break;
                }
                phi *= trapezoid_phi(p, j[i]);
            }
            if (sgn(phi) != 0) out.add(j, phi * v);
            int i = 0;
            while (i < m && ++t[i] == 3) t[i++] = 0;
            if (i == m) break;
        }
    }
    return out;
}

SparseMeasure gamma2_apply(int64_t p, int q, int d, const SparseMeasure& g_on_zm) {
    if (g_on_zm.dim() != q * d) throw std::invalid_argument("gamma2_apply: g dimension != m");
    SparseMeasure out(d, "gamma2");
    for (const auto& [j, v] : g_on_zm.entries()) {
        std::vector<int64_t> jj(j.begin(), j.end());
        out.add(freiman_collapse(p, q, d, jj), v);
    }
    return out;
}

SparseMeasure mu_triple(int64_t p, int q, int d) {
    const int m = q * d;
    SparseMeasure mu_prime(m, "mu-prime");
    for (int64_t j = 0; j < p; ++j) {
        Pt x(m);
        int64_t v = 1;
        for (int i = 0; i < m; ++i) {
            v = (int64_t)((unsigned __int128)v * (uint64_t)j % (uint64_t)p);
            x[i] = v;
        }
        mu_prime.add(x, Rat(1, p));
    }
    return gamma2_apply(p, q, d, gamma1_apply(p, q, d, mu_prime));
}

Rat nu_triple_l1(int64_t p, int q, int d) {
    // Gamma_1 nu' is the nonnegative separable function prod_i phi(j_i)/p, so
    // the collapsed l1 norm is ((sum_j phi(j))/p)^{qd} exactly.
    Rat sum_phi = 0;
    for (int64_t j = -p; j <= 2 * p - 1; ++j) sum_phi += trapezoid_phi(p, j);
    Rat axis = sum_phi / Rat(p);
    Rat out = 1;
    for (int i = 0; i < q * d; ++i) out *= axis;
    return out;
}

bool mu_triple_majorizes(int64_t p, int q, int d) {
    SparseMeasure mu3 = mu_triple(p, q, d);
    Rat pm = 1;
    for (int i = 0; i < q * d; ++i) pm *= Rat(p);
    Rat floor_val = 1 / pm;
    for (int64_t j = 0; j < p; ++j) {
        Pt n = curve_point(p, q, d, j);
        if (mu3.at(n) < floor_val) return false;
    }
    return true;
}

FourierIdentityReport gamma_fourier_identity(int64_t p, int q, int d, int samples, uint64_t seed) {
    const int m = q * d;
    size_t total = 1;
    for (int i = 0; i < m; ++i) {
        if (total > 3'000'000 / (size_t)(3 * p))
            throw std::runtime_error("gamma_fourier_identity: group too large");
        total *= (size_t)p;
    }
    // counter-random complex f on Z_p^m, materialize Gamma_1 f on lifts
    struct Entry {
        std::vector<int64_t> j;
        std::complex<double> v;
    };
    std::vector<Entry> g1;
    std::vector<int64_t> x(m, 0);
    while (true) {
        uint64_t h = rng::hashn(seed, 0xf00dull, x.data(), m);
        std::complex<double> fv{rng::to_unit(h) - 0.5, rng::to_unit(rng::mix(h)) - 0.5};
        std::vector<int> t(m, 0);
        while (true) {
            std::vector<int64_t> j(m);
            double phi = 1;
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                j[i] = x[i] + ((int64_t)t[i] - 1) * p;
                if (j[i] < -p || j[i] > 2 * p - 1) {
                    ok = false;
                    break;
                }
                phi *= to_double(trapezoid_phi(p, j[i]));
            }
            if (ok && phi != 0.0) g1.push_back({j, fv * phi});
            int i = 0;
            while (i < m && ++t[i] == 3) t[i++] = 0;
            if (i == m) break;
        }
        int i = 0;
        while (i < m && ++x[i] == p) x[i++] = 0;
        if (i == m) break;
    }

    // materialize Gamma_2 Gamma_1 f (fibers summed) for the left-hand side
    std::map<Pt, std::complex<double>> collapsed;
    for (const auto& e : g1) collapsed[freiman_collapse(p, q, d, e.j)] += e.v;

    FourierIdentityReport rep;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> theta(d);
        for (int a = 0; a < d; ++a) {
            int64_t key[2] = {s, a};
            theta[a] = rng::to_unit(rng::hashn(seed ^ 0xabcd, 3, key, 2));
        }
        std::complex<double> lhs{0, 0}, rhs{0, 0};
        for (const auto& [n, v] : collapsed) {
            double ph = 0;
            for (int a = 0; a < d; ++a) ph += theta[a] * (double)n[a];
            ph = 2.0 * std::numbers::pi * std::fmod(ph, 1.0);
            lhs += v * std::complex<double>{std::cos(ph), std::sin(ph)};
        }
        for (const auto& e : g1) {
            double ph = 0;  // theta_lift = (theta_1, theta_1 p, ..., theta_d p^{q-1})
            for (int a = 0; a < d; ++a) {
                double scale = 1;
                for (int i = 0; i < q; ++i) {
                    ph += theta[a] * scale * (double)e.j[a * q + i];
                    scale *= (double)p;
                }
            }
            ph = 2.0 * std::numbers::pi * std::fmod(ph, 1.0);
            rhs += e.v * std::complex<double>{std::cos(ph), std::sin(ph)};
        }
        rep.max_gap = std::max(rep.max_gap, std::abs(lhs - rhs));
    }
    return rep;
}

}  // namespace sav
