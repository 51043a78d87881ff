#include "sav/oscillation.hpp"

#include <cmath>
#include <numbers>

namespace sav {

namespace {

std::complex<double> eitau(double x) {  // e(x) = e^{2 pi i x}
    double a = 2.0 * std::numbers::pi * x;
    return {std::cos(a), std::sin(a)};
}

// D_L(t) = sum_{n=0}^{L-1} e(n t)
std::complex<double> dirichlet(int64_t L, double t) {
    double frac = t - std::floor(t);
    if (frac < 1e-15 || frac > 1 - 1e-15) return {(double)L, 0.0};
    return (eitau(frac * (double)L) - 1.0) / (eitau(frac) - 1.0);
}

int64_t pow_i64(int64_t b, int e) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

BlockCursor block_cursor(const ArithParams& params, int64_t N) {
    if (N < 1) throw std::invalid_argument("block_cursor: N >= 1");
    BlockCursor c;
    int64_t left = N;
    for (size_t k = 0; k < params.primes.p.size(); ++k) {
        if (left < params.primes.p[k]) {
            c.k = (int)k;
            c.j = left;
            return c;
        }
        left -= params.primes.p[k];
        if (left == 0) {
            c.k = (int)k;
            c.j = params.primes.p[k];
            return c;
        }
    }
    throw std::invalid_argument("block_cursor: N exceeds schedule coverage");
}

std::complex<double> mu_hat(const ArithParams& params, int64_t N, const std::vector<double>& theta) {
    BlockCursor cur = block_cursor(params, N);
    std::complex<double> s{0, 0};
    for (int k = 0; k <= cur.k; ++k) {
        int64_t p = params.primes.p[k];
        int64_t jmax = (k == cur.k) ? cur.j : p;
        for (int64_t j = 0; j < jmax; ++j) {
            Pt n = pt_add(params.shifts[k], curve_point(p, params.q, params.d, j));
            double ph = 0;
            for (int a = 0; a < params.d; ++a) ph += theta[a] * (double)n[a];
            s += eitau(std::fmod(ph, 1.0));
        }
    }
    return s / (double)N;
}

std::complex<double> nu_hat(const ArithParams& params, int64_t N, const std::vector<double>& theta) {
    // nu_N = (1/N) [ j(N) p_{k(N)}^{-m} 1_{[0, p^q-1]^d} + sum_{k < k(N)} p_k^{1-m} 1_{[0, p_k^q-1]^d} ]
    BlockCursor cur = block_cursor(params, N);
    const int m = params.m();
    std::complex<double> s{0, 0};
    for (int k = 0; k <= cur.k; ++k) {
        int64_t p = params.primes.p[k];
        int64_t L = pow_i64(p, params.q);
        std::complex<double> box{1, 0};
        for (int a = 0; a < params.d; ++a) box *= dirichlet(L, theta[a]);
        double weight;
        if (k == cur.k)
            weight = (double)cur.j / std::pow((double)p, m);
        else
            weight = std::pow((double)p, 1 - m);
        s += weight * box;
    }
    return s / (double)N;
}

std::vector<OscGridRow> osc_supdiff_rows(const ArithParams& params, const std::vector<int>& blocks,
                                         int grid_res) {
    std::vector<OscGridRow> rows;
    const int d = params.d;
    for (int kb : blocks) {
        int64_t N = 0;
        for (int k = 0; k <= kb; ++k) N += params.primes.p[k];
        OscGridRow row;
        row.N = N;
        std::vector<double> theta(d, 0.0);
        std::vector<int> idx(d, 0);
        std::vector<double> prev_abs;
        while (true) {
            for (int a = 0; a < d; ++a) theta[a] = (double)idx[a] / (double)grid_res;
            auto mh = mu_hat(params, N, theta);
            auto nh = nu_hat(params, N, theta);
            row.sup_diff = std::max(row.sup_diff, std::abs(mh - nh));
            int a = 0;
            while (a < d && ++idx[a] == grid_res) idx[a++] = 0;
            if (a == d) break;
        }
        // measured gradient of |nu^| along axis 0 on the grid
        for (int i = 0; i + 1 < grid_res; ++i) {
            std::vector<double> t0(d, 0.0), t1(d, 0.0);
            t0[0] = (double)i / grid_res;
            t1[0] = (double)(i + 1) / grid_res;
            double g = std::abs(std::abs(nu_hat(params, N, t1)) - std::abs(nu_hat(params, N, t0))) *
                       grid_res;
            row.max_grad_nu = std::max(row.max_grad_nu, g);
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

// integral over the sup-norm box [-c, c]^d of e(w . theta)
double box_kernel(const Pt& w, double c) {
    double v = 1;
    for (int64_t wi : w) {
        if (wi == 0)
            v *= 2 * c;
        else
            v *= std::sin(2.0 * std::numbers::pi * c * (double)wi) / (std::numbers::pi * (double)wi);
    }
    return v;
}

}  // namespace

std::vector<double> vt_telescoping(const ArithParams& params, const SparseMeasure& f,
                                   const std::vector<int64_t>& ts) {
    if (ts.size() < 2) throw std::invalid_argument("vt_telescoping: need at least two times");
    // cutoff half-width for time t: 1 / p_{k(t)}
    std::vector<double> cs;
    for (int64_t t : ts) cs.push_back(1.0 / (double)params.primes.p[block_cursor(params, t).k]);
    for (size_t i = 1; i < cs.size(); ++i)
        if (cs[i] > cs[i - 1] + 1e-15)
            throw std::invalid_argument("vt_telescoping: times must have nonincreasing cutoffs");
    std::vector<double> out;
    for (size_t n = 1; n < ts.size(); ++n) {
        // || (V_{t_{n-1}} - V_{t_n}) f ||_2^2 = sum_{u,v} f(u) f(v) (K_{c_{n-1}} - K_{c_n})(u - v)
        double acc = 0;
        for (const auto& [u, fu] : f.entries())
            for (const auto& [v, fv] : f.entries()) {
                Pt w = pt_sub(u, v);
                acc += to_double(fu) * to_double(fv) * (box_kernel(w, cs[n - 1]) - box_kernel(w, cs[n]));
            }
        out.push_back(acc);
    }
    return out;
}

double fmult_sum_sup(const ArithParams& params, const std::vector<int64_t>& lacunary_I,
                     int grid_res) {
    const int d = params.d;
    double best = 0;
    std::vector<int> idx(d, 0);
    std::vector<double> theta(d);
    while (true) {
        bool skip_zero = true;
        for (int a = 0; a < d; ++a) {
            theta[a] = (double)idx[a] / (double)grid_res;
            if (idx[a] != 0) skip_zero = false;
        }
        if (!skip_zero) {
            double sum = 0;
            double norm = 0;
            for (int a = 0; a < d; ++a) {
                double fr = std::min(theta[a], 1.0 - theta[a]);
                norm = std::max(norm, fr);
            }
            for (int64_t t : lacunary_I) {
                double c = 1.0 / (double)params.primes.p[block_cursor(params, t).k];
                double vt = (norm <= c) ? 1.0 : 0.0;
                sum += std::abs(nu_hat(params, t, theta) - vt);
            }
            best = std::max(best, sum);
        }
        int a = 0;
        while (a < d && ++idx[a] == grid_res) idx[a++] = 0;
        if (a == d) break;
    }
    return best;
}

}  // namespace sav
