#include "sav/arith.hpp"

#include <algorithm>

namespace sav {

namespace {
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}
}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic Miller-Rabin base set for 64-bit
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

PrimeSchedule prime_schedule_ratio(const Rat& c, const Rat& C, int64_t p1, int count) {
    if (count < 1) throw std::invalid_argument("prime_schedule_ratio: count >= 1");
    if (!(c > 1 && C > c)) throw std::invalid_argument("prime_schedule_ratio: need 1 < c < C");
    if (!is_prime_u64(p1)) throw std::invalid_argument("prime_schedule_ratio: p1 not prime");
    PrimeSchedule s;
    s.p.push_back(p1);
    while ((int)s.p.size() < count) {
        int64_t prev = s.p.back();
        // smallest prime p with c*prev <= p < C*prev
        Rat cp = c * Rat(prev);
        Int lo_i = cp.get_num() / cp.get_den();
        int64_t lo = (int64_t)lo_i.get_si();
        if (Rat(lo) < cp) ++lo;
        int64_t p = lo;
        while (Rat(p) < C * prev && !is_prime_u64((uint64_t)p)) ++p;
        if (!(Rat(p) < C * prev))
            throw std::runtime_error("prime_schedule_ratio: no prime in [c p, C p)");
        s.p.push_back(p);
    }
    return s;
}

namespace {
// smallest prime p with 4^k < p^2 < 2*4^k, or 0
int64_t dyadic_half_prime(int k, bool* fell_back) {
    *fell_back = false;
    Int lo2 = Int(1) << (2 * k);
    Int hi2 = Int(2) << (2 * k);
    for (int64_t p = (int64_t(1) << k) + 1; Int(p) * Int(p) < hi2; ++p) {
        if (Int(p) * Int(p) > lo2 && is_prime_u64((uint64_t)p)) return p;
    }
    *fell_back = true;  // Bertrand: (2^k, 2^{k+1}) always holds a prime
    for (int64_t p = (int64_t(1) << k) + 1; p < (int64_t(1) << (k + 1)); ++p)
        if (is_prime_u64((uint64_t)p)) return p;
    return 0;
}
}  // namespace

PrimeSchedule prime_schedule_dyadic_half(int count) {
    if (count < 1) throw std::invalid_argument("prime_schedule_dyadic_half: count >= 1");
    PrimeSchedule s;
    int k = 1;
    // smallest k whose strict half-interval holds a prime
    while (true) {
        bool fb;
        int64_t p = dyadic_half_prime(k, &fb);
        if (p && !fb) break;
        ++k;
        if (k > 40) throw std::runtime_error("prime_schedule_dyadic_half: no starting k");
    }
    for (int i = 0; i < count; ++i, ++k) {
        bool fb;
        int64_t p = dyadic_half_prime(k, &fb);
        if (!p) throw std::runtime_error("prime_schedule_dyadic_half: exhausted");
        if (fb) s.fallback_k.push_back(k);
        s.p.push_back(p);
    }
    return s;
}

PrimeSchedule prime_schedule_repeated(int count, const Rat& gamma) {
    if (sgn(gamma) <= 0) throw std::invalid_argument("prime_schedule_repeated: gamma > 0");
    PrimeSchedule s;
    for (int n = 1; n <= count; ++n) {
        Rat kn = gamma * Rat(n);
        Int kf = kn.get_num() / kn.get_den();
        long k = (long)kf.get_si();
        if (Rat(k) < kn) ++k;
        if (k < 2) k = 2;
        bool fb;
        int64_t p = dyadic_half_prime((int)k, &fb);
        if (fb) s.fallback_k.push_back((int)k);
        s.p.push_back(p);
    }
    return s;
}

std::string ArithParams::validate() const {
    if (d < 1 || q < 1) return "bad-dims";
    if (primes.p.empty() || primes.p.size() != shifts.size()) return "schedule-shift-mismatch";
    for (size_t k = 0; k < primes.p.size(); ++k) {
        int64_t p = primes.p[k];
        if (!is_prime_u64((uint64_t)p)) return "not-prime";
        if (p <= m()) return "p-le-m";  // Weil degree hypothesis
        if ((int)shifts[k].size() != d) return "shift-dim";
        if (k + 1 < primes.p.size()) {
            if (Rat(primes.p[k + 1]) < ratio_c * Rat(p)) return "ratio-lower";
            if (!(Rat(primes.p[k + 1]) < ratio_C * Rat(p))) return "ratio-upper";
        }
        // |a_{k-1}| + p_{k-1}^q < |a_k| <= C p_k^q
        Int pq = 1;
        for (int i = 0; i < q; ++i) pq *= p;
        Int norm = sup_norm(shifts[k]);
        if (k >= 1) {
            Int pq_prev = 1;
            for (int i = 0; i < q; ++i) pq_prev *= primes.p[k - 1];
            if (!(Int(sup_norm(shifts[k - 1])) + pq_prev < norm)) return "shift-lower";
        }
        if (!(Rat(norm) <= ratio_C * Rat(pq))) return "shift-upper";
    }
    return "";
}

ArithParams default_arith_params(int d, int q, int blocks) {
    ArithParams a;
    a.d = d;
    a.q = q;
    a.primes = prime_schedule_dyadic_half(blocks);
    a.ratio_C = std::max(Rat(4), pow2q(q + 1));
    // a_k = (2^{q(k0+k+1)}, 0, ..., 0) with k0 = floor(log2 p_0)
    int k0 = 1;
    while ((int64_t)a.primes.p[0] >= (int64_t(1) << (k0 + 1))) ++k0;
    for (int k = 0; k < blocks; ++k) {
        Pt s(d, 0);
        s[0] = int64_t(1) << (int64_t)(q * (k0 + k + 1));
        a.shifts.push_back(s);
    }
    std::string bad = a.validate();
    if (!bad.empty()) throw std::runtime_error("default_arith_params: violates " + bad);
    return a;
}

Pt curve_point(int64_t p, int q, int d, int64_t j) {
    Pt x(d, 0);
    // powers j^t mod p for t = 1..qd
    int64_t jm = ((j % p) + p) % p;
    int64_t pw = 1;
    std::vector<int64_t> powers(q * d + 1, 0);
    for (int t = 1; t <= q * d; ++t) {
        pw = (t == 1) ? jm : (int64_t)((unsigned __int128)pw * jm % p);
        powers[t] = pw;
    }
    for (int a = 0; a < d; ++a) {
        int64_t coord = 0, scale = 1;
        for (int i = 1; i <= q; ++i) {
            coord += scale * powers[a * q + i];
            scale *= p;
        }
        x[a] = coord;
    }
    return x;
}

std::vector<Pt> build_arith_block(const ArithParams& params, int k) {
    std::string bad = params.validate();
    if (!bad.empty()) throw std::invalid_argument("build_arith_block: params violate " + bad);
    if (k < 0 || (size_t)k >= params.primes.p.size())
        throw std::invalid_argument("build_arith_block: k out of range");
    int64_t p = params.primes.p[k];
    std::vector<Pt> block;
    block.reserve(p);
    for (int64_t j = 0; j < p; ++j)
        block.push_back(pt_add(params.shifts[k], curve_point(p, params.q, params.d, j)));
    return block;
}

std::vector<Pt> arith_enumeration(const ArithParams& params, size_t count) {
    std::vector<Pt> seq;
    for (size_t k = 0; k < params.primes.p.size() && seq.size() < count; ++k) {
        auto block = build_arith_block(params, (int)k);
        for (auto& pt : block) {
            if (seq.size() == count) break;
            seq.push_back(std::move(pt));
        }
    }
    if (seq.size() < count)
        throw std::runtime_error("arith_enumeration: schedule too short for requested count");
    return seq;
}

}  // namespace sav
