#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sav/lattice.hpp"

namespace sav {

bool is_prime_u64(uint64_t n);

struct PrimeSchedule {
    std::vector<int64_t> p;
    std::vector<int> fallback_k;  // dyadic-half indices where (2^k, 2^{k+1/2}) was empty
};

/// Greedy smallest primes with c p_k <= p_{k+1} < C p_k.
PrimeSchedule prime_schedule_ratio(const Rat& c, const Rat& C, int64_t p1, int count);

/// Smallest prime in (2^k, 2^{k+1/2}) (checked as 4^k < p^2 < 2*4^k), starting
/// at the smallest k where the interval holds a prime; falls back to
/// (2^k, 2^{k+1}) with a warning entry when empty.
PrimeSchedule prime_schedule_dyadic_half(int count);

/// p_k ~ 2^{gamma k} by repeating dyadic-half terms: term n uses k = ceil(gamma n).
PrimeSchedule prime_schedule_repeated(int count, const Rat& gamma);

struct ArithParams {
    int d = 2;
    int q = 1;  // m = qd
    PrimeSchedule primes;
    std::vector<Pt> shifts;  // a_k, same length as primes
    Rat ratio_c = Rat(3, 2), ratio_C = 4;

    int m() const { return d * q; }
    std::string validate() const;  // "" or violated condition
};

/// Default instance: dyadic-half primes and shifts a_k = (2^{q(k0+k+1)}, 0, ...).
ArithParams default_arith_params(int d, int q, int blocks);

/// x_{p,j}: coordinate a = sum_{i=1..q} p^{i-1} [j^{aq+i}]_p.
Pt curve_point(int64_t p, int q, int d, int64_t j);

/// S_k = { a_k + x_{p_k, j} : 0 <= j < p_k }, ordered by j.
std::vector<Pt> build_arith_block(const ArithParams& params, int k);

/// Concatenated block enumeration (block order, j order within a block).
std::vector<Pt> arith_enumeration(const ArithParams& params, size_t count);

}  // namespace sav
