#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sav {

using Int = mpz_class;

/// Exact rational; unlike raw mpq_class, the two-argument constructor
/// canonicalizes, so Rat(26, 202) == Rat(13, 101).
class Rat : public mpq_class {
  public:
    Rat() : mpq_class() {}
    Rat(const Rat&) = default;
    Rat(Rat&&) = default;
    Rat& operator=(const Rat&) = default;
    Rat& operator=(Rat&&) = default;
    template <typename A>
    Rat(const A& a) : mpq_class(a) {}
    template <typename A, typename B>
    Rat(const A& a, const B& b) : mpq_class(a, b) {
        canonicalize();
    }
};

// 2^e as an exact rational, e may be negative.
inline Rat pow2q(long e) {
    Rat r;
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), Rat(1).get_mpq_t(), (unsigned long)e);
    } else {
        mpq_div_2exp(r.get_mpq_t(), Rat(1).get_mpq_t(), (unsigned long)(-e));
    }
    return r;
}

// Parses a plain decimal string ("0.8", "-1.25", "3") to an exact rational.
inline Rat rat_from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_decimal: empty string");
    std::string t = s;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
        neg = (t[0] == '-');
        t = t.substr(1);
    }
    auto dot = t.find('.');
    std::string digits = (dot == std::string::npos) ? t : t.substr(0, dot) + t.substr(dot + 1);
    size_t frac = (dot == std::string::npos) ? 0 : t.size() - dot - 1;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("rat_from_decimal: not a decimal: " + s);
    Int num(digits, 10);
    Int den(1);
    for (size_t i = 0; i < frac; ++i) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

// sign of (x - 2^(a/b)), b > 0, exact. Used for thresholds with rational exponents.
inline int cmp_pow2_frac(const Rat& x, long a, long b) {
    if (b <= 0) throw std::invalid_argument("cmp_pow2_frac: b must be positive");
    if (sgn(x) <= 0) return -1;  // 2^(a/b) > 0
    // x ? 2^(a/b)  <=>  x^b ? 2^a
    Rat xb;
    mpz_pow_ui(xb.get_num().get_mpz_t(), x.get_num().get_mpz_t(), (unsigned long)b);
    mpz_pow_ui(xb.get_den().get_mpz_t(), x.get_den().get_mpz_t(), (unsigned long)b);
    return cmp(xb, pow2q(a));
}

inline double to_double(const Rat& x) { return x.get_d(); }

}  // namespace sav
