#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sav/rational.hpp"

namespace sav {

/// Product group prod_i Z_{p_i}^m with dense complex values and a direct
/// (root-table) DFT: f^(xi) = sum_n f(n) e(sum_i n_i.xi_i / p_i).
class FiniteFieldFn {
  public:
    FiniteFieldFn(std::vector<int64_t> moduli, int m);

    size_t size() const { return v_.size(); }
    int m() const { return m_; }
    const std::vector<int64_t>& moduli() const { return mods_; }

    std::complex<double>& operator[](size_t i) { return v_[i]; }
    const std::complex<double>& operator[](size_t i) const { return v_[i]; }

    /// index <-> digit vector (factor-major, then coordinate)
    std::vector<int64_t> digits(size_t idx) const;
    size_t index(const std::vector<int64_t>& dig) const;

    FiniteFieldFn dft(size_t op_budget = 4'000'000'000ull) const;

    /// | ||f||_2^2 - |G|^{-1} ||f^||_2^2 |, for the Parseval check
    double parseval_gap(const FiniteFieldFn& hat) const;

  private:
    std::vector<int64_t> mods_;  // one prime per factor
    int m_;
    std::vector<std::complex<double>> v_;
};

/// Normalized curve measure mu' = p^{-1} sum_j delta_{(j, j^2, ..., j^m)}.
FiniteFieldFn curve_measure(int64_t p, int m);

struct WeilReport {
    int64_t p = 0;
    int m = 0;
    double max_nonzero = 0;  // max over theta != 0 of |mu'^(theta)|
    double bound = 0;        // (m-1) p^{-1/2}
    bool pass = false;
    double at_zero = 0;      // mu'^(0), should be 1
};

/// Exhaustive Weil check by streaming over all p^m frequencies (never
/// materializes the transform). threads > 1 splits the top coefficient.
WeilReport weil_check(int64_t p, int m, int threads = 2);

/// Independent brute-force oracle for small p (plain double loop).
double weil_max_bruteforce(int64_t p, int m);

struct ProductWeilReport {
    std::vector<int64_t> p;
    int m = 0;
    double max_all_nonzero = 0;       // over theta with every factor block nonzero
    double bound_all_nonzero = 0;     // (m-1)^r / prod sqrt(p_i)
    bool per_pattern_pass = false;    // |mu^| <= prod_{i: theta_i != 0} (m-1)/sqrt(p_i)
    double max_overall_nonzero = 0;   // over all theta != 0
};

/// Exhaustive product check (small p_i only): per-factor transforms are
/// combined over every zero-pattern of factor blocks.
ProductWeilReport product_weil_check(const std::vector<int64_t>& ps, int m);

/// mu_r'^(theta) equals the product of per-factor transforms; checks
/// |direct - factored| <= tol on `trials` counter-random frequencies.
bool product_factorization_check(const std::vector<int64_t>& ps, int m, int trials, uint64_t seed,
                                 double tol = 1e-12);

}  // namespace sav
