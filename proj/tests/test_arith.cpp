#include <doctest.h>

#include <cmath>

#include "sav/arith.hpp"
#include "sav/finfield.hpp"
#include "sav/oscillation.hpp"
#include "sav/smoothing.hpp"
#include "sav/transfer.hpp"

using namespace sav;

TEST_CASE("prime schedules") {
    auto dh = prime_schedule_dyadic_half(4);
    CHECK(dh.p == std::vector<int64_t>{5, 11, 17, 37});  // k = 2,3,4,5
    CHECK(dh.fallback_k.empty());

    auto ratio = prime_schedule_ratio(Rat(2), Rat(4), 5, 3);
    CHECK(ratio.p[0] == 5);
    CHECK(ratio.p[1] == 11);  // smallest prime in [10, 20)
    CHECK(ratio.p[2] == 23);  // smallest prime in [22, 44)

    auto rep = prime_schedule_repeated(6, Rat(1, 2));
    REQUIRE(rep.p.size() == 6);
    CHECK(rep.p[0] == rep.p[1]);  // k = ceil(n/2) repeats
}

TEST_CASE("curve points: digit formula") {
    CHECK(curve_point(5, 1, 2, 3) == Pt{3, 4});        // ([3]_5, [9]_5)
    CHECK(curve_point(3, 2, 1, 2) == Pt{5});           // [2]_3 + 3 [4]_3 = 2 + 3
    for (int64_t p : {3, 5, 7})
        for (int q : {1, 2})
            for (int d : {1, 2}) CHECK(curve_point(p, q, d, 0) == Pt(d, 0));
}

TEST_CASE("arith blocks: size, first-coordinate order at q=1, shell disjointness") {
    ArithParams params = default_arith_params(2, 1, 5);
    CHECK(params.validate().empty());
    int64_t prev_max = -1;
    for (int k = 0; k < 5; ++k) {
        auto block = build_arith_block(params, k);
        CHECK((int64_t)block.size() == params.primes.p[k]);
        // q=1: first coordinate strictly increasing within the block
        for (size_t j = 1; j < block.size(); ++j) CHECK(block[j][0] > block[j - 1][0]);
        // blocks pairwise disjoint by norm shells
        int64_t lo = INT64_MAX, hi = -1;
        for (const auto& pt : block) {
            lo = std::min(lo, sup_norm(pt));
            hi = std::max(hi, sup_norm(pt));
        }
        CHECK(lo > prev_max);
        prev_max = hi;
    }
    // enumeration ordering by block then j
    auto en = arith_enumeration(params, 17);
    CHECK((int64_t)en.size() == 17);
    CHECK(en[5] == build_arith_block(params, 1)[0]);
    CHECK_THROWS(arith_enumeration(params, 1'000'000));
}

TEST_CASE("weil: m=2 Gauss magnitudes, exhaustive small sweep") {
    WeilReport rep = weil_check(7, 2, 2);
    CHECK(rep.pass);
    CHECK(std::fabs(rep.max_nonzero - 1.0 / std::sqrt(7.0)) < 1e-12);
    CHECK(std::fabs(rep.max_nonzero - weil_max_bruteforce(7, 2)) < 1e-12);

    WeilReport r3 = weil_check(11, 3, 2);
    CHECK(r3.pass);
    CHECK(r3.max_nonzero <= 2.0 / std::sqrt(11.0) + 1e-12);
    CHECK(std::fabs(r3.max_nonzero - weil_max_bruteforce(11, 3)) < 1e-12);

    CHECK_THROWS(weil_check(3, 4, 1));  // p <= m violates the theorem hypothesis
}

TEST_CASE("finite field fn: DFT, Parseval, uniform measure transform") {
    FiniteFieldFn mu = curve_measure(7, 2);
    FiniteFieldFn hat = mu.dft();
    CHECK(mu.parseval_gap(hat) < 1e-9);
    CHECK(std::abs(hat[0] - std::complex<double>{1, 0}) < 1e-12);  // mu'^(0) = 1

    // nu' uniform: transform is the indicator of zero
    FiniteFieldFn nu({5}, 2);
    for (size_t i = 0; i < nu.size(); ++i) nu[i] = {1.0 / 25.0, 0.0};
    FiniteFieldFn nhat = nu.dft();
    CHECK(std::abs(nhat[0] - std::complex<double>{1, 0}) < 1e-12);
    for (size_t i = 1; i < nhat.size(); ++i) CHECK(std::abs(nhat[i]) < 1e-12);
}

TEST_CASE("product weil: per-pattern bounds and the all-nonzero maximum") {
    ProductWeilReport rep = product_weil_check({5, 7}, 2);
    CHECK(rep.per_pattern_pass);
    CHECK(std::fabs(rep.max_all_nonzero - 1.0 / std::sqrt(35.0)) < 1e-12);
    CHECK(std::fabs(rep.bound_all_nonzero - 1.0 / std::sqrt(35.0)) < 1e-12);
    // overall nonzero max is the single-factor Gauss magnitude, not the product
    CHECK(std::fabs(rep.max_overall_nonzero - 1.0 / std::sqrt(5.0)) < 1e-12);

    CHECK(product_factorization_check({5, 7, 11}, 2, 100, 1234));
}

TEST_CASE("trapezoid and psi-hat pieces") {
    for (int64_t p : {11, 13}) {
        CHECK(trapezoid_phi(p, 0) == 1);
        CHECK(trapezoid_phi(p, p - 1) == 1);
        CHECK(trapezoid_phi(p, -p) == 0);
        CHECK(trapezoid_phi(p, (-p - 1) / 2) == 0);
        CHECK(trapezoid_phi(p, 3 * (p - 1) / 2) == 0);
        // ramps are between 0 and 1 and symmetric in mass
        Rat s;
        for (int64_t n = -p; n <= 2 * p - 1; ++n) {
            Rat v = trapezoid_phi(p, n);
            CHECK(v >= 0);
            CHECK(v <= 1);
            s += v;
        }
        CHECK(s == Rat(3 * p - 2, 2));  // closed form used by nu''' l1
    }
    CHECK_THROWS(trapezoid_phi(10, 0));

    PsiL1Report rep = smoothing_psi_l1(11, 1.0 / 22.0);
    CHECK(rep.xi0_term <= 3 * 11 + 1e-9);
    CHECK(rep.psi_hat_l1 / 11.0 == rep.ratio_to_p);
    // ||Delta^2 Phi||_1 decreases in p (measured at eta = 1/(2p))
    double prev = 1e9;
    for (int64_t p : {11, 31, 61, 127, 199}) {
        double v = smoothing_psi_l1(p, 1.0 / (2.0 * (double)p)).delta2_phi_l1;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("freiman map and transfer operators") {
    CHECK(freiman_bijective_check(3, 2, 1));  // [0,2]^2 -> [0,8]
    CHECK(freiman_bijective_check(5, 2, 2));
    // q=1: F is the identity on coordinates
    for (int64_t j : {0, 1, 2}) {
        std::vector<int64_t> v{j, 2 * j};
        CHECK(freiman_collapse(7, 1, 2, v) == Pt{j, 2 * j});
    }
    CHECK(mu_triple_majorizes(11, 1, 2));
    CHECK(mu_triple_majorizes(11, 2, 1));
    // nu''' l1 = ((3p-2)/2p)^m <= 3^m
    Rat l1 = nu_triple_l1(11, 2, 2);
    Rat axis = Rat(3 * 11 - 2, 2 * 11);
    CHECK(l1 == axis * axis * axis * axis);
    CHECK(l1 <= Rat(81));
    auto fid = gamma_fourier_identity(7, 2, 1, 40, 5);
    CHECK(fid.max_gap < 1e-9);
}

TEST_CASE("gamma1 on the curve measure keeps phi=1 at canonical lifts") {
    int64_t p = 5;
    int q = 2, d = 1, m = 2;
    SparseMeasure mu_prime(m);
    for (int64_t j = 0; j < p; ++j) {
        Pt x(m);
        int64_t v = 1;
        for (int i = 0; i < m; ++i) {
            v = (v * j) % p;
            x[i] = v;
        }
        mu_prime.add(x, Rat(1, p));
    }
    SparseMeasure g1 = gamma1_apply(p, q, d, mu_prime);
    // canonical lift [0,p-1]^m has phi = 1, value 1/p
    for (const auto& [x, v] : mu_prime.entries()) CHECK(g1.at(x) >= v);
    SparseMeasure mu3 = gamma2_apply(p, q, d, g1);
    CHECK(mu3 == mu_triple(p, q, d));
}

TEST_CASE("oscillation: mass normalization and telescoping") {
    ArithParams params = default_arith_params(2, 1, 5);
    int64_t N2 = params.primes.p[0] + params.primes.p[1];
    std::vector<double> zero{0.0, 0.0};
    CHECK(std::abs(mu_hat(params, N2, zero) - std::complex<double>{1, 0}) < 1e-12);
    CHECK(std::abs(nu_hat(params, N2, zero) - std::complex<double>{1, 0}) < 1e-12);

    // disjoint frequency supports: sum of telescoped square norms <= ||f||_2^2
    SparseMeasure f(2);
    f.set({0, 0}, Rat(1, 2));
    f.set({3, -1}, Rat(1, 3));
    f.set({-2, 5}, Rat(-1, 5));
    std::vector<int64_t> ts;
    int64_t acc = 0;
    for (int k = 0; k < 5; ++k) {
        acc += params.primes.p[k];
        ts.push_back(acc);
    }
    auto pieces = vt_telescoping(params, f, ts);
    double total = 0;
    for (double x : pieces) {
        CHECK(x >= -1e-12);
        total += x;
    }
    CHECK(total <= to_double(measure_stats(f).l2_sq) + 1e-9);

    // measured sup|mu^ - nu^| decreasing across complete blocks
    for (int d : {1, 2}) {
        auto rows = osc_supdiff_rows(default_arith_params(d, 1, 4), {0, 1, 2}, 32);
        CHECK(rows[1].sup_diff < rows[0].sup_diff);
        CHECK(rows[2].sup_diff < rows[1].sup_diff);
    }

    // fmult assertion: grid sup of the sum over a lacunary set stays modest
    std::vector<int64_t> I;
    acc = 0;
    for (int k = 0; k < 5; ++k) {
        acc += params.primes.p[k];
        I.push_back(acc);
    }
    double s = fmult_sum_sup(params, I, 16);
    CHECK(s < 50.0);
    CHECK(s > 0.0);
}
