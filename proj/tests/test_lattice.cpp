#include <doctest.h>

#include <sstream>

#include "sav/dyadic.hpp"
#include "sav/lattice.hpp"
#include "sav/rng.hpp"

using namespace sav;

namespace {
SparseMeasure rnd_measure(uint64_t seed, int tag, int d, int max_pts, bool nonneg) {
    SparseMeasure m(d, "rnd");
    int64_t key[1] = {tag};
    int n = 1 + (int)(rng::hashn(seed, 7, key, 1) % (uint64_t)max_pts);
    for (int i = 0; i < n; ++i) {
        Pt p(d);
        for (int c = 0; c < d; ++c) {
            int64_t k[3] = {tag, i, c};
            p[c] = (int64_t)(rng::hashn(seed, 8, k, 3) % 31) - 15;
        }
        int64_t k[2] = {tag, i};
        int64_t num = (int64_t)(rng::hashn(seed, 9, k, 2) % 17) - 8;
        if (nonneg) num = num < 0 ? -num : num;
        if (num) m.add(p, Rat(num, 1 + (int64_t)(rng::hashn(seed, 10, k, 2) % 9)));
    }
    return m;
}
}  // namespace

TEST_CASE("convolution: delta identities") {
    SparseMeasure d0(2);
    d0.set({0, 0}, 1);
    CHECK(convolve(d0, d0) == d0);

    SparseMeasure du(2), dv(2), dw(2);
    du.set({1, 2}, 1);
    dv.set({3, -1}, 1);
    dw.set({4, 1}, 1);
    CHECK(convolve(du, dv) == dw);
}

TEST_CASE("convolution: half-half example") {
    SparseMeasure a(1);
    a.set({0}, Rat(1, 2));
    a.set({1}, Rat(1, 2));
    SparseMeasure c = convolve(a, a);
    CHECK(c.at({0}) == Rat(1, 4));
    CHECK(c.at({1}) == Rat(1, 2));
    CHECK(c.at({2}) == Rat(1, 4));
    CHECK(c.support_size() == 3);
}

TEST_CASE("convolution: dimension mismatch and budget errors") {
    SparseMeasure a(1), b(2);
    a.set({0}, 1);
    b.set({0, 0}, 1);
    CHECK_THROWS(convolve(a, b));
    SparseMeasure big(1);
    for (int i = 0; i < 100; ++i) big.set({i}, 1);
    CHECK_THROWS(convolve(big, big, 100));
}

TEST_CASE("measure_stats examples") {
    SparseMeasure d0(2);
    d0.set({0, 0}, 1);
    MeasureStats s = measure_stats(d0);
    CHECK(s.l1 == 1);
    CHECK(s.l2_sq == 1);
    CHECK(s.linf == 1);
    CHECK(s.linf_punctured == 0);
    CHECK(s.support_size == 1);

    SparseMeasure a(2);
    a.set({0, 0}, 1);
    a.set({1, 0}, -1);
    MeasureStats t = measure_stats(a);
    CHECK(t.l1 == 2);
    CHECK(t.l2_sq == 2);
    CHECK(t.linf_punctured == 1);
}

TEST_CASE("convolution properties on random measures") {
    for (int t = 0; t < 25; ++t) {
        int d = 1 + t % 2;
        SparseMeasure a = rnd_measure(5, 3 * t, d, 6, false);
        SparseMeasure b = rnd_measure(5, 3 * t + 1, d, 6, false);
        SparseMeasure c = rnd_measure(5, 3 * t + 2, d, 6, false);
        CHECK(convolve(a, b) == convolve(b, a));
        CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
        // (a * a~)(0) = ||a||_2^2
        CHECK(convolve(a, a.reflect()).at(Pt(d, 0)) == measure_stats(a).l2_sq);
        // reflection
        CHECK(a.reflect().reflect() == a);
        CHECK(measure_stats(a.reflect()).l1 == measure_stats(a).l1);
        CHECK(convolve(a, b).reflect() == convolve(b.reflect(), a.reflect()));
    }
}

TEST_CASE("jsonl round trip") {
    SparseMeasure a = rnd_measure(11, 4, 2, 8, false);
    std::stringstream ss;
    write_jsonl(ss, a);
    SparseMeasure b = read_jsonl(ss, 2);
    CHECK(a == b);
}

TEST_CASE("cz: delta below height") {
    SparseMeasure f(1);
    f.set({0}, 1);
    CZDecomposition cz = cz_decompose(f, Rat(2));
    CHECK(cz.bad.empty());
    CHECK(cz.g == f);
    CHECK(cz.check_invariants(f).empty());
}

TEST_CASE("cz: 3 delta_0 at lambda 1 selects the maximal cube {0,1}") {
    SparseMeasure f(1);
    f.set({0}, 3);
    CZDecomposition cz = cz_decompose(f, Rat(1));
    REQUIRE(cz.bad.size() == 1);
    CHECK(cz.bad[0].first.s == 1);  // cube [0,2) of side 2
    CHECK(cz.bad[0].first.k == Pt{0});
    CHECK(cz.bad[0].second.at({0}) == 3);
    CHECK(cz.g.support_size() == 0);
    CHECK(cz.check_invariants(f).empty());
}

TEST_CASE("cz: constant lambda/2 on a dyadic cube stays good") {
    SparseMeasure f(2);
    for (int64_t x = 0; x < 4; ++x)
        for (int64_t y = 0; y < 4; ++y) f.set({x, y}, Rat(1, 2));
    CZDecomposition cz = cz_decompose(f, Rat(1));
    CHECK(cz.bad.empty());
    CHECK(cz.check_invariants(f).empty());
}

TEST_CASE("cz: empty input") {
    SparseMeasure f(2);
    CZDecomposition cz = cz_decompose(f, Rat(1));
    CHECK(cz.bad.empty());
    CHECK(cz.g.support_size() == 0);
}

TEST_CASE("cz invariants on random inputs") {
    for (int t = 0; t < 30; ++t) {
        int d = 1 + t % 2;
        SparseMeasure f = rnd_measure(17, t, d, 10, true);
        for (const Rat& lam : {Rat(1, 4), Rat(1), Rat(4)}) {
            CZDecomposition cz = cz_decompose(f, lam);
            INFO("trial ", t);
            CHECK(cz.check_invariants(f).empty());
        }
    }
}

TEST_CASE("split_by_height: below-threshold and above-threshold examples") {
    // b with small sup: everything stays in the flat part
    SparseMeasure f(1);
    f.set({0}, 2);
    CZDecomposition cz = cz_decompose(f, Rat(1, 2));
    REQUIRE(cz.bad.size() == 1);
    // j large => threshold 2^{(1-4/5) j} exceeds 2
    auto splits = split_by_height_speckled(cz, 40, Rat(4, 5));
    REQUIRE(splits.size() == 1);
    CHECK(splits[0].tall.support_size() == 0);
    CHECK(splits[0].flat.at({0}) == 2);

    // d=1, gamma=1/2, j=2: threshold 2^{1.5} ~ 2.828; 5 delta_0 is tall
    SparseMeasure g5(1);
    g5.set({0}, 5);
    CZDecomposition cz5 = cz_decompose(g5, Rat(1));
    auto sp5 = split_by_height_speckled(cz5, 2, Rat(1, 2));
    REQUIRE(sp5.size() == 1);
    CHECK(sp5[0].tall.at({0}) == 5);
    CHECK(sp5[0].flat.support_size() == 0);
}

TEST_CASE("split_by_height: plaid row selection") {
    // d=2, I={0}: select where the row mass within the level-j cube exceeds
    // 2^{(2 - alpha + eps) j}
    SparseMeasure f(2);
    for (int64_t x = 0; x < 4; ++x) f.set({x, 0}, 9);  // one heavy row, mass 36
    CZDecomposition cz = cz_decompose(f, Rat(1));
    REQUIRE(!cz.bad.empty());
    long j = 2;  // threshold 2^{(2-2/5+1/20)*2} = 2^{3.3} ~ 9.85 < 36
    auto sel = split_by_height_plaid(cz, j, Rat(2, 5), Rat(1, 20), {0});
    Rat tall_mass;
    for (const auto& hs : sel)
        for (const auto& [p, x] : hs.tall.entries()) tall_mass += x;
    CHECK(tall_mass == 36);
    // moving far above the threshold scale: j = 6 gives 2^{9.9} >> 36, nothing tall
    auto sel6 = split_by_height_plaid(cz, 6, Rat(2, 5), Rat(1, 20), {0});
    for (const auto& hs : sel6) CHECK(hs.tall.support_size() == 0);
    CHECK_THROWS(split_by_height_plaid(cz, 2, Rat(2, 5), Rat(1, 20), {0, 1}));  // I must be proper
}

TEST_CASE("split partition property on random cz outputs") {
    for (int t = 0; t < 10; ++t) {
        SparseMeasure f = rnd_measure(23, t, 2, 12, true);
        CZDecomposition cz = cz_decompose(f, Rat(1, 2));
        for (long j : {2L, 4L}) {
            auto splits = split_by_height_speckled(cz, j, Rat(4, 5));
            Rat e = (Rat(2) - Rat(4, 5)) * j;
            for (const auto& hs : splits) {
                SparseMeasure sum = hs.tall + hs.flat;
                SparseMeasure orig(2);
                for (const auto& [q, b] : cz.bad)
                    if (q.s == hs.level_s)
                        for (const auto& [p, x] : b.entries()) orig.add(p, x);
                CHECK(sum == orig);
                for (const auto& [p, x] : hs.flat.entries())
                    CHECK(cmp_pow2_frac(abs(x), (long)e.get_num().get_si(),
                                        (long)e.get_den().get_si()) <= 0);
            }
        }
    }
}

TEST_CASE("dyadic cube geometry") {
    CHECK(cube_of({5, -3}, 2).k == Pt{1, -1});
    CHECK(cube_of({-1}, 0).k == Pt{-1});
    DyadicCube q{2, {1, -1}};
    CHECK(q.contains({5, -3}));
    CHECK(!q.contains({8, -3}));
}
