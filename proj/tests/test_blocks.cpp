#include <doctest.h>

#include <unordered_set>

#include "sav/blocks.hpp"

using namespace sav;

TEST_CASE("intermediate sets: direct construction and boundary cases") {
    BlockAxis ax;
    ax.u = {0, 10, 100};
    ax.a = {2, 8, 80};
    IntervalSet s = intermediate_set(ax, 2, 3);
    CHECK(s.size() == 5);  // {1,2} u {11,12,13}
    CHECK(s.intervals() == std::vector<std::pair<int64_t, int64_t>>{{1, 2}, {11, 13}});
    // A(k, a_k) = A(k)
    IntervalSet a2 = intermediate_set(ax, 2, 8);
    CHECK(a2.size() == 10);
    // A(1, r) = [u1+1, u1+r]
    IntervalSet a1 = intermediate_set(ax, 1, 2);
    CHECK(a1.intervals() == std::vector<std::pair<int64_t, int64_t>>{{1, 2}});
    CHECK_THROWS(intermediate_set(ax, 2, 9));
    CHECK_THROWS(intermediate_set(ax, 2, 0));
    CHECK_THROWS(intermediate_set(ax, 4, 1));
}

TEST_CASE("intermediate sets nest in k and r") {
    BlockPlan plan = generate_block_plan(6);
    for (int k = 1; k < 6; ++k) {
        int64_t ak = plan.x.a[k - 1];
        IntervalSet s1 = intermediate_set(plan.x, k, std::max<int64_t>(1, ak / 2));
        IntervalSet s2 = intermediate_set(plan.x, k, ak);
        CHECK(s2.contains_set(s1));
        IntervalSet nxt = intermediate_set(plan.x, k + 1, 1);
        CHECK(nxt.contains_set(s2));
    }
}

TEST_CASE("generated plan satisfies all three growth conditions") {
    BlockPlan plan = generate_block_plan(8);
    CHECK(plan.validate().empty());
    // violating wellspaced is detected
    BlockPlan bad = plan;
    bad.x.u[3] = bad.x.u[2];
    CHECK(bad.validate() == "wellspaced");
}

TEST_CASE("tempelman: interval ratio (2N-1)/N") {
    for (int64_t N : {1, 2, 7, 100}) {
        IntervalSet F;
        F.add(1, N);
        TempelmanReport rep = tempelman_folner_report(F);
        CHECK(rep.ratio == Rat(2 * N - 1, N));
        // Folner defect of a shift by 1 on an interval: 2/N
        CHECK(rep.folner_defect[0] == Rat(2, N));
    }
}

TEST_CASE("tempelman: squares difference set") {
    std::vector<Pt> F;
    for (int64_t v : {0, 1, 4, 9, 16, 25}) F.push_back({v});
    TempelmanReport rep = tempelman_folner_report(F);
    CHECK(rep.diff_size == 27);
    CHECK(rep.ratio == Rat(27, 6));
}

TEST_CASE("tempelman: product identity on explicit sets") {
    std::vector<int64_t> X{0, 1, 5}, Y{2, 3, 11, 20};
    std::unordered_set<int64_t> dx, dy;
    for (int64_t a : X)
        for (int64_t b : X) dx.insert(a - b);
    for (int64_t a : Y)
        for (int64_t b : Y) dy.insert(a - b);
    std::vector<Pt> XY;
    for (int64_t a : X)
        for (int64_t b : Y) XY.push_back({a, b});
    CHECK(tempelman_folner_report(XY).diff_size == (int64_t)(dx.size() * dy.size()));
}

TEST_CASE("interval tempelman agrees with brute force") {
    BlockAxis ax;
    ax.u = {0, 10, 40};
    ax.a = {2, 8, 25};
    for (int k = 1; k <= 3; ++k) {
        IntervalSet s = intermediate_set(ax, k, ax.a[k - 1]);
        std::vector<Pt> pts;
        for (auto& [lo, hi] : s.intervals())
            for (int64_t v = lo; v <= hi; ++v) pts.push_back({v});
        CHECK(tempelman_folner_report(s).ratio == tempelman_folner_report(pts).ratio);
    }
}

TEST_CASE("witness: plan validation catches each condition") {
    WitnessPlan p = generate_witness_plan(4);
    CHECK(p.validate().empty());
    WitnessPlan bad = p;
    bad.a[2] = bad.w[2];  // too small for 2 w^2 <= a
    CHECK(bad.validate() == "condition-2-l2-le-a");
    WitnessPlan bad3 = p;
    bad3.w[1] = 3;
    CHECK(bad3.validate() == "condition-3-growth");
}

TEST_CASE("witness: averages behave per the construction") {
    WitnessPlan plan = generate_witness_plan(5);
    auto rows = divergence_witness(plan, 5);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].left_face_avg == 1);  // k=1: no competing mass
    for (const auto& r : rows) {
        CHECK(r.left_face_avg > Rat(1, 2));
        CHECK(r.left_face_avg >= r.left_face_bound);
    }
    // block-end average sqrt2 sum l_i / sum l_i^2 = sum w / sum w^2, strictly decreasing
    Int sw = 0, sq = 0;
    for (int k = 0; k < 5; ++k) {
        sw += plan.w[k];
        sq += plan.w[k] * plan.w[k];
        CHECK(rows[k].block_end_avg == Rat(sw, sq));
        if (k) CHECK(rows[k].block_end_avg < rows[k - 1].block_end_avg);
    }
    CHECK(rows[4].block_end_avg < Rat(1, 10));
}

TEST_CASE("corners-first: ratios finite and empty prefixes skipped") {
    CornersFirstPlan plan = generate_corners_plan(2, 3);
    CHECK(plan.validate().empty());
    std::vector<int64_t> radii{1};  // below the first prism: skipped
    for (size_t i = 0; i < plan.w.size(); ++i) radii.push_back(2 * (plan.a[i] + plan.w[i]));
    auto rows = corners_first_check(plan, radii);
    REQUIRE(!rows.empty());
    CHECK(rows.size() == plan.w.size());  // r=1 produced no row
    // single complete prism: ratio bounded by 4^d
    CHECK(rows[0].ratio <= Rat(16));
    for (const auto& r : rows) CHECK(r.ratio > 0);
}

TEST_CASE("unrestricted count") {
    CHECK(unrestricted_divergence_count(1).count == 1);
    CHECK(unrestricted_divergence_count(4).count == 8);
    auto uc = unrestricted_divergence_count(1000000);
    CHECK(uc.ratio_to_nlogn > 0.9);
    CHECK(uc.ratio_to_nlogn < 1.3);
    CHECK_THROWS(unrestricted_divergence_count(0));
}
