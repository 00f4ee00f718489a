#include "kakeya/sweep.hpp"

#include <gtest/gtest.h>

using namespace kakeya;

namespace {

Scene vertical_unit() { return Scene({{{0, 0}, {0, 1}}}, {false}); }

SweepOptions grid(int n) {
    SweepOptions o;
    o.grid_max = n;
    return o;
}

}  // namespace

TEST(Raster, CountsAndBoundary) {
    RasterGrid g(0, 0, 0.5, 10, 10);
    for (int y = 2; y < 5; ++y)
        for (int x = 3; x < 7; ++x) g.set(x, y);
    EXPECT_EQ(g.occupied(), 12);
    EXPECT_DOUBLE_EQ(g.area(), 3.0);
    EXPECT_DOUBLE_EQ(g.boundary_length(), 14 * 0.5);
    g.mark({4.99, 4.99});
    EXPECT_TRUE(g.test(9, 9));
    g.mark({5.0, 1.0});  // outside, ignored
    EXPECT_EQ(g.occupied(), 13);
}

TEST(Raster, DilationMatchesDiskCount) {
    RasterGrid g(0, 0, 1.0, 41, 41);
    g.set(20, 20);
    const RasterGrid d = g.dilated(10.0);
    long long oracle = 0;
    for (int y = -10; y <= 10; ++y)
        for (int x = -10; x <= 10; ++x) oracle += (x * x + y * y <= 100);
    EXPECT_EQ(d.occupied(), oracle);
    EXPECT_EQ(g.dilated(0.0).occupied(), 1);
}

TEST(Raster, MergeIsUnion) {
    RasterGrid a(0, 0, 1, 8, 8), b(0, 0, 1, 8, 8);
    a.set(1, 1);
    b.set(1, 1);
    b.set(2, 3);
    a.merge(b);
    EXPECT_EQ(a.occupied(), 2);
    RasterGrid c(0, 0, 0.5, 8, 8);
    EXPECT_THROW(a.merge(c), std::invalid_argument);
}

TEST(Sweep, UnitSquare) {
    const auto r = sweep_area(vertical_unit(), single_step(rot_translation({1, 0})), grid(512));
    EXPECT_NEAR(r.area, 1.0, 2 * r.cell * 4);
    EXPECT_NEAR(r.area_coarse, 1.0, 2 * r.cell * 4);
    EXPECT_GE(r.uncertainty, 0.0);
}

TEST(Sweep, CollinearSweepIsThin) {
    const auto r = sweep_area(make_segment(1), single_step(rot_translation({1, 0})), grid(512));
    EXPECT_LE(r.area_coarse, 2 * r.cell * (2 + 2 * r.cell));
}

TEST(Sweep, FullTurnOfCircleIsInflationOnly) {
    const Scene c = make_circle(1, 720);
    const auto turn = sweep_area(c, single_step(rot_from_center({0, 0}, 2 * kPi)), grid(1024));
    const auto still = sweep_area(c, SweepPlan{}, grid(1024));
    EXPECT_LE(turn.area_coarse, 2 * turn.cell * 2 * kPi * 1.5);
    EXPECT_LE(turn.area, still.area * 1.5);
}

TEST(Sweep, EmptyPlanIsScene) {
    const auto r = sweep_area(vertical_unit(), SweepPlan{}, grid(256));
    EXPECT_LE(r.area, 3 * r.cell);
}

TEST(Sweep, MonotoneUnderAddedSteps) {
    const Scene c = make_circle(1, 90);
    SweepPlan p;
    RasterGrid g(-3, -3, 0.01, 700, 700);
    long long prev = 0;
    const Rot moves[4] = {rot_translation({0.5, 0}), rot_from_center({1, 1}, 0.4), rot_translation({0, -0.3}),
                          rot_from_center({-1, 0}, -0.2)};
    for (const Rot& m : moves) {
        p.steps.push_back({m, -1});
        RasterGrid fresh = g;
        stamp_plan(fresh, c, p);
        EXPECT_GE(fresh.occupied(), prev);
        prev = fresh.occupied();
    }
}

TEST(Sweep, IsometryInvariance) {
    const Scene c = make_circle(1, 180);
    SweepPlan p;
    p.steps.push_back({rot_translation({1, 0.5}), -1});
    p.steps.push_back({rot_from_center({2, 0}, 0.5), -1});
    p.deletions.push_back(Deletion::tangent(Direction(0.3), 0.2));
    p.steps[1].deletion = 0;
    const auto a = sweep_area(c, p, grid(768));
    p.start = {0.7, {3, -2}};
    const auto b = sweep_area(c, p, grid(768));
    EXPECT_LE(std::abs(a.area - b.area), a.uncertainty + b.uncertainty);
}

TEST(Sweep, ResolutionConsistency) {
    const Scene c = make_circle(1, 720);
    const SweepPlan p = single_step(rot_translation({1, 0}));
    const auto coarse = sweep_area(c, p, grid(256));
    const auto fine = sweep_area(c, p, grid(1024));
    EXPECT_LT(fine.uncertainty, coarse.uncertainty);
    EXPECT_LE(std::abs(coarse.area - fine.area), coarse.uncertainty + fine.uncertainty);
}

TEST(Sweep, StepBoundIsEnforced) {
    RasterGrid g(-2, -2, 0.01, 400, 400);
    const Scene s = vertical_unit();
    EXPECT_NO_THROW(stamp_samples(g, s, {Isometry{}, Isometry{0, {0.002, 0}}}));
    EXPECT_THROW(stamp_samples(g, s, {Isometry{}, Isometry{0, {0.1, 0}}}), std::invalid_argument);
    EXPECT_THROW(stamp_samples(g, s, {Isometry{}, Isometry{0.1, {0, 0}}}), std::invalid_argument);
}

TEST(Sweep, NormalVelocityIntegral) {
    EXPECT_NEAR(normal_velocity_integral(vertical_unit(), rot_translation({1, 0})), 1.0, 1e-15);
    // Sector swept by a radius: phi / 2.
    EXPECT_NEAR(normal_velocity_integral(make_segment(1), rot_from_center({0, 0}, 0.3)), 0.15, 1e-15);
    // Segment through the center: two sectors.
    const Scene s({{{-1, 0}, {2, 0}}}, {false});
    EXPECT_NEAR(normal_velocity_integral(s, rot_from_center({0, 0}, 0.4)), 0.4 * (0.5 + 2.0), 1e-14);
    // Regular n-gon about its center: every edge contributes phi sin^2(pi / n).
    const double edge = std::sin(kPi / 60);
    EXPECT_NEAR(normal_velocity_integral(make_circle(1, 60), rot_from_center({0, 0}, 1.0)), 60 * edge * edge, 1e-12);
}

TEST(SlabTranslation, Examples) {
    const auto flat = verify_lemma_31(make_segment(1), Direction(0), 0.1, {1, 0}, grid(512));
    ASSERT_TRUE(flat.defined);
    EXPECT_LE(flat.area.area_coarse, 2 * flat.area.cell * 2.1);
    EXPECT_NEAR(flat.quadrature, 0.0, 1e-15);
    const auto none = verify_lemma_31(vertical_unit(), Direction(0), 0.1, {1, 0});
    EXPECT_FALSE(none.defined);
    EXPECT_TRUE(std::isnan(none.ratio));
}

TEST(SlabTranslation, CircleRatioStable) {
    const Scene c = make_circle(1, 720);
    std::vector<double> ratio;
    for (double d : {0.2, 0.1, 0.05}) {
        const auto r = verify_lemma_31(c, Direction(0), d, {1, 0}, grid(1024));
        ASSERT_TRUE(r.defined);
        EXPECT_LE(r.area.area - r.area.uncertainty, r.quadrature * 1.02);
        ratio.push_back(r.ratio);
    }
    const double lo = *std::min_element(ratio.begin(), ratio.end());
    const double hi = *std::max_element(ratio.begin(), ratio.end());
    EXPECT_LE(hi / lo, 3.0);
}

TEST(NormalBallRotation, CircleAboutItsCenter) {
    const Scene c = make_circle(1, 720);
    const auto r = verify_lemma_33(c, rot_from_center({0, 0}, kPi / 2), 0.05, grid(1024));
    ASSERT_TRUE(r.defined);
    EXPECT_NEAR(r.h1, c.total_length(), 1e-9);
    EXPECT_LE(r.area.area_coarse, 2 * r.area.cell * 2 * kPi * 1.5);
    const double edge = std::sin(kPi / 720);
    EXPECT_NEAR(r.quadrature, kPi / 2 * 720 * edge * edge, 1e-9);
}

TEST(NormalBallRotation, QuadratureDominates) {
    const Scene c = make_circle(1, 720);
    for (double d : {0.1, 0.05}) {
        const auto r = verify_lemma_33(c, rot_from_center({3, 0}, kPi / 2), d, grid(1024));
        ASSERT_TRUE(r.defined);
        EXPECT_LE(r.area.area - r.area.uncertainty, r.quadrature);
    }
    EXPECT_FALSE(verify_lemma_33(c, rot_from_center({3, 0}, kPi / 2), 0.1).precondition_ok);
}

TEST(NormalBallRotation, TranslationAgreesWithSlab) {
    const Scene c = make_circle(1, 720);
    const auto a = verify_lemma_33(c, rot_translation({1, 0}), 0.1, grid(1024));
    const auto b = verify_lemma_31(c, Direction(0), 0.1, {1, 0}, grid(1024));
    ASSERT_TRUE(a.defined && b.defined);
    EXPECT_NEAR(a.h1, b.h1, 0.02 * b.h1);
    EXPECT_LE(std::abs(a.area.area - b.area.area), 0.05 * b.area.area + a.area.uncertainty + b.area.uncertainty);
}

TEST(SmallNeighborhood, UnitSquare) {
    const SweepPlan p = single_step(rot_translation({1, 0}));
    const auto r = verify_small_neighborhood(vertical_unit(), p, 0.01, grid(1024));
    EXPECT_TRUE(r.ok);
    EXPECT_NEAR(r.inflated - r.base, 4 * 0.01, 0.01);
    const auto zero = verify_small_neighborhood(vertical_unit(), p, 0.0, grid(1024));
    EXPECT_EQ(zero.inflated, zero.base);
    const auto twice = verify_small_neighborhood(vertical_unit(), p, 0.02, grid(1024));
    EXPECT_LE(twice.inflated - twice.base, 2 * (r.inflated - r.base) + kPi * 0.02 * 0.02 + 4 * r.base * 0 + 0.005);
}

TEST(TrivialBound, Examples) {
    EXPECT_NEAR(trivial_sweep_bound(vertical_unit(), single_step(rot_translation({1, 0})), grid(512)), 1.0, 0.02);
    EXPECT_EQ(trivial_sweep_bound(make_circle(1), SweepPlan{}), 0.0);
    SweepPlan p;
    p.steps.push_back({rot_translation({1, 0}), -1});
    p.steps.push_back({rot_translation({0, 1}), -1});
    EXPECT_LE(trivial_sweep_bound(make_circle(1, 720), p, grid(1024)), 1.2);
}

TEST(Deletion, KeptMatchesPredicate) {
    const Scene c = make_circle(1, 360);
    const Deletion t = Deletion::tangent(Direction(kPi / 2), 0.3);
    const Scene kept = t.kept(c);
    for (const auto& s : kept.segments()) EXPECT_FALSE(t.deletes((s.a + s.b) / 2, s.theta));
    const Deletion n = Deletion::normal(line_through(proj_embed({0, -2}), proj_embed({1, -2})), proj_embed({0, -2}), 0.1);
    const Scene kn = n.kept(c);
    EXPECT_LT(kn.total_length(), c.total_length());
    for (const auto& s : kn.segments()) EXPECT_FALSE(n.deletes((s.a + s.b) / 2, s.theta));
}
