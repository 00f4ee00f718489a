#include "kakeya/errors.hpp"
#include "kakeya/geom.hpp"
#include "kakeya/scene_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kakeya;

namespace {

ProjPoint random_point(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return ProjPoint(Vec3(g(rng), g(rng), g(rng)));
}

double slab_length(const Scene& s) { return s.is_empty() ? 0.0 : s.total_length(); }

}  // namespace

TEST(Direction, Distance) {
    EXPECT_DOUBLE_EQ(dir_distance(Direction(0), Direction(0)), 0.0);
    EXPECT_NEAR(dir_distance(Direction(0), Direction(kPi / 2)), kPi / 2, 1e-15);
    EXPECT_NEAR(dir_distance(Direction(0.1), Direction(kPi - 0.1)), 0.2, 1e-12);
    EXPECT_NEAR(Direction(-0.25).angle(), kPi - 0.25, 1e-15);
    EXPECT_NEAR(Direction(3 * kPi + 0.5).angle(), 0.5, 1e-12);
}

TEST(Direction, DistanceNeverExceedsQuarterTurn) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int i = 0; i < 1000; ++i) EXPECT_LE(dir_distance(Direction(u(rng)), Direction(u(rng))), kPi / 2);
}

TEST(DirInterval, BracketAndContainment) {
    const auto i = DirInterval::bracket(Direction(kPi - 0.1), Direction(0.2));
    EXPECT_NEAR(i.length(), 0.3, 1e-12);
    EXPECT_TRUE(i.contains(Direction(0.0)));
    EXPECT_TRUE(i.contains(Direction(kPi - 0.05)));
    EXPECT_FALSE(i.contains(Direction(0.3)));
    EXPECT_THROW(DirInterval::bracket(Direction(0), Direction(kPi / 2)), std::invalid_argument);
    EXPECT_TRUE(DirInterval::full().contains(Direction(1.0)));
    EXPECT_FALSE(DirInterval::empty().contains(Direction(1.0)));
    EXPECT_TRUE(DirInterval::from_reals(-1, 3).is_full());
}

TEST(DirInterval, ComplementPartitionsCircle) {
    const auto i = DirInterval::from_reals(0.3, 2.9);
    const auto c = i.complement();
    EXPECT_NEAR(i.length() + c.length(), kPi, 1e-12);
    EXPECT_TRUE(c.contains(Direction(3.0)));
    EXPECT_TRUE(c.contains(Direction(0.1)));
    EXPECT_FALSE(c.contains(Direction(1.5)));
}

TEST(DirInterval, HullContainmentIsTransitive) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> a(0, kPi), w(0, 0.7);
    for (int t = 0; t < 1000; ++t) {
        const auto A = DirInterval::centered(Direction(a(rng)), w(rng));
        auto B = DirInterval::centered(Direction(A.anchor().angle() + 0.5 * (a(rng) - kPi / 2) * 0.5), w(rng));
        if (dir_distance(A.anchor(), B.anchor()) > A.halfwidth() + B.halfwidth()) continue;
        const auto H = A.hull(B);
        EXPECT_TRUE(H.contains(A));
        EXPECT_TRUE(H.contains(B));
        const auto C = H.hull(DirInterval::centered(H.anchor(), w(rng)));
        EXPECT_TRUE(C.contains(H));
        EXPECT_TRUE(C.contains(A));
    }
}

TEST(Projective, DistanceExamples) {
    EXPECT_NEAR(proj_distance(proj_embed({0, 0}), proj_embed({1, 0})), kPi / 4, 1e-15);
    EXPECT_NEAR(proj_distance(ProjPoint(Vec3(1, 0, 0)), ProjPoint(Vec3(0, 1, 0))), kPi / 2, 1e-15);
    EXPECT_NEAR(proj_distance(proj_embed({0, 0}), dir_to_infinite(Direction(0.7))), kPi / 2, 1e-15);
    EXPECT_NEAR(proj_distance(ProjPoint(Vec3(1, 2, 3)), ProjPoint(Vec3(-1, -2, -3))), 0.0, 1e-15);
}

TEST(Projective, Embedding) {
    EXPECT_TRUE(proj_embed({0, 0}).equals(ProjPoint(Vec3(0, 0, 1))));
    const Vec3 h = proj_embed({3, 4}).h();
    const double s = std::sqrt(26.0);
    EXPECT_NEAR(std::abs(h.x()), 3 / s, 1e-15);
    EXPECT_NEAR(std::abs(h.y()), 4 / s, 1e-15);
    EXPECT_NEAR(std::abs(h.z()), 1 / s, 1e-15);
    EXPECT_TRUE(dir_to_infinite(Direction(0)).equals(ProjPoint(Vec3(1, 0, 0))));
}

TEST(Projective, MetricAxiomsOnRandomTriples) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_point(rng), b = random_point(rng), c = random_point(rng);
        const double ab = proj_distance(a, b), bc = proj_distance(b, c), ac = proj_distance(a, c);
        EXPECT_NEAR(ab, proj_distance(b, a), 1e-12);
        EXPECT_LE(ac, ab + bc + 1e-12);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, kPi / 2 + 1e-15);
    }
}

TEST(Projective, NormalLineExamples) {
    EXPECT_TRUE(normal_line({1, 0}, Direction(0)).equals(ProjLine(Vec3(1, 0, -1))));
    EXPECT_TRUE(normal_line({0, 0}, Direction(kPi / 2)).equals(ProjLine(Vec3(0, 1, 0))));
    const auto l = normal_line({1, 1}, Direction(kPi / 4));
    EXPECT_LT(std::abs(proj_embed({1, 1}).h().dot(l.n())), 1e-12);
    EXPECT_LT(std::abs(dir_to_infinite(Direction(3 * kPi / 4)).h().dot(l.n())), 1e-12);
}

TEST(Projective, NormalLineIncidenceProperty) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 x{u(rng), u(rng)};
        const Direction t(u(rng));
        const auto l = normal_line(x, t);
        EXPECT_LT(std::abs(proj_embed(x).h().dot(l.n())), 1e-12);
        EXPECT_LT(std::abs(dir_to_infinite(Direction(t.angle() + kPi / 2)).h().dot(l.n())), 1e-12);
    }
}

TEST(Projective, LineBallHit) {
    const ProjLine x1(Vec3(1, 0, -1)), y0(Vec3(0, 1, 0)), x0(Vec3(1, 0, 0));
    EXPECT_FALSE(line_ball_hit(x1, ProjLine::at_infinity(), ProjPoint(Vec3(1, 0, 0)), 0.1));
    EXPECT_TRUE(line_ball_hit(y0, x0, proj_embed({0, 0}), 1e-9));
    // Oracle: direct evaluation of the distance between embed(1,0) and embed(1,0.05).
    const double d = std::acos((1 + 1) / (std::sqrt(2.0) * std::sqrt(2.0025)));
    ASSERT_LT(d, 0.1);
    EXPECT_TRUE(line_ball_hit(y0, x1, proj_embed({1, 0.05}), 0.1));
    EXPECT_THROW(line_ball_hit(y0, y0, proj_embed({0, 0}), 0.1), std::invalid_argument);
}

TEST(Scene, Validation) {
    EXPECT_THROW(Scene({{{0, 0}}}, {false}), std::invalid_argument);
    EXPECT_THROW(Scene({{{0, 0}, {0, 0}}}, {false}), std::invalid_argument);
    EXPECT_THROW(Scene({{{0, 0}, {1, 0}}}, {false, true}), std::invalid_argument);
    const Scene sq({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}, {true});
    EXPECT_NEAR(sq.total_length(), 4.0, 1e-15);
    EXPECT_NEAR(sq.bounding_radius(), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(sq.hull().size(), 4u);
}

TEST(Scene, Tangents) {
    const auto t = scene_tangents(make_segment(1));
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].angle(), 0.0);
    const Scene sq({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}, {true});
    const auto ts = scene_tangents(sq);
    const double want[] = {0, kPi / 2, 0, kPi / 2};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ts[i].angle(), want[i], 1e-15);
}

TEST(Scene, PolygonTangentsMatchEdgeFormula) {
    for (int n : {3, 7, 64, 720}) {
        const auto t = scene_tangents(make_circle(1.0, n));
        for (int k = 0; k < n; ++k) {
            const Direction oracle(2 * kPi * k / n + kPi / n + kPi / 2);
            EXPECT_LT(dir_distance(t[k], oracle), 1e-12);
        }
    }
}

TEST(Scene, SlabExamples) {
    const Scene c = make_circle(1.0, 720);
    const auto near_all = scene_slab(c, Direction(0), kPi / 2 - 1e-6);
    EXPECT_GT(slab_length(near_all.inside), c.total_length() * 0.99);
    const auto whole = scene_slab(make_segment(1), Direction(0), 0.01);
    EXPECT_NEAR(slab_length(whole.inside), 1.0, 1e-15);
    EXPECT_TRUE(whole.outside.is_empty());
}

TEST(Scene, SlabMonotoneAndAdditive) {
    const Scene c = make_circle(1.3, 257);
    double prev = -1;
    for (double d = 0.01; d < kPi / 2; d += 0.05) {
        const auto s = scene_slab(c, Direction(0.37), d);
        const double in = slab_length(s.inside);
        EXPECT_NEAR(in + slab_length(s.outside), c.total_length(), 1e-9);
        EXPECT_GE(in, prev);
        prev = in;
    }
}

TEST(Scene, NormalSlabAtInfinityMatchesTangentSlab) {
    const Scene c = make_circle(1.0, 360);
    for (double theta : {0.0, 0.4, 1.3}) {
        for (double eps : {0.05, 0.2}) {
            const auto u = dir_to_infinite(Direction(theta + kPi / 2));
            const auto ns = scene_normal_slab(c, ProjLine::at_infinity(), u, eps);
            const auto ts = scene_slab(c, Direction(theta), eps);
            // Brute force per segment.
            double brute = 0;
            for (const auto& s : c.segments())
                if (dir_distance(s.theta, Direction(theta)) < eps) brute += s.length;
            EXPECT_NEAR(slab_length(ns.inside), brute, 1e-9);
            EXPECT_NEAR(slab_length(ts.inside), brute, 1e-9);
            EXPECT_NEAR(slab_length(ns.inside) + slab_length(ns.outside), c.total_length(), 1e-9);
        }
    }
}

TEST(Scene, NormalSlabClipsInsideSegment) {
    // Normals of a horizontal segment are vertical lines; they meet the x-axis at x.
    const Scene s = make_segment(2.0);
    const ProjLine xaxis(Vec3(0, 1, 0));
    const auto split = scene_normal_slab(s, xaxis, proj_embed({1, 0}), 0.1);
    // Points of the x-axis within projective distance 0.1 of (1, 0).
    double lo = 1, hi = 1;
    while (proj_distance(proj_embed({lo - 1e-6, 0}), proj_embed({1, 0})) < 0.1) lo -= 1e-6;
    while (proj_distance(proj_embed({hi + 1e-6, 0}), proj_embed({1, 0})) < 0.1) hi += 1e-6;
    EXPECT_NEAR(split.inside.total_length(), hi - lo, 1e-5);
}

TEST(SceneIo, RoundTripAndErrors) {
    const Scene s = make_convex_graph(1, 0, 0, 2, 8);
    const Scene r = scene_from_json(scene_to_json(s));
    EXPECT_NEAR(r.total_length(), s.total_length(), 1e-12);
    EXPECT_THROW(scene_from_json("{not json"), InputError);
    EXPECT_THROW(scene_from_json(R"({"polylines":[[[0,0]]]})"), InputError);
    EXPECT_THROW(scene_from_generator("circle:abc"), InputError);
    EXPECT_THROW(scene_from_generator("blob:1"), InputError);
    EXPECT_NEAR(scene_from_generator("circle:2,100").bounding_radius(), 2.0, 1e-12);
    EXPECT_EQ(scene_from_generator("circle:1").segments().size(), 720u);
}
