// Acceptance harness: prints one PASS/FAIL line per criterion. The process
// exits 0 once every criterion has been evaluated; a FAIL line is a result,
// not a harness error.

#include "kakeya/blind.hpp"
#include "kakeya/limits.hpp"
#include "kakeya/rotation_plan.hpp"
#include "kakeya/se2.hpp"
#include "kakeya/sweep.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace kakeya;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const Vec2 kProbes[3] = {{0.3, -1.2}, {2.5, 0.7}, {-1.9, 1.1}};

double probe_gap(const Isometry& a, const Isometry& b) {
    double m = 0;
    for (Vec2 u : kProbes) m = std::max(m, norm(a.apply(u) - b.apply(u)));
    return m;
}

Rot random_rot(std::mt19937_64& rng, double max_phi = 1.0, double max_w = 5.0) {
    std::uniform_real_distribution<double> w(-max_w, max_w), p(-max_phi, max_phi);
    return Rot::from_coords({w(rng), w(rng)}, p(rng));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Outcome c1_se2() {
    std::mt19937_64 rng(1);
    double comp = 0, assoc = 0, solve = 0, fold = 0, gap = 0;
    for (int i = 0; i < 10000; ++i) {
        const Rot a = random_rot(rng), b = random_rot(rng), c = random_rot(rng);
        comp = std::max(comp, probe_gap(star(a, b).map(), a.map().compose(b.map())));
        assoc = std::max(assoc, probe_gap(star(star(a, b), c).map(), star(a, star(b, c)).map()));
        const Rot back = star_solve_right(star(a, b), a);
        solve = std::max(solve, (back.coords() - b.coords()).norm() / (1 + b.norm()));
    }
    for (int t = 0; t < 20; ++t) {
        std::vector<std::pair<Rot, int>> seq;
        for (int i = 0; i < 10; ++i) seq.push_back({random_rot(rng, 0.5, 1.0), 1 + i % 3});
        const auto segs = realize_path(seq, {1.5, 0.05});
        fold = std::max(fold, probe_gap(segs.back().end(), fold_intrinsic(seq)));
    }
    std::uniform_real_distribution<double> z(-10, 10), p(-0.5, 0.5);
    for (int i = 0; i < 10000; ++i) {
        const auto g = lemma52_gap(rot_from_center({z(rng), z(rng)}, p(rng)), rot_from_center({z(rng), z(rng)}, p(rng)));
        if (g.rhs > 0) gap = std::max(gap, g.lhs / g.rhs);
    }
    const bool ok = comp < 1e-12 && assoc < 1e-11 && solve < 1e-12 && fold < 1e-10 && gap <= 1.5;
    return {ok, "compose " + fmt(comp) + " assoc " + fmt(assoc) + " solve " + fmt(solve) + " fold " + fmt(fold) +
                    " gap ratio " + fmt(gap) + " (limits 1e-12, 1e-11, 1e-12, 1e-10, 1.5)"};
}

Outcome c2_blind() {
    const int k1 = choose_k(kPi / 20, kPi / 20), k2 = choose_k(kPi / 8, kPi / 100);
    double err = 0;
    bool shorter = true;
    for (auto [beta, gamma] : {std::pair{kPi / 20, kPi / 20}, std::pair{kPi / 8, kPi / 100}}) {
        const BlindShape s = blind_shape(beta, gamma);
        double g = 1.0, bad = 0.0;
        for (int j = 1; j <= s.k; ++j) {
            const double b = g * std::sin(gamma) / std::sin(beta + j * gamma);
            g = g * std::sin(beta + (j - 1) * gamma) / std::sin(beta + j * gamma);
            err = std::max({err, std::abs(norm(s.bad[j - 1]) - b), std::abs(norm(s.good[j - 1]) - g)});
            bad += b;
        }
        err = std::max({err, std::abs(s.bad_length - bad), std::abs(s.good_length - g)});
        shorter = shorter && s.bad_length < 1 && s.good_length < 1;
    }
    const bool ok = k1 == 7 && k2 == 24 && err <= 1e-9 && shorter;
    return {ok, "k = " + std::to_string(k1) + ", " + std::to_string(k2) + "; oracle error " + fmt(err) +
                    (shorter ? "; both parts shorter" : "; a part is not shorter")};
}

SweepOptions grid2048() { return SweepOptions{}; }

Outcome c3_slab_scaling() {
    const Scene circle = make_circle(1.0, 720);
    std::vector<double> area;
    for (double d : {0.2, 0.1, 0.05}) area.push_back(verify_lemma_31(circle, Direction(0.0), d, {1, 0}, grid2048()).area.area);
    const double r1 = area[1] / area[0], r2 = area[2] / area[1];
    const bool ok = r1 >= 0.35 && r1 <= 0.65 && r2 >= 0.35 && r2 <= 0.65;
    return {ok, "areas " + fmt(area[0]) + ", " + fmt(area[1]) + ", " + fmt(area[2]) + "; ratios " + fmt(r1) + ", " +
                    fmt(r2) + " (want [0.35, 0.65])"};
}

Outcome c4_normal_ball() {
    const Scene circle = make_circle(1.0, 720);
    const Rot quarter = rot_from_center({3, 0}, kPi / 2);
    const RatioReport a = verify_lemma_33(circle, quarter, 0.1, grid2048());
    const RatioReport b = verify_lemma_33(circle, quarter, 0.05, grid2048());
    const double ratio = b.area.area / a.area.area;
    const bool dom = a.quadrature >= a.area.area - a.area.uncertainty && b.quadrature >= b.area.area - b.area.uncertainty;
    const bool ok = ratio >= 0.3 && ratio <= 0.7 && dom;
    return {ok, "areas " + fmt(a.area.area) + ", " + fmt(b.area.area) + "; ratio " + fmt(ratio) +
                    " (want [0.3, 0.7]); quadrature " + fmt(a.quadrature) + ", " + fmt(b.quadrature) +
                    (dom ? " dominates" : " does not dominate")};
}

Outcome c5_translation() {
    const Scene circle = make_circle(1.0, 720);
    const double eps = 0.1;
    const TranslationPlan plan = build_translation_plan(circle, {2, 0}, eps);
    const bool exact = norm(plan.endpoint() - Vec2{2, 0}) == 0.0;
    const AreaReport a = sweep_area(circle, plan.sweep_plan(), grid2048());
    FinenessOptions fine;
    fine.scale = 2;
    const TranslationPlan doubled = build_translation_plan(circle, {2, 0}, eps, {}, fine);
    const AreaReport b = sweep_area(circle, doubled.sweep_plan(), grid2048());
    const bool small = a.area < eps + a.uncertainty;
    const bool stable = std::abs(a.area - b.area) <= std::max(a.uncertainty, b.uncertainty);
    return {exact && small && stable, "area " + fmt(a.area) + " +- " + fmt(a.uncertainty) + ", doubled N " +
                                          fmt(b.area) + (exact ? ", endpoint exact" : ", endpoint off")};
}

Outcome c6_rotation() {
    const Scene seg = make_segment(1.0);
    const double eps = 0.5;
    const ProjLine ell(Vec3(0, 1, 0));  // the x axis, through the origin
    const RotationPlan plan = build_rotation_plan(seg, rot_from_center({0, 0}, kPi), ell, eps);
    const AreaReport a = sweep_area(seg, plan.sweep_plan(), grid2048());
    bool centers = true, drift = true;
    for (const auto& r : plan.center_drift_table()) {
        centers = centers && r.max_to_line < eps;
        drift = drift && r.within();
    }
    const bool ok = a.area < eps + a.uncertainty && centers && drift;
    return {ok, "area " + fmt(a.area) + " +- " + fmt(a.uncertainty) + (centers ? ", centers near line" : ", center off line") +
                    (drift ? ", drift table ok" : ", drift table violated")};
}

Outcome c7_besicovitch() {
    const Scene graph = make_convex_graph(1, 0, 0, 1, 128);
    BesicovitchOptions opt;
    const BesicovitchRun run = besicovitch_translation(graph, {{0, 0}, {1, 0}}, 0.2, 3, opt);
    bool decreasing = true;
    for (std::size_t i = 1; i < run.levels.size(); ++i)
        decreasing = decreasing && run.levels[i].area.area < run.levels[i - 1].area.area;
    const AreaReport& last = run.levels.back().area;
    const bool budget = last.area <= run.budget + last.uncertainty;
    bool single = true, halves = true;
    for (std::size_t i = 0; i < run.levels.size(); ++i) {
        single = single && run.levels[i].max_components <= 1;
        if (i > 0) {
            const double r = run.levels[i].max_deleted / run.levels[i - 1].max_deleted;
            halves = halves && r >= 0.25 && r <= 0.75;
        }
    }
    return {decreasing && budget && single && halves,
            "level-3 area " + fmt(last.area) + " budget " + fmt(run.budget) + (decreasing ? ", decreasing" : ", not decreasing") +
                (single && halves ? ", deleted arcs ok" : ", deleted arcs off")};
}

Outcome c8_nikodym() {
    const Scene circle = make_circle(1.0, 720);
    const BesicovitchRun run = besicovitch_translation(circle, {{0, 0}, {2, 0}}, 0.2, 2);
    const Box square{0, 0, 1, 1};
    const NikodymCover c = nikodym_assemble(circle, circle, run, shift_grid(square, 5), square, grid2048());
    const bool ok = c.coverage >= 0.99 && c.area.area <= c.budget + c.area.uncertainty;
    return {ok, "coverage " + fmt(c.coverage) + ", area " + fmt(c.area.area) + " budget " + fmt(c.budget)};
}

Outcome c9_raster() {
    const Scene vseg({{{0, 0}, {0, 1}}}, {false});
    const AreaReport sq = sweep_area(vseg, single_step(rot_translation({1, 0})), grid2048());
    const bool square_ok = std::abs(sq.area - 1.0) <= 2 * sq.cell * 4;
    const std::vector<Scene> scenes{make_circle(1.0, 720), make_segment(1.0), make_convex_graph(1, 0, 0, 1, 128), vseg};
    const std::vector<SweepPlan> plans{single_step(rot_translation({1, 0.5})), single_step(rot_from_center({3, 0}, kPi / 2))};
    const Isometry g{0.7, {-2.0, 1.3}};
    double worst_iso = 0.0;
    bool iso = true, shrink = true;
    for (const Scene& s : scenes) {
        for (const SweepPlan& p : plans) {
            const AreaReport a = sweep_area(s, p, grid2048());
            SweepPlan moved = p;
            moved.start = g.compose(p.start);
            const AreaReport b = sweep_area(s, moved, grid2048());
            const double d = std::abs(a.area - b.area);
            worst_iso = std::max(worst_iso, d);
            iso = iso && d <= a.uncertainty + b.uncertainty;
            SweepOptions coarse;
            coarse.grid_max = 512;
            const AreaReport c = sweep_area(s, p, coarse);
            shrink = shrink && a.uncertainty <= c.uncertainty;
        }
    }
    return {square_ok && iso && shrink, "unit square " + fmt(sq.area) + " (tol " + fmt(2 * sq.cell * 4) + "), isometry gap " +
                                            fmt(worst_iso) + (iso ? " within bands" : " outside bands") +
                                            (shrink ? ", uncertainty shrinks" : ", uncertainty grows")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string report_path = argc > 1 ? argv[1] : "acceptance_report.txt";
    struct Criterion {
        int id;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{{1, 5, c1_se2},          {2, 1, c2_blind},        {3, 30, c3_slab_scaling},
                                     {4, 60, c4_normal_ball}, {5, 600, c5_translation}, {6, 600, c6_rotation},
                                     {7, 1200, c7_besicovitch}, {8, 1200, c8_nikodym}, {9, 600, c9_raster}};
    std::ostringstream report;
    int passed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const InfeasibleError& e) {
            o = {false, std::string("infeasible: ") + e.what()};
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.pass && secs > c.budget_s) o = {false, o.detail + "; runtime over budget"};
        passed += o.pass;
        std::ostringstream line;
        line << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  [" << fmt(secs)
             << " s, budget " << c.budget_s << " s]";
        std::cout << line.str() << std::endl;
        report << line.str() << "\n";
    }
    report << "summary: " << passed << "/" << all.size() << " criteria pass\n";
    std::cout << "summary: " << passed << "/" << all.size() << " criteria pass" << std::endl;
    std::ofstream(report_path) << report.str();
    return 0;
}
