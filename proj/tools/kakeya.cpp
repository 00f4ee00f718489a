// kakeya: command line driver for needle plans, limit-set approximants and
// the lemma suite. Exit codes: 0 ok, 1 check failed, 2 infeasible,
// 3 bad input, 4 failed precondition.

#include "kakeya/blind.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/limits.hpp"
#include "kakeya/report.hpp"
#include "kakeya/rotation_plan.hpp"
#include "kakeya/scene_io.hpp"
#include "kakeya/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace kakeya;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Config {
    std::string command;
    std::string scene_file;
    std::string gen = "circle:1,720";
    std::string gamma_gen;
    double eps = 0.1;
    int depth = 2;
    std::string target;
    std::string target_rot;
    std::string line;
    std::string mode = "translation";
    std::string square = "0,0,1,1";
    int grid = 5;
    int grid_max = 2048;
    int frames = 60;
    std::string out = ".";
    unsigned seed = 0;
};

std::vector<double> numbers(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError(std::string("cannot parse ") + what + ": '" + text + "'");
        }
        if (used != item.size() || !std::isfinite(v)) throw InputError(std::string("cannot parse ") + what + ": '" + text + "'");
        out.push_back(v);
    }
    return out;
}

Vec2 parse_vec2(const std::string& text, const char* what) {
    const auto v = numbers(text, what);
    if (v.size() != 2) throw InputError(std::string(what) + " needs x,y");
    return {v[0], v[1]};
}

Rot parse_rot(const std::string& text) {
    const auto v = numbers(text, "--target-rot");
    if (v.size() != 3) throw InputError("--target-rot needs zx,zy,phi");
    if (v[2] == 0.0) throw InputError("--target-rot needs phi != 0");
    return rot_from_center({v[0], v[1]}, v[2]);
}

ProjPoint parse_point(const std::string& text) {
    const auto v = numbers(text, "--line point");
    if (v.size() == 2) return ProjPoint(Vec3(v[0], v[1], 1.0));
    if (v.size() == 3 && Vec3(v[0], v[1], v[2]).norm() > 0) return ProjPoint(Vec3(v[0], v[1], v[2]));
    throw InputError("--line points are x,y or x,y,w");
}

// "inf" or "p1..p2".
ProjLine parse_line(const std::string& text) {
    if (text == "inf") return ProjLine::at_infinity();
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw InputError("--line expects p1..p2 or inf");
    const ProjPoint a = parse_point(text.substr(0, dots)), b = parse_point(text.substr(dots + 2));
    if (a.equals(b, 1e-12)) throw InputError("--line points coincide");
    return line_through(a, b);
}

Scene load(const Config& c) { return c.scene_file.empty() ? scene_from_generator(c.gen) : load_scene(c.scene_file); }

SweepOptions sweep_opts(const Config& c) {
    if (c.grid_max <= 0) throw InputError("--grid-max must be positive");
    SweepOptions o;
    o.grid_max = c.grid_max;
    return o;
}

void require_positive(double v, const char* what) {
    if (!(v > 0)) throw InputError(std::string(what) + " must be positive");
}

json config_json(const Config& c) {
    return {{"command", c.command}, {"scene", c.scene_file}, {"gen", c.gen},     {"eps", c.eps},
            {"depth", c.depth},     {"target", c.target},    {"target_rot", c.target_rot},
            {"line", c.line},       {"mode", c.mode},        {"grid", c.grid},   {"square", c.square},
            {"grid_max", c.grid_max}, {"frames", c.frames},  {"seed", c.seed}};
}

class Output {
public:
    explicit Output(const Config& c) : dir_(c.out) { fs::create_directories(dir_); }
    void text(const std::string& name, const std::string& body) {
        write_file((dir_ / name).string(), body);
        files_.push_back(name);
    }
    void json_file(const std::string& name, const json& j) { text(name, j.dump(1) + "\n"); }
    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

void finish(Output& out, const Config& c, json result, bool pass) {
    json report = {{"config", config_json(c)}, {"result", std::move(result)}, {"pass", pass}};
    std::vector<std::string> files = out.files();
    files.push_back("report.json");
    report["artifacts"] = files;
    out.json_file("report.json", report);
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
}

void write_sweep_artifacts(Output& out, const Config& c, const Scene& scene, const SweepPlan& plan) {
    out.text("sweep.pgm", sweep_raster(scene, plan, sweep_opts(c)).to_pgm());
    SvgOptions svg;
    svg.frames = c.frames;
    out.text("path.svg", path_svg(scene, plan, svg));
}

int cmd_translate(const Config& c) {
    require_positive(c.eps, "--eps");
    const Scene scene = load(c);
    const Vec2 target = c.target.empty() ? Vec2{2, 0} : parse_vec2(c.target, "--target");
    Output out(c);
    const TranslationPlan plan = build_translation_plan(scene, target, c.eps);
    const SweepPlan sp = plan.sweep_plan();
    const AreaReport area = sweep_area(scene, sp, sweep_opts(c));
    const bool pass = area.area <= c.eps + area.uncertainty;
    out.json_file("plan.json", to_json(plan));
    out.text("area.csv", area_csv(area, c.eps));
    write_sweep_artifacts(out, c, scene, sp);
    finish(out, c, {{"area", to_json(area)}, {"eps", c.eps}, {"steps", sp.steps.size()}}, pass);
    return pass ? 0 : 1;
}

int cmd_rotate(const Config& c) {
    require_positive(c.eps, "--eps");
    const Scene scene = load(c);
    Rot x = Rot::identity();
    if (!c.target_rot.empty()) x = parse_rot(c.target_rot);
    else if (!c.target.empty()) x = rot_translation(parse_vec2(c.target, "--target"));
    else x = rot_from_center({0, 0}, kPi / 2);
    if (c.line.empty()) throw InputError("rotate-needle needs --line");
    const ProjLine ell = parse_line(c.line);
    Output out(c);
    const RotationPlan plan = build_rotation_plan(scene, x, ell, c.eps);
    const SweepPlan sp = plan.sweep_plan();
    const AreaReport area = sweep_area(scene, sp, sweep_opts(c));
    bool centers_ok = true;
    json drift = json::array();
    for (const auto& r : plan.center_drift_table()) {
        centers_ok = centers_ok && r.within() && r.max_to_line < c.eps;
        drift.push_back({{"node", r.node}, {"max_drift", r.max_drift}, {"two_alpha", 2 * r.alpha},
                         {"max_to_line", r.max_to_line}, {"within", r.within()}});
    }
    const bool pass = area.area <= c.eps + area.uncertainty && centers_ok;
    out.json_file("plan.json", to_json(plan));
    out.text("area.csv", area_csv(area, c.eps));
    write_sweep_artifacts(out, c, scene, sp);
    finish(out, c,
           {{"area", to_json(area)}, {"eps", c.eps}, {"steps", sp.steps.size()}, {"centers_ok", centers_ok},
            {"center_drift", drift}},
           pass);
    return pass ? 0 : 1;
}

BesicovitchRun run_besicovitch(const Config& c, const Scene& scene) {
    require_positive(c.eps, "--eps");
    if (c.depth < 1) throw InputError("--depth must be at least 1");
    BesicovitchOptions opt;
    opt.sweep = sweep_opts(c);
    if (c.mode == "translation") {
        const Vec2 target = c.target.empty() ? Vec2{2, 0} : parse_vec2(c.target, "--target");
        return besicovitch_translation(scene, {{0, 0}, target}, c.eps, c.depth, opt);
    }
    if (c.mode == "rotation") {
        const Rot x = c.target_rot.empty() ? rot_from_center({0, 0}, kPi / 2) : parse_rot(c.target_rot);
        std::optional<ProjLine> ell;
        if (!c.line.empty()) ell = parse_line(c.line);
        return besicovitch_rotation(scene, {x}, c.eps, c.depth, exceptional_points(scene), ell ? &*ell : nullptr, opt);
    }
    throw InputError("--mode is translation or rotation");
}

int cmd_besicovitch(const Config& c) {
    const Scene scene = load(c);
    Output out(c);
    const BesicovitchRun run = run_besicovitch(c, scene);
    bool decreasing = true;
    for (std::size_t i = 1; i < run.levels.size(); ++i)
        decreasing = decreasing && run.levels[i].area.area < run.levels[i - 1].area.area;
    const AreaReport& last = run.levels.back().area;
    const bool pass = decreasing && last.area <= run.budget + last.uncertainty;
    out.json_file("plan.json", to_json(run.plan));
    out.text("area.csv", levels_csv(run));
    write_sweep_artifacts(out, c, scene, run.plan);
    finish(out, c, {{"run", to_json(run)}, {"decreasing", decreasing}}, pass);
    return pass ? 0 : 1;
}

int cmd_nikodym(const Config& c) {
    const Scene scene = load(c);
    const Scene gamma = c.gamma_gen.empty() ? scene : scene_from_generator(c.gamma_gen);
    const auto sq = numbers(c.square, "--square");
    if (sq.size() != 4 || !(sq[2] > sq[0]) || !(sq[3] > sq[1])) throw InputError("--square needs x0,y0,x1,y1");
    if (c.grid < 0) throw InputError("--grid must be non-negative");
    const Box square{sq[0], sq[1], sq[2], sq[3]};
    Output out(c);
    const BesicovitchRun run = run_besicovitch(c, scene);
    const NikodymCover cover = nikodym_assemble(scene, gamma, run, shift_grid(square, c.grid), square, sweep_opts(c));
    const bool pass = cover.coverage >= 0.99 && cover.area.area <= cover.budget + cover.area.uncertainty;
    out.json_file("plan.json", to_json(run.plan));
    out.text("area.csv", levels_csv(run));
    write_sweep_artifacts(out, c, scene, run.plan);
    finish(out, c, {{"run", to_json(run)}, {"cover", to_json(cover)}}, pass);
    return pass ? 0 : 1;
}

int cmd_verify(const Config& c) {
    const SweepOptions opt = sweep_opts(c);
    Output out(c);
    json rows = json::array();
    bool all = true;
    std::ostringstream csv;
    csv << "row,value,limit,pass\n";
    auto row = [&](const std::string& name, double value, double limit, bool pass, json detail) {
        rows.push_back({{"row", name}, {"value", value}, {"limit", limit}, {"pass", pass}, {"detail", std::move(detail)}});
        csv << name << ',' << value << ',' << limit << ',' << (pass ? "PASS" : "FAIL") << '\n';
        all = all && pass;
    };

    {
        const Scene seg({{{0, 0}, {0, 1}}}, {false});
        const SweepPlan p = single_step(rot_translation({1, 0}));
        const AreaReport a = sweep_area(seg, p, opt);
        const double tol = 2 * a.cell * 4;
        row("raster_unit_square", std::abs(a.area - 1.0), tol, std::abs(a.area - 1.0) <= tol, to_json(a));
        const double ratio = trivial_sweep_bound(seg, p, opt);
        row("trivial_bound_unit_square", ratio, 1.0 + tol, std::abs(ratio - 1.0) <= tol, json::object());
        const NeighborhoodReport nb = verify_small_neighborhood(seg, p, 0.01, opt);
        row("small_neighborhood_unit_square", nb.inflated, nb.bound, nb.ok,
            {{"base", nb.base}, {"boundary", nb.boundary}, {"eta", nb.eta}});
    }
    const Scene circle = make_circle(1.0, 720);
    {
        SweepPlan p;
        p.steps.push_back({rot_translation({1, 0}), -1});
        p.steps.push_back({rot_translation({0, 1}), -1});
        const double ratio = trivial_sweep_bound(circle, p, opt);
        row("trivial_bound_circle_two_steps", ratio, 1.2, ratio <= 1.2, json::object());
    }
    {
        std::vector<double> ratios;
        json detail = json::array();
        for (double d : {0.2, 0.1, 0.05}) {
            const RatioReport r = verify_lemma_31(circle, Direction(0.0), d, {1, 0}, opt);
            ratios.push_back(r.ratio);
            detail.push_back(to_json(r));
        }
        const double hi = *std::max_element(ratios.begin(), ratios.end());
        const double lo = *std::min_element(ratios.begin(), ratios.end());
        row("slab_translation_stable_constant", hi / lo, 3.0, hi / lo <= 3.0, detail);
    }
    {
        json detail = json::array();
        double worst = -1e300;
        for (double d : {0.1, 0.05}) {
            const RatioReport r = verify_lemma_33(circle, rot_from_center({3, 0}, kPi / 2), d, opt);
            worst = std::max(worst, r.area.area - r.area.uncertainty - r.quadrature);
            detail.push_back(to_json(r));
        }
        row("normal_ball_rotation_quadrature_dominates", worst, 0.0, worst <= 0.0, detail);
    }
    {
        const RatioReport a = verify_lemma_31(circle, Direction(0.0), 0.1, {1, 0}, opt);
        const RatioReport b = verify_lemma_33(circle, rot_translation({1, 0}), 0.1, opt);
        const double diff = std::abs(a.area.area - b.area.area);
        const double tol = a.area.uncertainty + b.area.uncertainty + 2 * a.area.cell;
        row("translation_cross_check", diff, tol, diff <= tol, json::object());
    }
    out.text("area.csv", csv.str());
    finish(out, c, {{"rows", rows}}, all);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kakeya needle planner and sweep verifier"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* s) {
        s->add_option("--scene", c.scene_file, "Scene JSON file");
        s->add_option("--gen", c.gen, "circle:r,n | segment:len | convex:a,b,c,span,n");
        s->add_option("--eps", c.eps, "Area budget eps (eps0 for limit sets)");
        s->add_option("--depth", c.depth, "Number of levels");
        s->add_option("--target", c.target, "Translation target x,y");
        s->add_option("--target-rot", c.target_rot, "Rotation target zx,zy,phi");
        s->add_option("--line", c.line, "Line p1..p2 (points x,y or x,y,w) or inf");
        s->add_option("--grid-max", c.grid_max, "Raster cells along the longer side");
        s->add_option("--frames", c.frames, "SVG frames");
        s->add_option("--out", c.out, "Output directory");
        s->add_option("--seed", c.seed, "Seed recorded in the report");
    };
    auto* tr = app.add_subcommand("translate-needle", "Translate a scene with small swept area");
    auto* ro = app.add_subcommand("rotate-needle", "Move a scene by a rigid motion with small swept area");
    auto* be = app.add_subcommand("besicovitch", "Finite-depth limit-set approximant");
    auto* ni = app.add_subcommand("nikodym", "Shifted copies of an approximant over a square");
    auto* ve = app.add_subcommand("verify-lemmas", "Run the sweep lemma suite");
    for (auto* s : {tr, ro, be, ni, ve}) common(s);
    for (auto* s : {be, ni}) s->add_option("--mode", c.mode, "translation | rotation");
    ni->add_option("--gamma", c.gamma_gen, "Generator for the covering curve (default: the scene)");
    ni->add_option("--grid", c.grid, "Shifts per side");
    ni->add_option("--square", c.square, "Target square x0,y0,x1,y1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    try {
        if (*tr) return c.command = "translate-needle", cmd_translate(c);
        if (*ro) return c.command = "rotate-needle", cmd_rotate(c);
        if (*be) return c.command = "besicovitch", cmd_besicovitch(c);
        if (*ni) return c.command = "nikodym", cmd_nikodym(c);
        if (*ve) return c.command = "verify-lemmas", cmd_verify(c);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
