#include "kakeya/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace kakeya {

using nlohmann::json;

namespace {

json vec(Vec2 v) { return json::array({v.x, v.y}); }
json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json rot(const Rot& r) {
    if (r.is_identity()) return nullptr;
    return vec(r.coords());
}

const char* status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::Continue: return "continue";
        case NodeStatus::StopIgnored: return "ignored";
        case NodeStatus::StopKept: return "kept";
    }
    return "continue";
}

json zigzag(const ZigzagRecord& z) {
    return {{"node", z.node},         {"step", z.step},       {"theta0", z.theta0},
            {"theta1", z.theta1},     {"fineness", z.fineness}, {"multiplicity", z.multiplicity},
            {"deviation", z.deviation}, {"budget", z.budget}, {"drift", z.drift}};
}

}  // namespace

json to_json(const AreaReport& r) {
    return {{"area", r.area},   {"area_coarse", r.area_coarse}, {"uncertainty", r.uncertainty},
            {"cell", r.cell},   {"nx", r.nx},                   {"ny", r.ny},
            {"samples", r.samples}};
}

json to_json(const Deletion& d) {
    switch (d.kind) {
        case Deletion::Kind::None: return {{"kind", "none"}};
        case Deletion::Kind::Tangent: return {{"kind", "tangent"}, {"theta", d.theta.angle()}, {"eps", d.eps}};
        case Deletion::Kind::Normal:
            return {{"kind", "normal"}, {"line", vec(d.ell.n())}, {"u", vec(d.u.h())}, {"eps", d.eps}};
    }
    return nullptr;
}

json to_json(const SweepPlan& p) {
    json steps = json::array();
    for (const auto& s : p.steps) steps.push_back({rot(s.generator), s.deletion});
    json dels = json::array();
    for (const auto& d : p.deletions) dels.push_back(to_json(d));
    return {{"start", {{"phi", p.start.phi}, {"v", vec(p.start.v)}}}, {"steps", steps}, {"deletions", dels}};
}

json to_json(const BlindTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
        json j = {{"index", n.index},   {"parent", n.parent}, {"theta", n.theta},   {"length", n.length},
                  {"beta", n.beta},     {"gamma", n.gamma},   {"eps", n.eps},       {"alpha", n.alpha},
                  {"sign", n.sign},     {"k", n.k},           {"ones", n.ones},     {"status", status_name(n.status)}};
        j["interval"] = n.interval.empty ? json(nullptr) : json::array({n.interval.lo, n.interval.hi});
        if (n.leaf() && n.status == NodeStatus::StopKept) j["deletion"] = n.deletion.angle();
        nodes.push_back(std::move(j));
    }
    return {{"eps", t.eps}, {"max_depth", t.max_depth()}, {"nodes", nodes}};
}

json to_json(const TranslationPlan& p) {
    json segs = json::array();
    for (const auto& s : p.segments) segs.push_back({s.a.x, s.a.y, s.b.x, s.b.y, s.node});
    json zz = json::array();
    for (const auto& z : p.zigzags) zz.push_back(zigzag(z));
    return {{"kind", "translation"}, {"target", vec(p.target)}, {"eps", p.eps},
            {"endpoint", vec(p.endpoint())}, {"endpoint_error", p.endpoint_error},
            {"tree", to_json(p.tree)}, {"eta", p.eta}, {"zigzags", zz}, {"segments", segs}};
}

json to_json(const RotationPlan& p) {
    json pieces = json::array();
    for (const auto& s : p.pieces) pieces.push_back({rot(s.rot), s.node, s.sigma});
    json zz = json::array();
    for (const auto& z : p.zigzags) zz.push_back(zigzag(z));
    json drift = json::array();
    for (const auto& r : p.center_drift_table()) {
        drift.push_back({{"node", r.node},          {"z", vec(r.z.h())},
                         {"alpha", r.alpha},        {"max_drift", r.max_drift},
                         {"max_to_line", r.max_to_line}, {"coord_drift", r.coord_drift},
                         {"pieces", r.pieces},      {"within", r.within()}});
    }
    json q = json::array();
    for (int i = 0; i < 3; ++i) q.push_back(json::array({p.Q(i, 0), p.Q(i, 1), p.Q(i, 2)}));
    const Isometry end = p.endpoint();
    return {{"kind", "rotation"},
            {"target", rot(p.target)},
            {"line", vec(p.ell.n())},
            {"eps", p.eps},
            {"Q", q},
            {"endpoint", {{"phi", end.phi}, {"v", vec(end.v)}}},
            {"drift_budget", p.drift_budget},
            {"max_coord_drift", p.max_coord_drift},
            {"center_avoided", p.center_avoided},
            {"tree", to_json(p.tree)},
            {"eta", p.eta},
            {"zigzags", zz},
            {"center_drift", drift},
            {"pieces", pieces}};
}

json to_json(const BesicovitchRun& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"level", l.level},
                          {"eps", l.eps},
                          {"piece_eps", l.piece_eps},
                          {"parents", l.parents},
                          {"pieces", l.pieces},
                          {"nesting", l.nesting},
                          {"nesting_budget", l.nesting_budget},
                          {"area", to_json(l.area)},
                          {"max_deleted", l.max_deleted},
                          {"max_components", l.max_components}});
    }
    json samples = json::array();
    for (const auto& s : r.samples) {
        json balls = json::array();
        for (const auto& b : s.balls) {
            json j = to_json(b.deletion);
            j["level"] = b.level;
            j["kept"] = b.kept;
            if (r.mode == BesicovitchRun::Mode::Rotation) j["strip"] = b.strip;
            j["deleted_length"] = b.deleted_length;
            j["components"] = b.components;
            balls.push_back(std::move(j));
        }
        samples.push_back({{"t", s.t}, {"balls", balls}});
    }
    json ex = json::array();
    for (const auto& p : r.exceptional) ex.push_back(vec(p.h()));
    return {{"mode", r.mode == BesicovitchRun::Mode::Translation ? "translation" : "rotation"},
            {"depth", r.depth},
            {"eps0", r.eps0},
            {"budget", r.budget},
            {"levels", levels},
            {"exceptional", ex},
            {"exceptional_avoided", r.exceptional_avoided},
            {"samples", samples},
            {"plan_steps", r.plan.steps.size()}};
}

json to_json(const NikodymCover& c) {
    json shifts = json::array();
    for (Vec2 q : c.shifts) shifts.push_back(vec(q));
    return {{"shifts", shifts},
            {"target", json::array({c.target.x0, c.target.y0, c.target.x1, c.target.y1})},
            {"coverage", c.coverage},
            {"area", to_json(c.area)},
            {"budget", c.budget},
            {"interior", c.interior}};
}

json to_json(const RatioReport& r) {
    json j = {{"defined", r.defined}, {"delta", r.delta}, {"h1", r.h1}, {"motion", r.motion},
              {"area", to_json(r.area)}, {"precondition_ok", r.precondition_ok}};
    j["ratio"] = std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr);
    j["quadrature"] = std::isfinite(r.quadrature) ? json(r.quadrature) : json(nullptr);
    return j;
}

std::string levels_csv(const BesicovitchRun& run) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "level,eps,piece_eps,parents,pieces,area,area_coarse,uncertainty,budget\n";
    for (const auto& l : run.levels) {
        os << l.level << ',' << l.eps << ',' << l.piece_eps << ',' << l.parents << ',' << l.pieces << ','
           << l.area.area << ',' << l.area.area_coarse << ',' << l.area.uncertainty << ',' << run.budget << '\n';
    }
    return os.str();
}

std::string area_csv(const AreaReport& r, double eps) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "eps,area,area_coarse,uncertainty,cell,nx,ny\n";
    os << eps << ',' << r.area << ',' << r.area_coarse << ',' << r.uncertainty << ',' << r.cell << ',' << r.nx << ','
       << r.ny << '\n';
    return os.str();
}

std::string path_svg(const Scene& scene, const SweepPlan& plan, const SvgOptions& opt) {
    Box box = sweep_bounds(scene, plan);
    if (!box.valid()) box = Box{-1, -1, 1, 1};
    const double span = std::max({box.width(), box.height(), 1e-9});
    box = box.padded(0.02 * span);
    const double scale = opt.width / std::max(box.width(), box.height());
    const double w = box.width() * scale, h = box.height() * scale;
    std::ostringstream os;
    os << std::setprecision(6);
    auto px = [&](Vec2 p) {
        std::ostringstream s;
        s << std::setprecision(6) << (p.x - box.x0) * scale << ',' << (box.y1 - p.y) * scale;
        return s.str();
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << ' ' << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const std::size_t n = plan.steps.size();
    std::vector<Isometry> pre{plan.start};
    for (const auto& s : plan.steps) pre.push_back(pre.back().compose(s.generator.map()));

    std::vector<std::pair<Scene, Scene>> split(plan.deletions.size() + 1);
    std::vector<bool> ready(split.size(), false);
    auto parts = [&](int del) -> const std::pair<Scene, Scene>& {
        const std::size_t slot = static_cast<std::size_t>(del + 1);
        if (!ready[slot]) {
            if (del < 0) {
                split[slot] = {scene, Scene()};
            } else {
                const Deletion& d = plan.deletions[del];
                const SlabSplit s = scene_split(scene, [&](Vec2 x, Direction t) { return d.deletes(x, t); });
                split[slot] = {s.outside, s.inside};
            }
            ready[slot] = true;
        }
        return split[slot];
    };
    auto draw = [&](const Scene& sc, const Isometry& g, const char* style) {
        for (std::size_t i = 0; i < sc.polylines().size(); ++i) {
            const auto& pl = sc.polylines()[i];
            os << "<polyline " << style << " points=\"";
            for (Vec2 p : pl) os << px(g.apply(p)) << ' ';
            if (sc.closed()[i] && !pl.empty()) os << px(g.apply(pl.front()));
            os << "\"/>\n";
        }
    };
    const int frames = std::max(1, opt.frames);
    for (int f = 0; f < frames; ++f) {
        const double t = frames == 1 ? 0.0 : static_cast<double>(f) / (frames - 1) * static_cast<double>(n);
        std::size_t k = std::min(n, static_cast<std::size_t>(std::floor(t)));
        Isometry g = pre[k];
        int del = -1;
        if (k < n) {
            g = g.compose(partial_map(plan.steps[k].generator, t - static_cast<double>(k)));
            del = plan.steps[k].deletion;
        } else if (n > 0) {
            del = plan.steps[n - 1].deletion;
        }
        const auto& [kept, gone] = parts(del);
        draw(kept, g, "fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"0.6\" stroke-opacity=\"0.5\"");
        draw(gone, g,
             "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.6\" stroke-dasharray=\"2,2\" stroke-opacity=\"0.7\"");
    }
    os << "<polyline fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"1\" points=\"";
    for (const Isometry& g : pre) os << px(g.v) << ' ';
    os << "\"/>\n</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace kakeya
