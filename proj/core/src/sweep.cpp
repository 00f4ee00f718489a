#include "kakeya/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>

namespace kakeya {

Deletion Deletion::tangent(Direction theta, double eps) {
    Deletion d;
    d.kind = Kind::Tangent;
    d.theta = theta;
    d.eps = eps;
    return d;
}

Deletion Deletion::normal(const ProjLine& ell, const ProjPoint& u, double eps) {
    Deletion d;
    d.kind = Kind::Normal;
    d.ell = ell;
    d.u = u;
    d.eps = eps;
    return d;
}

Scene Deletion::kept(const Scene& scene) const {
    switch (kind) {
        case Kind::None: return scene;
        case Kind::Tangent: return scene_slab(scene, theta, eps).outside;
        case Kind::Normal: return scene_normal_slab(scene, ell, u, eps).outside;
    }
    return scene;
}

bool Deletion::deletes(Vec2 x, Direction theta_x) const {
    switch (kind) {
        case Kind::None: return false;
        case Kind::Tangent: return dir_distance(theta_x, theta) < eps;
        case Kind::Normal: return normal_hits(x, theta_x, ell, u, eps);
    }
    return false;
}

Isometry SweepPlan::end() const {
    Isometry g = start;
    for (const auto& s : steps) g = g.compose(s.generator.map());
    return g;
}

double SweepPlan::path_length() const {
    double l = 0.0;
    for (const auto& s : steps) l += s.generator.is_identity() ? 0.0 : s.generator.norm();
    return l;
}

SweepPlan single_step(const Rot& x) {
    SweepPlan p;
    p.steps.push_back({x, -1});
    return p;
}

namespace {

double max_norm(const std::vector<Vec2>& pts) {
    double r = 0.0;
    for (Vec2 p : pts) r = std::max(r, norm(p));
    return r;
}

class KeptCache {
public:
    KeptCache(const Scene& scene, const SweepPlan& plan, double spacing)
        : scene_(scene), plan_(plan), spacing_(spacing), cache_(plan.deletions.size() + 1) {}

    const std::vector<Vec2>& points(int deletion) {
        auto& slot = cache_[deletion + 1];
        if (!slot) {
            if (deletion < -1 || deletion >= static_cast<int>(plan_.deletions.size()))
                throw std::out_of_range("sweep step refers to an unknown deletion");
            const Scene kept = deletion < 0 ? scene_ : plan_.deletions[deletion].kept(scene_);
            slot = kept.sample_points(spacing_);
        }
        return *slot;
    }

private:
    const Scene& scene_;
    const SweepPlan& plan_;
    double spacing_;
    std::vector<std::optional<std::vector<Vec2>>> cache_;
};

long long stamp_points(RasterGrid& grid, const std::vector<Vec2>& pts, const Isometry& g) {
    const double c = std::cos(g.phi), s = std::sin(g.phi);
    for (Vec2 p : pts) grid.mark({c * p.x - s * p.y + g.v.x, s * p.x + c * p.y + g.v.y});
    return static_cast<long long>(pts.size());
}

}  // namespace

Box sweep_bounds(const Scene& scene, const SweepPlan& plan) {
    Box box;
    if (scene.is_empty()) return box;
    const std::vector<Vec2> hull = scene.hull();
    const double radius = max_norm(hull);
    auto add = [&](const Isometry& g, double pad) {
        for (Vec2 p : hull) {
            const Vec2 q = g.apply(p);
            box.expand(q + Vec2{pad, pad});
            box.expand(q - Vec2{pad, pad});
        }
    };
    Isometry g = plan.start;
    add(g, 0.0);
    for (const auto& st : plan.steps) {
        const Rot& x = st.generator;
        if (x.is_identity()) continue;
        if (!x.is_translation()) {
            const int m = 16 + static_cast<int>(std::ceil(std::abs(x.phi()) * 32 / kPi));
            const double pad = max_displacement(x, radius) / m;
            for (int k = 1; k < m; ++k) add(g.compose(partial_map(x, static_cast<double>(k) / m)), pad);
        }
        g = g.compose(x.map());
        add(g, 0.0);
    }
    return box;
}

long long stamp_plan(RasterGrid& grid, const Scene& scene, const SweepPlan& plan) {
    if (scene.is_empty()) return 0;
    const double step = grid.h() / 4;
    KeptCache cache(scene, plan, step);
    const double radius = scene.bounding_radius();
    long long count = 0;
    Isometry g = plan.start;
    if (plan.steps.empty()) return stamp_points(grid, cache.points(-1), g);
    for (const auto& st : plan.steps) {
        const auto& pts = cache.points(st.deletion);
        const Rot& x = st.generator;
        if (x.is_identity()) {
            if (!pts.empty()) count += stamp_points(grid, pts, g);
            continue;
        }
        const Isometry end = g.compose(x.map());
        if (!pts.empty()) {
            const int n = steps_for(x, radius, step);
            for (int k = 0; k < n; ++k) count += stamp_points(grid, pts, g.compose(partial_map(x, double(k) / n)));
            count += stamp_points(grid, pts, end);
        }
        g = end;
    }
    return count;
}

long long stamp_samples(RasterGrid& grid, const Scene& scene, const std::vector<Isometry>& samples) {
    const double step = grid.h() / 4;
    const std::vector<Vec2> pts = scene.sample_points(step);
    const double radius = scene.bounding_radius();
    long long count = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (k > 0) {
            // sup over |u| <= radius of |(e^{i a} - e^{i b}) u + (v_a - v_b)|
            const double d = 2 * std::abs(std::sin((samples[k].phi - samples[k - 1].phi) / 2)) * radius +
                             norm(samples[k].v - samples[k - 1].v);
            if (d > step * (1 + 1e-9)) throw std::invalid_argument("sample spacing exceeds the h/4 step bound");
        }
        count += stamp_points(grid, pts, samples[k]);
    }
    return count;
}

namespace {

double cell_for(const Box& box, const SweepOptions& opt) {
    if (opt.cell > 0) return opt.cell;
    if (opt.grid_max <= 0) throw std::invalid_argument("grid_max must be positive");
    return std::max({box.width(), box.height(), 1e-6}) / opt.grid_max;
}

}  // namespace

RasterGrid sweep_raster(const Scene& scene, const SweepPlan& plan, const SweepOptions& opt) {
    const Box box = sweep_bounds(scene, plan);
    if (!box.valid()) return RasterGrid(0, 0, 1, 1, 1);
    const double h = cell_for(box, opt);
    RasterGrid grid = RasterGrid::with_cell(box.padded(2 * h), h);
    stamp_plan(grid, scene, plan);
    return grid;
}

AreaReport sweep_area(const Scene& scene, const SweepPlan& plan, const SweepOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    AreaReport r;
    const Box box = sweep_bounds(scene, plan);
    if (!box.valid()) return r;
    const double h = cell_for(box, opt);
    RasterGrid coarse = RasterGrid::with_cell(box.padded(2 * h), h);
    r.samples = stamp_plan(coarse, scene, plan);
    r.cell = h;
    r.nx = coarse.nx();
    r.ny = coarse.ny();
    r.area_coarse = coarse.area();
    r.area = r.area_coarse;
    if (opt.two_resolution) {
        RasterGrid fine = RasterGrid::with_cell(box.padded(2 * h), h / 2);
        r.samples += stamp_plan(fine, scene, plan);
        r.area = fine.area();
        r.uncertainty = std::abs(r.area_coarse - r.area);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

long long stamp_union(RasterGrid& grid, const Scene& scene, const std::vector<SweepPlan>& parts) {
    long long n = 0;
    for (const auto& p : parts) n += stamp_plan(grid, scene, p);
    return n;
}

AreaReport union_area(const Scene& scene, const std::vector<SweepPlan>& parts, const SweepOptions& opt,
                      const Box& extra, RasterGrid* fine) {
    const auto t0 = std::chrono::steady_clock::now();
    AreaReport r;
    Box box = extra;
    for (const auto& p : parts) box.expand(sweep_bounds(scene, p));
    if (!box.valid()) return r;
    const double h = cell_for(box, opt);
    RasterGrid coarse = RasterGrid::with_cell(box.padded(2 * h), h);
    r.samples = stamp_union(coarse, scene, parts);
    r.cell = h;
    r.nx = coarse.nx();
    r.ny = coarse.ny();
    r.area_coarse = coarse.area();
    r.area = r.area_coarse;
    if (opt.two_resolution || fine) {
        RasterGrid f = RasterGrid::with_cell(box.padded(2 * h), h / 2);
        r.samples += stamp_union(f, scene, parts);
        r.area = f.area();
        r.uncertainty = std::abs(r.area_coarse - r.area);
        if (fine) *fine = std::move(f);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

double swept_boundary(const Scene& scene, const std::vector<SweepPlan>& parts, int grid_max) {
    Box box;
    for (const auto& p : parts) box.expand(sweep_bounds(scene, p));
    if (!box.valid()) return 0.0;
    const double h = std::max({box.width(), box.height(), 1e-6}) / grid_max;
    RasterGrid grid = RasterGrid::with_cell(box.padded(2 * h), h);
    for (const auto& p : parts) stamp_plan(grid, scene, p);
    return grid.boundary_length();
}

SlabSplit scene_normal_ball(const Scene& scene, const ProjPoint& c, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("ball radius must be positive");
    return scene_split(scene, [&](Vec2 x, Direction t) { return proj_distance(c, normal_line(x, t)) < delta; });
}

double normal_velocity_integral(const Scene& scene, const Rot& x) {
    if (x.is_identity()) return 0.0;
    auto normal_speed = [&](Vec2 p, Vec2 tau) {
        if (x.is_translation()) return cross(tau, x.v());
        return x.phi() * dot(p - x.center(), tau);
    };
    double total = 0.0;
    for (const auto& s : scene.segments()) {
        const Vec2 tau = (s.b - s.a) / s.length;
        const double f0 = normal_speed(s.a, tau), f1 = normal_speed(s.b, tau);
        // Exact integral of |linear| over the segment.
        const double mean = (f0 * f1 >= 0) ? std::abs(f0 + f1) / 2 : (f0 * f0 + f1 * f1) / (2 * std::abs(f0 - f1));
        total += mean * s.length;
    }
    return total;
}

RatioReport verify_lemma_31(const Scene& scene, Direction theta, double delta, Vec2 v, const SweepOptions& opt) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    if (norm(v) == 0.0) throw std::invalid_argument("translation must be nonzero");
    RatioReport r;
    r.delta = delta;
    r.motion = norm(v);
    r.precondition_ok = delta <= 0.3;
    const Scene slab = scene_slab(scene, theta, delta).inside;
    r.h1 = slab.total_length();
    if (slab.is_empty()) return r;
    r.defined = true;
    const Rot x = rot_translation(v);
    r.area = sweep_area(slab, single_step(x), opt);
    r.ratio = r.area.area / (delta * r.h1 * r.motion);
    r.quadrature = normal_velocity_integral(slab, x);
    return r;
}

RatioReport verify_lemma_33(const Scene& scene, const Rot& rot, double delta, const SweepOptions& opt) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    if (rot.is_identity()) throw std::invalid_argument("rotation must not be the identity");
    RatioReport r;
    r.delta = delta;
    r.motion = rot.norm();
    r.precondition_ok = delta <= 0.1 / (1 + scene.bounding_radius());
    const Scene part = scene_normal_ball(scene, projective_center(rot), delta).inside;
    r.h1 = part.total_length();
    if (part.is_empty()) return r;
    r.defined = true;
    r.area = sweep_area(part, single_step(rot), opt);
    r.ratio = r.area.area / (delta * r.h1 * r.motion);
    r.quadrature = normal_velocity_integral(part, rot);
    return r;
}

NeighborhoodReport verify_small_neighborhood(const Scene& scene, const SweepPlan& plan, double eta,
                                             const SweepOptions& opt) {
    if (eta < 0) throw std::invalid_argument("eta must be nonnegative");
    NeighborhoodReport r;
    r.eta = eta;
    const Box box = sweep_bounds(scene, plan);
    if (!box.valid()) {
        r.ok = true;
        return r;
    }
    const double h = cell_for(box, opt);
    RasterGrid grid = RasterGrid::with_cell(box.padded(eta + 3 * h), h);
    stamp_plan(grid, scene, plan);
    r.base = grid.area();
    r.boundary = grid.boundary_length();
    r.inflated = eta > 0 ? grid.dilated(eta).area() : r.base;
    r.quadratic = kPi * eta * eta;
    r.bound = r.base + 2 * eta * r.boundary + r.quadratic;
    r.ok = r.inflated <= r.bound;
    return r;
}

double trivial_sweep_bound(const Scene& scene, const SweepPlan& plan, const SweepOptions& opt) {
    const double len = plan.path_length();
    if (len == 0.0 || scene.is_empty()) return 0.0;
    return sweep_area(scene, plan, opt).area / (scene.total_length() * len);
}

}  // namespace kakeya
