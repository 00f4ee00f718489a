#pragma once

#include "kakeya/geom.hpp"
#include "kakeya/raster.hpp"
#include "kakeya/se2.hpp"

#include <limits>
#include <vector>

namespace kakeya {

// Part of the scene removed while it moves along one plan step.
struct Deletion {
    enum class Kind { None, Tangent, Normal };
    Kind kind = Kind::None;
    Direction theta{};
    ProjLine ell{};
    ProjPoint u{};
    double eps = 0.0;

    static Deletion none() { return {}; }
    static Deletion tangent(Direction theta, double eps);
    static Deletion normal(const ProjLine& ell, const ProjPoint& u, double eps);
    // The part of the scene that is kept (and swept).
    Scene kept(const Scene& scene) const;
    // Predicate for a single point with tangent theta_x: true when deleted.
    bool deletes(Vec2 x, Direction theta_x) const;
};

struct SweepStep {
    Rot generator = Rot::identity();
    int deletion = -1;  // index into SweepPlan::deletions, -1 for none
};

// Intrinsic motion sequence g_k = g_{k-1} o map(generator_k) starting at `start`.
struct SweepPlan {
    Isometry start{};
    std::vector<SweepStep> steps;
    std::vector<Deletion> deletions;

    Isometry end() const;
    // Sum of the R^3 norms of the generators.
    double path_length() const;
};

struct SweepOptions {
    int grid_max = 2048;
    double cell = 0.0;  // overrides grid_max when positive
    bool two_resolution = true;
};

struct AreaReport {
    double area = 0.0;         // estimate at the fine resolution
    double area_coarse = 0.0;  // estimate at cell size h
    double uncertainty = 0.0;  // |area(h) - area(h/2)|
    double cell = 0.0;         // h
    int nx = 0, ny = 0;
    long long samples = 0;
    double seconds = 0.0;
};

// Bounding box of every position of the scene along the plan.
Box sweep_bounds(const Scene& scene, const SweepPlan& plan);
// Marks the swept, deletion-filtered scene into `grid`; returns the number of stamped points.
long long stamp_plan(RasterGrid& grid, const Scene& scene, const SweepPlan& plan);
// Stamps an explicit list of global isometries; throws when two consecutive
// samples move a point of B(0, radius) by more than h / 4.
long long stamp_samples(RasterGrid& grid, const Scene& scene, const std::vector<Isometry>& samples);
RasterGrid sweep_raster(const Scene& scene, const SweepPlan& plan, const SweepOptions& opt = {});
AreaReport sweep_area(const Scene& scene, const SweepPlan& plan, const SweepOptions& opt = {});

// Area of the union of several sweeps on one raster pair; the raster also
// covers `extra` when it is valid. `fine` receives the h/2 raster.
AreaReport union_area(const Scene& scene, const std::vector<SweepPlan>& parts, const SweepOptions& opt = {},
                      const Box& extra = {}, RasterGrid* fine = nullptr);
// Stamps sweeps into an existing raster.
long long stamp_union(RasterGrid& grid, const Scene& scene, const std::vector<SweepPlan>& parts);

// Boundary length of the union of several sweeps on one raster of about
// grid_max cells across.
double swept_boundary(const Scene& scene, const std::vector<SweepPlan>& parts, int grid_max);

// A single translation or rotation step without deletion.
SweepPlan single_step(const Rot& x);

struct RatioReport {
    bool defined = false;
    double delta = 0.0;
    double h1 = 0.0;      // H^1 of the filtered set R
    double motion = 0.0;  // |v| or |y|
    AreaReport area;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    // Integral of the normal velocity over R; an upper bound for the swept area.
    double quadrature = std::numeric_limits<double>::quiet_NaN();
    bool precondition_ok = true;
};

RatioReport verify_lemma_31(const Scene& scene, Direction theta, double delta, Vec2 v, const SweepOptions& opt = {});
RatioReport verify_lemma_33(const Scene& scene, const Rot& rot, double delta, const SweepOptions& opt = {});
// Points of the scene whose normal line passes within delta of `c` in the projective metric.
SlabSplit scene_normal_ball(const Scene& scene, const ProjPoint& c, double delta);
// Integral over the scene of |normal component of the velocity field of x|.
double normal_velocity_integral(const Scene& scene, const Rot& x);

struct NeighborhoodReport {
    double eta = 0.0;
    double base = 0.0;
    double inflated = 0.0;
    double boundary = 0.0;
    double bound = 0.0;  // base + 2 eta boundary + pi eta^2
    double quadratic = 0.0;
    bool ok = false;
};
NeighborhoodReport verify_small_neighborhood(const Scene& scene, const SweepPlan& plan, double eta,
                                             const SweepOptions& opt = {});
// area / (H^1(E) path length); zero for an empty path.
double trivial_sweep_bound(const Scene& scene, const SweepPlan& plan, const SweepOptions& opt = {});

}  // namespace kakeya
