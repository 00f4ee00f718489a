#pragma once

#include "kakeya/blind.hpp"
#include "kakeya/rotation_plan.hpp"
#include "kakeya/sweep.hpp"

#include <vector>

namespace kakeya {

// One recorded deletion ball of a sampled path point.
struct BallRecord {
    int level = 0;
    bool kept = false;  // false: the point lies on an ignored piece and nothing is deleted
    Deletion deletion;
    double strip = 0.0;  // radius of the strip B(ell, strip) in rotation mode
    double deleted_length = 0.0;  // H^1 of the deleted part of the scene
    int components = 0;           // connected components of the deleted part
};

struct PathSample {
    double t = 0.0;  // fraction of the level-D steps
    std::vector<BallRecord> balls;  // one per level, level 1 first
};

struct LevelRecord {
    int level = 0;
    double eps = 0.0;          // eps_n
    double piece_eps = 0.0;    // per piece budget eps_n / m
    int parents = 0;           // pieces of the previous level (m)
    long long pieces = 0;      // pieces of this level
    double nesting = 0.0;      // sup probe distance to the previous level
    double nesting_budget = 0.0;
    AreaReport area;           // sweep with this level's deletions
    double max_deleted = 0.0;  // max over samples of the deleted length
    int max_components = 0;
};

struct BesicovitchRun {
    enum class Mode { Translation, Rotation };
    Mode mode = Mode::Translation;
    int depth = 0;
    double eps0 = 0.0;
    std::vector<LevelRecord> levels;
    SweepPlan plan;  // level-D plan with level-D deletions
    std::vector<PathSample> samples;
    std::vector<ProjPoint> exceptional;
    bool exceptional_avoided = true;
    double budget = 0.0;  // sum of eps_n over the levels

    double eps_at(int level) const;
};

struct BesicovitchOptions {
    SweepOptions sweep;
    TreeLimits limits;
    FinenessOptions fine;
    int samples = 64;
    bool measure_levels = true;  // raster every level, not only the last
};

// eps_n = eps0 2^{-n}.
double level_eps(double eps0, int level);

// P0 is a polyline path of translations starting at path.front().
BesicovitchRun besicovitch_translation(const Scene& scene, const std::vector<Vec2>& path, double eps0, int depth,
                                       const BesicovitchOptions& opt = {});

// P0 is a sequence of motions; `ell` is the level-0 line and must contain
// every motion's projective center (a default line is chosen when absent).
BesicovitchRun besicovitch_rotation(const Scene& scene, const std::vector<Rot>& path, double eps0, int depth,
                                    const std::vector<ProjPoint>& exceptional, const ProjLine* ell = nullptr,
                                    const BesicovitchOptions& opt = {});

// Points of P^2 met by the normal lines of a positive length part of the
// scene: normal directions at infinity of every segment and finite points
// where at least three segment normals concur. Sorted by concurrent length,
// capped at `cap`.
std::vector<ProjPoint> exceptional_points(const Scene& scene, int cap = 10000, double tol = 1e-7);

// Connected components and total length of a scene (pieces touching at endpoints join).
int scene_components(const Scene& scene, double tol = 1e-9);

struct NikodymCover {
    std::vector<Vec2> shifts;
    Box target;
    double coverage = 0.0;  // fraction of target cells covered by the Gamma copies
    AreaReport area;        // union of the shifted deleted sweeps of E
    double budget = 0.0;    // |shifts| times the run budget
    bool interior = false;  // the Gamma sweep has an interior cell
};

std::vector<Vec2> shift_grid(const Box& square, int per_side);

// Throws PreconditionError when the Gamma sweep has no interior cell.
NikodymCover nikodym_assemble(const Scene& scene, const Scene& gamma, const BesicovitchRun& run,
                              const std::vector<Vec2>& shifts, const Box& target, const SweepOptions& opt = {});

}  // namespace kakeya
