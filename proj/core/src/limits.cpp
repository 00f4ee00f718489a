#include "kakeya/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace kakeya {

double level_eps(double eps0, int level) { return std::ldexp(eps0, -level); }

double BesicovitchRun::eps_at(int level) const { return level_eps(eps0, level); }

namespace {

// A motion of one level, with the deletion it carries and its ancestry.
struct LevelPiece {
    Rot rot = Rot::identity();
    int deletion = -1;
    int parent = -1;
    ProjLine ell;  // rotation mode: line of the plan that produced the piece
    double delta = 0.0;  // rotation mode: radius of that plan
    double strip = 0.0;
};

struct Level {
    std::vector<LevelPiece> pieces;
    std::vector<Deletion> deletions;
    std::vector<double> strip_of;  // per deletion
};

SweepPlan level_plan(const Level& level, const Isometry& start, bool with_deletions) {
    SweepPlan p;
    p.start = start;
    if (with_deletions) p.deletions = level.deletions;
    for (const auto& piece : level.pieces) p.steps.push_back({piece.rot, with_deletions ? piece.deletion : -1});
    return p;
}

// Global isometry before every piece, plus the end.
std::vector<Isometry> prefix(const Level& level, const Isometry& start) {
    std::vector<Isometry> g{start};
    for (const auto& piece : level.pieces) g.push_back(g.back().compose(piece.rot.map()));
    return g;
}

std::vector<Vec2> probe_points(const Scene& scene) {
    const double r = std::max(scene.bounding_radius(), 1e-9);
    return {{r, 0}, {0, r}, {-r, -r}};
}

// Largest distance of a child vertex to the parent's orbit, over the probes.
double nesting_distance(const Scene& scene, const Level& parent, const Level& child, const Isometry& start) {
    const auto probes = probe_points(scene);
    const auto gp = prefix(parent, start);
    const auto gc = prefix(child, start);
    constexpr int kOrbit = 64;
    std::vector<std::vector<Isometry>> orbit(parent.pieces.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < child.pieces.size(); ++k) {
        const int p = child.pieces[k].parent;
        auto& o = orbit[p];
        if (o.empty()) {
            for (int s = 0; s <= kOrbit; ++s)
                o.push_back(gp[p].compose(partial_map(parent.pieces[p].rot, static_cast<double>(s) / kOrbit)));
        }
        const Isometry g = gc[k + 1];
        double best = 1e300;
        for (const Isometry& h : o) {
            double d = 0.0;
            for (Vec2 u : probes) d = std::max(d, norm(g.apply(u) - h.apply(u)));
            best = std::min(best, d);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

struct DeletedStats {
    double length = 0.0;
    int components = 0;
};

DeletedStats deleted_stats(const Scene& scene, const Deletion& d) {
    if (d.kind == Deletion::Kind::None) return {};
    const SlabSplit split = scene_split(scene, [&](Vec2 x, Direction t) { return d.deletes(x, t); });
    return {split.inside.total_length(), scene_components(split.inside)};
}

void record_level(BesicovitchRun& run, const Scene& scene, const std::vector<Level>& levels, const Isometry& start,
                  const BesicovitchOptions& opt) {
    const int depth = static_cast<int>(levels.size()) - 1;
    for (int n = 1; n <= depth; ++n) {
        LevelRecord& rec = run.levels[n - 1];
        rec.pieces = static_cast<long long>(levels[n].pieces.size());
        if (opt.measure_levels || n == depth) rec.area = sweep_area(scene, level_plan(levels[n], start, true), opt.sweep);
    }
    run.plan = level_plan(levels[depth], start, true);

    std::vector<std::map<int, DeletedStats>> cache(depth + 1);
    const long long count = static_cast<long long>(levels[depth].pieces.size());
    for (int s = 0; s < opt.samples && count > 0; ++s) {
        PathSample ps;
        ps.t = (s + 0.5) / opt.samples;
        long long q = std::min(count - 1, static_cast<long long>(ps.t * count));
        std::vector<BallRecord> balls;
        for (int n = depth; n >= 1; --n) {
            const LevelPiece& piece = levels[n].pieces[q];
            BallRecord b;
            b.level = n;
            b.kept = piece.deletion >= 0;
            if (b.kept) {
                b.deletion = levels[n].deletions[piece.deletion];
                b.strip = levels[n].strip_of[piece.deletion];
                auto it = cache[n].find(piece.deletion);
                if (it == cache[n].end()) it = cache[n].emplace(piece.deletion, deleted_stats(scene, b.deletion)).first;
                b.deleted_length = it->second.length;
                b.components = it->second.components;
                LevelRecord& rec = run.levels[n - 1];
                rec.max_deleted = std::max(rec.max_deleted, b.deleted_length);
                rec.max_components = std::max(rec.max_components, b.components);
            }
            balls.push_back(b);
            q = piece.parent;
        }
        std::reverse(balls.begin(), balls.end());
        ps.balls = std::move(balls);
        run.samples.push_back(std::move(ps));
    }
}

void check_nesting(LevelRecord& rec, const Scene& scene, const Level& parent, const Level& child,
                   const Isometry& start, double eps_n, const FinenessOptions& fine) {
    rec.nesting = nesting_distance(scene, parent, child, start);
    const double b = swept_boundary(scene, {level_plan(parent, start, false)}, fine.budget_grid);
    rec.nesting_budget = b > 0 ? eps_n / (2 * b) : eps_n;
    if (rec.nesting > rec.nesting_budget) {
        std::ostringstream os;
        os << "level " << rec.level << " leaves the deviation budget of the previous level (" << rec.nesting << " > "
           << rec.nesting_budget << ")";
        throw InfeasibleError(os.str());
    }
}

void validate(const Scene& scene, double eps0, int depth) {
    if (depth < 1) throw PreconditionError("depth must be at least 1");
    if (!(eps0 > 0)) throw PreconditionError("eps0 must be positive");
    if (scene.is_empty()) throw PreconditionError("scene is empty");
}

}  // namespace

BesicovitchRun besicovitch_translation(const Scene& scene, const std::vector<Vec2>& path, double eps0, int depth,
                                       const BesicovitchOptions& opt) {
    validate(scene, eps0, depth);
    if (path.size() < 2) throw PreconditionError("path needs at least two points");
    BesicovitchRun run;
    run.mode = BesicovitchRun::Mode::Translation;
    run.depth = depth;
    run.eps0 = eps0;
    const Isometry start{0.0, path.front()};

    std::vector<Level> levels(1);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const Vec2 d = path[i] - path[i - 1];
        if (norm(d) > 0) levels[0].pieces.push_back({rot_translation(d), -1, -1});
    }
    if (levels[0].pieces.empty()) throw PreconditionError("path has zero length");

    for (int n = 1; n <= depth; ++n) {
        const Level& prev = levels[n - 1];
        Level cur;
        LevelRecord rec;
        rec.level = n;
        rec.eps = level_eps(eps0, n);
        rec.parents = static_cast<int>(prev.pieces.size());
        rec.piece_eps = rec.eps / rec.parents;
        for (std::size_t p = 0; p < prev.pieces.size(); ++p) {
            TranslationPlan tp;
            try {
                tp = build_translation_plan(scene, prev.pieces[p].rot.v(), rec.piece_eps, opt.limits, opt.fine);
            } catch (const InfeasibleError& e) {
                throw InfeasibleError("level " + std::to_string(n) + ": " + e.what());
            }
            const SweepPlan sp = tp.sweep_plan();
            const int offset = static_cast<int>(cur.deletions.size());
            for (const auto& d : sp.deletions) {
                cur.deletions.push_back(d);
                cur.strip_of.push_back(0.0);
            }
            for (const auto& step : sp.steps)
                cur.pieces.push_back({step.generator, step.deletion < 0 ? -1 : offset + step.deletion,
                                      static_cast<int>(p)});
        }
        check_nesting(rec, scene, prev, cur, start, rec.eps, opt.fine);
        run.budget += rec.eps;
        run.levels.push_back(rec);
        levels.push_back(std::move(cur));
    }
    record_level(run, scene, levels, start, opt);
    return run;
}

BesicovitchRun besicovitch_rotation(const Scene& scene, const std::vector<Rot>& path, double eps0, int depth,
                                    const std::vector<ProjPoint>& exceptional, const ProjLine* ell,
                                    const BesicovitchOptions& opt) {
    validate(scene, eps0, depth);
    BesicovitchRun run;
    run.mode = BesicovitchRun::Mode::Rotation;
    run.depth = depth;
    run.eps0 = eps0;
    run.exceptional = exceptional;
    const Isometry start{};

    std::vector<Level> levels(1);
    for (const Rot& r : path) {
        if (r.is_identity()) continue;
        LevelPiece piece{r, -1, -1};
        const ProjPoint z = projective_center(r);
        if (ell) {
            if (!ell->contains(z, 1e-9)) throw PreconditionError("line does not pass through the center of a path motion");
            piece.ell = *ell;
        } else {
            // Line through z and the coordinate axis least aligned with it.
            Vec3 e = Vec3::Zero();
            int axis = 0;
            z.h().cwiseAbs().minCoeff(&axis);
            e[axis] = 1.0;
            piece.ell = ProjLine(z.h().cross(e));
        }
        piece.delta = kPi / 2;
        piece.strip = kPi / 2;
        levels[0].pieces.push_back(piece);
    }
    if (levels[0].pieces.empty()) throw PreconditionError("path has no motion");

    for (int n = 1; n <= depth; ++n) {
        const Level& prev = levels[n - 1];
        Level cur;
        LevelRecord rec;
        rec.level = n;
        rec.eps = level_eps(eps0, n);
        rec.parents = static_cast<int>(prev.pieces.size());
        rec.piece_eps = rec.eps / rec.parents;
        RotationOptions ropt;
        const std::size_t m = std::min<std::size_t>(exceptional.size(), static_cast<std::size_t>(n));
        ropt.avoid.assign(exceptional.begin(), exceptional.begin() + m);
        for (std::size_t p = 0; p < prev.pieces.size(); ++p) {
            const LevelPiece& parent = prev.pieces[p];
            ProjLine line = parent.ell;
            double strip = kPi / 2;
            if (n > 1) {
                // Tilt the parent line about the point of it farthest from z.
                const ProjPoint z = projective_center(parent.rot);
                const double d = proj_distance(z, parent.ell);
                const Vec3 far = parent.ell.n().cross(z.h());
                line = ProjLine(z.h().cross(far.normalized()));
                strip = parent.delta - d;
                if (!(strip > 0)) throw InfeasibleError("strip nesting failed: realized center outside the parent strip");
            }
            const double delta = std::min(rec.piece_eps, n > 1 ? 0.9 * strip : rec.piece_eps);
            RotationPlan rp;
            try {
                rp = build_rotation_plan(scene, parent.rot, line, delta, opt.limits, opt.fine, ropt);
            } catch (const InfeasibleError& e) {
                throw InfeasibleError("level " + std::to_string(n) + ": " + e.what());
            }
            run.exceptional_avoided = run.exceptional_avoided && rp.center_avoided;
            const SweepPlan sp = rp.sweep_plan();
            const int offset = static_cast<int>(cur.deletions.size());
            for (const auto& d : sp.deletions) {
                cur.deletions.push_back(d);
                cur.strip_of.push_back(strip);
            }
            for (const auto& step : sp.steps) {
                LevelPiece piece{step.generator, step.deletion < 0 ? -1 : offset + step.deletion, static_cast<int>(p)};
                piece.ell = line;
                piece.delta = delta;
                piece.strip = strip;
                cur.pieces.push_back(piece);
            }
        }
        check_nesting(rec, scene, prev, cur, start, rec.eps, opt.fine);
        run.budget += rec.eps;
        run.levels.push_back(rec);
        levels.push_back(std::move(cur));
    }
    record_level(run, scene, levels, start, opt);
    return run;
}

std::vector<ProjPoint> exceptional_points(const Scene& scene, int cap, double tol) {
    struct Candidate {
        Vec3 h;
        std::vector<int> segments;
        double length = 0.0;
    };
    const auto& segs = scene.segments();
    auto key = [&](const Vec3& h) {
        return std::array<long long, 3>{std::llround(h.x() / tol), std::llround(h.y() / tol), std::llround(h.z() / tol)};
    };
    std::map<std::array<long long, 3>, Candidate> infinite, finite;
    for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
        // Key on the normal direction in [0, pi), wrapping pi to 0.
        const double a = Direction(segs[i].theta.angle() + kPi / 2).angle();
        const long long period = std::llround(kPi / tol);
        const std::array<long long, 3> k{std::llround(a / tol) % period, 0, 0};
        auto& c = infinite[k];
        c.h = Vec3(std::cos(a), std::sin(a), 0.0);
        c.segments.push_back(i);
    }
    std::vector<ProjLine> normals;
    for (const auto& s : segs) normals.push_back(normal_line((s.a + s.b) * 0.5, s.theta));
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const Vec3 c = normals[i].n().cross(normals[j].n());
            if (c.norm() < 1e-12) continue;
            Vec3 h = c.normalized();
            if (std::abs(h.z()) <= 1e-12) continue;  // parallel normals meet at infinity
            if (h.z() < 0) h = -h;
            auto& cand = finite[key(h)];
            cand.h = h;
            cand.segments.push_back(static_cast<int>(i));
            cand.segments.push_back(static_cast<int>(j));
        }
    }
    std::vector<Candidate> out;
    auto collect = [&](std::map<std::array<long long, 3>, Candidate>& m, std::size_t min_segments) {
        for (auto& [k, c] : m) {
            std::sort(c.segments.begin(), c.segments.end());
            c.segments.erase(std::unique(c.segments.begin(), c.segments.end()), c.segments.end());
            if (c.segments.size() < min_segments) continue;
            for (int s : c.segments) c.length += segs[s].length;
            out.push_back(std::move(c));
        }
    };
    collect(finite, 3);
    collect(infinite, 1);
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.segments.front() < b.segments.front();
    });
    std::vector<ProjPoint> pts;
    for (const auto& c : out) {
        if (static_cast<int>(pts.size()) >= cap) break;
        pts.emplace_back(c.h);
    }
    return pts;
}

int scene_components(const Scene& scene, double tol) {
    const auto& pls = scene.polylines();
    const int n = static_cast<int>(pls.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto touches = [&](const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
        for (Vec2 p : {a.front(), a.back()})
            for (Vec2 q : {b.front(), b.back()})
                if (norm(p - q) <= tol) return true;
        return false;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (touches(pls[i], pls[j])) parent[find(i)] = find(j);
    int count = 0;
    for (int i = 0; i < n; ++i) count += find(i) == i;
    return count;
}

std::vector<Vec2> shift_grid(const Box& square, int per_side) {
    std::vector<Vec2> out;
    if (per_side <= 0 || !square.valid()) return out;
    for (int j = 0; j < per_side; ++j)
        for (int i = 0; i < per_side; ++i)
            out.push_back({square.x0 + (i + 0.5) * square.width() / per_side,
                           square.y0 + (j + 0.5) * square.height() / per_side});
    return out;
}

NikodymCover nikodym_assemble(const Scene& scene, const Scene& gamma, const BesicovitchRun& run,
                              const std::vector<Vec2>& shifts, const Box& target, const SweepOptions& opt) {
    NikodymCover cover;
    cover.shifts = shifts;
    cover.target = target;
    cover.budget = static_cast<double>(shifts.size()) * run.budget;
    if (shifts.empty()) return cover;

    SweepPlan bare = run.plan;
    bare.deletions.clear();
    for (auto& s : bare.steps) s.deletion = -1;
    {
        const RasterGrid g = sweep_raster(gamma, bare, opt);
        cover.interior = g.has_interior_cell();
        if (!cover.interior) throw PreconditionError("the sweep of Gamma along the path has empty interior");
    }

    auto shifted = [&](const SweepPlan& p) {
        std::vector<SweepPlan> out;
        for (Vec2 q : shifts) {
            SweepPlan c = p;
            c.start = Isometry{0.0, q}.compose(p.start);
            out.push_back(std::move(c));
        }
        return out;
    };
    const auto copies_e = shifted(run.plan);
    const auto copies_g = shifted(bare);
    Box box = target;
    for (const auto& p : copies_e) box.expand(sweep_bounds(scene, p));
    for (const auto& p : copies_g) box.expand(sweep_bounds(gamma, p));

    RasterGrid fine;
    cover.area = union_area(scene, copies_e, opt, box, &fine);
    RasterGrid g(fine.x0(), fine.y0(), fine.h(), fine.nx(), fine.ny());
    stamp_union(g, gamma, copies_g);
    long long inside = 0, covered = 0;
    for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const Vec2 c = g.cell_center(ix, iy);
            if (c.x < target.x0 || c.x > target.x1 || c.y < target.y0 || c.y > target.y1) continue;
            ++inside;
            covered += g.test(ix, iy);
        }
    }
    cover.coverage = inside > 0 ? static_cast<double>(covered) / inside : 0.0;
    return cover;
}

}  // namespace kakeya
