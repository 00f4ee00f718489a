#include "kakeya/rotation_plan.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kakeya {

namespace {

Vec3 planar(Vec2 v) { return {v.x, v.y, 0.0}; }

}  // namespace

Eigen::Matrix3d lift_rotation_Q(Vec2 v, const Rot& x, const ProjLine& ell) {
    if (x.is_identity()) throw PreconditionError("cannot lift the identity");
    const Vec3 xc = x.coords();
    if (std::abs(norm(v) - xc.norm()) > 1e-9 * (1 + xc.norm())) throw PreconditionError("|v| must equal |x|");
    if (!ell.contains(projective_center(x), 1e-9)) throw PreconditionError("line does not pass through the center of x");
    const Vec3 n = ell.n().normalized();
    Vec3 f1 = xc - n * n.dot(xc);
    f1.normalize();
    const Vec3 f2 = n.cross(f1);
    Eigen::Matrix3d F, E;
    F << f1, f2, n;
    const Vec3 e1 = planar(v).normalized(), e3(0, 0, 1);
    E << e1, e3.cross(e1), e3;
    return F * E.transpose();
}

Eigen::Matrix3d lift_rotation_Q(const Rot& x, const ProjLine& ell) {
    if (x.is_identity()) throw PreconditionError("cannot lift the identity");
    return lift_rotation_Q(Vec2{x.norm(), 0.0}, x, ell);
}

double drift_radius_analytic(const Vec3& x, double radius_z, double radius_ell) {
    return x.norm() * std::sin(std::min({radius_z, radius_ell, kPi / 2}));
}

double drift_radius(const Vec3& x, const ProjPoint& z, double radius_z, const ProjLine& ell, double radius_ell) {
    constexpr int kSamples = 32;
    static const std::vector<Vec3> sphere = [] {
        // Fibonacci sphere.
        std::vector<Vec3> s;
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < kSamples; ++i) {
            const double y = 1.0 - 2.0 * (i + 0.5) / kSamples;
            const double rad = std::sqrt(1.0 - y * y);
            s.emplace_back(rad * std::cos(golden * i), y, rad * std::sin(golden * i));
        }
        return s;
    }();
    auto fits = [&](double r) {
        for (const Vec3& s : sphere) {
            const ProjPoint p(x + r * s);
            if (!(proj_distance(p, z) < radius_z) || !(proj_distance(p, ell) < radius_ell)) return false;
        }
        return true;
    };
    double lo = 0.0, hi = x.norm() * (1 - 1e-9);
    if (fits(hi)) return hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

Vec3 RotationPlan::intended(int node) const {
    const BlindNode& n = tree.nodes.at(node);
    return Q * planar(unit(n.theta) * n.length);
}

ProjPoint RotationPlan::center(int node) const { return ProjPoint(intended(node)); }

Isometry RotationPlan::endpoint() const {
    Isometry g;
    for (const auto& p : pieces) g = g.compose(p.rot.map());
    return g;
}

SweepPlan RotationPlan::sweep_plan() const {
    SweepPlan p;
    std::vector<int> deletion_of(tree.nodes.size(), -1);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        if (n.leaf() && n.status == NodeStatus::StopKept) {
            deletion_of[i] = static_cast<int>(p.deletions.size());
            p.deletions.push_back(Deletion::normal(ell, deletion_center[i], eps));
        }
    }
    for (const auto& s : pieces) p.steps.push_back({s.rot, deletion_of[s.node]});
    return p;
}

std::vector<CenterDriftRow> RotationPlan::center_drift_table() const {
    std::vector<CenterDriftRow> rows;
    std::vector<int> row_of(tree.nodes.size(), -1);
    for (const auto& p : pieces) {
        if (row_of[p.node] < 0) {
            row_of[p.node] = static_cast<int>(rows.size());
            CenterDriftRow r;
            r.node = p.node;
            r.z = center(p.node);
            r.alpha = tree.nodes[p.node].alpha;
            rows.push_back(r);
        }
        CenterDriftRow& r = rows[row_of[p.node]];
        const ProjPoint zt = projective_center(p.rot);
        r.max_drift = std::max(r.max_drift, proj_distance(zt, r.z));
        r.max_to_line = std::max(r.max_to_line, proj_distance(zt, ell));
        r.coord_drift = std::max(r.coord_drift, (p.rot.coords() / p.sigma - intended(p.node)).norm());
        ++r.pieces;
    }
    return rows;
}

namespace {

Rot rot_of(const Vec3& c) { return Rot::from_coords(c); }

struct StepChain {
    std::vector<long long> n;
    std::vector<Rot> bad;  // y0_j per copy
    Rot last_good = Rot::identity();
    double last_sigma = 0.0;
    std::vector<double> bad_sigma;  // per copy, relative to the bad child
    double drift = 0.0;
};

class RotationBuilder {
public:
    RotationBuilder(RotationPlan& plan, const Scene& scene, const FinenessOptions& fine)
        : plan_(plan), scene_(scene), fine_(fine), radius_(scene.bounding_radius()) {}

    void run() {
        const BlindTree& tree = plan_.tree;
        plan_.pieces.push_back({plan_.target, 0, 1.0});
        const int depth = tree.max_depth();
        for (int d = 0; d < depth; ++d) generation(d);
    }

private:
    void generation(int d) {
        const BlindTree& tree = plan_.tree;
        std::vector<std::vector<int>> pieces_of(tree.nodes.size());
        for (std::size_t s = 0; s < plan_.pieces.size(); ++s) {
            const int node = plan_.pieces[s].node;
            if (tree.nodes[node].depth() == d && !tree.nodes[node].leaf()) pieces_of[node].push_back(static_cast<int>(s));
        }
        // Start isometry of every piece, for the boundary budgets.
        std::vector<Isometry> starts(plan_.pieces.size());
        Isometry g;
        for (std::size_t s = 0; s < plan_.pieces.size(); ++s) {
            starts[s] = g;
            g = g.compose(plan_.pieces[s].rot.map());
        }
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            if (pieces_of[i].empty()) continue;
            std::vector<SweepPlan> parts;
            for (int s : pieces_of[i]) {
                SweepPlan p;
                p.start = starts[s];
                p.steps.push_back({plan_.pieces[s].rot, -1});
                parts.push_back(std::move(p));
            }
            const double boundary = swept_boundary(scene_, parts, fine_.budget_grid);
            plan_.eta[i] = boundary > 0 ? tree.nodes[i].eps / (2 * boundary) : tree.nodes[i].eps;
        }
        std::vector<RotPiece> next;
        long long count = 0;
        for (const auto& piece : plan_.pieces) {
            const BlindNode& n = tree.nodes[piece.node];
            if (n.depth() != d || n.leaf()) {
                next.push_back(piece);
                continue;
            }
            const StepChain chain = plan_chain(piece);
            expand(chain, 1, n, next, count);
        }
        plan_.pieces = std::move(next);
    }

    // Deviation bound of a coordinate corner for points of B(0, radius).
    double orbit_bound(const Vec3& corner) const { return corner.head<2>().norm() + std::abs(corner.z()) * radius_; }

    StepChain plan_chain(const RotPiece& piece) {
        const BlindTree& tree = plan_.tree;
        const int id = piece.node;
        const BlindNode& n = tree.nodes[id];
        const BlindShape shape = blind_shape(n.beta, n.gamma);
        const auto mirror = [&](Vec2 v) { return n.sign > 0 ? v : Vec2{v.x, -v.y}; };
        const double rot_theta = n.theta;
        auto full = [&](Vec2 shape_vec) { return Vec3(plan_.Q * planar(rotate(mirror(shape_vec), rot_theta) * n.length)); };

        // Budget shares in proportion to the raw corners of the intended blind.
        std::vector<double> raw(shape.k);
        double raw_sum = 0.0;
        Vec3 g_prev = plan_.intended(id);
        for (int j = 0; j < shape.k; ++j) {
            const Vec3 b = full(shape.bad[j]);
            const Vec3 gdir = g_prev.normalized();
            raw[j] = orbit_bound(b - gdir * gdir.dot(b));
            raw_sum += raw[j];
            g_prev = full(shape.good[j]);
        }
        const double eta = plan_.eta[id];
        const double r = plan_.drift_budget;

        StepChain c;
        Rot G = piece.rot;
        double sigma = piece.sigma;
        double drift = (G.coords() / sigma - plan_.intended(id)).norm();
        double m = 1.0;
        for (int j = 1; j <= shape.k; ++j) {
            const Vec3 b = full(shape.bad[j - 1]) * sigma;
            const Vec3 gdir = G.coords().normalized();
            const double dev = orbit_bound(b - gdir * gdir.dot(b));
            const double share = raw_sum > 0 ? eta * raw[j - 1] / raw_sum : eta;
            long long nj = share > 0 ? fineness_for(dev, share, fine_.scale, fine_.cap) : 1;
            const Vec3 target_good = full(shape.good[j - 1]);
            ZigzagSplit z;
            double new_drift = 0.0;
            const double allowed = drift + (r - drift) / 2;
            while (true) {
                z = zigzag_split(G, rot_of(b), static_cast<int>(std::min<long long>(nj, 1LL << 30)));
                new_drift = (z.x1_tilde.coords() / sigma - target_good).norm();
                if (new_drift <= allowed) break;
                nj *= 2;
                if (nj > fine_.cap) {
                    std::ostringstream os;
                    os << "drift budget infeasible at node " << (n.index.empty() ? "root" : n.index) << " step " << j
                       << " (drift " << new_drift << ", allowed " << allowed << ")";
                    throw InfeasibleError(os.str());
                }
            }
            c.n.push_back(nj);
            c.bad.push_back(z.y0);
            c.bad_sigma.push_back(b.norm() / nj / plan_.intended(n.child[0]).norm());
            m *= static_cast<double>(nj);
            if (m > static_cast<double>(fine_.piece_cap)) throw InfeasibleError("realized plan exceeds the piece cap");
            if (nj > 1 || j == 1) {
                ZigzagRecord rec;
                rec.node = id;
                rec.step = j;
                rec.theta0 = n.theta - n.sign * n.beta;
                rec.theta1 = n.theta + n.sign * j * n.gamma;
                rec.fineness = nj;
                rec.multiplicity = static_cast<long long>(m);
                rec.deviation = dev / static_cast<double>(nj);
                rec.budget = share;
                rec.drift = new_drift;
                plan_.zigzags.push_back(rec);
            }
            drift = new_drift;
            G = z.y1;
            sigma /= static_cast<double>(nj);
        }
        c.last_good = G;
        c.last_sigma = sigma;
        c.drift = drift;
        plan_.max_coord_drift = std::max(plan_.max_coord_drift, drift);
        return c;
    }

    void emit(std::vector<RotPiece>& out, const Rot& rot, int node, double sigma, bool mergeable) {
        if (mergeable && !out.empty() && out.back().node == node && merge_open_) {
            // Same projective center: coordinates add exactly.
            out.back().rot = Rot::from_coords(out.back().rot.coords() + rot.coords());
            out.back().sigma += sigma;
        } else {
            out.push_back({rot, node, sigma});
        }
        merge_open_ = mergeable;
    }

    void expand(const StepChain& c, int j, const BlindNode& n, std::vector<RotPiece>& out, long long& count) {
        const int k = static_cast<int>(c.n.size());
        for (long long copy = 0; copy < c.n[j - 1]; ++copy) {
            emit(out, c.bad[j - 1], n.child[0], c.bad_sigma[j - 1], true);
            if (j < k) {
                expand(c, j + 1, n, out, count);
            } else {
                emit(out, c.last_good, n.child[1], c.last_sigma, false);
            }
            if (++count > fine_.piece_cap) throw InfeasibleError("realized plan exceeds the piece cap");
        }
    }

    RotationPlan& plan_;
    const Scene& scene_;
    const FinenessOptions& fine_;
    double radius_;
    bool merge_open_ = false;
};

}  // namespace

RotationPlan build_rotation_plan(const Scene& scene, const Rot& x, const ProjLine& ell, double eps,
                                 const TreeLimits& limits, const FinenessOptions& fine, const RotationOptions& opt) {
    if (!(eps > 0)) throw PreconditionError("eps must be positive");
    if (scene.is_empty()) throw PreconditionError("scene is empty");
    if (x.is_identity()) throw PreconditionError("target must not be the identity");
    RotationPlan plan;
    plan.target = x;
    plan.ell = ell;
    plan.eps = eps;
    plan.Q = lift_rotation_Q(x, ell);
    plan.tree = build_blind_tree(x.norm(), 0.0, eps, limits);
    const BlindTree& tree = plan.tree;
    plan.eta.assign(tree.nodes.size(), 0.0);
    plan.deletion_center.assign(tree.nodes.size(), ProjPoint());

    double r = 0.5 * x.norm();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const Vec3 xi = plan.intended(static_cast<int>(i));
        r = std::min(r, 0.5 * xi.norm());
        r = std::min(r, drift_radius(xi, ProjPoint(xi), 2 * tree.nodes[i].alpha, ell, eps));
    }
    plan.drift_budget = r;

    // Deletion centers; the center of x corresponds to direction 0.
    std::vector<ProjPoint> avoid = opt.avoid;
    if (opt.avoid_center) avoid.push_back(plan.center(0));
    auto clear = [&](double theta) {
        const ProjPoint u(plan.Q * planar(unit(theta)));
        for (const auto& p : avoid)
            if (!(proj_distance(u, p) > eps)) return false;
        return true;
    };
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const BlindNode& n = tree.nodes[i];
        if (!(n.leaf() && n.status == NodeStatus::StopKept)) continue;
        const double mid = 0.5 * (n.interval.lo + n.interval.hi + kPi);
        double theta = mid;
        if (!clear(mid)) {
            // Any center within `slack` of mid still covers the complement of I.
            const double slack = std::max(0.0, eps - 0.5 * (kPi - n.interval.length())) * 0.999;
            bool done = false;
            for (int s = 1; s <= 32 && !done; ++s) {
                for (double sgn : {1.0, -1.0}) {
                    const double t = mid + sgn * slack * s / 32;
                    if (clear(t)) {
                        theta = t;
                        done = true;
                        break;
                    }
                }
            }
            if (!done) plan.center_avoided = false;
        }
        plan.deletion_center[i] = ProjPoint(plan.Q * planar(unit(theta)));
    }

    RotationBuilder(plan, scene, fine).run();

    const Isometry end = plan.endpoint(), want = x.map();
    const double R = 1.0 + scene.bounding_radius();
    const Vec2 probes[3] = {{R, 0}, {0, R}, {-R, -R}};
    double err = 0.0;
    for (Vec2 u : probes) err = std::max(err, norm(end.apply(u) - want.apply(u)));
    if (err > 1e-9 * (1 + x.norm()) * R) {
        std::ostringstream os;
        os << "rotation plan endpoint drifted by " << err;
        throw std::logic_error(os.str());
    }
    return plan;
}

}  // namespace kakeya
