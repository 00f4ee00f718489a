#include "kakeya/blind.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace kakeya {

int choose_k(double beta, double gamma) {
    if (!(gamma > 0) || gamma > beta) throw PreconditionError("choose_k needs 0 < gamma <= beta");
    const double a = kPi / 2 - 2 * beta;
    if (!(a > gamma)) throw PreconditionError("no k >= 1 fits; beta is too large");
    long long k = static_cast<long long>(std::ceil(a / gamma)) - 1;
    while (k > 1 && k * gamma >= a) --k;
    while ((k + 1) * gamma < a) ++k;
    if (k > std::numeric_limits<int>::max()) throw InfeasibleError("blind step count overflows");
    return static_cast<int>(k);
}

BlindShape blind_shape(double beta, double gamma) {
    BlindShape s;
    s.beta = beta;
    s.gamma = gamma;
    s.k = choose_k(beta, gamma);
    const Vec2 ub = unit(-beta);
    Vec2 g{1, 0};
    s.bad.reserve(s.k);
    s.good.reserve(s.k);
    for (int j = 1; j <= s.k; ++j) {
        // Decompose g = p ub + q ug by Cramer's rule.
        const Vec2 ug = unit(j * gamma);
        const double det = cross(ub, ug);
        const double p = cross(g, ug) / det, q = cross(ub, g) / det;
        s.bad.push_back(ub * p);
        s.good.push_back(ug * q);
        s.bad_length += p;
        g = ug * q;
    }
    s.good_length = norm(g);
    return s;
}

namespace {

Vec2 mirror(Vec2 v, Sign sign) { return sign > 0 ? v : Vec2{v.x, -v.y}; }

class BlindEmitter {
public:
    BlindEmitter(const BlindShape& shape, Vec2 a, Vec2 b, Sign sign, const std::vector<long long>& fineness)
        : shape_(shape), fineness_(fineness) {
        const Vec2 d = b - a;
        const double len = norm(d), theta = std::atan2(d.y, d.x);
        for (int j = 0; j < shape.k; ++j) {
            bad_.push_back(rotate(mirror(shape.bad[j], sign), theta) * len);
            good_.push_back(rotate(mirror(shape.good[j], sign), theta) * len);
        }
        cursor_ = a;
    }

    void run() { emit_step(1, 1.0); }
    std::vector<BlindPiece>& pieces() { return out_; }

private:
    long long n_at(int j) const {
        return fineness_.empty() ? 1 : fineness_[static_cast<std::size_t>(j - 1)];
    }

    void emit(Vec2 v, bool good, int step) {
        const Vec2 next = cursor_ + v;
        if (!out_.empty() && out_.back().good == good && !good) {
            out_.back().b = next;
        } else {
            out_.push_back({cursor_, next, good, step});
        }
        cursor_ = next;
    }

    // Realizes g_{j-1} / m as N_j copies of (b_j, g_j) / (m N_j).
    void emit_step(int j, double m) {
        if (j > shape_.k) {
            emit(good_.back() / m, true, j);
            return;
        }
        const long long n = n_at(j);
        const double mn = m * static_cast<double>(n);
        for (long long c = 0; c < n; ++c) {
            emit(bad_[j - 1] / mn, false, j);
            emit_step(j + 1, mn);
        }
    }

    const BlindShape& shape_;
    const std::vector<long long>& fineness_;
    std::vector<Vec2> bad_, good_;
    Vec2 cursor_;
    std::vector<BlindPiece> out_;
};

std::vector<BlindPiece> realize_blind(const BlindShape& shape, Vec2 a, Vec2 b, Sign sign,
                                      const std::vector<long long>& fineness) {
    if (!fineness.empty() && static_cast<int>(fineness.size()) != shape.k)
        throw std::invalid_argument("fineness schedule must have k entries");
    BlindEmitter e(shape, a, b, sign, fineness);
    e.run();
    auto& out = e.pieces();
    // Endpoints are preserved exactly; rounding is absorbed by the last piece.
    out.back().b = b;
    return std::move(out);
}

}  // namespace

std::vector<BlindPiece> venetian_blind(Vec2 a, Vec2 b, double beta, double gamma, Sign sign,
                                       const std::vector<long long>& fineness) {
    if (norm(b - a) == 0.0) throw std::invalid_argument("blind needs a nondegenerate segment");
    return realize_blind(blind_shape(beta, gamma), a, b, sign >= 0 ? 1 : -1, fineness);
}

RealInterval RealInterval::with(double t) const {
    if (empty) return {false, t, t};
    return {false, std::min(lo, t), std::max(hi, t)};
}

Sign select_sign(const RealInterval& interval, double theta) {
    if (interval.empty) return 1;
    return theta >= 0.5 * (interval.lo + interval.hi) ? 1 : -1;
}

Sign select_sign(const DirInterval& interval, Direction theta) {
    if (interval.is_empty() || interval.is_full()) return 1;
    const double offset = std::remainder(theta.angle() - interval.anchor().angle(), kPi);
    return offset >= 0 ? 1 : -1;
}

NodeParams schedule_params(const std::string& index, double eps_global, double h1, const BlindNode* parent) {
    if (!(eps_global > 0) || !(h1 > 0)) throw std::invalid_argument("schedule needs eps > 0 and positive length");
    NodeParams p;
    p.eps = eps_global * std::pow(4.0, -static_cast<double>(index.size()) - 1);
    const bool good = index.empty() || index.back() == '1';
    if (good) {
        const int ones = static_cast<int>(std::count(index.begin(), index.end(), '1'));
        p.beta = std::min(kBetaMax, p.eps / h1);
        if (parent) p.beta = std::min(p.beta, parent->beta);
        if (ones > 0) p.beta = std::min(p.beta, 1.0 / ones);
    } else {
        if (!parent) throw std::invalid_argument("bad nodes need a parent");
        p.beta = parent->beta;
    }
    p.gamma = std::min(p.beta, p.eps / h1);
    return p;
}

int BlindTree::max_depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth());
    return d;
}

std::vector<int> BlindTree::leaves() const {
    std::vector<int> out;
    if (nodes.empty()) return out;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const auto& n = nodes[i];
        if (n.leaf()) {
            out.push_back(i);
        } else {
            stack.push_back(n.child[1]);
            stack.push_back(n.child[0]);
        }
    }
    return out;
}

NodeStatus stopping_rule(const BlindTree& tree, int node) {
    const BlindNode& n = tree.nodes.at(node);
    const double eps_k = tree.nodes.at(n.last_good).eps;
    if (n.length <= eps_k) return NodeStatus::StopIgnored;
    if (n.interval.length() > kPi - tree.eps) return NodeStatus::StopKept;
    if (n.depth() >= tree.limits.depth_cap) {
        std::ostringstream os;
        os << "node " << (n.index.empty() ? "root" : n.index.substr(0, 12) + "...") << " at depth " << n.depth()
           << " exceeds the depth cap " << tree.limits.depth_cap << " (length " << n.length << ", |I| "
           << n.interval.length() << ", beta " << n.beta << ")";
        throw InfeasibleError(os.str());
    }
    return NodeStatus::Continue;
}

namespace {

void finish_node(BlindTree& tree, int id) {
    BlindNode& n = tree.nodes[id];
    n.status = stopping_rule(tree, id);
    if (n.status == NodeStatus::StopKept) {
        n.deletion = Direction(0.5 * (n.interval.lo + n.interval.hi + kPi));
    }
    if (n.status == NodeStatus::Continue) {
        n.sign = select_sign(n.interval, n.theta);
        n.k = choose_k(n.beta, n.gamma);
        if (n.k > tree.limits.k_cap) {
            std::ostringstream os;
            os << "blind at node " << (n.index.empty() ? "root" : n.index.substr(0, 12)) << " (depth " << n.depth()
               << ") needs k = " << n.k << " zigzag steps, above the cap " << tree.limits.k_cap;
            throw InfeasibleError(os.str());
        }
    }
}

}  // namespace

BlindTree build_blind_tree(double length, double theta, double eps, const TreeLimits& limits) {
    if (!(length > 0) || !(eps > 0)) throw PreconditionError("tree needs positive length and eps");
    BlindTree tree;
    tree.eps = eps;
    tree.limits = limits;
    BlindNode root;
    root.theta = theta;
    root.length = length;
    const NodeParams p = schedule_params("", eps, length, nullptr);
    root.beta = p.beta;
    root.gamma = p.gamma;
    root.eps = p.eps;
    root.alpha = p.beta;
    root.last_good = 0;
    tree.nodes.push_back(root);
    finish_node(tree, 0);

    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        if (tree.nodes[id].status != NodeStatus::Continue) continue;
        const BlindShape shape = blind_shape(tree.nodes[id].beta, tree.nodes[id].gamma);
        tree.nodes[id].shrink = shape.ratio();
        for (int c = 0; c < 2; ++c) {
            if (static_cast<long long>(tree.nodes.size()) >= limits.node_cap)
                throw InfeasibleError("blind tree exceeds the node cap");
            const BlindNode& parent = tree.nodes[id];
            BlindNode child;
            child.index = parent.index + char('0' + c);
            child.parent = id;
            child.ones = parent.ones + c;
            child.length = parent.length * (c ? shape.good_length : shape.bad_length);
            child.theta = c ? parent.theta + parent.sign * shape.k * parent.gamma : parent.theta - parent.sign * parent.beta;
            child.interval = parent.interval.with(parent.theta).with(child.theta);
            const NodeParams cp = schedule_params(child.index, eps, child.length, &parent);
            child.beta = cp.beta;
            child.gamma = cp.gamma;
            child.eps = cp.eps;
            child.alpha = c ? parent.gamma : parent.beta;
            child.last_good = c ? static_cast<int>(tree.nodes.size()) : parent.last_good;
            tree.nodes.push_back(child);
            const int cid = static_cast<int>(tree.nodes.size()) - 1;
            tree.nodes[id].child[c] = cid;
            finish_node(tree, cid);
        }
        // Bad child first so runaway bad chains hit the cap early.
        stack.push_back(tree.nodes[id].child[1]);
        stack.push_back(tree.nodes[id].child[0]);
    }
    return tree;
}

TreeCheck check_tree(const BlindTree& tree) {
    TreeCheck r;
    auto fail = [&](const BlindNode& n, const std::string& what) {
        if (r.ok) {
            r.ok = false;
            r.failure = "node '" + n.index + "': " + what;
        }
    };
    constexpr double tol = 1e-12;
    for (const auto& n : tree.nodes) {
        if (n.gamma > n.beta * (1 + tol)) fail(n, "gamma > beta");
        if (n.gamma * n.length > n.eps * (1 + 1e-9)) fail(n, "gamma H1 > eps");
        if (n.good() && n.beta * n.length > n.eps * (1 + 1e-9)) fail(n, "beta H1 > eps at a good node");
        if (n.ones > 0 && n.beta > 1.0 / n.ones + tol) fail(n, "beta > 1/n");
        if (!n.index.empty() && !n.interval.dir().contains(Direction(n.theta), 1e-9)) fail(n, "theta outside I");
        if (n.parent >= 0) {
            const BlindNode& p = tree.nodes[n.parent];
            if (n.beta > p.beta * (1 + tol)) fail(n, "beta increased");
            if (!p.interval.empty && (n.interval.lo > p.interval.lo + tol || n.interval.hi < p.interval.hi - tol))
                fail(n, "interval not nested");
            if (n.length > p.shrink * p.length * (1 + 1e-9)) fail(n, "length above c(beta) H1(parent)");
            if (n.good()) {
                const double gap_child = kPi - std::min(kPi, n.interval.length());
                const double gap_parent = kPi - std::min(kPi, p.interval.length());
                if (gap_child > gap_parent / 2 + 2 * p.beta + p.gamma + 1e-9) fail(n, "interval growth too slow");
            }
        }
        if (!n.leaf()) {
            const BlindNode& a = tree.nodes[n.child[0]];
            const BlindNode& b = tree.nodes[n.child[1]];
            const Vec2 sum = unit(a.theta) * a.length + unit(b.theta) * b.length;
            if (norm(sum - unit(n.theta) * n.length) > 1e-10 * n.length) fail(n, "children do not sum to parent");
            if (!(n.shrink < 1)) fail(n, "shrink factor >= 1");
        } else {
            if (n.status == NodeStatus::Continue) fail(n, "unstopped leaf");
            if (n.status == NodeStatus::StopIgnored) r.ignored_budget += tree.nodes[n.last_good].eps;
            if (n.status == NodeStatus::StopKept) {
                const DirInterval rest = DirInterval::centered(n.deletion, tree.eps).complement();
                if (!n.interval.dir().contains(rest, 1e-9)) fail(n, "deletion ball does not cover the complement of I");
            }
        }
    }
    if (r.ignored_budget > tree.eps / 2 * (1 + 1e-12)) {
        r.ok = false;
        r.failure = "ignored budget exceeds eps / 2";
    }
    return r;
}

long long fineness_for(double dev_per_copy, double budget, double scale, long long cap) {
    if (!(budget > 0)) throw std::invalid_argument("deviation budget must be positive");
    long long n = 1;
    while (dev_per_copy / static_cast<double>(n) > budget) {
        n *= 2;
        if (n > cap) throw InfeasibleError("zigzag fineness exceeds the cap");
    }
    const long long scaled = static_cast<long long>(std::llround(static_cast<double>(n) * scale));
    if (scaled > cap) throw InfeasibleError("zigzag fineness exceeds the cap");
    return std::max<long long>(1, scaled);
}

Vec2 TranslationPlan::endpoint() const { return segments.empty() ? Vec2{} : segments.back().b; }

SweepPlan TranslationPlan::sweep_plan() const {
    SweepPlan p;
    std::vector<int> deletion_of(tree.nodes.size(), -1);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        if (n.leaf() && n.status == NodeStatus::StopKept) {
            deletion_of[i] = static_cast<int>(p.deletions.size());
            p.deletions.push_back(Deletion::tangent(n.deletion, eps));
        }
    }
    for (const auto& s : segments) p.steps.push_back({rot_translation(s.b - s.a), deletion_of[s.node]});
    return p;
}

namespace {

double piece_boundary(const Scene& scene, const std::vector<PlanSegment>& segs, const std::vector<int>& ids,
                      int grid_max) {
    std::vector<SweepPlan> parts;
    for (int id : ids) {
        SweepPlan p;
        p.start = Isometry{0.0, segs[id].a};
        p.steps.push_back({rot_translation(segs[id].b - segs[id].a), -1});
        parts.push_back(std::move(p));
    }
    return swept_boundary(scene, parts, grid_max);
}

}  // namespace

TranslationPlan build_translation_plan(const Scene& scene, Vec2 target, double eps, const TreeLimits& limits,
                                       const FinenessOptions& fine) {
    if (!(eps > 0)) throw PreconditionError("eps must be positive");
    if (scene.is_empty()) throw PreconditionError("scene is empty");
    TranslationPlan plan;
    plan.target = target;
    plan.eps = eps;
    if (norm(target) == 0.0) return plan;
    plan.tree = build_blind_tree(norm(target), std::atan2(target.y, target.x), eps, limits);
    const BlindTree& tree = plan.tree;
    plan.eta.assign(tree.nodes.size(), 0.0);
    plan.segments.push_back({{0, 0}, target, 0});

    const int depth = tree.max_depth();
    for (int d = 0; d < depth; ++d) {
        std::vector<std::vector<int>> pieces_of(tree.nodes.size());
        for (std::size_t s = 0; s < plan.segments.size(); ++s) {
            const int node = plan.segments[s].node;
            if (tree.nodes[node].depth() == d && !tree.nodes[node].leaf()) pieces_of[node].push_back(static_cast<int>(s));
        }
        std::vector<std::vector<long long>> schedule(tree.nodes.size());
        long long projected = static_cast<long long>(plan.segments.size());
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            if (pieces_of[i].empty()) continue;
            const BlindNode& n = tree.nodes[i];
            const double boundary = piece_boundary(scene, plan.segments, pieces_of[i], fine.budget_grid);
            const double eta = boundary > 0 ? n.eps / (2 * boundary) : n.eps;
            plan.eta[i] = eta;
            double longest = 0.0;
            for (int s : pieces_of[i]) longest = std::max(longest, norm(plan.segments[s].b - plan.segments[s].a));
            const BlindShape shape = blind_shape(n.beta, n.gamma);
            auto& sched = schedule[i];
            // Step j moves the path by at most corner_j / M_j; the budget eta is
            // split in proportion to the raw corners so the total stays below eta.
            std::vector<double> corner(n.k);
            double corner_sum = 0.0;
            for (int j = 1; j <= n.k; ++j) {
                corner[j - 1] = longest * norm(shape.bad[j - 1]) * std::sin(n.beta + (j - 1) * n.gamma);
                corner_sum += corner[j - 1];
            }
            double m = 1.0;
            for (int j = 1; j <= n.k; ++j) {
                const double raw = corner[j - 1] / m;
                const double budget = corner_sum > 0 ? eta * corner[j - 1] / corner_sum : eta;
                const long long nj = budget > 0 ? fineness_for(raw, budget, fine.scale, fine.cap) : 1;
                sched.push_back(nj);
                m *= static_cast<double>(nj);
                if (nj > 1 || j == 1) {
                    ZigzagRecord z;
                    z.node = static_cast<int>(i);
                    z.step = j;
                    z.theta0 = n.theta - n.sign * n.beta;
                    z.theta1 = n.theta + n.sign * j * n.gamma;
                    z.fineness = nj;
                    z.multiplicity = static_cast<long long>(m);
                    z.deviation = raw / static_cast<double>(nj);
                    z.budget = budget;
                    plan.zigzags.push_back(z);
                }
                if (m > static_cast<double>(fine.piece_cap)) throw InfeasibleError("realized plan exceeds the piece cap");
            }
            projected += static_cast<long long>(pieces_of[i].size()) * static_cast<long long>(2 * m + n.k);
            if (projected > fine.piece_cap) throw InfeasibleError("realized plan exceeds the piece cap");
        }
        std::vector<PlanSegment> next;
        next.reserve(static_cast<std::size_t>(projected));
        for (const auto& seg : plan.segments) {
            const BlindNode& n = tree.nodes[seg.node];
            if (n.depth() != d || n.leaf()) {
                next.push_back(seg);
                continue;
            }
            const auto blind = realize_blind(blind_shape(n.beta, n.gamma), seg.a, seg.b, n.sign, schedule[seg.node]);
            for (const auto& p : blind) next.push_back({p.a, p.b, n.child[p.good ? 1 : 0]});
        }
        plan.segments = std::move(next);
    }
    plan.endpoint_error = norm(plan.endpoint() - target);
    if (plan.endpoint_error > 1e-12 * (1 + norm(target))) throw std::logic_error("plan endpoint drifted");
    return plan;
}

}  // namespace kakeya
