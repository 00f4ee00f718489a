#pragma once

#include "kakeya/errors.hpp"
#include "kakeya/geom.hpp"
#include "kakeya/sweep.hpp"

#include <string>
#include <vector>

namespace kakeya {

// +1: bad direction theta - beta, good direction theta + k gamma; -1 mirrors.
using Sign = int;

// The k >= 1 with k gamma in [pi/2 - 2 beta - gamma, pi/2 - 2 beta).
int choose_k(double beta, double gamma);

// Venetian blind of a unit-length segment at angle 0, sign +.
struct BlindShape {
    int k = 0;
    double beta = 0.0, gamma = 0.0;
    std::vector<Vec2> bad;   // b_j, j = 1..k, direction -beta
    std::vector<Vec2> good;  // g_j, j = 1..k, direction j gamma; g_{j-1} = b_j + g_j
    double bad_length = 0.0;   // H^1(L_0) / H^1(L)
    double good_length = 0.0;  // H^1(L_1) / H^1(L)
    // Shrink factor max(bad_length, good_length) < 1.
    double ratio() const { return std::max(bad_length, good_length); }
};
BlindShape blind_shape(double beta, double gamma);

struct BlindPiece {
    Vec2 a, b;
    bool good = false;
    int step = 0;  // zigzag step j that emitted the piece; k + 1 for the final good piece
};

// Realizes the blind on segment [a, b]. fineness[j - 1] is the number of
// copies used at step j (empty means 1 everywhere). Consecutive collinear
// pieces of the same part are merged.
std::vector<BlindPiece> venetian_blind(Vec2 a, Vec2 b, double beta, double gamma, Sign sign,
                                       const std::vector<long long>& fineness = {});

// Interval embedded in the real line; empty for the root.
struct RealInterval {
    bool empty = true;
    double lo = 0.0, hi = 0.0;
    double length() const { return empty ? 0.0 : hi - lo; }
    DirInterval dir() const { return empty ? DirInterval::empty() : DirInterval::from_reals(lo, hi); }
    RealInterval with(double t) const;
};

Sign select_sign(const RealInterval& interval, double theta);
Sign select_sign(const DirInterval& interval, Direction theta);

enum class NodeStatus { Continue, StopIgnored, StopKept };

struct NodeParams {
    double beta = 0.0, gamma = 0.0, eps = 0.0;
};

inline constexpr double kBetaMax = kPi / 8;
inline constexpr int kDefaultDepthCap = 40;

struct BlindNode {
    std::string index;
    int parent = -1;
    int child[2] = {-1, -1};
    double theta = 0.0;   // real angle of the node's segment direction
    double length = 0.0;  // H^1(L_i)
    RealInterval interval;
    int ones = 0;  // n_i
    double beta = 0.0, gamma = 0.0, eps = 0.0, alpha = 0.0;
    Sign sign = 1;
    int k = 0;
    double shrink = 0.0;  // c(beta_i) from the blind shape
    int last_good = -1;   // node id of the last good among i and its ancestors
    NodeStatus status = NodeStatus::Continue;
    Direction deletion{};  // tangent ball center for kept leaves

    bool good() const { return index.empty() || index.back() == '1'; }
    int depth() const { return static_cast<int>(index.size()); }
    bool leaf() const { return child[0] < 0; }
};

// Schedule for node `index` with H^1 length h1 given its parent's parameters
// (nullptr at the root).
NodeParams schedule_params(const std::string& index, double eps_global, double h1, const BlindNode* parent);

struct TreeLimits {
    int depth_cap = kDefaultDepthCap;
    long long node_cap = 2000000;
    int k_cap = 1 << 20;  // zigzag steps per blind
};

// Node shape data: segment of length `length` at real angle `theta`.
struct BlindTree {
    double eps = 0.0;
    TreeLimits limits;
    std::vector<BlindNode> nodes;

    const BlindNode& root() const { return nodes.front(); }
    int max_depth() const;
    std::vector<int> leaves() const;  // in path order
};

NodeStatus stopping_rule(const BlindTree& tree, int node);

// Builds the index tree for a root segment of the given length and angle.
// Throws InfeasibleError past the depth or node cap.
BlindTree build_blind_tree(double length, double theta, double eps, const TreeLimits& limits = {});

struct TreeCheck {
    bool ok = true;
    std::string failure;
    double ignored_budget = 0.0;  // sum of eps_k over ignored leaves
};
// Asserts the structural invariants of a built tree.
TreeCheck check_tree(const BlindTree& tree);

struct ZigzagRecord {
    int node = -1;
    int step = 0;
    double theta0 = 0.0, theta1 = 0.0;  // bad and good directions
    long long fineness = 1;              // N_j
    long long multiplicity = 1;          // M_j, copies of the parent piece
    double deviation = 0.0;              // corner distance of the step
    double budget = 0.0;                 // share of the node's deviation budget
    double drift = 0.0;
};

struct PlanSegment {
    Vec2 a, b;
    int node = -1;
};

struct FinenessOptions {
    double scale = 1.0;              // multiplies every N_j (power of two)
    long long cap = 1LL << 24;
    long long piece_cap = 4000000;   // realized pieces
    int budget_grid = 256;           // raster used for boundary lengths
};

struct TranslationPlan {
    Vec2 target;
    double eps = 0.0;
    BlindTree tree;
    std::vector<PlanSegment> segments;  // ordered path pieces
    std::vector<ZigzagRecord> zigzags;
    std::vector<double> eta;            // per node deviation budget
    double endpoint_error = 0.0;

    Vec2 endpoint() const;
    // Steps with tangent deletions at kept leaves; ignored leaves keep everything.
    SweepPlan sweep_plan() const;
};

// Smallest power of two n with dev_per_copy / n <= budget (times scale).
long long fineness_for(double dev_per_copy, double budget, double scale = 1.0, long long cap = 1LL << 24);

TranslationPlan build_translation_plan(const Scene& scene, Vec2 target, double eps,
                                       const TreeLimits& limits = {}, const FinenessOptions& fine = {});

}  // namespace kakeya
