#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace kakeya {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
// Multiplication by i in complex notation.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 rotate(Vec2 a, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Element of P^1 = R / pi Z, stored as the representative in [0, pi).
class Direction {
public:
    Direction() = default;
    explicit Direction(double angle);
    static Direction of(Vec2 v) { return Direction(std::atan2(v.y, v.x)); }
    double angle() const { return angle_; }

private:
    double angle_ = 0.0;
};

double dir_distance(Direction a, Direction b);

// Connected subset of P^1, stored as anchor plus halfwidth so that arcs
// crossing the 0/pi branch cut need no special casing.
class DirInterval {
public:
    static DirInterval empty();
    static DirInterval full();
    static DirInterval centered(Direction anchor, double halfwidth);
    // The arc of length < pi/2 with endpoints a and b.
    static DirInterval bracket(Direction a, Direction b);
    // Arc [lo, hi] of the real line projected to P^1; full when hi - lo >= pi.
    static DirInterval from_reals(double lo, double hi);

    bool is_empty() const { return empty_; }
    bool is_full() const { return full_; }
    Direction anchor() const { return anchor_; }
    double halfwidth() const { return halfwidth_; }
    double length() const;
    bool contains(Direction d, double tol = kGeomTol) const;
    bool contains(const DirInterval& other, double tol = kGeomTol) const;
    // Smallest arc containing both; the two arcs must overlap or touch.
    DirInterval hull(const DirInterval& other) const;
    // Complement in P^1 as an arc (empty when full, full when empty).
    DirInterval complement() const;

private:
    Direction anchor_{};
    double halfwidth_ = 0.0;
    bool empty_ = true;
    bool full_ = false;
};

using Vec3 = Eigen::Vector3d;

// Point of P^2 as a unit 3-vector; equality is up to sign.
class ProjPoint {
public:
    ProjPoint() : h_(0, 0, 1) {}
    explicit ProjPoint(const Vec3& h);
    const Vec3& h() const { return h_; }
    bool is_infinite(double tol = kGeomTol) const { return std::abs(h_.z()) <= tol; }
    // Affine coordinates; throws for points at infinity.
    Vec2 affine() const;
    bool equals(const ProjPoint& o, double tol = kGeomTol) const;

private:
    Vec3 h_;
};

// Line of P^2 as unit homogeneous coefficients; p lies on it iff <p, n> = 0.
class ProjLine {
public:
    ProjLine() : n_(0, 0, 1) {}
    explicit ProjLine(const Vec3& n);
    const Vec3& n() const { return n_; }
    bool contains(const ProjPoint& p, double tol = kGeomTol) const;
    bool equals(const ProjLine& o, double tol = kGeomTol) const;
    static ProjLine at_infinity() { return ProjLine(Vec3(0, 0, 1)); }

private:
    Vec3 n_;
};

double proj_distance(const ProjPoint& a, const ProjPoint& b);
// Distance from a point to the closest point of a line.
double proj_distance(const ProjPoint& p, const ProjLine& l);
ProjPoint proj_embed(Vec2 p);
ProjPoint dir_to_infinite(Direction theta);
ProjLine line_through(const ProjPoint& a, const ProjPoint& b);
ProjPoint line_intersection(const ProjLine& a, const ProjLine& b);
ProjLine normal_line(Vec2 x, Direction theta);
bool line_ball_hit(const ProjLine& a, const ProjLine& b, const ProjPoint& c, double eps);

struct SceneSegment {
    Vec2 a;
    Vec2 b;
    Direction theta;
    double length = 0.0;
    int polyline = 0;
};

// Finite union of polylines with per-segment tangent data.
class Scene {
public:
    Scene() = default;
    // Validating constructor for user scenes: every segment must have
    // positive length and the total length must be positive.
    Scene(std::vector<std::vector<Vec2>> polylines, std::vector<bool> closed);
    // Sub-scene built from open pieces; may be empty.
    static Scene from_pieces(const std::vector<std::vector<Vec2>>& pieces);

    const std::vector<std::vector<Vec2>>& polylines() const { return polylines_; }
    const std::vector<bool>& closed() const { return closed_; }
    const std::vector<SceneSegment>& segments() const { return segments_; }
    double total_length() const { return total_length_; }
    double bounding_radius() const { return bounding_radius_; }
    bool is_empty() const { return segments_.empty(); }
    // Convex hull vertices, counter-clockwise.
    std::vector<Vec2> hull() const;
    // Points along every segment with spacing at most `spacing`,
    // segment endpoints included.
    std::vector<Vec2> sample_points(double spacing) const;

private:
    void rebuild();

    std::vector<std::vector<Vec2>> polylines_;
    std::vector<bool> closed_;
    std::vector<SceneSegment> segments_;
    double total_length_ = 0.0;
    double bounding_radius_ = 0.0;
};

struct SlabSplit {
    Scene inside;
    Scene outside;
};

std::vector<Direction> scene_tangents(const Scene& scene);
// Splits every segment by a pointwise predicate (x, tangent) -> inside,
// probing each segment `probes` times and bisecting the transitions.
SlabSplit scene_split(const Scene& scene, const std::function<bool(Vec2, Direction)>& pred, int probes = 32);
// Points whose tangent lies in the open ball B(center, delta).
SlabSplit scene_slab(const Scene& scene, Direction center, double delta);
// Points whose normal line meets `ell` inside the open ball B(u, eps).
// A normal line equal to `ell` counts as meeting it inside the ball.
SlabSplit scene_normal_slab(const Scene& scene, const ProjLine& ell, const ProjPoint& u,
                            double eps);
bool normal_hits(Vec2 x, Direction theta, const ProjLine& ell, const ProjPoint& u, double eps);

Scene make_circle(double r, int n = 720);
Scene make_segment(double len);
// Graph of y = a x^2 + b x + c over x in [-span/2, span/2] with n segments.
Scene make_convex_graph(double a, double b, double c, double span, int n);

}  // namespace kakeya
