#pragma once

#include "kakeya/geom.hpp"

#include <utility>
#include <vector>

namespace kakeya {

// Orientation-preserving isometry u -> e^{i phi} u + v.
struct Isometry {
    double phi = 0.0;
    Vec2 v{};

    static Isometry identity() { return {}; }
    Vec2 apply(Vec2 u) const { return rotate(u, phi) + v; }
    // (this o b)(u) = this(b(u))
    Isometry compose(const Isometry& b) const { return {phi + b.phi, v + rotate(b.v, phi)}; }
    Isometry inverse() const { return {-phi, -rotate(v, -phi)}; }
};

// Rigid motion in (w, phi) coordinates. For phi != 0 it is the rotation by
// phi about z = w / phi; for phi == 0 it is the translation by v = -i w.
// The identity is a separate value since (0, 0) is not a valid coordinate.
class Rot {
public:
    static Rot identity() { return Rot(); }
    // Throws for (0, 0).
    static Rot from_coords(Vec2 w, double phi);
    static Rot from_coords(const Vec3& x) { return from_coords({x.x(), x.y()}, x.z()); }
    // The motion u -> e^{i phi} u + v; |phi| < 1e-12 is treated as a translation.
    static Rot from_motion(double phi, Vec2 v);

    bool is_identity() const { return identity_; }
    bool is_translation() const { return !identity_ && phi_ == 0.0; }
    Vec2 w() const { return w_; }
    double phi() const { return phi_; }
    Vec2 v() const;
    // Rotation center; throws for translations and the identity.
    Vec2 center() const;
    Vec3 coords() const { return {w_.x, w_.y, phi_}; }
    double norm() const { return coords().norm(); }
    Isometry map() const { return {phi_, v()}; }
    // Coordinatewise scaling (s * w, s * phi): same center, scaled angle.
    Rot scaled(double s) const;

private:
    Rot() = default;
    Vec2 w_{};
    double phi_ = 0.0;
    bool identity_ = true;
};

Rot rot_from_center(Vec2 z, double phi);
Rot rot_translation(Vec2 v);
ProjPoint projective_center(const Rot& x);
// map(star(x1, x2)) = map(x1) o map(x2)
Rot star(const Rot& x1, const Rot& x2);
// The x2 with star(x1, x2) = x3.
Rot star_solve_right(const Rot& x3, const Rot& x1);

struct ZigzagSplit {
    Rot y0 = Rot::identity();
    Rot y1 = Rot::identity();
    Rot x1 = Rot::identity();        // x - x0
    Rot x1_tilde = Rot::identity();  // N * y1
    double drift = 0.0;              // |x1_tilde - x1| in R^3
};

ZigzagSplit zigzag_split(const Rot& x, const Rot& x0, int n);

struct MotionSegment {
    Isometry start;
    Rot generator = Rot::identity();
    std::vector<Isometry> samples;
    Isometry end() const { return samples.back(); }
};

// Largest displacement of a point of B(0, radius) under map(t * x), t in [0, 1].
double max_displacement(const Rot& x, double radius);
// Sample count so that consecutive samples move B(0, radius) by at most step.
int steps_for(const Rot& x, double radius, double step);
// Isometry reached after running fraction t of the motion x.
Isometry partial_map(const Rot& x, double t);

struct PathOptions {
    double radius = 1.0;
    double step = 1e-2;
};

// Realizes an intrinsic sequence: g_0 = id, g_k = g_{k-1} o map(rho_k).
std::vector<MotionSegment> realize_path(const std::vector<std::pair<Rot, int>>& intrinsic,
                                        const PathOptions& opt = {});
Isometry fold_intrinsic(const std::vector<std::pair<Rot, int>>& intrinsic);

struct Lemma52Gap {
    double lhs = 0.0;
    double rhs = 0.0;
};
Lemma52Gap lemma52_gap(const Rot& x1, const Rot& x2);

}  // namespace kakeya
