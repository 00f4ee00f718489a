#pragma once

#include "kakeya/blind.hpp"
#include "kakeya/se2.hpp"

#include <Eigen/Core>

#include <vector>

namespace kakeya {

// Orthogonal map with Q (|x|, 0, 0) = x and Q(plane phi = 0) = plane of ell.
// Throws PreconditionError when ell misses the projective center of x.
Eigen::Matrix3d lift_rotation_Q(const Rot& x, const ProjLine& ell);
// General form: Q (v, 0) = x for a planar v with |v| = |x|.
Eigen::Matrix3d lift_rotation_Q(Vec2 v, const Rot& x, const ProjLine& ell);

// Largest r such that every point of the sphere |y - x| = r (32 samples)
// projects into B(z, radius_z) and into B(ell, radius_ell); bisection.
double drift_radius(const Vec3& x, const ProjPoint& z, double radius_z, const ProjLine& ell, double radius_ell);
// Closed form |x| sin(min(radius_z, radius_ell)) when z lies on ell.
double drift_radius_analytic(const Vec3& x, double radius_z, double radius_ell);

struct RotPiece {
    Rot rot = Rot::identity();
    int node = -1;
    double sigma = 0.0;  // intended size as a fraction of the node's full vector
};

struct CenterDriftRow {
    int node = -1;
    ProjPoint z;           // intended center of the node
    double alpha = 0.0;
    double max_drift = 0.0;    // max over pieces of d(z~, z)
    double max_to_line = 0.0;  // max over pieces of d(z~, ell)
    double coord_drift = 0.0;  // max |x~ / sigma - x| in R^3
    int pieces = 0;
    bool within() const { return max_drift < 2 * alpha || max_drift == 0.0; }
};

struct RotationOptions {
    bool avoid_center = true;  // keep the center of x outside every closed deletion ball
    std::vector<ProjPoint> avoid;  // further points to keep outside the closed deletion balls
};

struct RotationPlan {
    Rot target = Rot::identity();
    ProjLine ell;
    double eps = 0.0;
    Eigen::Matrix3d Q = Eigen::Matrix3d::Identity();
    BlindTree tree;
    std::vector<RotPiece> pieces;
    std::vector<ZigzagRecord> zigzags;
    std::vector<double> eta;
    std::vector<ProjPoint> deletion_center;  // per node; meaningful for kept leaves
    double drift_budget = 0.0;               // r
    double max_coord_drift = 0.0;
    bool center_avoided = true;

    Vec3 intended(int node) const;  // x_i = Q (v_i, 0)
    ProjPoint center(int node) const;
    Isometry endpoint() const;
    SweepPlan sweep_plan() const;
    std::vector<CenterDriftRow> center_drift_table() const;
};

RotationPlan build_rotation_plan(const Scene& scene, const Rot& x, const ProjLine& ell, double eps,
                                 const TreeLimits& limits = {}, const FinenessOptions& fine = {},
                                 const RotationOptions& opt = {});

}  // namespace kakeya
