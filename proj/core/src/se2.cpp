#include "kakeya/se2.hpp"

#include <complex>
#include <stdexcept>

namespace kakeya {

namespace {

using cplx = std::complex<double>;
constexpr double kTranslationTol = 1e-12;

cplx to_c(Vec2 a) { return {a.x, a.y}; }
Vec2 to_v(cplx c) { return {c.real(), c.imag()}; }

// (1 - e^{i phi}) / phi, continuous at phi = 0 where it equals -i.
cplx shape(double phi) {
    if (phi == 0.0) return {0.0, -1.0};
    const double s = std::sin(phi / 2);
    return {2 * s * s / phi, -std::sin(phi) / phi};
}

}  // namespace

Rot Rot::from_coords(Vec2 w, double phi) {
    if (!std::isfinite(w.x) || !std::isfinite(w.y) || !std::isfinite(phi))
        throw std::invalid_argument("rotation coordinates must be finite");
    if (w.x == 0.0 && w.y == 0.0 && phi == 0.0) throw std::invalid_argument("(0, 0) is not a rotation coordinate");
    Rot r;
    r.w_ = w;
    r.phi_ = phi;
    r.identity_ = false;
    return r;
}

Rot Rot::from_motion(double phi, Vec2 v) {
    if (std::abs(phi) < kTranslationTol) {
        if (v.x == 0.0 && v.y == 0.0) return identity();
        return from_coords(perp(v), 0.0);
    }
    const cplx f = shape(phi);
    if (std::abs(f) < 1e-12) {
        // Whole turns: the map is a translation but the movement is not.
        if (kakeya::norm(v) > 1e-12) throw std::domain_error("whole-turn motion with nonzero translation");
        return from_coords({0, 0}, phi);
    }
    return from_coords(to_v(to_c(v) / f), phi);
}

Vec2 Rot::v() const {
    if (identity_) return {};
    return to_v(to_c(w_) * shape(phi_));
}

Vec2 Rot::center() const {
    if (identity_ || phi_ == 0.0) throw std::domain_error("translations have no finite center");
    return w_ / phi_;
}

Rot Rot::scaled(double s) const {
    if (identity_ || s == 0.0) return identity();
    return from_coords(w_ * s, phi_ * s);
}

Rot rot_from_center(Vec2 z, double phi) {
    if (phi == 0.0) throw std::invalid_argument("rot_from_center needs phi != 0");
    return Rot::from_coords(z * phi, phi);
}

Rot rot_translation(Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0) return Rot::identity();
    return Rot::from_coords(perp(v), 0.0);
}

ProjPoint projective_center(const Rot& x) {
    if (x.is_identity()) throw std::invalid_argument("the identity has no projective center");
    return ProjPoint(x.coords());
}

namespace {
Rot from_motion_scaled(double phi, Vec2 v, double scale) {
    if (std::abs(phi) < kTranslationTol && norm(v) <= 1e-12 * (1.0 + scale)) return Rot::identity();
    return Rot::from_motion(phi, v);
}
}  // namespace

Rot star(const Rot& x1, const Rot& x2) {
    if (x1.is_identity()) return x2;
    if (x2.is_identity()) return x1;
    const Isometry m = x1.map().compose(x2.map());
    return from_motion_scaled(m.phi, m.v, norm(x1.v()) + norm(x2.v()));
}

Rot star_solve_right(const Rot& x3, const Rot& x1) {
    if (x1.is_identity()) return x3;
    const Vec2 v1 = x1.v(), v3 = x3.v();
    const double phi2 = x3.phi() - x1.phi();
    const Vec2 v2 = rotate(v3 - v1, -x1.phi());
    return from_motion_scaled(phi2, v2, norm(v1) + norm(v3));
}

ZigzagSplit zigzag_split(const Rot& x, const Rot& x0, int n) {
    if (n < 1) throw std::invalid_argument("zigzag fineness must be >= 1");
    if (x.is_identity() || x0.is_identity()) throw std::invalid_argument("zigzag needs nonzero x and x0");
    const Vec3 d = x.coords() - x0.coords();
    if (d.norm() == 0.0) throw std::invalid_argument("zigzag needs x0 != x");
    ZigzagSplit out;
    out.x1 = Rot::from_coords(d);
    out.y0 = x0.scaled(1.0 / n);
    out.y1 = star_solve_right(x.scaled(1.0 / n), out.y0);
    out.x1_tilde = out.y1.scaled(n);
    const Vec3 t = out.x1_tilde.is_identity() ? Vec3::Zero() : out.x1_tilde.coords();
    out.drift = (t - d).norm();
    return out;
}

double max_displacement(const Rot& x, double radius) {
    if (x.is_identity()) return 0.0;
    if (x.is_translation()) return norm(x.v());
    // Chord bound |phi| * dist(u, z) dominates every intermediate position.
    return std::abs(x.phi()) * (radius + norm(x.center()));
}

int steps_for(const Rot& x, double radius, double step) {
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    const double d = max_displacement(x, radius);
    return std::max(1, static_cast<int>(std::ceil(d / step)));
}

Isometry partial_map(const Rot& x, double t) {
    if (x.is_identity() || t == 0.0) return Isometry::identity();
    return x.scaled(t).map();
}

std::vector<MotionSegment> realize_path(const std::vector<std::pair<Rot, int>>& intrinsic, const PathOptions& opt) {
    std::vector<MotionSegment> out;
    Isometry g = Isometry::identity();
    for (const auto& [rho, mult] : intrinsic) {
        if (mult < 0) throw std::invalid_argument("negative multiplicity");
        const int n = steps_for(rho, opt.radius, opt.step);
        const Isometry step_map = rho.map();
        for (int m = 0; m < mult; ++m) {
            MotionSegment seg;
            seg.start = g;
            seg.generator = rho;
            seg.samples.reserve(n + 1);
            for (int k = 0; k <= n; ++k) seg.samples.push_back(g.compose(partial_map(rho, static_cast<double>(k) / n)));
            g = g.compose(step_map);
            seg.samples.back() = g;
            out.push_back(std::move(seg));
        }
    }
    return out;
}

Isometry fold_intrinsic(const std::vector<std::pair<Rot, int>>& intrinsic) {
    Isometry g = Isometry::identity();
    for (const auto& [rho, mult] : intrinsic) {
        const Isometry m = rho.map();
        for (int k = 0; k < mult; ++k) g = g.compose(m);
    }
    return g;
}

Lemma52Gap lemma52_gap(const Rot& x1, const Rot& x2) {
    const Rot x3 = star(x1, x2);
    auto w = [](const Rot& r) { return r.is_identity() ? Vec2{} : r.w(); };
    auto p = [](const Rot& r) { return r.is_identity() ? 0.0 : r.phi(); };
    Lemma52Gap g;
    g.lhs = norm(w(x1) + w(x2) - w(x3));
    g.rhs = norm(w(x2)) * std::abs(p(x1)) + norm(w(x1)) * std::abs(p(x1)) + norm(w(x2)) * std::abs(p(x2)) +
            norm(w(x3)) * std::abs(p(x3));
    return g;
}

}  // namespace kakeya
