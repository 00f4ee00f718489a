#include "kakeya/geom.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kakeya {

Direction::Direction(double angle) {
    if (!std::isfinite(angle)) throw std::invalid_argument("direction angle must be finite");
    double a = std::fmod(angle, kPi);
    if (a < 0) a += kPi;
    if (a >= kPi) a -= kPi;
    angle_ = a;
}

double dir_distance(Direction a, Direction b) {
    const double d = std::abs(a.angle() - b.angle());
    return std::min(d, kPi - d);
}

namespace {
// Signed offset from a to b in (-pi/2, pi/2].
double signed_offset(Direction a, Direction b) {
    return std::remainder(b.angle() - a.angle(), kPi);
}
}  // namespace

DirInterval DirInterval::empty() { return DirInterval{}; }

DirInterval DirInterval::full() {
    DirInterval r;
    r.empty_ = false;
    r.full_ = true;
    r.halfwidth_ = kPi / 2;
    return r;
}

DirInterval DirInterval::centered(Direction anchor, double halfwidth) {
    if (!(halfwidth >= 0)) throw std::invalid_argument("negative halfwidth");
    if (halfwidth >= kPi / 2) return full();
    DirInterval r;
    r.empty_ = false;
    r.anchor_ = anchor;
    r.halfwidth_ = halfwidth;
    return r;
}

DirInterval DirInterval::bracket(Direction a, Direction b) {
    if (dir_distance(a, b) >= kPi / 2) throw std::invalid_argument("bracket needs length < pi/2");
    const double d = signed_offset(a, b);
    return centered(Direction(a.angle() + d / 2), std::abs(d) / 2);
}

DirInterval DirInterval::from_reals(double lo, double hi) {
    if (hi < lo) throw std::invalid_argument("interval endpoints out of order");
    if (hi - lo >= kPi) return full();
    return centered(Direction((lo + hi) / 2), (hi - lo) / 2);
}

double DirInterval::length() const {
    if (empty_) return 0.0;
    if (full_) return kPi;
    return 2 * halfwidth_;
}

bool DirInterval::contains(Direction d, double tol) const {
    if (empty_) return false;
    if (full_) return true;
    return dir_distance(anchor_, d) <= halfwidth_ + tol;
}

bool DirInterval::contains(const DirInterval& o, double tol) const {
    if (o.empty_ || full_) return true;
    if (empty_ || o.full_) return false;
    return dir_distance(anchor_, o.anchor_) + o.halfwidth_ <= halfwidth_ + tol;
}

DirInterval DirInterval::hull(const DirInterval& o) const {
    if (o.empty_) return *this;
    if (empty_) return o;
    if (full_ || o.full_) return full();
    const double d = signed_offset(anchor_, o.anchor_);
    const double lo = std::min(-halfwidth_, d - o.halfwidth_);
    const double hi = std::max(halfwidth_, d + o.halfwidth_);
    const double gap = std::abs(d) - halfwidth_ - o.halfwidth_;
    if (gap > kGeomTol) throw std::invalid_argument("hull of disjoint intervals");
    if (hi - lo >= kPi) return full();
    return centered(Direction(anchor_.angle() + (lo + hi) / 2), (hi - lo) / 2);
}

DirInterval DirInterval::complement() const {
    if (empty_) return full();
    if (full_) return empty();
    return centered(Direction(anchor_.angle() + kPi / 2), kPi / 2 - halfwidth_);
}

ProjPoint::ProjPoint(const Vec3& h) {
    const double n = h.norm();
    if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("projective point needs a nonzero finite vector");
    h_ = h / n;
}

Vec2 ProjPoint::affine() const {
    if (std::abs(h_.z()) < 1e-15) throw std::domain_error("point at infinity has no affine coordinates");
    return {h_.x() / h_.z(), h_.y() / h_.z()};
}

bool ProjPoint::equals(const ProjPoint& o, double tol) const {
    return h_.cross(o.h_).norm() <= tol;
}

ProjLine::ProjLine(const Vec3& n) {
    const double m = n.norm();
    if (!(m > 0) || !std::isfinite(m)) throw std::invalid_argument("projective line needs a nonzero finite vector");
    n_ = n / m;
}

bool ProjLine::contains(const ProjPoint& p, double tol) const {
    return std::abs(p.h().dot(n_)) <= tol;
}

bool ProjLine::equals(const ProjLine& o, double tol) const {
    return n_.cross(o.n_).norm() <= tol;
}

double proj_distance(const ProjPoint& a, const ProjPoint& b) {
    return std::atan2(a.h().cross(b.h()).norm(), std::abs(a.h().dot(b.h())));
}

double proj_distance(const ProjPoint& p, const ProjLine& l) {
    const double s = p.h().dot(l.n());
    return std::atan2(std::abs(s), (p.h() - s * l.n()).norm());
}

ProjPoint proj_embed(Vec2 p) { return ProjPoint(Vec3(p.x, p.y, 1.0)); }

ProjPoint dir_to_infinite(Direction theta) {
    return ProjPoint(Vec3(std::cos(theta.angle()), std::sin(theta.angle()), 0.0));
}

ProjLine line_through(const ProjPoint& a, const ProjPoint& b) {
    const Vec3 c = a.h().cross(b.h());
    if (c.norm() < 1e-14) throw std::invalid_argument("line through coincident points");
    return ProjLine(c);
}

ProjPoint line_intersection(const ProjLine& a, const ProjLine& b) {
    const Vec3 c = a.n().cross(b.n());
    if (c.norm() < 1e-12) throw std::invalid_argument("identical lines have no intersection point");
    return ProjPoint(c);
}

ProjLine normal_line(Vec2 x, Direction theta) {
    return line_through(proj_embed(x), dir_to_infinite(Direction(theta.angle() + kPi / 2)));
}

bool line_ball_hit(const ProjLine& a, const ProjLine& b, const ProjPoint& c, double eps) {
    return proj_distance(line_intersection(a, b), c) < eps;
}

bool normal_hits(Vec2 x, Direction theta, const ProjLine& ell, const ProjPoint& u, double eps) {
    const ProjLine nu = normal_line(x, theta);
    if (nu.equals(ell, 1e-12)) return true;
    return line_ball_hit(nu, ell, u, eps);
}

Scene::Scene(std::vector<std::vector<Vec2>> polylines, std::vector<bool> closed)
    : polylines_(std::move(polylines)), closed_(std::move(closed)) {
    if (polylines_.size() != closed_.size()) throw std::invalid_argument("polylines and closed flags differ in size");
    for (std::size_t i = 0; i < polylines_.size(); ++i) {
        auto& pl = polylines_[i];
        for (const Vec2& p : pl)
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("non-finite vertex");
        if (closed_[i] && pl.size() > 2 && pl.front() == pl.back()) pl.pop_back();
        if (pl.size() < 2) throw std::invalid_argument("polyline needs at least two vertices");
    }
    rebuild();
    for (const auto& s : segments_)
        if (!(s.length > 0)) throw std::invalid_argument("zero-length segment");
    if (!(total_length_ > 0)) throw std::invalid_argument("scene has zero length");
}

Scene Scene::from_pieces(const std::vector<std::vector<Vec2>>& pieces) {
    Scene s;
    for (const auto& piece : pieces) {
        std::vector<Vec2> pl;
        for (const Vec2& p : piece)
            if (pl.empty() || norm(p - pl.back()) > 1e-15) pl.push_back(p);
        if (pl.size() >= 2) {
            s.polylines_.push_back(std::move(pl));
            s.closed_.push_back(false);
        }
    }
    s.rebuild();
    return s;
}

void Scene::rebuild() {
    segments_.clear();
    total_length_ = 0.0;
    bounding_radius_ = 0.0;
    for (std::size_t i = 0; i < polylines_.size(); ++i) {
        const auto& pl = polylines_[i];
        const std::size_t n = pl.size();
        const std::size_t m = closed_[i] ? n : n - 1;
        for (std::size_t k = 0; k < m; ++k) {
            SceneSegment s;
            s.a = pl[k];
            s.b = pl[(k + 1) % n];
            s.length = norm(s.b - s.a);
            s.theta = Direction::of(s.b - s.a);
            s.polyline = static_cast<int>(i);
            total_length_ += s.length;
            segments_.push_back(s);
        }
        for (const Vec2& p : pl) bounding_radius_ = std::max(bounding_radius_, norm(p));
    }
}

std::vector<Vec2> Scene::hull() const {
    std::vector<Vec2> pts;
    for (const auto& pl : polylines_) pts.insert(pts.end(), pl.begin(), pl.end());
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

std::vector<Vec2> Scene::sample_points(double spacing) const {
    if (!(spacing > 0)) throw std::invalid_argument("sample spacing must be positive");
    std::vector<Vec2> out;
    for (const auto& s : segments_) {
        const int m = std::max(1, static_cast<int>(std::ceil(s.length / spacing)));
        for (int k = 0; k <= m; ++k) out.push_back(s.a + (s.b - s.a) * (static_cast<double>(k) / m));
    }
    return out;
}

std::vector<Direction> scene_tangents(const Scene& scene) {
    // A vertex shared by two segments takes the direction of the segment with
    // the lower index; this only matters for pointwise queries.
    std::vector<Direction> out;
    out.reserve(scene.segments().size());
    for (const auto& s : scene.segments()) out.push_back(s.theta);
    return out;
}

namespace {

// Collects runs of same-class pieces along each polyline.
class PieceCollector {
public:
    void add(int polyline, Vec2 a, Vec2 b, bool inside) {
        auto& list = inside ? in_ : out_;
        auto& last = inside ? last_in_ : last_out_;
        if (!list.empty() && last == polyline && norm(list.back().back() - a) < 1e-15) {
            list.back().push_back(b);
        } else {
            list.push_back({a, b});
        }
        last = polyline;
    }
    SlabSplit finish() const { return {Scene::from_pieces(in_), Scene::from_pieces(out_)}; }

private:
    std::vector<std::vector<Vec2>> in_, out_;
    int last_in_ = -1, last_out_ = -1;
};

}  // namespace

SlabSplit scene_slab(const Scene& scene, Direction center, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("slab halfwidth must be positive");
    PieceCollector c;
    for (const auto& s : scene.segments()) c.add(s.polyline, s.a, s.b, dir_distance(s.theta, center) < delta);
    return c.finish();
}

SlabSplit scene_split(const Scene& scene, const std::function<bool(Vec2, Direction)>& pred, int probes) {
    if (probes < 1) throw std::invalid_argument("scene_split needs probes >= 1");
    PieceCollector c;
    for (const auto& s : scene.segments()) {
        auto at = [&](double t) { return pred(s.a + (s.b - s.a) * t, s.theta); };
        double t0 = 0.0;
        bool cls = at(0.0);
        for (int k = 1; k <= probes; ++k) {
            const double t1 = static_cast<double>(k) / probes;
            const bool c1 = at(t1);
            if (c1 != cls) {
                double lo = (k - 1.0) / probes, hi = t1;
                for (int it = 0; it < 50; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (at(mid) == cls ? lo : hi) = mid;
                }
                const double cut = 0.5 * (lo + hi);
                c.add(s.polyline, s.a + (s.b - s.a) * t0, s.a + (s.b - s.a) * cut, cls);
                t0 = cut;
                cls = c1;
            }
        }
        c.add(s.polyline, s.a + (s.b - s.a) * t0, s.b, cls);
    }
    return c.finish();
}

SlabSplit scene_normal_slab(const Scene& scene, const ProjLine& ell, const ProjPoint& u, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("ball radius must be positive");
    return scene_split(scene, [&](Vec2 x, Direction t) { return normal_hits(x, t, ell, u, eps); });
}

Scene make_circle(double r, int n) {
    if (!(r > 0) || n < 3) throw std::invalid_argument("circle needs r > 0 and n >= 3");
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) pts.push_back(unit(2 * kPi * k / n) * r);
    return Scene({pts}, {true});
}

Scene make_segment(double len) {
    if (!(len > 0)) throw std::invalid_argument("segment length must be positive");
    return Scene({{{0, 0}, {len, 0}}}, {false});
}

Scene make_convex_graph(double a, double b, double c, double span, int n) {
    if (!(span > 0) || n < 1) throw std::invalid_argument("convex graph needs span > 0 and n >= 1");
    std::vector<Vec2> pts;
    for (int k = 0; k <= n; ++k) {
        const double x = -span / 2 + span * k / n;
        pts.push_back({x, a * x * x + b * x + c});
    }
    return Scene({pts}, {false});
}

}  // namespace kakeya
