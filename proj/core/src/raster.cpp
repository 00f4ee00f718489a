#include "kakeya/raster.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kakeya {

RasterGrid::RasterGrid(double x0, double y0, double h, int nx, int ny)
    : x0_(x0), y0_(y0), h_(h), inv_h_(1.0 / h), nx_(nx), ny_(ny) {
    if (!(h > 0) || nx <= 0 || ny <= 0) throw std::invalid_argument("raster needs h > 0 and a positive size");
    if (static_cast<double>(nx) * ny > 4.0e8) throw std::invalid_argument("raster too large");
    bits_.assign((static_cast<std::size_t>(nx) * ny + 63) / 64, 0);
}

RasterGrid RasterGrid::fit(const Box& box, int max_cells) {
    if (!box.valid() || max_cells <= 0) throw std::invalid_argument("raster fit needs a valid box");
    const double side = std::max({box.width(), box.height(), 1e-9});
    return with_cell(box, side / max_cells);
}

RasterGrid RasterGrid::with_cell(const Box& box, double h) {
    if (!box.valid()) throw std::invalid_argument("raster needs a valid box");
    const int nx = std::max(1, static_cast<int>(std::ceil(box.width() / h - 1e-9)));
    const int ny = std::max(1, static_cast<int>(std::ceil(box.height() / h - 1e-9)));
    return RasterGrid(box.x0, box.y0, h, nx, ny);
}

long long RasterGrid::occupied() const {
    long long n = 0;
    for (auto w : bits_) n += std::popcount(w);
    return n;
}

double RasterGrid::boundary_length() const {
    long long faces = 0;
    for (int iy = 0; iy < ny_; ++iy)
        for (int ix = 0; ix < nx_; ++ix) {
            if (!test(ix, iy)) continue;
            faces += !test(ix - 1, iy) + !test(ix + 1, iy) + !test(ix, iy - 1) + !test(ix, iy + 1);
        }
    return static_cast<double>(faces) * h_;
}

namespace {

// One-dimensional squared distance transform (lower envelope of parabolas).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    const double inf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    for (int q = 1; q < n; ++q) {
        if (f[q] == inf) continue;
        if (f[v[0]] == inf) {
            v[0] = q;
            continue;
        }
        double s;
        while (true) {
            s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = inf;
    }
    if (f[v[0]] == inf) {
        std::fill(d.begin(), d.end(), inf);
        return;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = double(q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

}  // namespace

RasterGrid RasterGrid::dilated(double eta) const {
    if (eta < 0) throw std::invalid_argument("dilation radius must be nonnegative");
    RasterGrid out = *this;
    if (eta == 0) return out;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(nx_) * ny_);
    const int m = std::max(nx_, ny_);
    std::vector<double> f(m), d(m), z(m + 1);
    std::vector<int> v(m);
    for (int ix = 0; ix < nx_; ++ix) {
        f.resize(ny_);
        d.resize(ny_);
        for (int iy = 0; iy < ny_; ++iy) f[iy] = test(ix, iy) ? 0.0 : inf;
        edt_1d(f, d, v, z);
        for (int iy = 0; iy < ny_; ++iy) dist[static_cast<std::size_t>(iy) * nx_ + ix] = d[iy];
    }
    f.resize(nx_);
    d.resize(nx_);
    const double r2 = (eta / h_) * (eta / h_);
    for (int iy = 0; iy < ny_; ++iy) {
        for (int ix = 0; ix < nx_; ++ix) f[ix] = dist[static_cast<std::size_t>(iy) * nx_ + ix];
        edt_1d(f, d, v, z);
        for (int ix = 0; ix < nx_; ++ix)
            if (d[ix] <= r2 + 1e-9) out.set(ix, iy);
    }
    return out;
}

void RasterGrid::merge(const RasterGrid& o) {
    if (o.nx_ != nx_ || o.ny_ != ny_ || o.h_ != h_ || o.x0_ != x0_ || o.y0_ != y0_)
        throw std::invalid_argument("merge needs identical raster geometry");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
}

bool RasterGrid::has_interior_cell() const {
    for (int iy = 2; iy + 2 < ny_; ++iy)
        for (int ix = 2; ix + 2 < nx_; ++ix) {
            bool full = true;
            for (int dy = -2; dy <= 2 && full; ++dy)
                for (int dx = -2; dx <= 2 && full; ++dx) full = test(ix + dx, iy + dy);
            if (full) return true;
        }
    return false;
}

std::string RasterGrid::to_pgm() const {
    std::ostringstream os;
    os << "P5\n" << nx_ << " " << ny_ << "\n255\n";
    std::string row(nx_, '\0');
    for (int iy = ny_ - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < nx_; ++ix) row[ix] = test(ix, iy) ? char(0) : char(255);
        os.write(row.data(), nx_);
    }
    return os.str();
}

}  // namespace kakeya
