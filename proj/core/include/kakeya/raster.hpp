#pragma once

#include "kakeya/geom.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kakeya {

struct Box {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;

    bool valid() const { return x1 >= x0 && y1 >= y0; }
    void expand(Vec2 p) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    void expand(const Box& b) {
        if (!b.valid()) return;
        expand(Vec2{b.x0, b.y0});
        expand(Vec2{b.x1, b.y1});
    }
    Box padded(double d) const { return {x0 - d, y0 - d, x1 + d, y1 + d}; }
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

// Axis-aligned occupancy grid; the Lebesgue-area oracle.
class RasterGrid {
public:
    RasterGrid() = default;
    RasterGrid(double x0, double y0, double h, int nx, int ny);
    // Grid of cell size max(width, height) / max_cells covering the box.
    static RasterGrid fit(const Box& box, int max_cells);
    static RasterGrid with_cell(const Box& box, double h);

    double h() const { return h_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double x0() const { return x0_; }
    double y0() const { return y0_; }
    long long cell_count() const { return static_cast<long long>(nx_) * ny_; }

    void mark(Vec2 p) {
        const double fx = (p.x - x0_) * inv_h_, fy = (p.y - y0_) * inv_h_;
        if (fx < 0 || fy < 0 || fx >= nx_ || fy >= ny_) return;
        set(static_cast<int>(fx), static_cast<int>(fy));
    }
    void set(int ix, int iy) {
        const std::size_t i = static_cast<std::size_t>(iy) * nx_ + ix;
        bits_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    }
    bool test(int ix, int iy) const {
        if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return false;
        const std::size_t i = static_cast<std::size_t>(iy) * nx_ + ix;
        return (bits_[i >> 6] >> (i & 63)) & 1u;
    }
    Vec2 cell_center(int ix, int iy) const { return {x0_ + (ix + 0.5) * h_, y0_ + (iy + 0.5) * h_}; }

    long long occupied() const;
    double area() const { return static_cast<double>(occupied()) * h_ * h_; }
    // Exposed cell faces times h.
    double boundary_length() const;
    // Cells whose center lies within eta of an occupied cell center.
    RasterGrid dilated(double eta) const;
    // Bitwise union; the grids must share geometry.
    void merge(const RasterGrid& other);
    // An occupied cell whose 5x5 neighbourhood is fully occupied.
    bool has_interior_cell() const;
    std::string to_pgm() const;

private:
    double x0_ = 0, y0_ = 0, h_ = 1, inv_h_ = 1;
    int nx_ = 0, ny_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace kakeya
