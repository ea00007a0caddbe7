// geometry.hpp -- rectangular regions, grid decomposition into cells,
// index arithmetic and Euclidean ball predicates.
//
// Coordinates are kilometres throughout. The grid follows the usual
// raster convention: cell index 0 is the top-left cell, indices increase
// left to right and then top to bottom.

#ifndef STOCHTOPO_GEOMETRY_HPP
#define STOCHTOPO_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace stochtopo {

struct Point2D {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline double distance2(const Point2D& a, const Point2D& b) {
    const double d1 = a.x1 - b.x1;
    const double d2 = a.x2 - b.x2;
    return d1 * d1 + d2 * d2;
}

inline double distance(const Point2D& a, const Point2D& b) {
    return std::sqrt(distance2(a, b));
}

/// Closed-ball membership: ties at exactly `radius` count as inside.
inline bool ball_contains(const Point2D& center, double radius, const Point2D& candidate) {
    if (radius < 0.0) throw std::invalid_argument("ball_contains: negative radius");
    return distance2(center, candidate) <= radius * radius;
}

/// Axis-aligned rectangle [x1_lo, x1_hi] x [x2_lo, x2_hi].
struct Rect {
    double x1_lo = 0.0;
    double x1_hi = 0.0;
    double x2_lo = 0.0;
    double x2_hi = 0.0;

    double width() const { return x1_hi - x1_lo; }
    double height() const { return x2_hi - x2_lo; }
    double area() const { return width() * height(); }

    bool contains(const Point2D& p) const {
        return p.x1 >= x1_lo && p.x1 <= x1_hi && p.x2 >= x2_lo && p.x2 <= x2_hi;
    }
};

/// Bounding rectangle of the modelled region together with the nominal
/// cell size used to grid it.
struct Region {
    double x1_left = 0.0;
    double x1_right = 0.0;
    double x2_bottom = 0.0;
    double x2_top = 0.0;
    double cell_width = 0.0;   // x1s
    double cell_height = 0.0;  // x2s

    void validate() const {
        if (!(x1_left < x1_right)) throw std::invalid_argument("Region: x1_left must be < x1_right");
        if (!(x2_bottom < x2_top)) throw std::invalid_argument("Region: x2_bottom must be < x2_top");
        if (!(cell_width > 0.0)) throw std::invalid_argument("Region: cell_width must be > 0");
        if (!(cell_height > 0.0)) throw std::invalid_argument("Region: cell_height must be > 0");
    }

    std::size_t columns() const {  // u_n
        return static_cast<std::size_t>(std::ceil((x1_right - x1_left) / cell_width));
    }
    std::size_t rows() const {  // w_n
        return static_cast<std::size_t>(std::ceil((x2_top - x2_bottom) / cell_height));
    }

    Rect bounds() const { return Rect{x1_left, x1_right, x2_bottom, x2_top}; }
};

/// One grid cell. Boundary cells are clipped to the region, so their
/// extent may be smaller than the nominal cell size.
struct Cell {
    std::size_t index = 0;   // i
    std::size_t row = 0;     // w_i, 0 = top row
    std::size_t column = 0;  // u_i, 0 = leftmost column
    double x1_left = 0.0;
    double x1_right = 0.0;
    double x2_bottom = 0.0;
    double x2_top = 0.0;

    double width() const { return x1_right - x1_left; }
    double height() const { return x2_top - x2_bottom; }
    double area() const { return width() * height(); }
    Point2D center() const { return Point2D{(x1_left + x1_right) / 2.0, (x2_bottom + x2_top) / 2.0}; }
    Rect bounds() const { return Rect{x1_left, x1_right, x2_bottom, x2_top}; }
};

/// Cell limits for grid position (row, column) inside `region`.
/// Right and bottom limits are clipped so boundary cells never
/// protrude past the region.
inline Cell make_cell(const Region& region, std::size_t row, std::size_t column) {
    const std::size_t un = region.columns();
    Cell c;
    c.index = row * un + column;
    c.row = row;
    c.column = column;
    c.x1_left = region.x1_left + region.cell_width * static_cast<double>(column);
    c.x1_right = std::min(region.x1_right,
                          region.x1_left + region.cell_width * static_cast<double>(column + 1));
    c.x2_top = region.x2_top - region.cell_height * static_cast<double>(row);
    c.x2_bottom = std::max(region.x2_bottom,
                           region.x2_top - region.cell_height * static_cast<double>(row + 1));
    return c;
}

/// Standalone cell over an arbitrary rectangle (not part of a grid).
/// Used when a window is sampled or integrated directly.
inline Cell make_cell(const Rect& bounds, std::size_t index = 0) {
    Cell c;
    c.index = index;
    c.x1_left = bounds.x1_lo;
    c.x1_right = bounds.x1_hi;
    c.x2_bottom = bounds.x2_lo;
    c.x2_top = bounds.x2_hi;
    return c;
}

/// Grid the region into rows() x columns() cells, ordered by index
/// (left to right, then top to bottom).
inline std::vector<Cell> grid_region(const Region& region) {
    region.validate();
    const std::size_t un = region.columns();
    const std::size_t wn = region.rows();
    std::vector<Cell> cells;
    cells.reserve(un * wn);
    for (std::size_t row = 0; row < wn; ++row)
        for (std::size_t col = 0; col < un; ++col)
            cells.push_back(make_cell(region, row, col));
    return cells;
}

/// Point-in-cell test with the half-open tiling convention:
/// closed on the left/top edge, open on the right/bottom edge, except
/// that cells touching the region border are closed on that border.
/// Every point of the region then lies in exactly one cell.
inline bool cell_contains(const Region& region, const Cell& c, const Point2D& p) {
    const bool x1_ok = p.x1 >= c.x1_left &&
                       (p.x1 < c.x1_right || (c.x1_right == region.x1_right && p.x1 <= c.x1_right));
    const bool x2_ok = p.x2 <= c.x2_top &&
                       (p.x2 > c.x2_bottom || (c.x2_bottom == region.x2_bottom && p.x2 >= c.x2_bottom));
    return x1_ok && x2_ok;
}

}  // namespace stochtopo

#endif  // STOCHTOPO_GEOMETRY_HPP
