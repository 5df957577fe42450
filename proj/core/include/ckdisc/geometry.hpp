#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ckdisc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    // Counterclockwise quarter turn.
    Vec2 perp() const { return {-y, x}; }
};

// Unit cell (m,n) covers [m,m+1) x [n,n+1); a point on a grid line belongs to
// the cell above/right of it.
struct Cell {
    int m = 0;
    int n = 0;
    bool operator==(const Cell&) const = default;
};

inline Cell cell_of(Vec2 p) {
    return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}

struct Segment {
    Vec2 a;
    Vec2 b;
    double length() const { return (b - a).norm(); }
};

struct Circle {
    Vec2 center;
    double radius = 1.0; // must be > 0
};

// One maximal piece of a segment inside a single cell.
struct CellRun {
    Cell cell;
    double length = 0.0;
};

// One maximal arc of a circle inside a single cell; angles in radians,
// measured counterclockwise from the positive x-axis, end >= begin.
struct ArcRun {
    Cell cell;
    double begin = 0.0;
    double end = 0.0;
    double span() const { return end - begin; }
};

// Decomposes a segment into per-cell runs, ordered from a to b. Run lengths
// telescope to the exact segment length. Degenerate segments give no runs.
std::vector<CellRun> segment_cells(const Segment& s);

// Decomposes a circle into per-cell arcs. Spans partition [0, 2pi); crossing
// angles closer than 1e-12 rad are merged, and consecutive runs in the same
// cell are coalesced. Throws std::invalid_argument for radius <= 0.
std::vector<ArcRun> circle_cells(const Circle& c);

} // namespace ckdisc
