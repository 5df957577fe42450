#include "ckdisc/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace ckdisc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Grid-crossing parameters of the open segment, one axis at a time. The
// parameter is arc length from a; values are appended unsorted.
void axis_crossings(double a, double d, double len, std::vector<double>& out) {
    if (d == 0.0) return;
    const double lo = std::min(a, a + d * len);
    const double hi = std::max(a, a + d * len);
    const double inv = 1.0 / d;
    for (int k = static_cast<int>(std::ceil(lo)); k <= static_cast<int>(std::floor(hi)); ++k) {
        const double t = (static_cast<double>(k) - a) * inv;
        if (t > 0.0 && t < len) out.push_back(t);
    }
}

} // namespace

std::vector<CellRun> segment_cells(const Segment& s) {
    std::vector<CellRun> runs;
    const double len = s.length();
    if (len == 0.0) return runs;
    const Vec2 dir = (s.b - s.a) * (1.0 / len);

    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(std::abs(s.b.x - s.a.x) + std::abs(s.b.y - s.a.y)) + 4);
    cuts.push_back(0.0);
    cuts.push_back(len);
    axis_crossings(s.a.x, dir.x, len, cuts);
    axis_crossings(s.a.y, dir.y, len, cuts);
    std::sort(cuts.begin(), cuts.end());

    runs.reserve(cuts.size());
    const double eps = 1e-12 * (1.0 + len);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double t0 = cuts[i];
        const double t1 = cuts[i + 1];
        if (t1 - t0 <= eps) continue;
        // The interval midpoint is interior to exactly one cell, which fixes
        // ownership under the half-open convention (lattice-point crossings
        // and on-grid segments included).
        const double tm = 0.5 * (t0 + t1);
        const Cell cell = cell_of(s.a + dir * tm);
        if (!runs.empty() && runs.back().cell == cell) {
            runs.back().length += t1 - t0;
        } else {
            runs.push_back({cell, t1 - t0});
        }
    }
    return runs;
}

std::vector<ArcRun> circle_cells(const Circle& c) {
    if (!(c.radius > 0.0)) throw std::invalid_argument("circle_cells: radius must be > 0");
    const double r = c.radius;

    // Intersection angles with the vertical lines x = m and horizontal lines
    // y = n that the circle reaches.
    std::vector<double> angles;
    const int mx_lo = static_cast<int>(std::ceil(c.center.x - r));
    const int mx_hi = static_cast<int>(std::floor(c.center.x + r));
    for (int m = mx_lo; m <= mx_hi; ++m) {
        const double u = (static_cast<double>(m) - c.center.x) / r;
        if (u < -1.0 || u > 1.0) continue;
        const double a = std::acos(std::clamp(u, -1.0, 1.0));
        angles.push_back(a);
        angles.push_back(kTwoPi - a);
    }
    const int ny_lo = static_cast<int>(std::ceil(c.center.y - r));
    const int ny_hi = static_cast<int>(std::floor(c.center.y + r));
    for (int n = ny_lo; n <= ny_hi; ++n) {
        const double v = (static_cast<double>(n) - c.center.y) / r;
        if (v < -1.0 || v > 1.0) continue;
        const double a = std::asin(std::clamp(v, -1.0, 1.0));
        angles.push_back(a < 0.0 ? a + kTwoPi : a);
        const double b = std::numbers::pi - a;
        angles.push_back(b < 0.0 ? b + kTwoPi : b); // a in [-pi/2, pi/2], b in [pi/2, 3pi/2]
    }

    std::vector<ArcRun> runs;
    auto cell_at = [&](double angle) {
        return cell_of({c.center.x + r * std::cos(angle), c.center.y + r * std::sin(angle)});
    };

    if (angles.empty()) {
        runs.push_back({cell_at(std::numbers::pi / 4.0), 0.0, kTwoPi});
        return runs;
    }

    std::sort(angles.begin(), angles.end());
    // Merge duplicate crossing angles (tangency, lattice-point passes).
    constexpr double kAngleEps = 1e-12;
    std::vector<double> merged;
    merged.reserve(angles.size());
    for (double a : angles) {
        if (merged.empty() || a - merged.back() > kAngleEps) merged.push_back(a);
    }
    // Wrap-around duplicate: first angle may equal last - 2pi.
    if (merged.size() > 1 && (merged.front() + kTwoPi) - merged.back() <= kAngleEps) merged.pop_back();

    runs.reserve(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const double a0 = merged[i];
        const double a1 = (i + 1 < merged.size()) ? merged[i + 1] : merged.front() + kTwoPi;
        if (a1 - a0 <= kAngleEps) continue;
        const Cell cell = cell_at(0.5 * (a0 + a1));
        if (!runs.empty() && runs.back().cell == cell && runs.back().end == a0) {
            runs.back().end = a1;
        } else {
            runs.push_back({cell, a0, a1});
        }
    }
    // Coalesce across the wrap if first and last runs share a cell.
    if (runs.size() > 1 && runs.front().cell == runs.back().cell &&
        runs.front().begin + kTwoPi == runs.back().end) {
        runs.front().begin = runs.back().begin - kTwoPi;
        runs.pop_back();
    }
    return runs;
}

} // namespace ckdisc
