#include "ckdisc/arc_disc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ckdisc/parallel.hpp"

namespace ckdisc {

namespace {

// Distance from x to the closed board square [0,N]^2.
double board_distance(Vec2 x, double n) {
    const double dx = std::max({0.0, -x.x, x.x - n});
    const double dy = std::max({0.0, -x.y, x.y - n});
    return std::hypot(dx, dy);
}

constexpr double kSqrt2 = 1.4142135623730951;

} // namespace

double circle_discrepancy(const Coloring& c, const Circle& k) {
    if (!(k.radius > 0.0)) throw std::invalid_argument("circle_discrepancy: radius must be > 0");
    // A circle far from the board touches no cell.
    if (board_distance(k.center, c.size()) > k.radius + kSqrt2) return 0.0;
    double sum = 0.0;
    for (const ArcRun& run : circle_cells(k)) {
        sum += c.get(run.cell.m, run.cell.n) * k.radius * run.span();
    }
    return sum;
}

DiscrepancyReport circle_sup_search(const Coloring& c, double center_step, int radius_count,
                                    unsigned jobs) {
    if (!(center_step > 0.0))
        throw std::invalid_argument("circle_sup_search: center_step must be > 0");
    if (radius_count < 1)
        throw std::invalid_argument("circle_sup_search: radius_count must be >= 1");

    const double n = c.size();
    const double grid_lo = -2.0 * n;
    const std::size_t grid_count =
        static_cast<std::size_t>(std::floor(4.0 * n / center_step));
    const double t_lo = kRadiusLo * n;
    const double t_step = (kRadiusHi - kRadiusLo) * n / radius_count;
    const double t_max = t_lo + radius_count * t_step;

    std::vector<double> radii(static_cast<std::size_t>(radius_count));
    for (int j = 0; j < radius_count; ++j) radii[static_cast<std::size_t>(j)] = t_lo + (j + 0.5) * t_step;

    struct Best {
        double value = -1.0;
        Circle witness{{0, 0}, 1};
    };
    std::vector<Best> best(grid_count);
    std::atomic<std::size_t> scanned{0};

    parallel_for(grid_count, [&](std::size_t ix) {
        Best local;
        std::size_t count = 0;
        const double x = grid_lo + (static_cast<double>(ix) + 0.5) * center_step;
        for (std::size_t iy = 0; iy < grid_count; ++iy) {
            const Vec2 center{x, grid_lo + (static_cast<double>(iy) + 0.5) * center_step};
            if (board_distance(center, n) > t_max + kSqrt2) continue;
            for (double t : radii) {
                ++count;
                const double v = std::abs(circle_discrepancy(c, {center, t}));
                if (v > local.value) local = {v, {center, t}};
            }
        }
        best[ix] = local;
        scanned.fetch_add(count, std::memory_order_relaxed);
    }, jobs);

    std::size_t top = 0;
    for (std::size_t i = 1; i < best.size(); ++i) {
        if (best[i].value > best[top].value) top = i;
    }
    DiscrepancyReport report;
    report.method = "sampled";
    report.search_size = scanned.load();
    if (!best.empty() && best[top].value >= 0.0) {
        report.value = std::max(0.0, best[top].value);
        report.witness = best[top].witness;
    } else {
        report.witness = Circle{{0, 0}, t_lo + 0.5 * t_step};
    }
    return report;
}

namespace {

// One midpoint-rule pass of the Lp integral at the given resolution.
double circle_lp_pass(const Coloring& c, double p, double step, int t_count, unsigned jobs) {
    const double n = c.size();
    const double t_lo = kRadiusLo * n;
    const double t_step = (kRadiusHi - kRadiusLo) * n / t_count;

    std::vector<double> t_sums(static_cast<std::size_t>(t_count), 0.0);
    parallel_for(t_sums.size(), [&](std::size_t jt) {
        const double t = t_lo + (static_cast<double>(jt) + 0.5) * t_step;
        // D_t vanishes once the circle clears the board.
        const double pad = t + kSqrt2 + step;
        const double lo = -pad;
        const double hi = n + pad;
        const std::size_t nx = static_cast<std::size_t>(std::ceil((hi - lo) / step));
        double sum = 0.0;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = lo + (static_cast<double>(ix) + 0.5) * step;
            for (std::size_t iy = 0; iy < nx; ++iy) {
                const Vec2 center{x, lo + (static_cast<double>(iy) + 0.5) * step};
                if (board_distance(center, n) > t + kSqrt2) continue;
                const double d = circle_discrepancy(c, {center, t});
                if (d != 0.0) sum += std::pow(std::abs(d), p);
            }
        }
        t_sums[jt] = sum * step * step;
    }, jobs);

    double integral = 0.0;
    for (double s : t_sums) integral += s * t_step;
    return integral / (n * n * n);
}

} // namespace

double circle_lp(const Coloring& c, double p, double center_step, int radius_count, unsigned jobs,
                 int max_refine) {
    if (p < 1.0) throw std::invalid_argument("circle_lp: p must be >= 1");
    if (!(center_step > 0.0)) throw std::invalid_argument("circle_lp: center_step must be > 0");
    if (radius_count < 1) throw std::invalid_argument("circle_lp: radius_count must be >= 1");

    double step = center_step;
    int t_count = radius_count;
    double prev = circle_lp_pass(c, p, step, t_count, jobs);
    for (int r = 0; r < max_refine; ++r) {
        step *= 0.5;
        t_count *= 2;
        const double cur = circle_lp_pass(c, p, step, t_count, jobs);
        const double rel = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        prev = cur;
        if (rel < 1e-3) break;
    }
    return std::pow(prev, 1.0 / p);
}

} // namespace ckdisc
