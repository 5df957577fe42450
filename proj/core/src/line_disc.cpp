#include "ckdisc/line_disc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ckdisc/parallel.hpp"
#include "ckdisc/rng.hpp"

namespace ckdisc {

namespace {

constexpr double kKnotEps = 1e-12;

struct RunWeights {
    std::vector<CellRun> runs;
    std::vector<double> weights;
    std::vector<double> offsets; // cumulative arc length, size runs+1
};

void weigh_runs(const Coloring& c, const Segment& s, RunWeights& rw) {
    rw.runs = segment_cells(s);
    rw.weights.resize(rw.runs.size());
    rw.offsets.resize(rw.runs.size() + 1);
    rw.offsets[0] = 0.0;
    for (std::size_t i = 0; i < rw.runs.size(); ++i) {
        rw.weights[i] = c.get(rw.runs[i].cell.m, rw.runs[i].cell.n) * rw.runs[i].length;
        rw.offsets[i + 1] = rw.offsets[i] + rw.runs[i].length;
    }
}

// Best sub-segment of the chord: value and endpoints.
struct ChordBest {
    double value = 0.0;
    Segment witness{};
};

ChordBest best_subsegment(const Coloring& c, const Segment& chord, RunWeights& rw) {
    ChordBest out;
    const double len = chord.length();
    if (len == 0.0) {
        out.witness = chord;
        return out;
    }
    weigh_runs(c, chord, rw);
    const Subsum ss = max_abs_subsum(rw.weights);
    const Vec2 dir = (chord.b - chord.a) * (1.0 / len);
    out.value = ss.value;
    out.witness.a = chord.a + dir * rw.offsets[ss.begin];
    out.witness.b = chord.a + dir * rw.offsets[ss.end];
    return out;
}

// Clips the line through `anchor` with direction `dir` (unit) to the closed
// box [0,N]^2. Returns false when the chord is empty or degenerate.
bool clip_to_board(Vec2 anchor, Vec2 dir, double n, Segment& out) {
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    const double lo[2] = {0.0, 0.0};
    const double hi[2] = {n, n};
    const double p[2] = {anchor.x, anchor.y};
    const double d[2] = {dir.x, dir.y};
    for (int ax = 0; ax < 2; ++ax) {
        if (std::abs(d[ax]) < 1e-15) {
            if (p[ax] < lo[ax] || p[ax] > hi[ax]) return false;
            continue;
        }
        double ta = (lo[ax] - p[ax]) / d[ax];
        double tb = (hi[ax] - p[ax]) / d[ax];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
    }
    if (!(t1 - t0 > 1e-12)) return false;
    out.a = anchor + dir * t0;
    out.b = anchor + dir * t1;
    return true;
}

std::vector<std::pair<int, int>> primitive_directions(int n) {
    std::vector<std::pair<int, int>> dirs;
    dirs.reserve(static_cast<std::size_t>(n) * n * 2);
    dirs.emplace_back(1, 0);
    dirs.emplace_back(0, 1);
    for (int p = 1; p <= n; ++p) {
        for (int q = 1; q <= n; ++q) {
            if (std::gcd(p, q) != 1) continue;
            dirs.emplace_back(p, q);
            dirs.emplace_back(p, -q);
        }
    }
    return dirs;
}

} // namespace

double segment_discrepancy(const Coloring& c, const Segment& s) {
    double sum = 0.0;
    for (const CellRun& run : segment_cells(s)) {
        sum += c.get(run.cell.m, run.cell.n) * run.length;
    }
    return sum;
}

Subsum max_abs_subsum(std::span<const double> w) {
    Subsum out;
    if (w.empty()) return out;
    // max |sum over [i,j]| = spread of the prefix-sum sequence.
    double prefix = 0.0;
    double lo = 0.0, hi = 0.0;
    std::size_t arg_lo = 0, arg_hi = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        prefix += w[i];
        if (prefix > hi) {
            hi = prefix;
            arg_hi = i + 1;
        } else if (prefix < lo) {
            lo = prefix;
            arg_lo = i + 1;
        }
    }
    out.value = hi - lo;
    out.begin = std::min(arg_lo, arg_hi);
    out.end = std::max(arg_lo, arg_hi);
    return out;
}

DiscrepancyReport max_segment_discrepancy(const Coloring& c, const ExactSearchOptions& options) {
    const int n = c.size();
    if (n > options.max_size) {
        throw std::runtime_error("max_segment_discrepancy: board size " + std::to_string(n) +
                                 " too large for exact search (cap " +
                                 std::to_string(options.max_size) +
                                 "); use sampled_segment_sup");
    }

    const auto dirs = primitive_directions(n);
    const double nd = static_cast<double>(n);

    // Midlines are direction index dirs.size(); they get one pseudo-direction.
    const std::size_t jobs_count = dirs.size() + 1;

    struct DirBest {
        double value = -1.0;
        Segment witness{};
    };
    std::vector<DirBest> best(jobs_count);
    std::atomic<std::size_t> scanned{0};

    parallel_for(jobs_count, [&](std::size_t di) {
        RunWeights rw;
        DirBest local;
        std::size_t count = 0;
        auto consider = [&](const Segment& chord) {
            ++count;
            const ChordBest cb = best_subsegment(c, chord, rw);
            if (cb.value > local.value) {
                local.value = cb.value;
                local.witness = cb.witness;
            }
        };

        if (di == dirs.size()) {
            // Axis-parallel midlines, one per cell row/column.
            for (int k = 0; k < n; ++k) {
                const double mid = k + 0.5;
                consider({{0.0, mid}, {nd, mid}});
                consider({{mid, 0.0}, {mid, nd}});
            }
        } else {
            const auto [p, q] = dirs[di];
            const double inv_len = 1.0 / std::hypot(static_cast<double>(p), static_cast<double>(q));
            const Vec2 dir{p * inv_len, q * inv_len};

            // A line with direction (p,q) through lattice point (x,y) is
            // identified by w = q*x - p*y. Mark the w of every line holding
            // at least two corners of [0,N]^2, remembering one anchor each.
            const int y_lo = std::max(0, -q);
            const int y_hi = std::min(n, n - q);
            const int x_hi = n - p;
            if (p <= n && y_lo <= y_hi) {
                const long long w_min = static_cast<long long>(std::min(q, 0)) * n -
                                        static_cast<long long>(p) * n;
                const long long w_max = static_cast<long long>(std::max(q, 0)) * n;
                const std::size_t span = static_cast<std::size_t>(w_max - w_min + 1);
                std::vector<std::pair<int, int>> anchor(span, {-1, -1});
                for (int x = 0; x <= x_hi; ++x) {
                    for (int y = y_lo; y <= y_hi; ++y) {
                        const long long w = static_cast<long long>(q) * x -
                                            static_cast<long long>(p) * y;
                        auto& slot = anchor[static_cast<std::size_t>(w - w_min)];
                        if (slot.first < 0) slot = {x, y};
                    }
                }
                Segment chord;
                for (const auto& [ax, ay] : anchor) {
                    if (ax < 0) continue;
                    if (!clip_to_board({static_cast<double>(ax), static_cast<double>(ay)}, dir, nd,
                                       chord))
                        continue;
                    consider(chord);
                }
            }
        }
        best[di] = local;
        scanned.fetch_add(count, std::memory_order_relaxed);
    }, options.jobs);

    DiscrepancyReport report;
    report.method = "exact";
    report.search_size = scanned.load();
    std::size_t best_di = 0;
    for (std::size_t di = 0; di < jobs_count; ++di) {
        if (best[di].value > best[best_di].value) best_di = di;
    }
    report.value = std::max(0.0, best[best_di].value);
    report.witness = best[best_di].witness;
    return report;
}

DiscrepancyReport sampled_segment_sup(const Coloring& c, std::size_t trials, std::uint64_t seed,
                                      unsigned jobs) {
    if (trials < 1) throw std::invalid_argument("sampled_segment_sup: trials must be >= 1");
    const int n = c.size();
    const double nd = static_cast<double>(n);

    // Deterministic preamble: the six lines through pairs of board corners
    // (both diagonals included) and every cell midline.
    std::vector<Segment> candidates;
    const Vec2 corners[4] = {{0, 0}, {nd, 0}, {0, nd}, {nd, nd}};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) candidates.push_back({corners[i], corners[j]});
    for (int k = 0; k < n; ++k) {
        const double mid = k + 0.5;
        candidates.push_back({{0.0, mid}, {nd, mid}});
        candidates.push_back({{mid, 0.0}, {mid, nd}});
    }

    // Sampled candidates: random corner-pair lines alternating with chords
    // through two uniform points of the board.
    SplitMix64 rng(seed);
    const std::uint64_t corner_count = static_cast<std::uint64_t>(n + 1) * (n + 1);
    for (std::size_t t = 0; t < trials; ++t) {
        Vec2 a, b;
        if (t % 2 == 0) {
            const std::uint64_t ca = rng.below(corner_count);
            std::uint64_t cb = rng.below(corner_count);
            if (cb == ca) cb = (cb + 1) % corner_count;
            a = {static_cast<double>(ca % (n + 1)), static_cast<double>(ca / (n + 1))};
            b = {static_cast<double>(cb % (n + 1)), static_cast<double>(cb / (n + 1))};
        } else {
            a = {rng.uniform(0.0, nd), rng.uniform(0.0, nd)};
            b = {rng.uniform(0.0, nd), rng.uniform(0.0, nd)};
        }
        const double len = (b - a).norm();
        if (len < 1e-9) continue;
        const Vec2 dir = (b - a) * (1.0 / len);
        Segment chord;
        if (clip_to_board(a, dir, nd, chord)) candidates.push_back(chord);
    }

    std::vector<double> values(candidates.size());
    std::vector<Segment> witnesses(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        RunWeights rw;
        const ChordBest cb = best_subsegment(c, candidates[i], rw);
        values[i] = cb.value;
        witnesses[i] = cb.witness;
    }, jobs);

    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    DiscrepancyReport report;
    report.method = "sampled";
    report.search_size = candidates.size();
    report.value = values.empty() ? 0.0 : values[best];
    report.witness = values.empty() ? Segment{} : witnesses[best];
    return report;
}

// --- projections ------------------------------------------------------

Projection project_onto(const Coloring& c, Vec2 u) {
    if (std::abs(u.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("project_onto: direction must be a unit vector");
    const int n = c.size();
    const std::size_t lat = static_cast<std::size_t>(n + 1);

    // Each cell's projection is a trapezoid with equal-width ramps; its
    // slope changes land on the four corner projections with a fixed sign
    // pattern, so the whole profile accumulates as a mixed second difference
    // of the color field on the (N+1)^2 corner lattice. Axis-aligned
    // directions have zero ramp width and turn into jumps instead.
    const double ax = std::abs(u.x);
    const double ay = std::abs(u.y);
    const double width = std::min(ax, ay);
    const bool degenerate = width <= kKnotEps;

    std::vector<double> slope_delta(lat * lat, 0.0);
    std::vector<double> jump_delta;
    if (degenerate) jump_delta.assign(lat * lat, 0.0);

    auto corner = [&](int i, int j) { return static_cast<std::size_t>(j) * lat + i; };

    if (!degenerate) {
        const double s = 1.0 / (ax * ay); // (1/max) ramp height over (min) ramp width
        const double diag = (u.x * u.y >= 0.0) ? s : -s;
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                const double cs = diag * c.get(col, row);
                slope_delta[corner(col, row)] += cs;
                slope_delta[corner(col + 1, row + 1)] += cs;
                slope_delta[corner(col + 1, row)] -= cs;
                slope_delta[corner(col, row + 1)] -= cs;
            }
        }
    } else {
        // Height 1/max(|ux|,|uy|) = 1 for unit axis directions.
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                const double cv = c.get(col, row);
                const int i_min = u.x < 0 ? col + 1 : col;
                const int j_min = u.y < 0 ? row + 1 : row;
                const int i_max = u.x < 0 ? col : col + 1;
                const int j_max = u.y < 0 ? row : row + 1;
                jump_delta[corner(i_min, j_min)] += cv;
                jump_delta[corner(i_max, j_max)] -= cv;
            }
        }
    }

    // Collect lattice points with any event, ordered by projected position.
    struct Event {
        double pos;
        double slope;
        double jump;
    };
    std::vector<Event> events;
    events.reserve(lat * 4);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            const std::size_t idx = corner(i, j);
            const double sd = slope_delta[idx];
            const double jd = degenerate ? jump_delta[idx] : 0.0;
            if (sd != 0.0 || jd != 0.0) {
                events.push_back({i * u.x + j * u.y, sd, jd});
            }
        }
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.pos < b.pos; });

    Projection pr;
    pr.u_ = u;
    if (events.empty()) return pr;

    pr.knots_.reserve(events.size());
    pr.left_.reserve(events.size());
    pr.right_.reserve(events.size());

    double value = 0.0;
    double slope = 0.0;
    std::size_t i = 0;
    while (i < events.size()) {
        const double pos = events[i].pos;
        double sd = 0.0, jd = 0.0;
        while (i < events.size() && events[i].pos - pos <= kKnotEps) {
            sd += events[i].slope;
            jd += events[i].jump;
            ++i;
        }
        const double left =
            pr.knots_.empty() ? 0.0 : value + slope * (pos - pr.knots_.back());
        value = left + jd;
        slope += sd;
        pr.knots_.push_back(pos);
        pr.left_.push_back(left);
        pr.right_.push_back(value);
    }
    return pr;
}

double Projection::operator()(double x) const {
    if (knots_.empty()) return 0.0;
    if (x < knots_.front() || x >= knots_.back()) return 0.0;
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (k + 1 >= knots_.size()) return 0.0;
    const double x0 = knots_[k];
    const double x1 = knots_[k + 1];
    const double v0 = right_[k];
    const double v1 = left_[k + 1];
    if (x1 - x0 <= 0.0) return v0;
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
}

double Projection::sup_abs() const {
    double best = 0.0;
    for (std::size_t k = 0; k < knots_.size(); ++k) {
        best = std::max(best, std::max(std::abs(left_[k]), std::abs(right_[k])));
    }
    return best;
}

namespace {

// Gauss-Legendre 8-point nodes/weights on [-1, 1].
constexpr double kGl8X[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                             0.9602898564975363};
constexpr double kGl8W[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                             0.1012285362903763};

double gl8(double a, double b, double va, double vb, double p) {
    // Integrates |v(x)|^p for v linear from va at a to vb at b.
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double vm = 0.5 * (va + vb);
    const double vh = 0.5 * (vb - va);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double v1 = vm + vh * kGl8X[i];
        const double v2 = vm - vh * kGl8X[i];
        sum += kGl8W[i] * (std::pow(std::abs(v1), p) + std::pow(std::abs(v2), p));
    }
    return sum * half;
}

double piece_abs_pow(double a, double b, double va, double vb, double p) {
    const double len = b - a;
    if (len <= 0.0) return 0.0;
    if (p == 1.0) {
        if (va * vb >= 0.0) return 0.5 * len * (std::abs(va) + std::abs(vb));
        const double t = va / (va - vb); // root location in [0,1]
        return 0.5 * len * (t * std::abs(va) + (1.0 - t) * std::abs(vb));
    }
    if (p == 2.0) {
        return len * (va * va + va * vb + vb * vb) / 3.0;
    }
    // Gauss-Legendre with panel doubling; split at a sign change first so
    // every panel sees a smooth integrand.
    auto smooth = [&](double xa, double xb, double ya, double yb) {
        double prev = gl8(xa, xb, ya, yb, p);
        for (int panels = 2; panels <= 64; panels *= 2) {
            double cur = 0.0;
            const double h = (xb - xa) / panels;
            const double dv = (yb - ya) / panels;
            for (int k = 0; k < panels; ++k) {
                cur += gl8(xa + k * h, xa + (k + 1) * h, ya + k * dv, ya + (k + 1) * dv, p);
            }
            if (std::abs(cur - prev) <= 1e-6 * std::abs(cur)) return cur;
            prev = cur;
        }
        return prev;
    };
    if (va * vb >= 0.0) return smooth(a, b, va, vb);
    const double t = va / (va - vb);
    const double xr = a + t * len;
    return smooth(a, xr, va, 0.0) + smooth(xr, b, 0.0, vb);
}

} // namespace

double Projection::integral_abs_pow(double p) const {
    if (p < 1.0) throw std::invalid_argument("integral_abs_pow: p must be >= 1");
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
        total += piece_abs_pow(knots_[k], knots_[k + 1], right_[k], left_[k + 1], p);
    }
    return total;
}

double line_lp(const Coloring& c, double p, int angular_nodes, unsigned jobs) {
    if (p < 1.0) throw std::invalid_argument("line_lp: p must be >= 1");
    if (angular_nodes < 4) throw std::invalid_argument("line_lp: angular_nodes must be >= 4");

    std::vector<double> contrib(static_cast<std::size_t>(angular_nodes));
    const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
    parallel_for(contrib.size(), [&](std::size_t i) {
        const double theta = (static_cast<double>(i) + 0.5) * dtheta;
        const Vec2 u{std::cos(theta), std::sin(theta)};
        const double norm = u.norm();
        contrib[i] = project_onto(c, {u.x / norm, u.y / norm}).integral_abs_pow(p);
    }, jobs);

    const double integral = std::accumulate(contrib.begin(), contrib.end(), 0.0) * dtheta;
    return std::pow(integral / c.size(), 1.0 / p);
}

double line_sup(const Coloring& c, unsigned jobs) {
    const auto dirs = primitive_directions(c.size());
    std::vector<double> sups(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
        const auto [p, q] = dirs[i];
        const double inv = 1.0 / std::hypot(static_cast<double>(p), static_cast<double>(q));
        sups[i] = project_onto(c, {p * inv, q * inv}).sup_abs();
    }, jobs);
    return *std::max_element(sups.begin(), sups.end());
}

} // namespace ckdisc
