#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "ckdisc/geometry.hpp"
#include "ckdisc/rng.hpp"

using namespace ckdisc;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Riemann oracle: per-cell length of a segment from midpoint sampling.
std::map<std::pair<int, int>, double> sampled_segment_lengths(const Segment& s, int samples) {
    std::map<std::pair<int, int>, double> acc;
    const double len = s.length();
    const Vec2 dir = (s.b - s.a) * (1.0 / len);
    const double h = len / samples;
    for (int i = 0; i < samples; ++i) {
        const Vec2 p = s.a + dir * ((i + 0.5) * h);
        const Cell c = cell_of(p);
        acc[{c.m, c.n}] += h;
    }
    return acc;
}

std::map<std::pair<int, int>, double> sampled_arc_lengths(const Circle& c, int samples) {
    std::map<std::pair<int, int>, double> acc;
    const double h = kTwoPi / samples;
    for (int i = 0; i < samples; ++i) {
        const double a = (i + 0.5) * h;
        const Cell cl = cell_of({c.center.x + c.radius * std::cos(a),
                                 c.center.y + c.radius * std::sin(a)});
        acc[{cl.m, cl.n}] += h * c.radius;
    }
    return acc;
}

} // namespace

TEST_CASE("axis-aligned segment decomposition") {
    const auto runs = segment_cells({{0.5, 0.5}, {2.5, 0.5}});
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].cell == Cell{0, 0});
    CHECK(runs[0].length == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(runs[1].cell == Cell{1, 0});
    CHECK(runs[1].length == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(runs[2].cell == Cell{2, 0});
    CHECK(runs[2].length == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("diagonal through a lattice point stays two cells") {
    const auto runs = segment_cells({{0, 0}, {2, 2}});
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].cell == Cell{0, 0});
    CHECK(runs[1].cell == Cell{1, 1});
    const double rt2 = std::sqrt(2.0);
    CHECK(runs[0].length == doctest::Approx(rt2).epsilon(1e-12));
    CHECK(runs[1].length == doctest::Approx(rt2).epsilon(1e-12));
}

TEST_CASE("degenerate segment gives no runs") {
    CHECK(segment_cells({{1.3, 2.7}, {1.3, 2.7}}).empty());
}

TEST_CASE("segment on a grid line belongs to the upper cells") {
    const auto runs = segment_cells({{0.25, 1.0}, {1.75, 1.0}});
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].cell == Cell{0, 1});
    CHECK(runs[1].cell == Cell{1, 1});
}

TEST_CASE("random segments: length conservation and midpoint membership") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        const Segment s{{rng.uniform(-1.0, 9.0), rng.uniform(-1.0, 9.0)},
                        {rng.uniform(-1.0, 9.0), rng.uniform(-1.0, 9.0)}};
        const auto runs = segment_cells(s);
        double total = 0.0;
        double offset = 0.0;
        const double len = s.length();
        const Vec2 dir = len > 0 ? (s.b - s.a) * (1.0 / len) : Vec2{1, 0};
        for (const CellRun& run : runs) {
            total += run.length;
            CHECK(run.length <= std::sqrt(2.0) + 1e-12);
            // The run's midpoint must lie in its cell.
            const Vec2 mid = s.a + dir * (offset + 0.5 * run.length);
            CHECK(cell_of(mid) == run.cell);
            offset += run.length;
        }
        CHECK(std::abs(total - len) <= 1e-12 * (1.0 + len));
    }
}

TEST_CASE("consecutive runs touch edge- or corner-adjacent cells") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Segment s{{rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)},
                        {rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)}};
        const auto runs = segment_cells(s);
        for (std::size_t i = 1; i < runs.size(); ++i) {
            CHECK(std::abs(runs[i].cell.m - runs[i - 1].cell.m) <= 1);
            CHECK(std::abs(runs[i].cell.n - runs[i - 1].cell.n) <= 1);
        }
    }
}

namespace {

// Dyadic coordinates, so integer translation is exact in double arithmetic.
double dyadic(SplitMix64& rng, double lo, double hi) {
    return std::floor(rng.uniform(lo, hi) * 1048576.0) / 1048576.0;
}

} // namespace

TEST_CASE("integer translation shifts runs exactly") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const Segment s{{dyadic(rng, 0.0, 4.0), dyadic(rng, 0.0, 4.0)},
                        {dyadic(rng, 0.0, 4.0), dyadic(rng, 0.0, 4.0)}};
        const int p = static_cast<int>(rng.below(11)) - 5;
        const int q = static_cast<int>(rng.below(11)) - 5;
        const Segment t{{s.a.x + p, s.a.y + q}, {s.b.x + p, s.b.y + q}};
        const auto r0 = segment_cells(s);
        const auto r1 = segment_cells(t);
        REQUIRE(r0.size() == r1.size());
        for (std::size_t i = 0; i < r0.size(); ++i) {
            CHECK(r1[i].cell.m == r0[i].cell.m + p);
            CHECK(r1[i].cell.n == r0[i].cell.n + q);
            CHECK(r1[i].length == r0[i].length);
        }
    }
}

TEST_CASE("circle inside one cell") {
    const auto runs = circle_cells({{0.5, 0.5}, 0.4});
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].cell == Cell{0, 0});
    CHECK(runs[0].span() == doctest::Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("circle centered at a lattice point splits into quadrants") {
    const auto runs = circle_cells({{1, 1}, 0.5});
    REQUIRE(runs.size() == 4);
    double span = 0.0;
    bool seen[4] = {false, false, false, false};
    for (const ArcRun& run : runs) {
        CHECK(run.span() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
        span += run.span();
        if (run.cell == Cell{1, 1}) seen[0] = true;
        if (run.cell == Cell{0, 1}) seen[1] = true;
        if (run.cell == Cell{0, 0}) seen[2] = true;
        if (run.cell == Cell{1, 0}) seen[3] = true;
    }
    CHECK(span == doctest::Approx(kTwoPi).epsilon(1e-12));
    for (bool s : seen) CHECK(s);
}

TEST_CASE("bad circles are rejected") {
    const Circle zero{{0, 0}, 0.0};
    const Circle negative{{0, 0}, -1.0};
    CHECK_THROWS_AS(circle_cells(zero), std::invalid_argument);
    CHECK_THROWS_AS(circle_cells(negative), std::invalid_argument);
}

TEST_CASE("random circles: span conservation and midpoint membership") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const Circle c{{rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)}, rng.uniform(0.1, 3.0)};
        const auto runs = circle_cells(c);
        double span = 0.0;
        for (const ArcRun& run : runs) {
            span += run.span();
            CHECK(run.span() >= 0.0);
            CHECK(run.span() <= kTwoPi + 1e-12);
            const double mid = 0.5 * (run.begin + run.end);
            const Cell at = cell_of({c.center.x + c.radius * std::cos(mid),
                                     c.center.y + c.radius * std::sin(mid)});
            CHECK(at == run.cell);
        }
        CHECK(span == doctest::Approx(kTwoPi).epsilon(1e-10));
    }
}

TEST_CASE("dense angular oracle agrees with arc runs") {
    const Circle c{{2.3, 1.7}, 1.1};
    const auto runs = circle_cells(c);
    double span = 0.0;
    for (const ArcRun& run : runs) span += run.span();
    CHECK(span == doctest::Approx(kTwoPi).epsilon(1e-10));

    auto oracle = sampled_arc_lengths(c, 100000);
    std::map<std::pair<int, int>, double> exact;
    for (const ArcRun& run : runs) exact[{run.cell.m, run.cell.n}] += run.span() * c.radius;
    const double tol = 1e-3 * (1.0 + kTwoPi * c.radius);
    for (const auto& [cell, len] : exact) {
        CHECK(std::abs(len - oracle[cell]) <= tol);
    }
    for (const auto& [cell, len] : oracle) {
        CHECK(std::abs(len - exact[cell]) <= tol);
    }
}

TEST_CASE("segment runs match the Riemann oracle") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const Segment s{{rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)},
                        {rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)}};
        if (s.length() < 0.1) continue;
        auto oracle = sampled_segment_lengths(s, 100000);
        std::map<std::pair<int, int>, double> exact;
        for (const CellRun& run : segment_cells(s)) exact[{run.cell.m, run.cell.n}] += run.length;
        const double tol = 1e-3 * (1.0 + s.length());
        for (const auto& [cell, len] : exact) CHECK(std::abs(len - oracle[cell]) <= tol);
    }
}

TEST_CASE("integer translation shifts arc runs exactly") {
    const Circle c{{1.375, 2.625}, 1.9};
    const Circle t{{c.center.x + 3, c.center.y - 2}, 1.9};
    const auto r0 = circle_cells(c);
    const auto r1 = circle_cells(t);
    REQUIRE(r0.size() == r1.size());
    for (std::size_t i = 0; i < r0.size(); ++i) {
        CHECK(r1[i].cell.m == r0[i].cell.m + 3);
        CHECK(r1[i].cell.n == r0[i].cell.n - 2);
        CHECK(r1[i].begin == r0[i].begin);
        CHECK(r1[i].end == r0[i].end);
    }
}
