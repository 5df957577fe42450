#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ckdisc/coloring.hpp"
#include "ckdisc/line_disc.hpp"
#include "ckdisc/rng.hpp"

using namespace ckdisc;

namespace {

// Quadratic brute force over all windows.
double brute_max_abs_subsum(const std::vector<double>& w) {
    double best = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i; j < w.size(); ++j) {
            sum += w[j];
            best = std::max(best, std::abs(sum));
        }
    }
    return best;
}

// Independent projection evaluation: sum of per-cell trapezoid profiles.
double oracle_projection_at(const Coloring& c, Vec2 u, double x) {
    const double h = 1.0 / std::max(std::abs(u.x), std::abs(u.y));
    double sum = 0.0;
    for (int n = 0; n < c.size(); ++n) {
        for (int m = 0; m < c.size(); ++m) {
            double p[4] = {m * u.x + n * u.y, (m + 1) * u.x + n * u.y,
                           m * u.x + (n + 1) * u.y, (m + 1) * u.x + (n + 1) * u.y};
            std::sort(p, p + 4);
            double len = 0.0;
            if (p[1] - p[0] <= 1e-12) {
                len = (x >= p[0] && x < p[2]) ? h : 0.0;
            } else if (x > p[0] && x < p[1]) {
                len = h * (x - p[0]) / (p[1] - p[0]);
            } else if (x >= p[1] && x <= p[2]) {
                len = h;
            } else if (x > p[2] && x < p[3]) {
                len = h * (p[3] - x) / (p[3] - p[2]);
            }
            sum += c.get(m, n) * len;
        }
    }
    return sum;
}

double oracle_direction_sup(const Coloring& c, Vec2 u) {
    const Projection pr = project_onto(c, u);
    double best = 0.0;
    const auto& knots = pr.knots();
    for (std::size_t k = 0; k < knots.size(); ++k) {
        best = std::max(best, std::abs(oracle_projection_at(c, u, knots[k])));
        if (k + 1 < knots.size())
            best = std::max(best,
                            std::abs(oracle_projection_at(c, u, 0.5 * (knots[k] + knots[k + 1]))));
    }
    return best;
}

} // namespace

TEST_CASE("segment discrepancy basics") {
    const Coloring ones = Coloring::constant(8, +1);
    CHECK(segment_discrepancy(ones, {{1.0, 1.5}, {5.0, 4.5}}) ==
          doctest::Approx(5.0).epsilon(1e-12));

    const int n = 6;
    const Coloring striped = Coloring::striped(n);
    const double row0 = segment_discrepancy(striped, {{0.0, 0.5}, {static_cast<double>(n), 0.5}});
    CHECK(std::abs(row0) == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));

    const Coloring parity = Coloring::parity(4);
    CHECK(segment_discrepancy(parity, {{0, 0}, {4, 4}}) ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("max_abs_subsum examples and brute force") {
    {
        const std::vector<double> w{1, -1, 2};
        const Subsum s = max_abs_subsum(w);
        CHECK(s.value == doctest::Approx(2.0));
        double sum = 0.0;
        for (std::size_t i = s.begin; i < s.end; ++i) sum += w[i];
        CHECK(std::abs(sum) == doctest::Approx(s.value));
    }
    {
        const std::vector<double> w{-3, 1, -1};
        CHECK(max_abs_subsum(w).value == doctest::Approx(3.0));
    }
    CHECK(max_abs_subsum({}).value == 0.0);

    SplitMix64 rng(2024);
    std::vector<double> w(1000);
    for (double& v : w) v = rng.uniform(-1.0, 1.0);
    const Subsum s = max_abs_subsum(w);
    CHECK(s.value == doctest::Approx(brute_max_abs_subsum(w)).epsilon(1e-12));
}

TEST_CASE("exact search on reference boards") {
    for (int n : {2, 4, 8}) {
        const DiscrepancyReport rep = max_segment_discrepancy(Coloring::constant(n, +1));
        CHECK(rep.value == doctest::Approx(n * std::sqrt(2.0)).epsilon(1e-9));
        CHECK(rep.method == "exact");
        const Segment w = std::get<Segment>(rep.witness);
        CHECK(w.length() == doctest::Approx(n * std::sqrt(2.0)).epsilon(1e-9));
    }
    for (int n : {2, 4, 8}) {
        CHECK(max_segment_discrepancy(Coloring::parity(n)).value ==
              doctest::Approx(n * std::sqrt(2.0)).epsilon(1e-9));
    }
    for (int n : {2, 4, 8, 12}) {
        // The extremal striped segment is not a horizontal row: (0,0)->(N,1)
        // stays inside monochromatic row 0 and is longer, sqrt(N^2+1).
        CHECK(max_segment_discrepancy(Coloring::striped(n)).value ==
              doctest::Approx(std::sqrt(static_cast<double>(n) * n + 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("witness reproduces the reported value") {
    for (std::uint64_t seed : {3ULL, 17ULL}) {
        const Coloring board = Coloring::random(10, seed);
        const DiscrepancyReport rep = max_segment_discrepancy(board);
        const Segment w = std::get<Segment>(rep.witness);
        CHECK(std::abs(std::abs(segment_discrepancy(board, w)) - rep.value) <= 1e-9);
    }
}

TEST_CASE("exact search refuses oversized boards") {
    const Coloring big = Coloring::random(80, 1);
    CHECK_THROWS_WITH_AS(max_segment_discrepancy(big),
                         doctest::Contains("too large for exact search"), std::runtime_error);
}

TEST_CASE("sampled search basics") {
    const int n = 10;
    const Coloring ones = Coloring::constant(n, +1);
    const DiscrepancyReport rep = sampled_segment_sup(ones, 10000, 5);
    CHECK(rep.value >= 0.99 * n * std::sqrt(2.0));
    CHECK(rep.method == "sampled");

    const Coloring board = Coloring::random(12, 9);
    const DiscrepancyReport a = sampled_segment_sup(board, 1, 42);
    const DiscrepancyReport b = sampled_segment_sup(board, 1, 42);
    CHECK(a.value == b.value);
    CHECK(a.search_size == b.search_size);
}

TEST_CASE("sampled never beats exact") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        for (int n : {8, 16}) {
            const Coloring board = Coloring::random(n, seed);
            const double exact = max_segment_discrepancy(board).value;
            const double sampled = sampled_segment_sup(board, 4000, seed * 11 + 1).value;
            CHECK(sampled <= exact + 1e-9);
        }
    }
}

TEST_CASE("sub-segment optimality: random endpoints never beat the line subsum") {
    SplitMix64 rng(808);
    const Coloring board = Coloring::random(8, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const Vec2 a{rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)};
        const Vec2 b{rng.uniform(0.0, 8.0), rng.uniform(0.0, 8.0)};
        const Segment full{a, b};
        if (full.length() < 0.5) continue;
        std::vector<double> weights;
        for (const CellRun& run : segment_cells(full))
            weights.push_back(board.get(run.cell.m, run.cell.n) * run.length);
        const double line_best = max_abs_subsum(weights).value;
        for (int sub = 0; sub < 20; ++sub) {
            double t0 = rng.uniform();
            double t1 = rng.uniform();
            if (t0 > t1) std::swap(t0, t1);
            const Vec2 d = b - a;
            const Segment part{{a.x + t0 * d.x, a.y + t0 * d.y},
                               {a.x + t1 * d.x, a.y + t1 * d.y}};
            CHECK(std::abs(segment_discrepancy(board, part)) <= line_best + 1e-9);
        }
    }
}

TEST_CASE("transposing the board preserves the exact value") {
    const int n = 8;
    const Coloring board = Coloring::random(n, 21);
    std::vector<std::int8_t> transposed(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            transposed[static_cast<std::size_t>(row) * n + col] =
                static_cast<std::int8_t>(board.get(row, col));
    const Coloring flipped = Coloring::from_cells(n, std::move(transposed), "transposed");
    CHECK(max_segment_discrepancy(board).value ==
          doctest::Approx(max_segment_discrepancy(flipped).value).epsilon(1e-12));
}

TEST_CASE("projection on reference boards") {
    const int n = 6;
    const Coloring ones = Coloring::constant(n, +1);
    const Projection flat = project_onto(ones, {1.0, 0.0});
    for (double x : {0.01, 1.5, 3.0, 5.99}) CHECK(flat(x) == doctest::Approx(n).epsilon(1e-12));
    CHECK(flat(-0.5) == 0.0);
    CHECK(flat(static_cast<double>(n)) == 0.0);
    CHECK(flat.sup_abs() == doctest::Approx(n).epsilon(1e-12));

    const Coloring parity = Coloring::parity(6);
    const Projection cancel = project_onto(parity, {1.0, 0.0});
    CHECK(cancel.sup_abs() <= 1e-12);

    const Coloring striped = Coloring::striped(n);
    const Projection alt = project_onto(striped, {0.0, 1.0});
    for (double x : {0.25, 1.5, 2.75, 4.5}) {
        const double expect = (static_cast<int>(std::floor(x)) % 2 == 0) ? n : -n;
        CHECK(alt(x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("projection rejects non-unit directions") {
    const Coloring board = Coloring::parity(4);
    const Vec2 bad{1.0, 1.0};
    CHECK_THROWS_AS(project_onto(board, bad), std::invalid_argument);
}

TEST_CASE("projection matches the per-cell oracle") {
    const Coloring board = Coloring::random(7, 40);
    SplitMix64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const double theta = rng.uniform(0.05, 1.5);
        const Vec2 u{std::cos(theta), std::sin(theta)};
        const Projection pr = project_onto(board, u);
        for (int i = 0; i < 25; ++i) {
            const double x = rng.uniform(-1.0, 1.4 * 7.0);
            const double want = oracle_projection_at(board, u, x);
            CHECK(std::abs(pr(x) - want) <= 1e-9);
        }
    }
}

TEST_CASE("line_lp converges and respects norm monotonicity") {
    const Coloring ones = Coloring::constant(4, +1);
    const double coarse = line_lp(ones, 2.0, 64);
    const double dense = line_lp(ones, 2.0, 1024);
    CHECK(coarse == doctest::Approx(dense).epsilon(5e-3));

    const Coloring board = Coloring::random(6, 77);
    const double l1 = line_lp(board, 1.0, 128);
    const double l2 = line_lp(board, 2.0, 128);
    // Cauchy-Schwarz with the (1/N) du dx measure: the support mass is at
    // most 2 pi sqrt(2) (N + 2) / N after normalization.
    const double mass = 2.0 * std::numbers::pi * std::sqrt(2.0) * (6.0 + 2.0) / 6.0;
    CHECK(l1 <= std::sqrt(mass) * l2 + 1e-9);

    CHECK_THROWS_AS(line_lp(board, 0.5, 64), std::invalid_argument);
    CHECK_THROWS_AS(line_lp(board, 1.0, 2), std::invalid_argument);
}

TEST_CASE("line_lp fractional p sits inside the Holder bracket") {
    const Coloring board = Coloring::random(5, 13);
    const double l1 = line_lp(board, 1.0, 96);
    const double l15 = line_lp(board, 1.5, 96);
    const double l2 = line_lp(board, 2.0, 96);
    const double mass = 2.0 * std::numbers::pi * std::sqrt(2.0) * (5.0 + 2.0) / 5.0;
    CHECK(l1 <= std::pow(mass, 1.0 - 1.0 / 1.5) * l15 + 1e-9);
    CHECK(l15 <= std::pow(mass, 1.0 / 1.5 - 0.5) * l2 + 1e-9);
}

TEST_CASE("line_sup on reference boards") {
    for (int n : {4, 8, 16}) {
        // Full lines along (N,1) cut one monochromatic row corner to corner.
        CHECK(line_sup(Coloring::striped(n)) ==
              doctest::Approx(std::sqrt(static_cast<double>(n) * n + 1.0)).epsilon(1e-9));
        CHECK(line_sup(Coloring::striped(n)) >= static_cast<double>(n));
    }
    const int n = 6;
    CHECK(line_sup(Coloring::constant(n, +1)) ==
          doctest::Approx(n * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("line_sup equals the brute-force corner-direction oracle") {
    auto brute = [](const Coloring& board) {
        const int n = board.size();
        double best = 0.0;
        for (int p = 0; p <= n; ++p) {
            for (int q = -n; q <= n; ++q) {
                if (p == 0 && q != 1) continue;
                if (p > 0 && q == 0 && p != 1) continue;
                if (p > 0 && q != 0 && std::gcd(p, std::abs(q)) != 1) continue;
                const double inv =
                    1.0 / std::hypot(static_cast<double>(p), static_cast<double>(q));
                best = std::max(best, oracle_direction_sup(board, {p * inv, q * inv}));
            }
        }
        return best;
    };
    const Coloring parity = Coloring::parity(8);
    CHECK(line_sup(parity) == doctest::Approx(brute(parity)).epsilon(1e-9));
    const Coloring rnd = Coloring::random(5, 3);
    CHECK(line_sup(rnd) == doctest::Approx(brute(rnd)).epsilon(1e-9));
}

TEST_CASE("report serializes to the documented JSON shape") {
    const DiscrepancyReport rep = max_segment_discrepancy(Coloring::parity(4));
    const std::string json = rep.to_json_string();
    CHECK(json.find("\"value\":") != std::string::npos);
    CHECK(json.find("\"witness\":{\"ax\":") != std::string::npos);
    CHECK(json.find("\"method\":\"exact\"") != std::string::npos);
    CHECK(json.find("\"search_size\":") != std::string::npos);
}
