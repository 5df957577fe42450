#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ckdisc/coloring.hpp"
#include "ckdisc/geometry.hpp"
#include "ckdisc/report.hpp"

namespace ckdisc {

// Signed discrepancy of a segment: sum over cell runs of color * run length
// (white length minus black length when +1 is white).
double segment_discrepancy(const Coloring& c, const Segment& s);

struct Subsum {
    double value = 0.0;     // max over i<=j of |w[i] + ... + w[j]|
    std::size_t begin = 0;  // maximizing window, half-open [begin, end)
    std::size_t end = 0;
};

// Maximum absolute contiguous subsum, via prefix-sum extremes. Empty input
// gives {0, 0, 0}.
Subsum max_abs_subsum(std::span<const double> w);

struct ExactSearchOptions {
    int max_size = 64; // boards larger than this are refused (cost grows ~N^5)
    unsigned jobs = 0; // 0 = hardware concurrency
};

// Exact supremum of |segment_discrepancy| over all segments. Candidates are
// the lines through two corners of the (N+1)x(N+1) lattice plus the
// axis-parallel cell midlines; per line the best sub-segment is the maximum
// absolute subsum of its run weights. Throws when N exceeds
// options.max_size ("too large for exact search").
DiscrepancyReport max_segment_discrepancy(const Coloring& c, const ExactSearchOptions& options = {});

// Monte Carlo fallback: the best sub-segment over a deterministic preamble
// (board-corner lines and cell midlines) plus `trials` sampled lines,
// alternating random corner pairs with uniform random chords. Never exceeds
// the exact supremum.
DiscrepancyReport sampled_segment_sup(const Coloring& c, std::size_t trials, std::uint64_t seed,
                                      unsigned jobs = 0);

// The line discrepancy function of one direction: x -> integral of the
// coloring over the full line {x*u + y*perp(u)}. Piecewise linear with knots
// at lattice-corner projections; axis-aligned directions degenerate to step
// functions, so each knot carries left and right limits.
class Projection {
public:
    Vec2 direction() const { return u_; }
    std::size_t knot_count() const { return knots_.size(); }
    const std::vector<double>& knots() const { return knots_; }
    double left_value(std::size_t k) const { return left_[k]; }
    double right_value(std::size_t k) const { return right_[k]; }

    double operator()(double x) const; // right-continuous evaluation
    double sup_abs() const;
    // Integral of |value|^p over the real line (exact for p in {1,2},
    // Gauss-Legendre with doubling to 1e-6 relative otherwise).
    double integral_abs_pow(double p) const;

private:
    friend Projection project_onto(const Coloring&, Vec2);
    Vec2 u_;
    std::vector<double> knots_;
    std::vector<double> left_;
    std::vector<double> right_;
};

// Exact projection of the coloring onto direction u (|u| must be 1 within
// 1e-12; throws otherwise).
Projection project_onto(const Coloring& c, Vec2 u);

// Lp line discrepancy: ((1/N) * integral over S^1 and offsets of
// |projection|^p)^(1/p), by uniform angular quadrature with exact inner
// integration. Requires p >= 1 and angular_nodes >= 4.
double line_lp(const Coloring& c, double p, int angular_nodes, unsigned jobs = 0);

// Sup line discrepancy over the corner-pair direction family (all primitive
// lattice directions with components up to N), exact per direction.
double line_sup(const Coloring& c, unsigned jobs = 0);

} // namespace ckdisc
