#pragma once

#include "ckdisc/coloring.hpp"
#include "ckdisc/geometry.hpp"
#include "ckdisc/report.hpp"

namespace ckdisc {

// Signed circle discrepancy: sum over arc runs of color * radius * span.
double circle_discrepancy(const Coloring& c, const Circle& k);

// Named radius-range fractions: the supremum search and the Lp discrepancy
// range over radii in (alpha*N, beta*N).
inline constexpr double kRadiusLo = 1.0 / 5.0;
inline constexpr double kRadiusHi = 1.0 / 4.0;

// Sampled supremum of |circle_discrepancy| over centers on a step grid
// covering (-2N, 2N)^2 and radius_count radii at the midpoints of uniform
// subintervals of (N/5, N/4). Centers whose circle cannot meet the board are
// skipped. method is always "sampled".
DiscrepancyReport circle_sup_search(const Coloring& c, double center_step, int radius_count,
                                    unsigned jobs = 0);

// Lp circle discrepancy: ((1/N^3) * int_{N/5}^{N/4} int |D_t(x)|^p dx dt)^(1/p)
// by midpoint rule in t and x, doubling the resolution until successive
// estimates agree to 1e-3 relative (up to `max_refine` doublings).
double circle_lp(const Coloring& c, double p, double center_step, int radius_count,
                 unsigned jobs = 0, int max_refine = 3);

} // namespace ckdisc
