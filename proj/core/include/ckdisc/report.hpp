#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "ckdisc/geometry.hpp"

namespace ckdisc {

// Result of a supremum search: best |discrepancy| found, the probe achieving
// it, and how the search was run.
struct DiscrepancyReport {
    double value = 0.0;
    std::variant<Segment, Circle> witness;
    std::string method;          // "exact" or "sampled"
    std::size_t search_size = 0; // candidates examined

    // {"value":..., "witness":{...}, "method":..., "search_size":...};
    // witness is {ax,ay,bx,by} for segments, {cx,cy,t} for circles.
    std::string to_json_string() const;
};

} // namespace ckdisc
