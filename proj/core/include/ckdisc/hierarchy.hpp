#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ckdisc/coloring.hpp"
#include "ckdisc/geometry.hpp"

namespace ckdisc {

// Parameters of the hierarchical construction. Level sizes follow N_1 = 2,
// N_{k+1} = N_k * M_k with M_k the smallest odd integer >=
// max(3, C_M * (ln N_k)^(1/(2 eps_k))).
struct HierarchySpec {
    std::vector<double> epsilon = {0.25}; // per-level schedule; last entry repeats
    double K = 500.0;                     // length-bound constant
    double C_M = 1.0;                     // multiplier constant in M_k
    int max_level = 3;                    // levels 1..max_level are built
    std::uint64_t seed = 1;
    int retry_budget = 200;               // sign resamples allowed per level
    int exact_cap = 64;                   // exact verification while N_k <= this
    std::size_t sampled_trials = 20000;   // sampled verification beyond the cap
    int size_cap = 4096;                  // refuse specs with N_max beyond this

    double eps_at(int level) const;
    // phi(l) = K * l^(1/2 + eps_level)
    double phi(double length, int level) const;
    // Level sizes implied by the spec, N_1..N_max_level.
    std::vector<long long> level_sizes() const;
};

struct LevelReport {
    int level = 0;
    long long board_size = 0;
    double max_found = 0.0;
    double bound = 0.0;     // phi(N_k)/100
    std::string method;     // "exact" or "sampled"
    int retries = 0;        // resamples consumed before this level passed
    bool passed = false;
};

// The built coloring: a 2x2 all-plus base and one verified sign matrix per
// transition, defining colors on the centered square [-N_max/2, N_max/2)^2.
// Immutable after build; safe for concurrent queries.
class HierarchicalColoring {
public:
    // Builds and verifies every level. Each candidate sign matrix is redrawn
    // until the level passes its bound; exhausting the retry budget throws
    // with the offending level and measured excess.
    static HierarchicalColoring build(const HierarchySpec& spec);

    const HierarchySpec& spec() const { return spec_; }
    int levels() const { return static_cast<int>(sizes_.size()); }
    const std::vector<long long>& level_sizes() const { return sizes_; }
    const std::vector<LevelReport>& reports() const { return reports_; }
    // Sign matrix used between level k and k+1 (1-based k < levels());
    // row-major M_k x M_k of +/-1 with the central entry +1.
    const std::vector<std::int8_t>& sign_matrix(int k) const;
    int multiplier(int k) const; // M_k

    long long extent() const { return sizes_.back(); }

    // Color of cell (m,n) in centered coordinates; throws std::out_of_range
    // outside the built extent ("extend levels").
    int cell(long long m, long long n) const;

    // Exact discrepancy of a segment within the built extent.
    double segment_discrepancy(const Segment& s) const;

    // Minimal k with N_k >= length; length must not exceed the extent.
    int min_level_covering(double length) const;

    // Level-k board as a finite coloring, cell (m,n) of the board holding
    // color of centered cell (m - N_k/2, n - N_k/2).
    Coloring materialize(int level) const;

    // Re-runs the level verification from the stored coloring; a pure
    // function of the board (sampled verification uses a fixed per-level
    // seed derived from the spec seed).
    LevelReport verify_level(int level) const;

    // Versioned JSON dump; reload reproduces cell() bit-exactly.
    void save(std::ostream& out) const;
    std::string to_json_string() const;
    static HierarchicalColoring load(std::istream& in);
    static HierarchicalColoring from_json_string(const std::string& text);

private:
    HierarchicalColoring() = default;

    HierarchySpec spec_;
    std::vector<long long> sizes_;                  // N_1..N_L
    std::vector<int> multipliers_;                  // M_1..M_{L-1}
    std::vector<std::vector<std::int8_t>> signs_;   // per transition, row-major
    std::vector<LevelReport> reports_;              // one per level 1..L
};

} // namespace ckdisc
