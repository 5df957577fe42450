#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ckdisc {

// An N x N board of +/-1 cell colors. Cell (m,n) covers [m,m+1) x [n,n+1);
// everything outside [0,N)^2 reads as 0. Immutable after construction.
class Coloring {
public:
    static Coloring constant(int n, int sign, std::string label = "constant");
    static Coloring parity(int n);   // cell (m,n) = (-1)^(m+n)
    static Coloring striped(int n);  // cell (m,n) = (-1)^n, rows monochromatic
    static Coloring random(int n, std::uint64_t seed); // i.i.d. signs from SplitMix64
    // Adopts a row-major array of n*n values, each +1 or -1.
    static Coloring from_cells(int n, std::vector<std::int8_t> cells, std::string label);

    int size() const { return size_; }
    const std::string& label() const { return label_; }

    // Stored color inside the board, 0 outside (including the m = N / n = N
    // boundary, which no cell owns).
    int get(int m, int n) const {
        if (m < 0 || n < 0 || m >= size_ || n >= size_) return 0;
        return cells_[static_cast<std::size_t>(n) * size_ + m];
    }

    long long total() const; // sum of all cell colors

    // Text format: header "N <size> <label>", then N lines of N '+'/'-'
    // characters, line n holding row n with m increasing left to right.
    void save(std::ostream& out) const;
    std::string to_text() const;
    static Coloring load(std::istream& in);
    static Coloring from_text(const std::string& text);

    bool operator==(const Coloring& o) const {
        return size_ == o.size_ && cells_ == o.cells_;
    }

private:
    Coloring(int n, std::string label);

    int size_;
    std::string label_;
    std::vector<std::int8_t> cells_;
};

} // namespace ckdisc
