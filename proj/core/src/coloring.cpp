#include "ckdisc/coloring.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ckdisc/rng.hpp"

namespace ckdisc {

Coloring::Coloring(int n, std::string label) : size_(n), label_(std::move(label)) {
    if (n < 1) throw std::invalid_argument("Coloring: size must be >= 1");
    cells_.assign(static_cast<std::size_t>(n) * n, 1);
}

Coloring Coloring::constant(int n, int sign, std::string label) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("Coloring: sign must be +1 or -1");
    Coloring c(n, std::move(label));
    std::fill(c.cells_.begin(), c.cells_.end(), static_cast<std::int8_t>(sign));
    return c;
}

Coloring Coloring::parity(int n) {
    Coloring c(n, "parity");
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            c.cells_[static_cast<std::size_t>(row) * n + col] = ((row + col) % 2 == 0) ? 1 : -1;
    return c;
}

Coloring Coloring::striped(int n) {
    Coloring c(n, "striped");
    for (int row = 0; row < n; ++row) {
        const std::int8_t v = (row % 2 == 0) ? 1 : -1;
        std::fill_n(c.cells_.begin() + static_cast<std::size_t>(row) * n, n, v);
    }
    return c;
}

Coloring Coloring::random(int n, std::uint64_t seed) {
    Coloring c(n, "random-" + std::to_string(seed));
    SplitMix64 rng(seed);
    // Row-major draw order (n outer, m inner), one generator step per cell.
    for (auto& cell : c.cells_) cell = static_cast<std::int8_t>(rng.sign());
    return c;
}

Coloring Coloring::from_cells(int n, std::vector<std::int8_t> cells, std::string label) {
    Coloring c(n, std::move(label));
    if (cells.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("Coloring::from_cells: wrong cell count");
    for (std::int8_t v : cells) {
        if (v != 1 && v != -1)
            throw std::invalid_argument("Coloring::from_cells: cells must be +1 or -1");
    }
    c.cells_ = std::move(cells);
    return c;
}

long long Coloring::total() const {
    return std::accumulate(cells_.begin(), cells_.end(), 0LL);
}

void Coloring::save(std::ostream& out) const {
    out << "N " << size_;
    if (!label_.empty()) out << ' ' << label_;
    out << '\n';
    for (int row = 0; row < size_; ++row) {
        for (int col = 0; col < size_; ++col)
            out << (cells_[static_cast<std::size_t>(row) * size_ + col] > 0 ? '+' : '-');
        out << '\n';
    }
}

std::string Coloring::to_text() const {
    std::ostringstream out;
    save(out);
    return out.str();
}

Coloring Coloring::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("Coloring::load: missing header");
    std::istringstream hs(header);
    std::string tag;
    int n = 0;
    hs >> tag >> n;
    if (tag != "N" || n < 1) throw std::runtime_error("Coloring::load: bad header '" + header + "'");
    std::string label;
    std::getline(hs >> std::ws, label);

    Coloring c(n, label);
    for (int row = 0; row < n; ++row) {
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("Coloring::load: truncated board");
        if (static_cast<int>(line.size()) < n)
            throw std::runtime_error("Coloring::load: short row " + std::to_string(row));
        for (int col = 0; col < n; ++col) {
            const char ch = line[static_cast<std::size_t>(col)];
            if (ch != '+' && ch != '-')
                throw std::runtime_error("Coloring::load: invalid cell character");
            c.cells_[static_cast<std::size_t>(row) * n + col] = (ch == '+') ? 1 : -1;
        }
    }
    return c;
}

Coloring Coloring::from_text(const std::string& text) {
    std::istringstream in(text);
    return load(in);
}

} // namespace ckdisc
