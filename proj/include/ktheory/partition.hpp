#pragma once

#include "ktheory/error.hpp"

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <vector>

namespace ktheory {

/// Type of a finite p-module: weakly decreasing positive exponents,
/// so (3,1) stands for Z/p^3 + Z/p.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<unsigned> parts) : Partition(std::vector<unsigned>(parts)) {}

    /// Accepts parts in any order; zeros are dropped.
    explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
        std::erase(parts_, 0U);
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    const std::vector<unsigned>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    /// |lambda|: the p-length of the module.
    unsigned size() const { return std::accumulate(parts_.begin(), parts_.end(), 0U); }
    unsigned operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0U; }

    Partition conjugate() const {
        std::vector<unsigned> c(parts_.empty() ? 0 : parts_.front(), 0U);
        for (unsigned part : parts_)
            for (unsigned k = 0; k < part; ++k) ++c[k];
        return Partition(std::move(c));
    }

    /// Union of parts: the type of the direct sum.
    friend Partition operator+(const Partition& a, const Partition& b) {
        std::vector<unsigned> all = a.parts_;
        all.insert(all.end(), b.parts_.begin(), b.parts_.end());
        return Partition(std::move(all));
    }

    /// Containment of Young diagrams.
    bool contains(const Partition& other) const {
        if (other.length() > length()) return false;
        for (std::size_t i = 0; i < other.length(); ++i)
            if (other.parts_[i] > parts_[i]) return false;
        return true;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
        os << '(';
        for (std::size_t i = 0; i < p.parts_.size(); ++i) os << (i ? "," : "") << p.parts_[i];
        return os << ')';
    }

private:
    std::vector<unsigned> parts_;
};

/// All partitions of n, in reverse lexicographic order.
inline std::vector<Partition> partitions_of(unsigned n) {
    std::vector<Partition> out;
    std::vector<unsigned> current;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned max_part) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            rec(remaining - part, part);
            current.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Partitions contained in `outer` (types of submodules of a module of type outer).
inline std::vector<Partition> subpartitions(const Partition& outer) {
    std::vector<Partition> out;
    std::vector<unsigned> current;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t row, unsigned cap) {
        out.emplace_back(current);
        if (row >= outer.length()) return;
        for (unsigned part = 1; part <= std::min(cap, outer[row]); ++part) {
            current.push_back(part);
            rec(row + 1, part);
            current.pop_back();
        }
    };
    rec(0, outer.empty() ? 0U : outer[0]);
    return out;
}

/// True iff the Littlewood-Richardson coefficient c^{outer}_{inner, content} is positive:
/// some semistandard filling of outer/inner with the given content has a lattice reverse
/// reading word. Searched cell by cell in reading order with backtracking.
inline bool lr_coefficient_positive(const Partition& outer, const Partition& inner, const Partition& content) {
    if (outer.size() != inner.size() + content.size()) return false;
    if (!outer.contains(inner)) return false;
    if (content.empty()) return true;

    struct Cell {
        std::size_t row;
        unsigned col;
    };
    std::vector<Cell> cells;  // rows top to bottom, each row right to left
    for (std::size_t r = 0; r < outer.length(); ++r)
        for (unsigned c = outer[r]; c > inner[r]; --c) cells.push_back({r, c - 1});

    std::vector<std::vector<unsigned>> fill(outer.length());
    for (std::size_t r = 0; r < outer.length(); ++r) fill[r].assign(outer[r], 0U);
    std::vector<unsigned> used(content.length() + 1, 0U);

    std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
        if (k == cells.size()) return true;
        const auto [r, c] = cells[k];
        unsigned hi = static_cast<unsigned>(content.length());
        if (c + 1 < outer[r]) hi = std::min(hi, fill[r][c + 1]);  // rows weakly increase
        unsigned lo = 1;
        if (r > 0 && c >= inner[r - 1]) lo = fill[r - 1][c] + 1;  // columns strictly increase
        for (unsigned v = lo; v <= hi; ++v) {
            if (used[v] >= content[v - 1]) continue;
            if (v > 1 && used[v] + 1 > used[v - 1]) continue;  // lattice condition
            ++used[v];
            fill[r][c] = v;
            if (place(k + 1)) return true;
            --used[v];
            fill[r][c] = 0;
        }
        return false;
    };
    return place(0);
}

/// Whether a finite p-module of type `mid` can be an extension 0 -> A -> E -> B -> 0
/// with A of type `sub` and B of type `quot`. Independent of p.
inline bool lr_extension_feasible(const Partition& mid, const Partition& sub, const Partition& quot) {
    return lr_coefficient_positive(mid, sub, quot);
}

} // namespace ktheory
