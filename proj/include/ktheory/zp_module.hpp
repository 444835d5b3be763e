#pragma once

#include "ktheory/error.hpp"
#include "ktheory/integer.hpp"
#include "ktheory/partition.hpp"

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

namespace ktheory {

/// Finitely generated module over Z_(p) in normal form:
/// Z_(p)^rank + sum_i Z/p^{torsion_i}.
struct ZpModule {
    std::uint64_t p = 0;
    std::size_t rank = 0;
    Partition torsion;

    static ZpModule zero(std::uint64_t p) { return ZpModule{p, 0, {}}; }
    static ZpModule free(std::uint64_t p, std::size_t rank) { return ZpModule{p, rank, {}}; }

    bool is_zero() const noexcept { return rank == 0 && torsion.empty(); }
    /// Length of the torsion submodule.
    unsigned length() const { return torsion.size(); }

    friend bool operator==(const ZpModule&, const ZpModule&) = default;

    friend std::ostream& operator<<(std::ostream& os, const ZpModule& m) {
        if (m.is_zero()) return os << '0';
        bool first = true;
        if (m.rank > 0) {
            os << "Z_(" << m.p << ')';
            if (m.rank > 1) os << '^' << m.rank;
            first = false;
        }
        for (unsigned k : m.torsion.parts()) {
            os << (first ? "" : " + ") << "Z/" << m.p;
            if (k > 1) os << '^' << k;
            first = false;
        }
        return os;
    }
};

inline std::string to_string(const ZpModule& m) {
    std::ostringstream os;
    os << m;
    return os.str();
}

inline void require_same_prime(const ZpModule& a, const ZpModule& b) {
    if (a.p != b.p) throw PrimeMismatch("modules over Z_(" + std::to_string(a.p) + ") and Z_(" + std::to_string(b.p) + ")");
}

inline ZpModule direct_sum(const ZpModule& a, const ZpModule& b) {
    require_same_prime(a, b);
    return ZpModule{a.p, a.rank + b.rank, a.torsion + b.torsion};
}

/// Z/2-graded Z_(p)-module.
struct GradedZpModule {
    ZpModule even;
    ZpModule odd;

    static GradedZpModule zero(std::uint64_t p) { return {ZpModule::zero(p), ZpModule::zero(p)}; }

    std::uint64_t p() const noexcept { return even.p; }
    bool is_zero() const noexcept { return even.is_zero() && odd.is_zero(); }
    std::size_t total_rank() const noexcept { return even.rank + odd.rank; }
    unsigned total_length() const { return even.length() + odd.length(); }

    const ZpModule& operator[](int degree) const { return (degree % 2 == 0) ? even : odd; }
    ZpModule& operator[](int degree) { return (degree % 2 == 0) ? even : odd; }

    friend bool operator==(const GradedZpModule&, const GradedZpModule&) = default;

    friend std::ostream& operator<<(std::ostream& os, const GradedZpModule& m) {
        return os << "{even: " << m.even << ", odd: " << m.odd << '}';
    }
};

inline GradedZpModule direct_sum(const GradedZpModule& a, const GradedZpModule& b) {
    return {direct_sum(a.even, b.even), direct_sum(a.odd, b.odd)};
}

/// Degree shift; odd shifts swap the two components.
inline GradedZpModule shift(const GradedZpModule& m, int by) {
    if (by % 2 == 0) return m;
    return {m.odd, m.even};
}

} // namespace ktheory
