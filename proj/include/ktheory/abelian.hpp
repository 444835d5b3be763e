#pragma once

#include "ktheory/smith.hpp"
#include "ktheory/zp_module.hpp"

#include <optional>
#include <sstream>
#include <vector>

namespace ktheory {

/// Presentation Z^gens / (column lattice of rels). rels has `gens` rows.
struct Presentation {
    std::size_t gens = 0;
    IntMatrix rels;

    Presentation() : rels(0, 0) {}
    Presentation(std::size_t n, IntMatrix r) : gens(n), rels(std::move(r)) {
        if (rels.rows() != gens) throw DimensionError("presentation: relation matrix needs one row per generator");
    }
    static Presentation free(std::size_t n) { return {n, IntMatrix(n, 0)}; }

    /// Whether y represents zero in the presented group.
    bool is_zero(std::span<const Int> y) const { return in_column_lattice(rels, y); }
    /// Whether y is zero after inverting every prime other than p.
    bool is_locally_zero(std::span<const Int> y, std::uint64_t p) const { return local_multiplier(rels, y, p).has_value(); }

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

inline Presentation direct_sum(const Presentation& a, const Presentation& b) {
    return {a.gens + b.gens, block_diag(a.rels, b.rels)};
}

/// Finitely generated abelian group: Z^rank + sum Z/factors[i], factors[i] | factors[i+1], all > 1.
struct AbelianGroup {
    std::size_t rank = 0;
    std::vector<Int> factors;

    static AbelianGroup free(std::size_t rank) { return {rank, {}}; }

    static AbelianGroup from_presentation(const Presentation& pres) {
        const SnfResult s = snf(pres.rels);
        AbelianGroup g;
        g.rank = pres.gens - s.rank();
        for (const Int& d : s.d)
            if (d > 1) g.factors.push_back(d);
        return g;
    }

    /// Diagonal presentation of this normal form.
    Presentation presentation() const {
        IntMatrix rels(rank + factors.size(), factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) rels(rank + i, i) = factors[i];
        return {rank + factors.size(), std::move(rels)};
    }

    bool is_zero() const noexcept { return rank == 0 && factors.empty(); }

    Int torsion_order() const {
        Int n = 1;
        for (const Int& f : factors) n *= f;
        return n;
    }

    /// Localization at the prime p.
    ZpModule p_part(std::uint64_t p) const {
        std::vector<unsigned> parts;
        for (const Int& f : factors) parts.push_back(valuation(f, p));
        return ZpModule{p, rank, Partition(std::move(parts))};
    }

    /// Primes dividing the torsion order.
    std::vector<Int> torsion_primes() const { return prime_factors(torsion_order()); }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

    friend std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) {
        if (g.is_zero()) return os << '0';
        bool first = true;
        if (g.rank > 0) {
            os << 'Z';
            if (g.rank > 1) os << '^' << g.rank;
            first = false;
        }
        for (const Int& f : g.factors) {
            os << (first ? "" : " + ") << "Z/" << f;
            first = false;
        }
        return os;
    }
};

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    return AbelianGroup::from_presentation(direct_sum(a.presentation(), b.presentation()));
}

/// Localizes a presentation at p; factors prime to p are reported through `discarded`.
inline ZpModule localize_presentation(const Presentation& pres, std::uint64_t p, std::vector<Int>* discarded = nullptr) {
    const SnfResult s = snf(pres.rels);
    std::vector<unsigned> parts;
    for (const Int& d : s.d) {
        if (d == 0) continue;
        parts.push_back(valuation(d, p));
        if (discarded) {
            Int rest = strip_prime(d, p);
            if (rest > 1) discarded->push_back(rest);
        }
    }
    return ZpModule{p, pres.gens - s.rank(), Partition(std::move(parts))};
}

/// Whether a matrix defines a homomorphism source -> target (relations land in relations).
/// With p set, the check is made after localizing at p.
inline bool is_homomorphism(const Presentation& source, const Presentation& target, const IntMatrix& f,
                            std::optional<std::uint64_t> p = std::nullopt) {
    if (f.rows() != target.gens || f.cols() != source.gens) throw DimensionError("map shape does not match its modules");
    const IntMatrix image = f * source.rels;
    for (std::size_t j = 0; j < image.cols(); ++j) {
        const auto c = image.col(j);
        if (p ? !target.is_locally_zero(c, *p) : !target.is_zero(c)) return false;
    }
    return true;
}

/// Whether f is the zero map into target (optionally after localizing at p).
inline bool is_zero_map(const Presentation& target, const IntMatrix& f, std::optional<std::uint64_t> p = std::nullopt) {
    if (f.rows() != target.gens) throw DimensionError("map codomain does not match module");
    for (std::size_t j = 0; j < f.cols(); ++j) {
        const auto c = f.col(j);
        if (p ? !target.is_locally_zero(c, *p) : !target.is_zero(c)) return false;
    }
    return true;
}

namespace detail {

// Homology ker(g)/im(f) as a presentation. Works with the lattice
// Q = g^{-1}(L_c) + L_b + im f, which equals the preimage whenever g f = 0
// integrally and has the same localization when g f = 0 only p-locally.
inline Presentation homology_presentation(const Presentation& a, const Presentation& b, const Presentation& c,
                                          const IntMatrix& f, const IntMatrix& g) {
    if (f.rows() != b.gens || f.cols() != a.gens) throw DimensionError("homology: f has the wrong shape");
    if (g.rows() != c.gens || g.cols() != b.gens) throw DimensionError("homology: g has the wrong shape");

    const IntMatrix stacked = hconcat(g, -c.rels);
    const IntMatrix kernel = kernel_basis(stacked);
    IntMatrix preimage(b.gens, kernel.cols());
    for (std::size_t i = 0; i < b.gens; ++i)
        for (std::size_t j = 0; j < kernel.cols(); ++j) preimage(i, j) = kernel(i, j);

    const IntMatrix boundaries = hconcat(b.rels, f);
    const IntMatrix ambient = column_basis(hconcat(preimage, boundaries));

    IntMatrix coords(ambient.cols(), boundaries.cols());
    for (std::size_t j = 0; j < boundaries.cols(); ++j) {
        const auto col = boundaries.col(j);
        auto y = solve_membership(ambient, col);
        if (!y) throw Error("homology: boundary outside the ambient lattice");
        for (std::size_t i = 0; i < y->size(); ++i) coords(i, j) = (*y)[i];
    }
    return {ambient.cols(), std::move(coords)};
}

} // namespace detail

/// Homology ker(g)/im(f) at B of A --f--> B --g--> C, over Z.
/// Throws NotAComplex when g f != 0, InvalidInput when a map ignores relations.
inline AbelianGroup homology(const Presentation& a, const Presentation& b, const Presentation& c, const IntMatrix& f,
                             const IntMatrix& g) {
    if (!is_homomorphism(a, b, f) || !is_homomorphism(b, c, g)) throw InvalidInput("homology: map is not well defined");
    if (!is_zero_map(c, g * f)) throw NotAComplex("homology: composite of the two maps is nonzero");
    return AbelianGroup::from_presentation(detail::homology_presentation(a, b, c, f, g));
}

/// Same as homology() but after localizing every module at p.
inline ZpModule homology_local(const Presentation& a, const Presentation& b, const Presentation& c, const IntMatrix& f,
                               const IntMatrix& g, std::uint64_t p) {
    if (!is_homomorphism(a, b, f, p) || !is_homomorphism(b, c, g, p)) throw InvalidInput("homology: map is not well defined");
    if (!is_zero_map(c, g * f, p)) throw NotAComplex("homology: composite of the two maps is nonzero");
    return localize_presentation(detail::homology_presentation(a, b, c, f, g), p);
}

/// Kernel of f: B -> C as an abelian group.
inline AbelianGroup kernel(const Presentation& b, const Presentation& c, const IntMatrix& f) {
    return homology(Presentation::free(0), b, c, IntMatrix(b.gens, 0), f);
}

/// Cokernel of f: A -> B as an abelian group.
inline AbelianGroup cokernel(const Presentation& a, const Presentation& b, const IntMatrix& f) {
    if (!is_homomorphism(a, b, f)) throw InvalidInput("cokernel: map is not well defined");
    return AbelianGroup::from_presentation({b.gens, hconcat(b.rels, f)});
}

} // namespace ktheory
