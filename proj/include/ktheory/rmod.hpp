#pragma once

#include "ktheory/abelian.hpp"
#include "ktheory/rep_ring.hpp"

#include <string>
#include <vector>

namespace ktheory {

/// Finitely generated R-module: the abelian group Z^gens / <rels columns> together with
/// the action of t on generators (column j of t is t * e_j).
struct FgRModule {
    std::size_t gens = 0;
    IntMatrix rels{0, 0};
    IntMatrix t{0, 0};

    FgRModule() = default;
    FgRModule(std::size_t n, IntMatrix relations, IntMatrix t_action)
        : gens(n), rels(std::move(relations)), t(std::move(t_action)) {
        if (rels.rows() != n) throw DimensionError("module: relation matrix needs one row per generator");
        if (t.rows() != n || t.cols() != n) throw DimensionError("module: t-action must be gens x gens");
    }

    static FgRModule zero() { return {}; }

    /// R itself on the basis {1, t}.
    static FgRModule regular() { return {2, IntMatrix(2, 0), IntMatrix{{0, 1}, {1, 0}}}; }
    /// R/I = Z with t = 1.
    static FgRModule mod_i() { return {1, IntMatrix(1, 0), IntMatrix{{1}}}; }
    /// R/J = Z with t = -1 (isomorphic to the ideal I).
    static FgRModule mod_j() { return {1, IntMatrix(1, 0), IntMatrix{{-1}}}; }

    Presentation presentation() const { return {gens, rels}; }
    AbelianGroup underlying_group() const { return AbelianGroup::from_presentation(presentation()); }

    /// Matrix of multiplication by a ring element on generators.
    IntMatrix action(const RingElem& x) const { return x.a * IntMatrix::identity(gens) + x.b * t; }

    friend bool operator==(const FgRModule&, const FgRModule&) = default;
};

inline FgRModule direct_sum(const FgRModule& a, const FgRModule& b) {
    return {a.gens + b.gens, block_diag(a.rels, b.rels), block_diag(a.t, b.t)};
}

/// Empty list iff t preserves the relation lattice and t^2 = 1 on the module.
inline std::vector<std::string> validate_module(const FgRModule& m) {
    std::vector<std::string> out;
    const Presentation pres = m.presentation();
    if (!is_homomorphism(pres, pres, m.t)) out.emplace_back("module.t_preserves_relations");
    if (!is_zero_map(pres, m.t * m.t - IntMatrix::identity(m.gens))) out.emplace_back("module.t_squared_is_identity");
    return out;
}

/// An R-linear map given by an integer matrix on generators (target.gens x source.gens).
struct RModuleMap {
    FgRModule source;
    FgRModule target;
    IntMatrix matrix;
};

/// Empty list iff the matrix respects relations and commutes with t modulo target relations.
inline std::vector<std::string> validate_map(const RModuleMap& f, const std::string& label = "map") {
    std::vector<std::string> out;
    if (f.matrix.rows() != f.target.gens || f.matrix.cols() != f.source.gens) {
        out.push_back(label + ".shape");
        return out;
    }
    const Presentation target = f.target.presentation();
    if (!is_homomorphism(f.source.presentation(), target, f.matrix)) out.push_back(label + ".respects_relations");
    if (!is_zero_map(target, f.matrix * f.source.t - f.target.t * f.matrix)) out.push_back(label + ".r_linear");
    return out;
}

enum class LocalizeMode { Quotient, Genuine };

inline std::string to_string(LocalizeMode m) { return m == LocalizeMode::Quotient ? "quotient" : "genuine"; }

/// Raised by genuine localization at (I,2) when t does not act as +-1 on the 2-local module.
class NotDvrModule : public Error {
public:
    NotDvrModule(ZpModule underlying, IntMatrix t_action)
        : Error("not a DVR module: t acts neither as +1 nor as -1 after localizing at (I,2)"),
          underlying_(std::move(underlying)), t_(std::move(t_action)) {}

    /// The 2-localized abelian group, which still carries the involution.
    const ZpModule& underlying() const noexcept { return underlying_; }
    const IntMatrix& t_action() const noexcept { return t_; }

private:
    ZpModule underlying_;
    IntMatrix t_;
};

struct LocalizationDetail {
    ZpModule module;
    std::vector<Int> discarded;  // invariant factors prime to p that localization killed
};

namespace detail {

// Image of the endomorphism a of the presented module, as a presentation.
inline Presentation image_presentation(const Presentation& m, const IntMatrix& a) {
    const IntMatrix ambient = column_basis(hconcat(a, m.rels));
    IntMatrix coords(ambient.cols(), m.rels.cols());
    for (std::size_t j = 0; j < m.rels.cols(); ++j) {
        auto y = solve_membership(ambient, m.rels.col(j));
        for (std::size_t i = 0; i < y->size(); ++i) coords(i, j) = (*y)[i];
    }
    return {ambient.cols(), std::move(coords)};
}

} // namespace detail

/// Localization at a maximal ideal as a normal-form Z_(p)-module.
///  Quotient: impose t = +1 at (I,p), t = -1 at (J,p), then localize the abelian group at p.
///  Genuine:  localize the abelian group at p keeping t; for odd p this is the
///            (+1 resp. -1)-eigenspace, which agrees with Quotient.
inline LocalizationDetail localize_detailed(const FgRModule& m, const PrimeSpot& s, LocalizeMode mode = LocalizeMode::Quotient) {
    if (!s.is_maximal()) throw InvalidInput("localize: " + s.name() + " is not a maximal ideal; use rational_rank");
    const std::uint64_t p = s.p();
    const int eps = s.t_sign();
    LocalizationDetail out;
    if (mode == LocalizeMode::Quotient) {
        const IntMatrix extra = m.t - Int(eps) * IntMatrix::identity(m.gens);
        out.module = localize_presentation({m.gens, hconcat(m.rels, extra)}, p, &out.discarded);
        return out;
    }
    const Presentation pres = m.presentation();
    if (p != 2) {
        const IntMatrix projector = IntMatrix::identity(m.gens) + Int(eps) * m.t;
        out.module = localize_presentation(detail::image_presentation(pres, projector), p, &out.discarded);
        return out;
    }
    const ZpModule local = localize_presentation(pres, 2, &out.discarded);
    const IntMatrix id = IntMatrix::identity(m.gens);
    if (!is_zero_map(pres, m.t - id, 2) && !is_zero_map(pres, m.t + id, 2)) throw NotDvrModule(local, m.t);
    out.module = local;
    return out;
}

inline ZpModule localize(const FgRModule& m, const PrimeSpot& s, LocalizeMode mode = LocalizeMode::Quotient) {
    return localize_detailed(m, s, mode).module;
}

/// Dimension over Q of the localization at a minimal prime (t = +1 at I, t = -1 at J).
inline std::size_t rational_rank(const FgRModule& m, const PrimeSpot& s) {
    if (s.is_maximal()) throw InvalidInput("rational_rank: " + s.name() + " is not a minimal prime");
    const IntMatrix extra = m.t - Int(s.t_sign()) * IntMatrix::identity(m.gens);
    return m.gens - snf(hconcat(m.rels, extra)).rank();
}

/// Whether the map vanishes after localizing at a maximal ideal (Quotient convention).
inline bool localized_map_is_zero(const RModuleMap& f, const PrimeSpot& s) {
    if (!s.is_maximal()) throw InvalidInput("localized_map_is_zero: " + s.name() + " is not a maximal ideal");
    const IntMatrix extra = f.target.t - Int(s.t_sign()) * IntMatrix::identity(f.target.gens);
    return is_zero_map({f.target.gens, hconcat(f.target.rels, extra)}, f.matrix, s.p());
}

/// Diagonal presentation of a normal form: free generators first, then one per torsion part.
inline Presentation presentation_of(const ZpModule& m) {
    const std::size_t n = m.rank + m.torsion.length();
    IntMatrix rels(n, m.torsion.length());
    for (std::size_t i = 0; i < m.torsion.length(); ++i) rels(m.rank + i, i) = power(m.p, m.torsion[i]);
    return {n, std::move(rels)};
}

/// Tensor product over Z_(p); Z/p^a (x) Z/p^b = Z/p^min(a,b).
inline ZpModule tensor_zp(const ZpModule& a, const ZpModule& b) {
    require_same_prime(a, b);
    std::vector<unsigned> parts;
    for (std::size_t i = 0; i < b.rank; ++i) parts.insert(parts.end(), a.torsion.parts().begin(), a.torsion.parts().end());
    for (std::size_t i = 0; i < a.rank; ++i) parts.insert(parts.end(), b.torsion.parts().begin(), b.torsion.parts().end());
    for (unsigned x : a.torsion.parts())
        for (unsigned y : b.torsion.parts()) parts.push_back(std::min(x, y));
    return ZpModule{a.p, a.rank * b.rank, Partition(std::move(parts))};
}

/// Tor_1 over Z_(p); only torsion against torsion contributes.
inline ZpModule tor1_zp(const ZpModule& a, const ZpModule& b) {
    require_same_prime(a, b);
    std::vector<unsigned> parts;
    for (unsigned x : a.torsion.parts())
        for (unsigned y : b.torsion.parts()) parts.push_back(std::min(x, y));
    return ZpModule{a.p, 0, Partition(std::move(parts))};
}

/// ker(g)/im(f) at b for a --f--> b --g--> c, maps written on the generators of presentation_of().
/// Throws NotAComplex when g f != 0.
inline ZpModule homology_at(const ZpModule& a, const ZpModule& b, const ZpModule& c, const IntMatrix& f, const IntMatrix& g) {
    require_same_prime(a, b);
    require_same_prime(b, c);
    return homology_local(presentation_of(a), presentation_of(b), presentation_of(c), f, g, b.p);
}

/// Whether `mid` can sit in 0 -> sub -> mid -> quot -> 0 over Z_(p).
/// Ranks add; tors(sub) embeds in tors(mid) with quotient a submodule of tors(quot),
/// and that quotient is all of tors(quot) when sub is finite.
inline bool middle_admissible(const ZpModule& sub, const ZpModule& mid, const ZpModule& quot) {
    require_same_prime(sub, mid);
    require_same_prime(mid, quot);
    if (mid.rank != sub.rank + quot.rank) return false;
    if (sub.rank == 0) return lr_extension_feasible(mid.torsion, sub.torsion, quot.torsion);
    for (const Partition& tau : subpartitions(quot.torsion))
        if (lr_extension_feasible(mid.torsion, sub.torsion, tau)) return true;
    return false;
}

inline bool middle_admissible(const GradedZpModule& sub, const GradedZpModule& mid, const GradedZpModule& quot) {
    return middle_admissible(sub.even, mid.even, quot.even) && middle_admissible(sub.odd, mid.odd, quot.odd);
}

/// Same test for f.g. abelian groups, prime by prime.
inline bool middle_admissible(const AbelianGroup& sub, const AbelianGroup& mid, const AbelianGroup& quot) {
    if (mid.rank != sub.rank + quot.rank) return false;
    const Int order = sub.torsion_order() * mid.torsion_order() * quot.torsion_order();
    for (const Int& ell : prime_factors(order)) {
        const auto p = static_cast<std::uint64_t>(ell);
        if (!middle_admissible(sub.p_part(p), mid.p_part(p), quot.p_part(p))) return false;
    }
    return true;
}

} // namespace ktheory
