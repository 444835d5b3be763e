#pragma once

#include "ktheory/catalog.hpp"
#include "ktheory/kunneth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ktheory {

/// Expression over catalog atoms. Cells: R^n with trivial action, G x R^n with G acting on itself.
struct SpaceExpr {
    enum class Kind { Atom, Cell, FreeCell, Product, Union, SuspendR, SuspendV };

    Kind kind = Kind::Atom;
    std::string atom;  // Kind::Atom
    unsigned n = 0;    // Kind::Cell, Kind::FreeCell
    std::vector<SpaceExpr> children;

    static SpaceExpr make_atom(std::string name) { return {Kind::Atom, std::move(name), 0, {}}; }
    static SpaceExpr point() { return make_atom("pt"); }
    static SpaceExpr sign_line() { return make_atom("V"); }
    static SpaceExpr orbit() { return make_atom("G"); }
    static SpaceExpr cell(unsigned n) {
        if (n == 0) throw InvalidInput("cell dimension must be at least 1");
        return {Kind::Cell, {}, n, {}};
    }
    static SpaceExpr free_cell(unsigned n) {
        if (n == 0) throw InvalidInput("cell dimension must be at least 1");
        return {Kind::FreeCell, {}, n, {}};
    }
    static SpaceExpr product(std::vector<SpaceExpr> factors) {
        if (factors.size() < 2) throw InvalidInput("a product needs at least two factors");
        return {Kind::Product, {}, 0, std::move(factors)};
    }
    static SpaceExpr product(SpaceExpr a, SpaceExpr b) { return product(std::vector<SpaceExpr>{std::move(a), std::move(b)}); }
    static SpaceExpr disjoint_union(std::vector<SpaceExpr> parts) { return {Kind::Union, {}, 0, std::move(parts)}; }
    static SpaceExpr suspend_r(SpaceExpr e) { return {Kind::SuspendR, {}, 0, {std::move(e)}}; }
    static SpaceExpr suspend_v(SpaceExpr e) { return {Kind::SuspendV, {}, 0, {std::move(e)}}; }

    bool product_free() const {
        if (kind == Kind::Product) return false;
        for (const auto& c : children)
            if (!c.product_free()) return false;
        return true;
    }

    bool is_atom(std::string_view name) const { return kind == Kind::Atom && atom == name; }

    friend bool operator==(const SpaceExpr&, const SpaceExpr&) = default;
};

inline std::string to_string(const SpaceExpr& e) {
    auto join = [](const std::vector<SpaceExpr>& cs, const char* sep) {
        std::string s;
        for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? sep : "") + to_string(cs[i]);
        return s;
    };
    switch (e.kind) {
    case SpaceExpr::Kind::Atom: return e.atom;
    case SpaceExpr::Kind::Cell: return "R^" + std::to_string(e.n);
    case SpaceExpr::Kind::FreeCell: return "GxR^" + std::to_string(e.n);
    case SpaceExpr::Kind::Product: return "(" + join(e.children, " x ") + ")";
    case SpaceExpr::Kind::Union: return "(" + join(e.children, " u ") + ")";
    case SpaceExpr::Kind::SuspendR: return to_string(e.children[0]) + " x R";
    case SpaceExpr::Kind::SuspendV: return to_string(e.children[0]) + " x V";
    }
    return {};
}

inline const CatalogEntry& require_atom(const std::string& name) {
    static const std::vector<CatalogEntry> entries = catalog::entries();
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw InvalidInput("unknown atom '" + name + "'");
}

/// Whether the action is free (some factor or every summand is free).
inline bool is_free(const SpaceExpr& e) {
    using K = SpaceExpr::Kind;
    switch (e.kind) {
    case K::Atom: return require_atom(e.atom).free;
    case K::Cell: return false;
    case K::FreeCell: return true;
    case K::Product:
        for (const auto& c : e.children)
            if (is_free(c)) return true;
        return false;
    case K::Union:
        for (const auto& c : e.children)
            if (!is_free(c)) return false;
        return true;
    case K::SuspendR:
    case K::SuspendV: return is_free(e.children[0]);
    }
    return false;
}

/// Global invariant of a product-free expression. Products are rejected: the product
/// formula only exists one localization at a time.
inline KInvariant eval_kinvariant(const SpaceExpr& e) {
    using K = SpaceExpr::Kind;
    switch (e.kind) {
    case K::Atom: return require_atom(e.atom).data.kinv;
    case K::Cell: {
        KInvariant k = catalog::point().kinv;
        for (unsigned i = 0; i < e.n; ++i) k = suspend_trivial(k);
        return k;
    }
    case K::FreeCell: {
        KInvariant k = catalog::free_orbit().kinv;
        for (unsigned i = 0; i < e.n; ++i) k = suspend_trivial(k);
        return k;
    }
    case K::Product: throw InvalidInput("eval_kinvariant: products have no global evaluation; localize first");
    case K::Union: {
        KInvariant k = KInvariant::zero();
        for (const auto& c : e.children) k = direct_sum(k, eval_kinvariant(c));
        return k;
    }
    case K::SuspendR: return suspend_trivial(eval_kinvariant(e.children[0]));
    case K::SuspendV: return suspend_sign(eval_kinvariant(e.children[0]));
    }
    return {};
}

/// Non-equivariant K^0, K^1 of a product-free expression, from the catalog hexagons.
inline std::array<AbelianGroup, 2> eval_nonequivariant(const SpaceExpr& e) {
    using K = SpaceExpr::Kind;
    auto shifted = [](std::array<AbelianGroup, 2> k, unsigned by) {
        if (by % 2 == 1) std::swap(k[0], k[1]);
        return k;
    };
    switch (e.kind) {
    case K::Atom: {
        const auto& d = require_atom(e.atom).data;
        return {AbelianGroup::from_presentation(d.k[0]), AbelianGroup::from_presentation(d.k[1])};
    }
    case K::Cell: return shifted({AbelianGroup::free(1), AbelianGroup::free(0)}, e.n);
    case K::FreeCell: return shifted({AbelianGroup::free(2), AbelianGroup::free(0)}, e.n);
    case K::Product: throw InvalidInput("eval_nonequivariant: product expressions are not supported");
    case K::Union: {
        std::array<AbelianGroup, 2> k{AbelianGroup::free(0), AbelianGroup::free(0)};
        for (const auto& c : e.children) {
            const auto kc = eval_nonequivariant(c);
            k = {direct_sum(k[0], kc[0]), direct_sum(k[1], kc[1])};
        }
        return k;
    }
    case K::SuspendR:
    case K::SuspendV: return shifted(eval_nonequivariant(e.children[0]), 1);
    }
    return {};
}

enum class Side { Main, SupportG };

struct LocalEval {
    GradedZpModule graded;
    bool ambiguous = false;
};

namespace detail {

// Moves a sign suspension below products: (X x Y) x V = (X x V) x Y.
inline SpaceExpr push_sign(const SpaceExpr& e) {
    using K = SpaceExpr::Kind;
    if (e.product_free()) return SpaceExpr::suspend_v(e);
    switch (e.kind) {
    case K::Product: {
        SpaceExpr out = e;
        out.children[0] = push_sign(e.children[0]);
        return out;
    }
    case K::Union: {
        SpaceExpr out = e;
        for (auto& c : out.children) c = push_sign(c);
        return out;
    }
    case K::SuspendR: return SpaceExpr::suspend_r(push_sign(e.children[0]));
    case K::SuspendV: return push_sign(push_sign(e.children[0]));
    default: return SpaceExpr::suspend_v(e);
    }
}

inline void check_side(const PrimeSpot& s, Side side, const KunnethOptions& opt) {
    require_kunneth_spot(s, opt);
    if (side == Side::Main && s.kind() != SpotKind::MaximalI) throw InvalidInput("main branch needs (I,p), got " + s.name());
    if (side == Side::SupportG && s.kind() != SpotKind::MaximalJ)
        throw InvalidInput("support-G branch needs a support-G ideal (J,p), got " + s.name());
}

inline LocalizedInvariant localize_leaf(const KInvariant& k, const PrimeSpot& s, Side side, LocalizeMode mode) {
    return side == Side::Main ? localize_kinvariant(k, s, mode) : localize_equivariant_part(k, s, mode);
}

} // namespace detail

/// Localized invariant of any expression: product-free parts are evaluated globally and
/// localized, products go through kunneth_local. Ambiguity is sticky.
inline LocalEval eval_local(const SpaceExpr& e, const PrimeSpot& s, Side side, const KunnethOptions& opt = {}) {
    using K = SpaceExpr::Kind;
    detail::check_side(s, side, opt);
    if (e.product_free()) return {detail::localize_leaf(eval_kinvariant(e), s, side, opt.mode).graded, false};
    switch (e.kind) {
    case K::Product: {
        LocalEval acc = eval_local(e.children[0], s, side, opt);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            const LocalEval next = eval_local(e.children[i], s, side, opt);
            const KunnethResult r = kunneth_local({s, acc.graded}, {s, next.graded}, opt);
            acc = {r.middle, acc.ambiguous || next.ambiguous || r.ambiguous};
        }
        return acc;
    }
    case K::Union: {
        LocalEval acc{GradedZpModule::zero(s.p()), false};
        for (const auto& c : e.children) {
            const LocalEval next = eval_local(c, s, side, opt);
            acc = {direct_sum(acc.graded, next.graded), acc.ambiguous || next.ambiguous};
        }
        return acc;
    }
    case K::SuspendR: {
        LocalEval inner = eval_local(e.children[0], s, side, opt);
        return {shift(inner.graded, 1), inner.ambiguous};
    }
    case K::SuspendV: return eval_local(detail::push_sign(e.children[0]), s, side, opt);
    default: break;
    }
    throw InvalidInput("eval_local: unsupported expression");
}

/// Localized invariant of x x G at (I,p), p odd, computed without the Kunneth engine:
/// K_G(x x G) = K(x) and K_{G,-}(x x G) = K(x x R), so each regraded part is a copy of K*(x).
inline GradedZpModule free_oracle(const SpaceExpr& e, const PrimeSpot& s) {
    if (s.kind() != SpotKind::MaximalI || s.p() == 2) throw InvalidInput("free_oracle needs (I,p) with p odd");
    if (e.kind != SpaceExpr::Kind::Product || e.children.size() != 2) throw InvalidInput("free_oracle: expected x x G");
    const SpaceExpr* x = nullptr;
    if (e.children[1].is_atom("G")) x = &e.children[0];
    else if (e.children[0].is_atom("G")) x = &e.children[1];
    if (x == nullptr || !x->product_free()) throw InvalidInput("free_oracle: expected x x G with x product-free");
    const GradedZpModule kx = localize_nonequivariant(eval_nonequivariant(*x), s.p());
    return direct_sum(kx, kx);
}

/// Direct evaluation of a x b for product-free a, b when an identity applies:
/// G factor (free-space reduction; zero at support-G primes), pt factor (unit),
/// V factor (X x V is a sign suspension). nullopt if none applies.
inline std::optional<GradedZpModule> direct_product(const SpaceExpr& a, const SpaceExpr& b, const PrimeSpot& s, Side side,
                                                    LocalizeMode mode = LocalizeMode::Quotient) {
    if (!a.product_free() || !b.product_free()) return std::nullopt;
    auto local = [&](const SpaceExpr& e) { return detail::localize_leaf(eval_kinvariant(e), s, side, mode).graded; };
    if (a.is_atom("G") || b.is_atom("G")) {
        if (side == Side::SupportG) return GradedZpModule::zero(s.p());
        return free_oracle(SpaceExpr::product(a, b), s);
    }
    if (a.is_atom("pt")) return local(b);
    if (b.is_atom("pt")) return local(a);
    if (a.is_atom("V")) return local(SpaceExpr::suspend_v(b));
    if (b.is_atom("V")) return local(SpaceExpr::suspend_v(a));
    return std::nullopt;
}

} // namespace ktheory
