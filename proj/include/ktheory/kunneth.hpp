#pragma once

#include "ktheory/catalog.hpp"
#include "ktheory/kinv.hpp"

#include <string>
#include <vector>

namespace ktheory {

struct KunnethOptions {
    /// Allow (I,2), where the quotient convention is only a working hypothesis.
    bool experimental_p2 = false;
    LocalizeMode mode = LocalizeMode::Quotient;
};

/// One localized Kunneth sequence 0 -> tensor -> K(X x Y)_p -> tor -> 0.
struct KunnethResult {
    PrimeSpot prime = PrimeSpot::minimal_i();
    GradedZpModule tensor;
    GradedZpModule tor;     // already placed in the degree of the product
    GradedZpModule middle;  // tensor + tor, the split representative
    bool ambiguous = false;  // true iff the middle is only known up to extension
    bool experimental = false;
};

inline void require_kunneth_spot(const PrimeSpot& s, const KunnethOptions& opt) {
    if (!s.is_maximal()) throw InvalidInput("Kunneth sequence needs a maximal ideal, got " + s.name());
    if (s.p() == 2 && !opt.experimental_p2)
        throw InvalidInput("(I,2) is experimental; pass the experimental p = 2 option to run it");
}

/// Degree n of the tensor term is sum_{a+b=n} x^a (x) y^b; degree n of the Tor term is
/// sum_{a+b=n} Tor_1(x^a, y^{b+1}). At (I,p) the inputs are regraded full invariants,
/// at support-G primes they are K*_G alone and the sequence splits.
inline KunnethResult kunneth_local(const LocalizedInvariant& x, const LocalizedInvariant& y, const KunnethOptions& opt = {}) {
    if (!(x.spot == y.spot)) throw PrimeMismatch("Kunneth inputs localized at " + x.spot.name() + " and " + y.spot.name());
    require_kunneth_spot(x.spot, opt);
    const GradedZpModule& a = x.graded;
    const GradedZpModule& b = y.graded;
    if (a.p() != x.spot.p() || b.p() != x.spot.p()) throw PrimeMismatch("graded module prime differs from its spot");

    KunnethResult r;
    r.prime = x.spot;
    r.experimental = x.spot.p() == 2;
    for (int n = 0; n < 2; ++n) {
        ZpModule t = ZpModule::zero(a.p());
        ZpModule tor = ZpModule::zero(a.p());
        for (int deg_a = 0; deg_a < 2; ++deg_a) {
            const int deg_b = (n - deg_a + 2) % 2;
            t = direct_sum(t, tensor_zp(a[deg_a], b[deg_b]));
            tor = direct_sum(tor, tor1_zp(a[deg_a], b[deg_b + 1]));
        }
        r.tensor[n] = t;
        r.tor[n] = tor;
        r.middle[n] = direct_sum(t, tor);
    }
    r.ambiguous = x.spot.kind() == SpotKind::MaximalI && !r.tor.is_zero();
    return r;
}

/// Whether a candidate for K(X x Y)_p is compatible with the sequence.
inline bool admissible_middle(const KunnethResult& r, const GradedZpModule& candidate) {
    return middle_admissible(r.tensor, candidate, r.tor);
}

/// Local K* of the non-equivariant K-theory: Z_(p)-localized K^0 (even), K^1 (odd).
inline GradedZpModule localize_nonequivariant(const std::array<AbelianGroup, 2>& k, std::uint64_t p) {
    return {k[0].p_part(p), k[1].p_part(p)};
}

struct DoublingReport {
    PrimeSpot prime = PrimeSpot::minimal_i();
    std::size_t product_rank = 0;
    unsigned product_length = 0;
    std::size_t k_rank = 0;     // rank of K*(X)_(p) from the forgetful end terms
    unsigned k_length = 0;
    bool pass() const { return product_rank == 2 * k_rank && product_length == 2 * k_length; }
};

/// Compares the product with the free orbit against twice K*(X)_(p), the latter read off
/// the end terms coker(phi), ker(phi) without using the Kunneth engine.
inline DoublingReport doubling_check(const KInvariant& x, const PrimeSpot& s) {
    if (s.kind() != SpotKind::MaximalI || s.p() == 2) throw InvalidInput("doubling_check needs (I,p) with p odd");
    const KunnethResult prod = kunneth_local(localize_kinvariant(x, s), localize_kinvariant(catalog::free_orbit().kinv, s));
    DoublingReport r;
    r.prime = s;
    r.product_rank = prod.middle.total_rank();
    r.product_length = prod.middle.total_length();
    const ForgetfulSes ses = forgetful_ses(x);
    for (int d = 0; d < 2; ++d) {
        r.k_rank += ses.rank(d);
        r.k_length += ses.max_length(d, s.p());
    }
    return r;
}

struct RemarkFailureReport {
    PrimeSpot prime = PrimeSpot::minimal_i();
    std::string space;
    std::size_t naive_rank = 0;  // K^0_G(G x X)_p predicted from K*_G alone
    std::size_t true_rank = 0;   // K^0_G(G x X)_p = K^0(X)_(p), since G x X is free
    GradedZpModule full;         // Kunneth with the full invariants
    GradedZpModule direct;       // the invariant of G x X evaluated directly
    bool mismatch() const { return naive_rank != true_rank; }
    bool resolved() const { return full == direct; }
};

/// Runs the K*_G-only Kunneth formula at (I,p) on G x X and compares it with the truth,
/// then repeats with the full invariant.
inline RemarkFailureReport remark_failure_demo(const PrimeSpot& s, const CatalogEntry& x) {
    if (s.kind() != SpotKind::MaximalI || s.p() == 2) throw InvalidInput("remark_failure_demo needs (I,p) with p odd");
    const std::uint64_t p = s.p();
    const SixTermData orbit = catalog::free_orbit();
    RemarkFailureReport r;
    r.prime = s;
    r.space = "G x " + x.name;

    auto kg_only = [&](const KInvariant& k) {
        return LocalizedInvariant{s, GradedZpModule{localize(k.kg[0], s), localize(k.kg[1], s)}};
    };
    r.naive_rank = kunneth_local(kg_only(orbit.kinv), kg_only(x.data.kinv)).middle.even.rank;

    const std::array<AbelianGroup, 2> k{AbelianGroup::from_presentation(x.data.k[0]), AbelianGroup::from_presentation(x.data.k[1])};
    r.true_rank = k[0].p_part(p).rank;

    r.full = kunneth_local(localize_kinvariant(orbit.kinv, s), localize_kinvariant(x.data.kinv, s)).middle;
    // K_G(G x X) = K(X) and K_{G,-}(G x X) = K(X x R), so both regraded parts are copies of K*(X).
    const GradedZpModule kx = localize_nonequivariant(k, p);
    r.direct = direct_sum(kx, kx);
    return r;
}

struct SupportGReport {
    PrimeSpot prime = PrimeSpot::minimal_i();
    bool free_input = false;
    std::array<ZpModule, 2> kg;
    std::array<ZpModule, 2> kg_minus;
    bool all_vanish() const { return kg[0].is_zero() && kg[1].is_zero() && kg_minus[0].is_zero() && kg_minus[1].is_zero(); }
    /// Only free inputs are covered by the vanishing statement.
    bool pass() const { return free_input && all_vanish(); }
};

/// Localizes all four modules of a free space's invariant at a support-G maximal ideal.
inline SupportGReport support_g_vanishing(const KInvariant& x, bool free_input, const PrimeSpot& s) {
    if (s.kind() != SpotKind::MaximalJ) throw InvalidInput("support_g_vanishing needs (J,p) with p odd");
    SupportGReport r;
    r.prime = s;
    r.free_input = free_input;
    if (free_input) {
        for (int d = 0; d < 2; ++d)
            if (augmentation_nilpotency(x.kg[d]) == 0 || augmentation_nilpotency(x.kg_minus[d]) == 0) r.free_input = false;
    }
    for (int d = 0; d < 2; ++d) {
        r.kg[d] = localize(x.kg[d], s);
        r.kg_minus[d] = localize(x.kg_minus[d], s);
    }
    return r;
}

struct P2Diagnostic {
    GradedZpModule product;  // Kunneth of pt x pt at (I,2), quotient convention
    GradedZpModule direct;   // invariant of pt x pt = pt at (I,2)
    bool consistent() const { return product == direct; }
};

/// pt x pt self-consistency at (I,2). Under the quotient convention the point's
/// K_{G,-} = R/J survives as Z/2 in odd degree, and the unit law breaks.
inline P2Diagnostic p2_self_consistency() {
    const PrimeSpot s = PrimeSpot::maximal_i(2);
    const LocalizedInvariant pt = localize_kinvariant(catalog::point().kinv, s, LocalizeMode::Quotient);
    KunnethOptions opt;
    opt.experimental_p2 = true;
    return {kunneth_local(pt, pt, opt).middle, pt.graded};
}

} // namespace ktheory
