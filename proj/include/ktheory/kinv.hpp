#pragma once

#include "ktheory/rmod.hpp"

#include <array>
#include <string>
#include <vector>

namespace ktheory {

/// The paired invariant of a Z/2-space X: graded R-modules K*_G(X) and K*_{G,-}(X)
/// with degree-preserving maps phi: K_{G,-} -> K_G and psi: K_G -> K_{G,-}
/// whose composites are multiplication by 1 - t. Index = degree mod 2.
struct KInvariant {
    std::array<FgRModule, 2> kg;
    std::array<FgRModule, 2> kg_minus;
    std::array<IntMatrix, 2> phi{IntMatrix(0, 0), IntMatrix(0, 0)};  // kg_minus[d] -> kg[d]
    std::array<IntMatrix, 2> psi{IntMatrix(0, 0), IntMatrix(0, 0)};  // kg[d] -> kg_minus[d]

    static KInvariant zero() { return {}; }

    RModuleMap phi_map(int d) const { return {kg_minus[d], kg[d], phi[d]}; }
    RModuleMap psi_map(int d) const { return {kg[d], kg_minus[d], psi[d]}; }

    friend bool operator==(const KInvariant&, const KInvariant&) = default;
};

inline KInvariant direct_sum(const KInvariant& a, const KInvariant& b) {
    KInvariant out;
    for (int d = 0; d < 2; ++d) {
        out.kg[d] = direct_sum(a.kg[d], b.kg[d]);
        out.kg_minus[d] = direct_sum(a.kg_minus[d], b.kg_minus[d]);
        out.phi[d] = block_diag(a.phi[d], b.phi[d]);
        out.psi[d] = block_diag(a.psi[d], b.psi[d]);
    }
    return out;
}

/// Product with a trivially acting line: shifts degree by one.
inline KInvariant suspend_trivial(const KInvariant& k) {
    KInvariant out;
    for (int d = 0; d < 2; ++d) {
        out.kg[d] = k.kg[1 - d];
        out.kg_minus[d] = k.kg_minus[1 - d];
        out.phi[d] = k.phi[1 - d];
        out.psi[d] = k.psi[1 - d];
    }
    return out;
}

/// Product with the sign line V: K_{G,-}(X x V) = K_G(X) by Bott periodicity for V + V,
/// so the two modules trade places and phi, psi trade roles.
inline KInvariant suspend_sign(const KInvariant& k) {
    KInvariant out;
    out.kg = k.kg_minus;
    out.kg_minus = k.kg;
    out.phi = k.psi;
    out.psi = k.phi;
    return out;
}

/// Empty iff all four modules are valid, all four maps are R-linear and well defined,
/// and phi psi = 1 - t on K_G, psi phi = 1 - t on K_{G,-} in each degree.
inline std::vector<std::string> validate_kinvariant(const KInvariant& k) {
    std::vector<std::string> out;
    const RingElem one_minus_t{1, -1};
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        for (const auto& v : validate_module(k.kg[d])) out.push_back("kG" + deg + "." + v);
        for (const auto& v : validate_module(k.kg_minus[d])) out.push_back("kGminus" + deg + "." + v);
        auto phi_bad = validate_map(k.phi_map(d), "phi" + deg);
        auto psi_bad = validate_map(k.psi_map(d), "psi" + deg);
        const bool shapes_ok = std::find(phi_bad.begin(), phi_bad.end(), "phi" + deg + ".shape") == phi_bad.end() &&
                               std::find(psi_bad.begin(), psi_bad.end(), "psi" + deg + ".shape") == psi_bad.end();
        out.insert(out.end(), phi_bad.begin(), phi_bad.end());
        out.insert(out.end(), psi_bad.begin(), psi_bad.end());
        if (!shapes_ok) continue;
        if (!is_zero_map(k.kg[d].presentation(), k.phi[d] * k.psi[d] - k.kg[d].action(one_minus_t)))
            out.push_back("phi_psi" + deg + ".equals_one_minus_t");
        if (!is_zero_map(k.kg_minus[d].presentation(), k.psi[d] * k.phi[d] - k.kg_minus[d].action(one_minus_t)))
            out.push_back("psi_phi" + deg + ".equals_one_minus_t");
    }
    return out;
}

/// A graded Z_(p)-module tagged with the maximal ideal it was localized at.
struct LocalizedInvariant {
    PrimeSpot spot;
    GradedZpModule graded;
};

/// Regraded localization at (I,p): even = K^0_G + K^1_{G,-}, odd = K^0_{G,-} + K^1_G.
/// phi and psi are dropped; they vanish there (see maps_vanish_locally).
inline LocalizedInvariant localize_kinvariant(const KInvariant& k, const PrimeSpot& s, LocalizeMode mode = LocalizeMode::Quotient) {
    if (s.kind() != SpotKind::MaximalI)
        throw InvalidInput("localize_kinvariant: needs a maximal ideal (I,p), got " + s.name());
    GradedZpModule g{direct_sum(localize(k.kg[0], s, mode), localize(k.kg_minus[1], s, mode)),
                     direct_sum(localize(k.kg_minus[0], s, mode), localize(k.kg[1], s, mode))};
    return {s, g};
}

/// Localization of K*_G alone at a support-G maximal ideal (J,p).
inline LocalizedInvariant localize_equivariant_part(const KInvariant& k, const PrimeSpot& s, LocalizeMode mode = LocalizeMode::Quotient) {
    if (s.kind() != SpotKind::MaximalJ)
        throw InvalidInput("localize_equivariant_part: needs a support-G maximal ideal (J,p), got " + s.name());
    return {s, GradedZpModule{localize(k.kg[0], s, mode), localize(k.kg[1], s, mode)}};
}

struct LocalMapsReport {
    std::array<bool, 2> phi_zero{};
    std::array<bool, 2> psi_zero{};
    bool all_zero() const { return phi_zero[0] && phi_zero[1] && psi_zero[0] && psi_zero[1]; }
};

/// Whether phi and psi become the zero map after localizing at s.
inline LocalMapsReport maps_vanish_locally(const KInvariant& k, const PrimeSpot& s) {
    LocalMapsReport r;
    for (int d = 0; d < 2; ++d) {
        r.phi_zero[d] = localized_map_is_zero(k.phi_map(d), s);
        r.psi_zero[d] = localized_map_is_zero(k.psi_map(d), s);
    }
    return r;
}

/// Data for the hexagon
///   K^1 --b0--> K^0_{G,-} --phi0--> K^0_G --f0--> K^0 --b1--> K^1_{G,-} --phi1--> K^1_G --f1--> K^1
/// where K* is non-equivariant K-theory, f the forgetful maps and b the boundary maps.
struct SixTermData {
    KInvariant kinv;
    std::array<Presentation, 2> k;
    std::array<IntMatrix, 2> forget{IntMatrix(0, 0), IntMatrix(0, 0)};    // kg[d] -> k[d]
    std::array<IntMatrix, 2> boundary{IntMatrix(0, 0), IntMatrix(0, 0)};  // k[1-d] -> kg_minus[d]
};

inline SixTermData suspend_trivial(const SixTermData& s) {
    SixTermData out;
    out.kinv = suspend_trivial(s.kinv);
    out.k = {s.k[1], s.k[0]};
    out.forget = {s.forget[1], s.forget[0]};
    out.boundary = {s.boundary[1], s.boundary[0]};
    return out;
}

struct SixTermSpot {
    std::string name;
    AbelianGroup homology;
};

struct SixTermReport {
    std::array<SixTermSpot, 6> spots;

    bool exact() const {
        for (const auto& s : spots)
            if (!s.homology.is_zero()) return false;
        return true;
    }
    std::vector<std::string> failing_spots() const {
        std::vector<std::string> out;
        for (const auto& s : spots)
            if (!s.homology.is_zero()) out.push_back(s.name);
        return out;
    }
};

/// Homology at each of the six spots; throws NotAComplex if two consecutive maps do not compose to zero.
inline SixTermReport six_term_verify(const SixTermData& d) {
    const KInvariant& k = d.kinv;
    const std::array<Presentation, 6> obj{k.kg_minus[0].presentation(), k.kg[0].presentation(), d.k[0],
                                          k.kg_minus[1].presentation(), k.kg[1].presentation(), d.k[1]};
    // out[i]: obj[i] -> obj[i+1]
    const std::array<IntMatrix, 6> out{k.phi[0], d.forget[0], d.boundary[1], k.phi[1], d.forget[1], d.boundary[0]};
    static const std::array<const char*, 6> names{"K0_G-", "K0_G", "K0", "K1_G-", "K1_G", "K1"};
    SixTermReport r;
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t prev = (i + 5) % 6;
        const std::size_t next = (i + 1) % 6;
        r.spots[i] = {names[i], homology(obj[prev], obj[i], obj[next], out[prev], out[i])};
    }
    return r;
}

/// End terms of 0 -> coker phi^d -> K^d(X) -> ker phi^{d+1} -> 0.
struct ForgetfulSes {
    std::array<AbelianGroup, 2> coker_phi;  // sub of K^d
    std::array<AbelianGroup, 2> ker_phi;    // quotient of K^{d-1}

    AbelianGroup sub(int d) const { return coker_phi[d % 2]; }
    AbelianGroup quot(int d) const { return ker_phi[(d + 1) % 2]; }
    std::size_t rank(int d) const { return sub(d).rank + quot(d).rank; }
    /// p-length of the torsion of any admissible K^d(X) localized at p is bounded by this.
    unsigned max_length(int d, std::uint64_t p) const { return sub(d).p_part(p).length() + quot(d).p_part(p).length(); }
    /// Whether a candidate K^d(X) fits between the two end terms.
    bool admits(int d, const AbelianGroup& middle) const { return middle_admissible(sub(d), middle, quot(d)); }
};

inline ForgetfulSes forgetful_ses(const KInvariant& k) {
    ForgetfulSes s;
    for (int d = 0; d < 2; ++d) {
        s.coker_phi[d] = cokernel(k.kg_minus[d].presentation(), k.kg[d].presentation(), k.phi[d]);
        s.ker_phi[d] = kernel(k.kg_minus[d].presentation(), k.kg[d].presentation(), k.phi[d]);
    }
    return s;
}

/// Multiplication by q is bijective on g: no free part and no q-torsion.
inline bool uniquely_divisible(const AbelianGroup& g, std::uint64_t q) {
    if (g.rank != 0) return false;
    for (const Int& f : g.factors)
        if (f % q == 0) return false;
    return true;
}

/// Smallest k <= max(gens,1) with (1 - t)^k = 0 on the module, or 0 if there is none.
inline std::size_t augmentation_nilpotency(const FgRModule& m) {
    const Presentation pres = m.presentation();
    const IntMatrix n = IntMatrix::identity(m.gens) - m.t;
    IntMatrix power = n;
    const std::size_t limit = std::max<std::size_t>(m.gens, 1);
    for (std::size_t k = 1; k <= limit; ++k) {
        if (is_zero_map(pres, power)) return k;
        power = power * n;
    }
    return 0;
}

/// K*_G of a free Z/2-space from K* of its quotient: t acts by the line bundle class.
/// Rejects actions that are not involutions or on which 1 - t is not nilpotent.
inline FgRModule free_space_module(const Presentation& quotient_k, const IntMatrix& line_bundle_action) {
    FgRModule m(quotient_k.gens, quotient_k.rels, line_bundle_action);
    const auto bad = validate_module(m);
    if (!bad.empty()) throw InvalidInput("free_space_module: " + bad.front());
    if (augmentation_nilpotency(m) == 0) throw InvalidInput("free_space_module: 1 - t is not nilpotent, not free-space data");
    return m;
}

} // namespace ktheory
