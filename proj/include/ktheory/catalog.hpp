#pragma once

#include "ktheory/kinv.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ktheory {

/// A catalog atom: its invariant, the hexagon with non-equivariant K-theory, and whether
/// the action is free.
struct CatalogEntry {
    std::string name;
    SixTermData data;
    bool free = false;
};

namespace catalog {

/// X = pt. K_G = R, K_{G,-} = R/J (= I), phi the inclusion I -> R, psi the projection R -> R/J.
/// Forgetful map is the augmentation; K*(pt) = Z in degree 0.
inline SixTermData point() {
    SixTermData s;
    s.kinv.kg[0] = FgRModule::regular();
    s.kinv.kg_minus[0] = FgRModule::mod_j();
    s.kinv.phi[0] = IntMatrix{{1}, {-1}};  // e -> 1 - t
    s.kinv.psi[0] = IntMatrix{{1, -1}};    // 1 -> e, t -> -e
    s.kinv.phi[1] = IntMatrix(0, 0);
    s.kinv.psi[1] = IntMatrix(0, 0);
    s.k = {Presentation::free(1), Presentation::free(0)};
    s.forget = {IntMatrix{{1, 1}}, IntMatrix(0, 0)};
    s.boundary = {IntMatrix(1, 0), IntMatrix(0, 1)};
    return s;
}

/// X = V, the sign line. Same modules as pt with the roles swapped; K*(V) = K*(R) = Z in degree 1,
/// and the boundary K^1 -> K^0_{G,-} = R hits 1 + t, the kernel of R -> R/J.
inline SixTermData sign_line() {
    SixTermData s;
    s.kinv = suspend_sign(point().kinv);
    s.k = {Presentation::free(0), Presentation::free(1)};
    s.forget = {IntMatrix(0, 1), IntMatrix(1, 0)};
    s.boundary = {IntMatrix{{1}, {1}}, IntMatrix(0, 0)};
    return s;
}

/// X = G acting on itself. K_G = R/I in degree 0, K_{G,-} = K*(V) = R/I in degree 1,
/// phi = psi = 0; K*(G) = Z^2 in degree 0 with f diagonal and boundary the difference map.
inline SixTermData free_orbit() {
    SixTermData s;
    s.kinv.kg[0] = FgRModule::mod_i();
    s.kinv.kg_minus[1] = FgRModule::mod_i();
    s.kinv.phi = {IntMatrix(1, 0), IntMatrix(0, 1)};
    s.kinv.psi = {IntMatrix(0, 1), IntMatrix(1, 0)};
    s.k = {Presentation::free(2), Presentation::free(0)};
    s.forget = {IntMatrix{{1}, {1}}, IntMatrix(0, 0)};
    s.boundary = {IntMatrix(0, 0), IntMatrix{{1, -1}}};
    return s;
}

/// X = G x R with R trivial: the free orbit shifted by one degree.
inline SixTermData free_orbit_line() { return suspend_trivial(free_orbit()); }

inline std::vector<CatalogEntry> entries() {
    return {{"pt", point(), false}, {"V", sign_line(), false}, {"G", free_orbit(), true}, {"GxR", free_orbit_line(), true}};
}

inline std::optional<CatalogEntry> find(std::string_view name) {
    for (auto& e : entries())
        if (e.name == name) return e;
    return std::nullopt;
}

} // namespace catalog
} // namespace ktheory
