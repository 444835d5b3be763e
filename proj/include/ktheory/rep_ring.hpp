#pragma once

#include "ktheory/error.hpp"
#include "ktheory/integer.hpp"

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace ktheory {

/// Element a + b t of R = Z[t]/(t^2 - 1), the representation ring of Z/2.
struct RingElem {
    Int a = 0;
    Int b = 0;

    static RingElem one() { return {1, 0}; }
    static RingElem t() { return {0, 1}; }

    friend RingElem operator+(const RingElem& x, const RingElem& y) { return {x.a + y.a, x.b + y.b}; }
    friend RingElem operator-(const RingElem& x, const RingElem& y) { return {x.a - y.a, x.b - y.b}; }
    friend RingElem operator-(const RingElem& x) { return {-x.a, -x.b}; }
    friend bool operator==(const RingElem&, const RingElem&) = default;

    friend std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.a << (x.b < 0 ? "-" : "+") << abs(x.b) << 't'; }
};

/// (a + bt)(c + dt) = (ac + bd) + (ad + bc) t.
inline RingElem ring_mul(const RingElem& x, const RingElem& y) { return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a}; }
inline RingElem operator*(const RingElem& x, const RingElem& y) { return ring_mul(x, y); }

/// The automorphism t -> -t, which exchanges I and J.
inline RingElem sign_twist(const RingElem& x) { return {x.a, -x.b}; }

/// Image under t -> eps (eps = +1 or -1).
inline Int evaluate(const RingElem& x, int eps) { return x.a + eps * x.b; }

enum class Support { Trivial, Whole };  // {1} and G

enum class SpotKind { MinimalI, MinimalJ, MaximalI, MaximalJ };

/// A point of Spec R: a minimal prime I = (t-1), J = (t+1), or a maximal ideal (I,p), (J,p).
/// (J,2) is stored as (I,2) since (t-1) + 2 = t + 1.
class PrimeSpot {
public:
    static PrimeSpot minimal_i() { return PrimeSpot(SpotKind::MinimalI, 0); }
    static PrimeSpot minimal_j() { return PrimeSpot(SpotKind::MinimalJ, 0); }
    static PrimeSpot maximal_i(std::uint64_t p) { return maximal(SpotKind::MaximalI, p); }
    static PrimeSpot maximal_j(std::uint64_t p) { return maximal(SpotKind::MaximalJ, p); }

    SpotKind kind() const noexcept { return kind_; }
    /// Residue characteristic; 0 for the minimal primes.
    std::uint64_t p() const noexcept { return p_; }
    bool is_maximal() const noexcept { return kind_ == SpotKind::MaximalI || kind_ == SpotKind::MaximalJ; }

    Support support() const noexcept {
        return (kind_ == SpotKind::MinimalI || kind_ == SpotKind::MaximalI) ? Support::Trivial : Support::Whole;
    }

    /// Value of t in R_p / (its radical): +1 over I, -1 over J.
    int t_sign() const noexcept { return (kind_ == SpotKind::MinimalI || kind_ == SpotKind::MaximalI) ? 1 : -1; }

    std::string name() const {
        switch (kind_) {
        case SpotKind::MinimalI: return "I";
        case SpotKind::MinimalJ: return "J";
        case SpotKind::MaximalI: return "(I," + std::to_string(p_) + ")";
        case SpotKind::MaximalJ: return "(J," + std::to_string(p_) + ")";
        }
        return {};
    }

    friend bool operator==(const PrimeSpot&, const PrimeSpot&) = default;
    friend std::ostream& operator<<(std::ostream& os, const PrimeSpot& s) { return os << s.name(); }

private:
    PrimeSpot(SpotKind k, std::uint64_t p) : kind_(k), p_(p) {}

    static PrimeSpot maximal(SpotKind k, std::uint64_t p) {
        if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
        if (p == 2) k = SpotKind::MaximalI;
        return PrimeSpot(k, p);
    }

    SpotKind kind_;
    std::uint64_t p_;
};

inline std::string to_string(Support s) { return s == Support::Trivial ? "{1}" : "G"; }

/// t -> -t on Spec R: swaps I <-> J and (I,p) <-> (J,p); fixes (I,2).
inline PrimeSpot sign_twist(const PrimeSpot& s) {
    switch (s.kind()) {
    case SpotKind::MinimalI: return PrimeSpot::minimal_j();
    case SpotKind::MinimalJ: return PrimeSpot::minimal_i();
    case SpotKind::MaximalI: return PrimeSpot::maximal_j(s.p());
    case SpotKind::MaximalJ: return PrimeSpot::maximal_i(s.p());
    }
    return s;
}

/// Parses "I", "J", "I,p", "(J,p)" (whitespace ignored).
inline PrimeSpot classify_ideal(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s == "I") return PrimeSpot::minimal_i();
    if (s == "J") return PrimeSpot::minimal_j();
    if (s.size() < 3 || (s[0] != 'I' && s[0] != 'J') || s[1] != ',') throw InvalidInput("unrecognised ideal '" + std::string(text) + "'");
    const std::string digits = s.substr(2);
    if (digits.empty() || digits.size() > 19 || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("bad prime in ideal '" + std::string(text) + "'");
    const std::uint64_t p = std::stoull(digits);
    return s[0] == 'I' ? PrimeSpot::maximal_i(p) : PrimeSpot::maximal_j(p);
}

enum class TargetKind { Rationals, ZpPlus, ZpMinus, Special2 };

/// What R_p looks like. Special2 marks (I,2), where (1-t)(1+t) = 0 with both factors
/// in the ideal, so the genuine local ring is not a domain.
struct LocalizationTarget {
    TargetKind kind;
    std::uint64_t p = 0;

    std::string describe() const {
        switch (kind) {
        case TargetKind::Rationals: return "Q";
        case TargetKind::ZpPlus: return "Z_(" + std::to_string(p) + "), t -> +1";
        case TargetKind::ZpMinus: return "Z_(" + std::to_string(p) + "), t -> -1";
        case TargetKind::Special2: return "R_(I,2): not a domain, (1-t)(1+t) = 0";
        }
        return {};
    }

    friend bool operator==(const LocalizationTarget&, const LocalizationTarget&) = default;
};

inline LocalizationTarget localization_target(const PrimeSpot& s) {
    switch (s.kind()) {
    case SpotKind::MinimalI:
    case SpotKind::MinimalJ: return {TargetKind::Rationals, 0};
    case SpotKind::MaximalI: return s.p() == 2 ? LocalizationTarget{TargetKind::Special2, 2} : LocalizationTarget{TargetKind::ZpPlus, s.p()};
    case SpotKind::MaximalJ: return {TargetKind::ZpMinus, s.p()};
    }
    return {TargetKind::Rationals, 0};
}

} // namespace ktheory
