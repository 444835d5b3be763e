#pragma once

#include "ktheory/kunneth.hpp"
#include "ktheory/spaces.hpp"

#include <json.hpp>

#include <string>

namespace ktheory::io {

using json = nlohmann::json;

// Integers are written as JSON numbers while they fit in 53 bits and as decimal strings beyond.

inline json int_to_json(const Int& x) {
    static const Int limit = Int(1) << 53;
    if (abs(x) < limit) return static_cast<long long>(x);
    return x.str();
}

inline Int int_from_json(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long long>()) : Int(j.get<long long>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
            throw SchemaError(ptr, "expected a decimal integer string");
        return Int(s);
    }
    throw SchemaError(ptr, "expected an integer");
}

inline std::size_t count_from_json(const json& j, const std::string& ptr) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
        throw SchemaError(ptr, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline const json& member(const json& j, const char* key, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr, std::string("missing key '") + key + "'");
    return *it;
}

/// Matrix as a list of rows.
inline json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Reads a list of rows with the expected shape (needed because [] carries no column count).
inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected a list of rows");
    if (j.size() != rows) throw SchemaError(ptr, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string rp = ptr + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != cols) throw SchemaError(rp, "expected a row of length " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(j[i][c], rp + "/" + std::to_string(c));
    }
    return m;
}

/// Relations are stored as a list of columns.
inline json columns_to_json(const IntMatrix& rels) { return matrix_to_json(rels.transpose()); }

inline IntMatrix columns_from_json(const json& j, std::size_t gens, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected a list of relation columns");
    return matrix_from_json(j, j.size(), gens, ptr).transpose();
}

// {"gens": n, "rels": [[column], ...]}
inline json to_json(const Presentation& p) { return {{"gens", p.gens}, {"rels", columns_to_json(p.rels)}}; }

inline Presentation presentation_from_json(const json& j, const std::string& ptr = "") {
    const std::size_t n = count_from_json(member(j, "gens", ptr), ptr + "/gens");
    IntMatrix rels = j.contains("rels") ? columns_from_json(j["rels"], n, ptr + "/rels") : IntMatrix(n, 0);
    return {n, std::move(rels)};
}

// {"gens": n, "rels": [[column], ...], "t": [[row], ...]}
inline json to_json(const FgRModule& m) {
    return {{"gens", m.gens}, {"rels", columns_to_json(m.rels)}, {"t", matrix_to_json(m.t)}};
}

inline FgRModule module_from_json(const json& j, const std::string& ptr = "") {
    const Presentation p = presentation_from_json(j, ptr);
    IntMatrix t = matrix_from_json(member(j, "t", ptr), p.gens, p.gens, ptr + "/t");
    return {p.gens, p.rels, std::move(t)};
}

// {"p": p, "rank": r, "torsion": [k1 >= k2 >= ...]}
inline json to_json(const ZpModule& m) {
    json tors = json::array();
    for (unsigned k : m.torsion.parts()) tors.push_back(k);
    return {{"p", int_to_json(Int(m.p))}, {"rank", m.rank}, {"torsion", tors}};
}

inline ZpModule zp_module_from_json(const json& j, const std::string& ptr = "") {
    const Int p = int_from_json(member(j, "p", ptr), ptr + "/p");
    if (p < 2 || p > Int(std::numeric_limits<std::uint64_t>::max()) || !is_prime(static_cast<std::uint64_t>(p)))
        throw SchemaError(ptr + "/p", "expected a prime");
    ZpModule m;
    m.p = static_cast<std::uint64_t>(p);
    m.rank = j.contains("rank") ? count_from_json(j["rank"], ptr + "/rank") : 0;
    std::vector<unsigned> parts;
    if (j.contains("torsion")) {
        const json& t = j["torsion"];
        if (!t.is_array()) throw SchemaError(ptr + "/torsion", "expected a list of exponents");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::size_t k = count_from_json(t[i], ptr + "/torsion/" + std::to_string(i));
            if (k == 0) throw SchemaError(ptr + "/torsion/" + std::to_string(i), "exponents must be positive");
            parts.push_back(static_cast<unsigned>(k));
        }
    }
    m.torsion = Partition(std::move(parts));
    return m;
}

inline json to_json(const GradedZpModule& g) { return {{"even", to_json(g.even)}, {"odd", to_json(g.odd)}}; }

inline GradedZpModule graded_from_json(const json& j, const std::string& ptr = "") {
    GradedZpModule g{zp_module_from_json(member(j, "even", ptr), ptr + "/even"), zp_module_from_json(member(j, "odd", ptr), ptr + "/odd")};
    if (g.even.p != g.odd.p) throw SchemaError(ptr, "even and odd parts over different primes");
    return g;
}

// {"kG": {"0": module, "1": module}, "kGminus": {...}, "phi": {"0": matrix, "1": matrix}, "psi": {...}}
inline json to_json(const KInvariant& k) {
    json out;
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        out["kG"][deg] = to_json(k.kg[d]);
        out["kGminus"][deg] = to_json(k.kg_minus[d]);
        out["phi"][deg] = matrix_to_json(k.phi[d]);
        out["psi"][deg] = matrix_to_json(k.psi[d]);
    }
    return out;
}

inline KInvariant kinvariant_from_json(const json& j, const std::string& ptr = "") {
    KInvariant k;
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        const char* key = deg.c_str();
        k.kg[d] = module_from_json(member(member(j, "kG", ptr), key, ptr + "/kG"), ptr + "/kG/" + deg);
        k.kg_minus[d] = module_from_json(member(member(j, "kGminus", ptr), key, ptr + "/kGminus"), ptr + "/kGminus/" + deg);
    }
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        const char* key = deg.c_str();
        k.phi[d] = matrix_from_json(member(member(j, "phi", ptr), key, ptr + "/phi"), k.kg[d].gens, k.kg_minus[d].gens,
                                    ptr + "/phi/" + deg);
        k.psi[d] = matrix_from_json(member(member(j, "psi", ptr), key, ptr + "/psi"), k.kg_minus[d].gens, k.kg[d].gens,
                                    ptr + "/psi/" + deg);
    }
    return k;
}

// {"kinv": ..., "K": {"0": group, "1": group}, "f": {"0": matrix, "1": matrix}, "boundary": {"0": matrix, "1": matrix}}
// boundary "0" maps K^1 -> K^0_{G,-}, boundary "1" maps K^0 -> K^1_{G,-}.
inline json to_json(const SixTermData& s) {
    json out;
    out["kinv"] = to_json(s.kinv);
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        out["K"][deg] = to_json(s.k[d]);
        out["f"][deg] = matrix_to_json(s.forget[d]);
        out["boundary"][deg] = matrix_to_json(s.boundary[d]);
    }
    return out;
}

inline SixTermData six_term_from_json(const json& j, const std::string& ptr = "") {
    SixTermData s;
    s.kinv = kinvariant_from_json(member(j, "kinv", ptr), ptr + "/kinv");
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        s.k[d] = presentation_from_json(member(member(j, "K", ptr), deg.c_str(), ptr + "/K"), ptr + "/K/" + deg);
    }
    for (int d = 0; d < 2; ++d) {
        const std::string deg = std::to_string(d);
        s.forget[d] = matrix_from_json(member(member(j, "f", ptr), deg.c_str(), ptr + "/f"), s.k[d].gens, s.kinv.kg[d].gens,
                                       ptr + "/f/" + deg);
        s.boundary[d] = matrix_from_json(member(member(j, "boundary", ptr), deg.c_str(), ptr + "/boundary"),
                                         s.kinv.kg_minus[d].gens, s.k[1 - d].gens, ptr + "/boundary/" + deg);
    }
    return s;
}

// {"atom": "G"}, {"atom": "cell", "n": k}, {"atom": "freecell", "n": k},
// {"product": [e, e, ...]}, {"union": [e, ...]}, {"suspendR": e}, {"suspendV": e}
inline json to_json(const SpaceExpr& e) {
    using K = SpaceExpr::Kind;
    auto list = [](const std::vector<SpaceExpr>& cs) {
        json a = json::array();
        for (const auto& c : cs) a.push_back(to_json(c));
        return a;
    };
    switch (e.kind) {
    case K::Atom: return {{"atom", e.atom}};
    case K::Cell: return {{"atom", "cell"}, {"n", e.n}};
    case K::FreeCell: return {{"atom", "freecell"}, {"n", e.n}};
    case K::Product: return {{"product", list(e.children)}};
    case K::Union: return {{"union", list(e.children)}};
    case K::SuspendR: return {{"suspendR", to_json(e.children[0])}};
    case K::SuspendV: return {{"suspendV", to_json(e.children[0])}};
    }
    return {};
}

inline SpaceExpr space_from_json(const json& j, const std::string& ptr = "") {
    if (!j.is_object() || j.size() == 0) throw SchemaError(ptr, "expected a space expression object");
    auto list = [&](const char* key) {
        const json& a = j[key];
        const std::string lp = ptr + "/" + key;
        if (!a.is_array()) throw SchemaError(lp, "expected a list of expressions");
        std::vector<SpaceExpr> out;
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(space_from_json(a[i], lp + "/" + std::to_string(i)));
        return out;
    };
    if (j.contains("atom")) {
        const json& a = j["atom"];
        if (!a.is_string()) throw SchemaError(ptr + "/atom", "expected an atom name");
        const std::string name = a.get<std::string>();
        if (name == "cell" || name == "freecell") {
            const std::size_t n = count_from_json(member(j, "n", ptr), ptr + "/n");
            if (n == 0) throw SchemaError(ptr + "/n", "cell dimension must be at least 1");
            return name == "cell" ? SpaceExpr::cell(static_cast<unsigned>(n)) : SpaceExpr::free_cell(static_cast<unsigned>(n));
        }
        if (!catalog::find(name)) throw SchemaError(ptr + "/atom", "unknown atom '" + name + "'");
        return SpaceExpr::make_atom(name);
    }
    if (j.contains("product")) {
        auto factors = list("product");
        if (factors.size() < 2) throw SchemaError(ptr + "/product", "a product needs at least two factors");
        return SpaceExpr::product(std::move(factors));
    }
    if (j.contains("union")) return SpaceExpr::disjoint_union(list("union"));
    if (j.contains("suspendR")) return SpaceExpr::suspend_r(space_from_json(j["suspendR"], ptr + "/suspendR"));
    if (j.contains("suspendV")) return SpaceExpr::suspend_v(space_from_json(j["suspendV"], ptr + "/suspendV"));
    throw SchemaError(ptr, "unrecognised space expression");
}

struct CheckOutcome {
    std::string id;
    bool pass = false;
    std::string detail;
    bool expected_failure = false;  // a failing check that documents a known experimental outcome
};

inline json to_json(const CheckOutcome& c) {
    json j{{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}};
    if (c.expected_failure) j["expected_failure"] = true;
    return j;
}

inline CheckOutcome check_from_json(const json& j, const std::string& ptr = "") {
    CheckOutcome c;
    c.id = member(j, "id", ptr).get<std::string>();
    c.pass = member(j, "pass", ptr).get<bool>();
    c.detail = j.value("detail", "");
    c.expected_failure = j.value("expected_failure", false);
    return c;
}

// {"prime": "(I,3)", "tensor": graded, "tor": graded, "middle": graded, "ambiguous": bool, "checks": [...]}
inline json to_json(const KunnethResult& r, const std::vector<CheckOutcome>& checks = {}) {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back(to_json(c));
    json j{{"prime", r.prime.name()},     {"tensor", to_json(r.tensor)},   {"tor", to_json(r.tor)},
           {"middle", to_json(r.middle)}, {"ambiguous", r.ambiguous},       {"checks", cs}};
    if (r.experimental) j["experimental"] = true;
    return j;
}

inline KunnethResult kunneth_result_from_json(const json& j, std::vector<CheckOutcome>* checks = nullptr, const std::string& ptr = "") {
    KunnethResult r;
    const json& prime = member(j, "prime", ptr);
    if (!prime.is_string()) throw SchemaError(ptr + "/prime", "expected an ideal name");
    try {
        r.prime = classify_ideal(prime.get<std::string>());
    } catch (const Error& e) {
        throw SchemaError(ptr + "/prime", e.what());
    }
    r.tensor = graded_from_json(member(j, "tensor", ptr), ptr + "/tensor");
    r.tor = graded_from_json(member(j, "tor", ptr), ptr + "/tor");
    r.middle = graded_from_json(member(j, "middle", ptr), ptr + "/middle");
    const json& amb = member(j, "ambiguous", ptr);
    if (!amb.is_boolean()) throw SchemaError(ptr + "/ambiguous", "expected a boolean");
    r.ambiguous = amb.get<bool>();
    r.experimental = j.value("experimental", false);
    if (checks && j.contains("checks")) {
        for (std::size_t i = 0; i < j["checks"].size(); ++i) checks->push_back(check_from_json(j["checks"][i], ptr + "/checks/" + std::to_string(i)));
    }
    return r;
}

/// Canonical text form: sorted keys (nlohmann objects are ordered), two-space indent, trailing newline.
inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

/// Parses text, mapping syntax errors to SchemaError.
inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
}

} // namespace ktheory::io
