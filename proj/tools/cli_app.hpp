#pragma once

#include "ktheory/ktheory.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ktheory::cli {

using io::CheckOutcome;
using io::json;

enum ExitCode : int { Pass = 0, VerificationFailure = 1, InputError = 2 };

/// 64-bit FNV-1a, used for the inputs digest.
class Fnv1a {
public:
    void update(std::string_view bytes) {
        for (unsigned char c : bytes) {
            hash_ ^= c;
            hash_ *= 0x100000001b3ULL;
        }
        hash_ ^= 0xff;  // field separator
        hash_ *= 0x100000001b3ULL;
    }
    std::string hex() const {
        std::ostringstream os;
        os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash_;
        return os.str();
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

struct RunReport {
    std::vector<std::string> command;
    Fnv1a digest;
    json results = json::object();
    std::vector<CheckOutcome> checks;
    std::vector<std::string> notes;
    std::optional<double> elapsed_ms;

    void check(std::string id, bool pass, std::string detail = {}, bool expected_failure = false) {
        checks.push_back({std::move(id), pass, std::move(detail), expected_failure});
    }
    void merge(std::vector<CheckOutcome> more) { checks.insert(checks.end(), more.begin(), more.end()); }

    std::vector<std::string> failed_ids() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.pass && !c.expected_failure) out.push_back(c.id);
        return out;
    }
    int exit_code() const { return failed_ids().empty() ? Pass : VerificationFailure; }

    json to_json(int code) const {
        json cs = json::array();
        for (const auto& c : checks) cs.push_back(io::to_json(c));
        json j{{"command", command},
               {"inputs_digest", digest.hex()},
               {"results", results},
               {"checks", cs},
               {"failed_checks", failed_ids()},
               {"exit_code", code}};
        if (!notes.empty()) j["notes"] = notes;
        if (elapsed_ms) j["timing"] = {{"elapsed_ms", *elapsed_ms}};
        return j;
    }
};

struct Options {
    std::string prime;
    std::string mode = "quotient";
    bool experimental_p2 = false;
    std::string json_path;
    bool verbose = false;
    bool timing = false;

    std::string module_arg, kinv_arg, data_arg, space_arg, x_arg, y_arg, a_arg, b_arg;
    std::string atom;
    std::string suite = "catalog";
    std::vector<std::string> primes;
};

namespace detail {

inline std::string read_text(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw InvalidInput("cannot read '" + arg + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Loads a JSON argument (inline text or a path); schema errors are prefixed with the source.
template <typename F>
auto load(const std::string& arg, RunReport& report, F&& decode) {
    const std::string text = read_text(arg);
    report.digest.update(text);
    const std::string label = (!arg.empty() && arg.front() == '{') ? std::string("<inline>") : arg;
    try {
        return decode(io::parse(text));
    } catch (const SchemaError& e) {
        throw SchemaError(label + "#" + e.pointer(), e.message());
    } catch (const json::exception& e) {
        throw SchemaError(label, e.what());
    }
}

/// A K-invariant, or the `kinv` member of a hexagon file.
inline KInvariant decode_kinv(const json& j) {
    if (j.is_object() && j.contains("kinv")) return io::kinvariant_from_json(j.at("kinv"), "/kinv");
    return io::kinvariant_from_json(j);
}

inline PrimeSpot parse_prime(const std::string& text) {
    if (text.empty()) throw InvalidInput("--prime is required");
    return classify_ideal(text);
}

inline LocalizeMode parse_mode(const std::string& m) {
    if (m == "quotient") return LocalizeMode::Quotient;
    if (m == "genuine") return LocalizeMode::Genuine;
    throw InvalidInput("--mode must be quotient or genuine");
}

inline KunnethOptions kunneth_options(const Options& o) { return {o.experimental_p2, parse_mode(o.mode)}; }

inline std::string str(const GradedZpModule& g) {
    std::ostringstream os;
    os << g;
    return os.str();
}
inline std::string str(const ZpModule& m) { return to_string(m); }

inline std::string str(const AbelianGroup& g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

inline std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

inline void add_validation(RunReport& r, const std::string& prefix, const std::vector<std::string>& violations) {
    if (violations.empty()) {
        r.check(prefix + "valid", true);
        return;
    }
    for (const auto& v : violations) r.check(prefix + v, false, "violated");
}

inline void add_p2_diagnostic(RunReport& r) {
    const P2Diagnostic d = p2_self_consistency();
    r.results["p2_diagnostic"] = {{"product", io::to_json(d.product)}, {"direct", io::to_json(d.direct)}, {"consistent", d.consistent()}};
    r.check("p2.self_consistency", d.consistent(),
            "pt x pt at (I,2), quotient convention: Kunneth gives " + str(d.product) + ", pt gives " + str(d.direct), !d.consistent());
    r.notes.push_back("(I,2) is experimental: the quotient convention is not self-consistent there; no theorem is verified at p = 2");
}

inline Side side_for(const PrimeSpot& s) {
    if (s.kind() == SpotKind::MaximalI) return Side::Main;
    if (s.kind() == SpotKind::MaximalJ) return Side::SupportG;
    throw InvalidInput("a maximal ideal (I,p) or (J,p) is required, got " + s.name());
}

// --- fixtures ---

inline std::optional<std::filesystem::path> fixture_dir() {
    if (const char* env = std::getenv("KTHEORY_SUITE_DIR")) {
        std::filesystem::path p(env);
        if (!std::filesystem::is_directory(p)) throw InvalidInput("KTHEORY_SUITE_DIR '" + p.string() + "' is not a directory");
        return p;
    }
#ifdef KTHEORY_FIXTURE_DIR
    if (std::filesystem::is_directory(KTHEORY_FIXTURE_DIR)) return std::filesystem::path(KTHEORY_FIXTURE_DIR);
#endif
    return std::nullopt;
}

/// Catalog atoms as stored on disk when a fixture directory exists, otherwise the built-in data.
inline std::vector<CatalogEntry> load_catalog(RunReport& r) {
    std::vector<CatalogEntry> out = catalog::entries();
    const auto dir = fixture_dir();
    if (!dir) {
        r.notes.push_back("no fixture directory; using built-in catalog data");
        return out;
    }
    for (auto& e : out) {
        const auto path = *dir / (e.name + ".json");
        if (!std::filesystem::exists(path)) throw InvalidInput("missing fixture " + path.string());
        e.data = load(path.string(), r, [](const json& j) { return io::six_term_from_json(j); });
    }
    return out;
}

inline std::optional<CatalogEntry> entry_named(const std::vector<CatalogEntry>& entries, const std::string& name) {
    for (const auto& e : entries)
        if (e.name == name) return e;
    return std::nullopt;
}

} // namespace detail

// --- suites ---

struct SuiteOutcome {
    json results = json::object();
    std::vector<CheckOutcome> checks;
};

/// Catalog checks at one maximal ideal.
inline SuiteOutcome catalog_suite(const std::vector<CatalogEntry>& entries, const PrimeSpot& s, const KunnethOptions& opt) {
    SuiteOutcome out;
    const std::string at = "@" + s.name();
    auto check = [&](std::string id, bool pass, std::string detail = {}) { out.checks.push_back({id + at, pass, std::move(detail), false}); };

    using E = SpaceExpr;
    const std::vector<E> atoms{E::point(), E::sign_line(), E::orbit()};
    const std::uint64_t p = s.p();

    if (s.kind() == SpotKind::MaximalI && p != 2) {
        for (const auto& e : entries) {
            const LocalMapsReport m = maps_vanish_locally(e.data.kinv, s);
            check("catalog." + e.name + ".maps_vanish", m.all_zero());
            out.results["localized"][e.name] = io::to_json(localize_kinvariant(e.data.kinv, s, opt.mode).graded);
        }
        for (const auto& a : atoms)
            for (const auto& b : atoms) {
                const E prod = E::product(a, b);
                const GradedZpModule engine = eval_local(prod, s, Side::Main, opt).graded;
                const auto direct = direct_product(a, b, s, Side::Main, opt.mode);
                const bool ok = direct && engine == *direct;
                check("kunneth.oracle." + to_string(a) + "x" + to_string(b), ok,
                      "engine " + detail::str(engine) + (direct ? ", direct " + detail::str(*direct) : ", no direct evaluation"));
                out.results["products"][to_string(prod)] = io::to_json(engine);
            }
        for (const char* name : {"pt", "V", "G"}) {
            const auto e = detail::entry_named(entries, name);
            const DoublingReport d = doubling_check(e->data.kinv, s);
            check(std::string("doubling.") + name, d.pass(),
                  "product rank " + std::to_string(d.product_rank) + " length " + std::to_string(d.product_length) + ", K rank " +
                      std::to_string(d.k_rank) + " length " + std::to_string(d.k_length));
        }
        const RemarkFailureReport rf = remark_failure_demo(s, *detail::entry_named(entries, "G"));
        check("remark.naive_vs_true", rf.naive_rank == 1 && rf.true_rank == 2,
              "naive rank " + std::to_string(rf.naive_rank) + ", true rank " + std::to_string(rf.true_rank));
        check("remark.full_resolves", rf.resolved(), "full " + detail::str(rf.full) + ", direct " + detail::str(rf.direct));
    } else if (s.kind() == SpotKind::MaximalJ) {
        const std::vector<E> xs{E::point(), E::sign_line()};
        for (const auto& a : xs)
            for (const auto& b : xs) {
                const GradedZpModule engine = eval_local(E::product(a, b), s, Side::SupportG, opt).graded;
                const auto direct = direct_product(a, b, s, Side::SupportG, opt.mode);
                check("support_g.oracle." + to_string(a) + "x" + to_string(b), direct && engine == *direct,
                      "engine " + detail::str(engine));
            }
        for (const auto& e : entries) {
            if (!e.free) continue;
            const SupportGReport r = support_g_vanishing(e.data.kinv, e.free, s);
            check("support_g." + e.name + ".vanishes", r.pass());
        }
    } else if (s.kind() == SpotKind::MaximalI && p == 2) {
        for (const auto& e : entries)
            out.results["localized"][e.name] = io::to_json(localize_kinvariant(e.data.kinv, s, opt.mode).graded);
    } else {
        throw InvalidInput("verify needs maximal ideals, got " + s.name());
    }
    return out;
}

/// Checks that do not depend on a prime: validation and hexagon exactness of the catalog data.
inline SuiteOutcome catalog_global_suite(const std::vector<CatalogEntry>& entries) {
    SuiteOutcome out;
    for (const auto& e : entries) {
        const auto bad = validate_kinvariant(e.data.kinv);
        out.checks.push_back({"catalog." + e.name + ".kinvariant", bad.empty(), detail::join(bad), false});
        const auto builtin = catalog::find(e.name);
        out.checks.push_back({"catalog." + e.name + ".matches_builtin", builtin && builtin->data.kinv == e.data.kinv, {}, false});
        try {
            const SixTermReport r = six_term_verify(e.data);
            for (const auto& spot : r.spots) {
                out.checks.push_back({"six_term." + e.name + ".exact_at." + spot.name, spot.homology.is_zero(),
                                      spot.homology.is_zero() ? "" : "homology " + detail::str(spot.homology), false});
            }
        } catch (const NotAComplex& ex) {
            out.checks.push_back({"six_term." + e.name + ".complex", false, ex.what(), false});
        }
    }
    return out;
}

// --- subcommands ---

namespace commands {

inline void spec_r(const Options& o, RunReport& r, std::ostream& out) {
    std::vector<std::uint64_t> primes{2, 3, 5, 7};
    if (!o.primes.empty()) {
        primes.clear();
        for (const auto& text : o.primes) {
            if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) throw InvalidInput("bad prime '" + text + "'");
            const auto p = std::stoull(text);
            if (!is_prime(p)) throw InvalidInput(text + " is not prime");
            primes.push_back(p);
        }
    }
    json rows = json::array();
    auto row = [&](const PrimeSpot& s, const std::string& contains) {
        const LocalizationTarget t = localization_target(s);
        rows.push_back({{"name", s.name()}, {"maximal", s.is_maximal()}, {"support", to_string(s.support())},
                        {"localization", t.describe()}, {"contains", contains}});
    };
    out << "Spec R, R = Z[t]/(t^2 - 1)\n\n";
    out << "  generic points            support  local ring\n";
    for (const auto& s : {PrimeSpot::minimal_i(), PrimeSpot::minimal_j()}) {
        out << "    " << std::left << std::setw(22) << (s.name() + (s.kind() == SpotKind::MinimalI ? " = (t-1)" : " = (t+1)"))
            << std::setw(9) << to_string(s.support()) << localization_target(s).describe() << "\n";
        row(s, "");
    }
    out << "\n  closed points             support  local ring\n";
    for (auto p : primes) {
        if (p == 2) {
            const PrimeSpot s = PrimeSpot::maximal_i(2);
            out << "    " << std::setw(22) << "(I,2) = (J,2)" << std::setw(9) << to_string(s.support()) << localization_target(s).describe()
                << "   [on both I and J]\n";
            row(s, "I,J");
            continue;
        }
        for (const auto& s : {PrimeSpot::maximal_i(p), PrimeSpot::maximal_j(p)}) {
            const bool on_i = s.kind() == SpotKind::MaximalI;
            out << "    " << std::setw(22) << s.name() << std::setw(9) << to_string(s.support()) << localization_target(s).describe()
                << "   [on " << (on_i ? "I" : "J") << "]\n";
            row(s, on_i ? "I" : "J");
        }
    }
    out << std::right;
    r.results["spec_r"] = rows;
}

inline void localize_cmd(const Options& o, RunReport& r, std::ostream& out) {
    const PrimeSpot s = detail::parse_prime(o.prime);
    const LocalizeMode mode = detail::parse_mode(o.mode);
    if (o.module_arg.empty() == o.kinv_arg.empty()) throw InvalidInput("localize needs exactly one of --module, --kinv");

    if (!o.module_arg.empty()) {
        const FgRModule m = detail::load(o.module_arg, r, [](const json& j) { return io::module_from_json(j); });
        const auto bad = validate_module(m);
        detail::add_validation(r, "", bad);
        if (!bad.empty()) {
            out << "invalid module: " << detail::join(bad) << "\n";
            return;
        }
        if (!s.is_maximal()) {
            const std::size_t rank = rational_rank(m, s);
            r.results["rational_rank"] = rank;
            out << "dim_Q of localization at " << s << ": " << rank << "\n";
            return;
        }
        if (s.p() == 2 && !o.experimental_p2) throw InvalidInput("(I,2) is experimental; pass --experimental-p2");
        try {
            const LocalizationDetail d = localize_detailed(m, s, mode);
            r.results["module"] = io::to_json(d.module);
            out << "localized at " << s << " (" << to_string(mode) << "): " << d.module << "\n";
            if (o.verbose) {
                json disc = json::array();
                for (const Int& x : d.discarded) disc.push_back(io::int_to_json(x));
                r.results["discarded"] = disc;
                out << "discarded torsion prime to " << s.p() << ":";
                for (const Int& x : d.discarded) out << " Z/" << x;
                out << (d.discarded.empty() ? " none\n" : "\n");
            }
        } catch (const NotDvrModule& e) {
            r.results["not_dvr"] = {{"underlying", io::to_json(e.underlying())}, {"t", io::matrix_to_json(e.t_action())}};
            r.check("localize.dvr_module", false, e.what());
            out << e.what() << "\n  2-local group " << e.underlying() << ", t acts by\n" << e.t_action() << "\n";
        }
        return;
    }

    const KInvariant k = detail::load(o.kinv_arg, r, detail::decode_kinv);
    const auto bad = validate_kinvariant(k);
    detail::add_validation(r, "kinvariant.", bad);
    if (!bad.empty()) {
        out << "invalid invariant: " << detail::join(bad) << "\n";
        return;
    }
    const Side side = detail::side_for(s);
    if (s.p() == 2 && !o.experimental_p2) throw InvalidInput("(I,2) is experimental; pass --experimental-p2");
    try {
        const LocalizedInvariant li = side == Side::Main ? localize_kinvariant(k, s, mode) : localize_equivariant_part(k, s, mode);
        r.results["graded"] = io::to_json(li.graded);
        out << (side == Side::Main ? "regraded invariant at " : "K*_G at ") << s << ": " << li.graded << "\n";
        if (side == Side::Main && s.p() != 2) {
            const LocalMapsReport m = maps_vanish_locally(k, s);
            for (int d = 0; d < 2; ++d) {
                r.check("maps.phi" + std::to_string(d) + ".vanish_locally", m.phi_zero[d]);
                r.check("maps.psi" + std::to_string(d) + ".vanish_locally", m.psi_zero[d]);
            }
        }
    } catch (const NotDvrModule& e) {
        r.check("localize.dvr_module", false, e.what());
        out << e.what() << "\n";
    }
}

inline ZpModule load_zp(const std::string& arg, RunReport& r) {
    return detail::load(arg, r, [](const json& j) { return io::zp_module_from_json(j); });
}

inline void tensor_cmd(const Options& o, RunReport& r, std::ostream& out, bool tor) {
    if (o.a_arg.empty() || o.b_arg.empty()) throw InvalidInput("--a and --b are required");
    const ZpModule a = load_zp(o.a_arg, r), b = load_zp(o.b_arg, r);
    if (a.p != b.p) throw InvalidInput("modules over different primes: " + std::to_string(a.p) + " and " + std::to_string(b.p));
    const ZpModule m = tor ? tor1_zp(a, b) : tensor_zp(a, b);
    r.results[tor ? "tor" : "tensor"] = io::to_json(m);
    out << (tor ? "Tor_1(" : "") << a << (tor ? ", " : " (x) ") << b << (tor ? ")" : "") << " = " << m << "\n";
}

inline void kunneth_cmd(const Options& o, RunReport& r, std::ostream& out) {
    const PrimeSpot s = detail::parse_prime(o.prime);
    const Side side = detail::side_for(s);
    const KunnethOptions opt = detail::kunneth_options(o);
    require_kunneth_spot(s, opt);

    KunnethResult result;
    bool inherited_ambiguity = false;
    if (!o.space_arg.empty()) {
        if (!o.x_arg.empty() || !o.y_arg.empty()) throw InvalidInput("use either --space or --x/--y");
        const SpaceExpr e = detail::load(o.space_arg, r, [](const json& j) { return io::space_from_json(j); });
        if (e.kind != SpaceExpr::Kind::Product) throw InvalidInput("kunneth --space needs a product expression at the top");
        std::vector<SpaceExpr> left(e.children.begin(), e.children.end() - 1);
        const SpaceExpr x = left.size() == 1 ? left.front() : SpaceExpr::product(left);
        const SpaceExpr& y = e.children.back();
        const LocalEval lx = eval_local(x, s, side, opt), ly = eval_local(y, s, side, opt);
        result = kunneth_local({s, lx.graded}, {s, ly.graded}, opt);
        inherited_ambiguity = lx.ambiguous || ly.ambiguous;
        r.results["space"] = to_string(e);
        out << "X x Y = " << to_string(e) << "\n";
        if (e.children.size() == 2) {
            if (auto direct = direct_product(e.children[0], e.children[1], s, side, opt.mode)) {
                const bool agree = *direct == result.middle;
                r.check("kunneth.oracle_equivalence", agree, "direct evaluation " + detail::str(*direct), !agree && result.experimental);
            }
        }
    } else {
        if (o.x_arg.empty() || o.y_arg.empty()) throw InvalidInput("kunneth needs --space or both --x and --y");
        const KInvariant kx = detail::load(o.x_arg, r, detail::decode_kinv);
        const KInvariant ky = detail::load(o.y_arg, r, detail::decode_kinv);
        const auto bx = validate_kinvariant(kx), by = validate_kinvariant(ky);
        detail::add_validation(r, "x.", bx);
        detail::add_validation(r, "y.", by);
        if (!bx.empty() || !by.empty()) return;
        auto loc = [&](const KInvariant& k) {
            return side == Side::Main ? localize_kinvariant(k, s, opt.mode) : localize_equivariant_part(k, s, opt.mode);
        };
        result = kunneth_local(loc(kx), loc(ky), opt);
    }
    r.check("kunneth.middle_admissible", admissible_middle(result, result.middle));
    if (result.experimental) detail::add_p2_diagnostic(r);

    const json rj = io::to_json(result);
    for (const char* key : {"prime", "tensor", "tor", "middle", "ambiguous"}) r.results[key] = rj[key];
    if (result.experimental) r.results["experimental"] = true;
    if (inherited_ambiguity) r.results["ambiguous"] = true;

    out << "prime  " << s << (side == Side::Main ? "  (full invariant, regraded)" : "  (K*_G only)") << "\n";
    out << "tensor " << result.tensor << "\n";
    out << "tor    " << result.tor << "\n";
    out << "middle " << result.middle << "\n";
    if (result.ambiguous || inherited_ambiguity) out << "middle is determined only up to extension; the split representative is shown\n";
}

inline SixTermData load_six_term(const Options& o, RunReport& r) {
    if (!o.data_arg.empty()) return detail::load(o.data_arg, r, [](const json& j) { return io::six_term_from_json(j); });
    if (o.atom.empty()) throw InvalidInput("six-term needs --data or --atom");
    const auto e = catalog::find(o.atom);
    if (!e) throw InvalidInput("unknown atom '" + o.atom + "'");
    r.digest.update(o.atom);
    return e->data;
}

inline void six_term_cmd(const Options& o, RunReport& r, std::ostream& out) {
    const SixTermData d = load_six_term(o, r);
    const auto bad = validate_kinvariant(d.kinv);
    detail::add_validation(r, "kinvariant.", bad);
    try {
        const SixTermReport rep = six_term_verify(d);
        json spots = json::array();
        for (const auto& spot : rep.spots) {
            spots.push_back({{"spot", spot.name}, {"homology", detail::str(spot.homology)}, {"zero", spot.homology.is_zero()}});
            r.check("six_term.exact_at." + spot.name, spot.homology.is_zero(), spot.homology.is_zero() ? "" : "homology " + detail::str(spot.homology));
            out << "  " << std::left << std::setw(7) << spot.name << std::right << " homology " << spot.homology << "\n";
        }
        r.results["spots"] = spots;
        r.results["exact"] = rep.exact();
        out << (rep.exact() ? "exact\n" : "not exact at: " + detail::join(rep.failing_spots()) + "\n");
    } catch (const NotAComplex& e) {
        r.check("six_term.complex", false, e.what());
        out << e.what() << "\n";
    }
}

inline KInvariant load_kinv_or_atom(const Options& o, RunReport& r) {
    if (!o.kinv_arg.empty()) return detail::load(o.kinv_arg, r, detail::decode_kinv);
    const std::string name = o.atom.empty() ? "G" : o.atom;
    const auto e = catalog::find(name);
    if (!e) throw InvalidInput("unknown atom '" + name + "'");
    r.digest.update(name);
    return e->data.kinv;
}

inline void doubling_cmd(const Options& o, RunReport& r, std::ostream& out) {
    const PrimeSpot s = detail::parse_prime(o.prime);
    const KInvariant k = load_kinv_or_atom(o, r);
    const auto bad = validate_kinvariant(k);
    detail::add_validation(r, "kinvariant.", bad);
    if (!bad.empty()) return;
    const DoublingReport d = doubling_check(k, s);
    r.results["doubling"] = {{"product_rank", d.product_rank},
                             {"product_length", d.product_length},
                             {"k_rank", d.k_rank},
                             {"k_length", d.k_length}};
    r.check("doubling.rank", d.product_rank == 2 * d.k_rank, std::to_string(d.product_rank) + " vs 2 x " + std::to_string(d.k_rank));
    r.check("doubling.length", d.product_length == 2 * d.k_length,
            std::to_string(d.product_length) + " vs 2 x " + std::to_string(d.k_length));
    out << "X x G at " << s << ": rank " << d.product_rank << ", length " << d.product_length << "\n";
    out << "K*(X) from end terms: rank " << d.k_rank << ", length " << d.k_length << "\n";
}

inline void remark_failure_cmd(const Options& o, RunReport& r, std::ostream& out) {
    const PrimeSpot s = detail::parse_prime(o.prime);
    const std::string name = o.atom.empty() ? "G" : o.atom;
    const auto e = catalog::find(name);
    if (!e) throw InvalidInput("unknown atom '" + name + "'");
    r.digest.update(name);
    const RemarkFailureReport rf = remark_failure_demo(s, *e);
    r.results["remark_failure"] = {{"space", rf.space},
                                   {"naive_rank", rf.naive_rank},
                                   {"true_rank", rf.true_rank},
                                   {"mismatch", rf.mismatch()},
                                   {"full", io::to_json(rf.full)},
                                   {"direct", io::to_json(rf.direct)}};
    r.check("remark.full_resolves", rf.resolved(), "full " + detail::str(rf.full) + ", direct " + detail::str(rf.direct));
    out << rf.space << " at " << s << "\n";
    out << "  K^0_G from K*_G alone: rank " << rf.naive_rank << "\n";
    out << "  K^0_G(G x " << name << ") = K^0(" << name << "): rank " << rf.true_rank << (rf.mismatch() ? "   (mismatch)\n" : "\n");
    out << "  full invariant: " << rf.full << ", direct: " << rf.direct << "\n";
}

inline void verify_cmd(const Options& o, RunReport& r, std::ostream& out) {
    if (o.suite != "catalog" && o.suite != "p2" && o.suite != "all") throw InvalidInput("--suite must be catalog, p2 or all");
    const KunnethOptions opt = detail::kunneth_options(o);
    const bool want_p2 = o.suite != "catalog";
    if (want_p2 && !o.experimental_p2) throw InvalidInput("the p2 suite needs --experimental-p2");

    std::vector<PrimeSpot> spots;
    const std::vector<std::string> names = o.primes.empty() ? std::vector<std::string>{"I,3", "J,3", "I,5"} : o.primes;
    for (const auto& n : names) {
        const PrimeSpot s = classify_ideal(n);
        if (!s.is_maximal()) throw InvalidInput("verify needs maximal ideals, got " + s.name());
        if (s.p() == 2 && !o.experimental_p2) throw InvalidInput("(I,2) is experimental; pass --experimental-p2");
        spots.push_back(s);
        r.digest.update(s.name());
    }

    if (o.suite != "p2") {
        const std::vector<CatalogEntry> entries = detail::load_catalog(r);
        SuiteOutcome global = catalog_global_suite(entries);
        r.merge(global.checks);
        // one worker per prime; results are collected in argument order
        std::vector<std::future<SuiteOutcome>> jobs;
        for (const auto& s : spots) jobs.push_back(std::async(std::launch::async, [&entries, s, opt] { return catalog_suite(entries, s, opt); }));
        for (std::size_t i = 0; i < spots.size(); ++i) {
            SuiteOutcome so = jobs[i].get();
            r.results["catalog"][spots[i].name()] = so.results;
            r.merge(std::move(so.checks));
        }
    }
    const bool p2_spot = std::any_of(spots.begin(), spots.end(), [](const PrimeSpot& s) { return s.p() == 2; });
    if (want_p2 || p2_spot) detail::add_p2_diagnostic(r);

    std::size_t failed = 0, expected = 0;
    for (const auto& c : r.checks) {
        const char* tag = c.pass ? "PASS" : (c.expected_failure ? "XFAIL" : "FAIL");
        if (!c.pass && c.expected_failure) ++expected;
        else if (!c.pass) ++failed;
        if (o.verbose || !c.pass) out << "  " << std::left << std::setw(5) << tag << std::right << " " << c.id << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    }
    out << "suite " << o.suite << ": " << r.checks.size() << " checks, " << failed << " failed";
    if (expected) out << ", " << expected << " expected failure" << (expected == 1 ? "" : "s") << " (experimental p = 2)";
    out << "\n";
}

} // namespace commands

/// Runs one command; returns the exit code. Human output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Options o;
    CLI::App app{"Kunneth theory for Z/2-equivariant K-theory: localization, Kunneth sequences, verification suites"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--prime", o.prime, "ideal: I,p or J,p (I and J for rank queries)");
        sub->add_option("--mode", o.mode, "localization convention")->check(CLI::IsMember({"quotient", "genuine"}));
        sub->add_flag("--experimental-p2", o.experimental_p2, "allow (I,2) under the quotient convention");
        sub->add_option("--json", o.json_path, "write a machine-readable report here");
        sub->add_flag("--verbose", o.verbose, "print discarded torsion and passing checks");
        sub->add_flag("--timing", o.timing, "include wall-clock timing in the JSON report");
    };

    auto* spec_r = app.add_subcommand("spec-r", "print the prime ideals of R with supports and local rings");
    common(spec_r);
    spec_r->add_option("--primes", o.primes, "residue characteristics to list");

    auto* localize = app.add_subcommand("localize", "localize an R-module or a K-invariant");
    common(localize);
    localize->add_option("--module", o.module_arg, "R-module JSON (path or inline)");
    localize->add_option("--kinv", o.kinv_arg, "K-invariant JSON (path or inline)");

    auto* tensor = app.add_subcommand("tensor", "tensor product of two Z_(p)-modules");
    auto* tor = app.add_subcommand("tor", "Tor_1 of two Z_(p)-modules");
    for (auto* sub : {tensor, tor}) {
        common(sub);
        sub->add_option("--a", o.a_arg, "Z_(p)-module JSON (path or inline)");
        sub->add_option("--b", o.b_arg, "Z_(p)-module JSON (path or inline)");
    }

    auto* kunneth = app.add_subcommand("kunneth", "localized Kunneth sequence of a product");
    common(kunneth);
    kunneth->add_option("--space", o.space_arg, "product expression JSON (path or inline)");
    kunneth->add_option("--x", o.x_arg, "K-invariant of X");
    kunneth->add_option("--y", o.y_arg, "K-invariant of Y");

    auto* six_term = app.add_subcommand("six-term", "homology of the forgetful hexagon");
    common(six_term);
    six_term->add_option("--data", o.data_arg, "hexagon JSON (path or inline)");
    six_term->add_option("--atom", o.atom, "catalog atom: pt, V, G, GxR");

    auto* doubling = app.add_subcommand("doubling", "compare X x G with two copies of K*(X)");
    common(doubling);
    doubling->add_option("--kinv", o.kinv_arg, "K-invariant JSON");
    doubling->add_option("--atom", o.atom, "catalog atom");

    auto* remark = app.add_subcommand("remark-failure", "K*_G alone mispredicts K_G(G x X) at (I,p)");
    common(remark);
    remark->add_option("--atom", o.atom, "catalog atom X (default G)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify);
    verify->add_option("--suite", o.suite, "catalog, p2 or all");
    verify->add_option("--primes", o.primes, "maximal ideals, e.g. I,3 J,3 I,5");

    // The report path is left out of the echo and the digest so reports are reproducible.
    RunReport report;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--json") {
            ++i;
            continue;
        }
        if (args[i].rfind("--json=", 0) == 0) continue;
        report.command.push_back(args[i]);
        report.digest.update(args[i]);
    }

    auto write_json = [&](int code, const std::optional<json>& error) {
        if (o.json_path.empty()) return;
        json j = report.to_json(code);
        if (error) j["error"] = *error;
        std::ofstream f(o.json_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << o.json_path << "\n";
            return;
        }
        f << io::canonical(j);
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Pass : InputError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (*spec_r) commands::spec_r(o, report, out);
        else if (*localize) commands::localize_cmd(o, report, out);
        else if (*tensor) commands::tensor_cmd(o, report, out, false);
        else if (*tor) commands::tensor_cmd(o, report, out, true);
        else if (*kunneth) commands::kunneth_cmd(o, report, out);
        else if (*six_term) commands::six_term_cmd(o, report, out);
        else if (*doubling) commands::doubling_cmd(o, report, out);
        else if (*remark) commands::remark_failure_cmd(o, report, out);
        else if (*verify) commands::verify_cmd(o, report, out);
    } catch (const SchemaError& e) {
        err << "input error at " << (e.pointer().empty() ? "<root>" : e.pointer()) << ": " << e.message() << "\n";
        write_json(InputError, json{{"pointer", e.pointer()}, {"message", e.message()}});
        return InputError;
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        write_json(InputError, json{{"message", e.what()}});
        return InputError;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.timing) report.elapsed_ms = ms;

    for (const auto& note : report.notes) out << "note: " << note << "\n";
    if (!*verify) {
        for (const auto& c : report.checks) {
            if (c.pass && !o.verbose) continue;
            out << (c.pass ? "  PASS  " : (c.expected_failure ? "  XFAIL " : "  FAIL  ")) << c.id << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
        }
    }
    if (o.verbose) out << "elapsed " << std::fixed << std::setprecision(1) << ms << " ms\n";
    const int code = report.exit_code();
    write_json(code, std::nullopt);
    return code;
}

} // namespace ktheory::cli
