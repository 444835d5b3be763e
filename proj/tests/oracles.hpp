#pragma once

// Brute-force reference computations. These deliberately avoid the closed-form
// formulas in the library so the two can be compared.

#include "ktheory/ktheory.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using namespace ktheory;

/// Relation matrix of Z_(p)^rank + sum Z/p^k, built directly from the normal form.
inline Presentation raw_presentation(const ZpModule& m) {
    const std::size_t n = m.rank + m.torsion.length();
    IntMatrix rels(n, m.torsion.length());
    for (std::size_t i = 0; i < m.torsion.length(); ++i) rels(m.rank + i, i) = power(m.p, m.torsion[i]);
    return {n, rels};
}

/// M (x) N = coker [A (x) 1 | 1 (x) B], localized at p.
inline ZpModule tensor(const ZpModule& a, const ZpModule& b) {
    const Presentation pa = raw_presentation(a), pb = raw_presentation(b);
    const IntMatrix rels = hconcat(kron(pa.rels, IntMatrix::identity(pb.gens)), kron(IntMatrix::identity(pa.gens), pb.rels));
    return localize_presentation({pa.gens * pb.gens, rels}, a.p);
}

/// Tor_1 as H_1 of the tensor product of the two free resolutions:
/// C2 = Z^{r s} --d2--> C1 = Z^{r m} + Z^{n s} --d1--> C0 = Z^{n m}.
inline ZpModule tor1(const ZpModule& a, const ZpModule& b) {
    const Presentation pa = raw_presentation(a), pb = raw_presentation(b);
    const std::size_t n = pa.gens, m = pb.gens, r = pa.rels.cols(), s = pb.rels.cols();
    const IntMatrix d1 = hconcat(kron(pa.rels, IntMatrix::identity(m)), kron(IntMatrix::identity(n), pb.rels));
    const IntMatrix d2 = vconcat(kron(IntMatrix::identity(r), pb.rels), -kron(pa.rels, IntMatrix::identity(s)));
    if (!(d1 * d2).is_zero()) throw std::logic_error("oracle::tor1: d1 d2 != 0");

    const IntMatrix z = kernel_basis(d1);  // columns span ker d1
    IntMatrix coords(z.cols(), d2.cols());
    for (std::size_t j = 0; j < d2.cols(); ++j) {
        const auto col = d2.col(j);
        const auto x = solve_membership(z, col);
        if (!x) throw std::logic_error("oracle::tor1: boundary outside cycles");
        for (std::size_t i = 0; i < z.cols(); ++i) coords(i, j) = (*x)[i];
    }
    return localize_presentation({z.cols(), coords}, a.p);
}

/// All modules over Z_(p) with rank <= max_rank and torsion exponents <= max_exp
/// in at most max_parts cyclic factors.
inline std::vector<ZpModule> small_modules(std::uint64_t p, std::size_t max_rank, unsigned max_exp, std::size_t max_parts) {
    std::vector<Partition> parts{Partition{}};
    std::vector<std::vector<unsigned>> stack{{}};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (cur.size() == max_parts) continue;
        const unsigned cap = cur.empty() ? max_exp : cur.back();
        for (unsigned k = 1; k <= cap; ++k) {
            auto next = cur;
            next.push_back(k);
            parts.push_back(Partition(next));
            stack.push_back(next);
        }
    }
    std::vector<ZpModule> out;
    for (std::size_t r = 0; r <= max_rank; ++r)
        for (const auto& t : parts) out.push_back(ZpModule{p, r, t});
    return out;
}

/// Finite abelian p-group of a given type, elements encoded as mixed-radix integers.
class PGroup {
public:
    PGroup(std::uint64_t p, const Partition& type) : p_(p) {
        for (unsigned k : type.parts()) {
            std::uint64_t m = 1;
            for (unsigned i = 0; i < k; ++i) m *= p;
            moduli_.push_back(m);
        }
        order_ = 1;
        for (auto m : moduli_) order_ *= m;
    }

    std::uint64_t order() const { return order_; }

    std::vector<std::uint64_t> digits(std::uint64_t x) const {
        std::vector<std::uint64_t> d(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            d[i] = x % moduli_[i];
            x /= moduli_[i];
        }
        return d;
    }
    std::uint64_t encode(const std::vector<std::uint64_t>& d) const {
        std::uint64_t x = 0;
        for (std::size_t i = moduli_.size(); i-- > 0;) x = x * moduli_[i] + d[i] % moduli_[i];
        return x;
    }
    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        auto a = digits(x), b = digits(y);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return encode(a);
    }
    std::uint64_t scale(std::uint64_t x, std::uint64_t k) const {
        auto a = digits(x);
        for (auto& v : a) v *= k;
        return encode(a);
    }

    using Subgroup = std::vector<bool>;

    /// Every subgroup, by closing {0} under single generators until nothing new appears.
    std::vector<Subgroup> subgroups() const {
        std::set<Subgroup> seen;
        std::vector<Subgroup> todo{closure(Subgroup(order_, false), 0)};
        seen.insert(todo.front());
        while (!todo.empty()) {
            const Subgroup h = todo.back();
            todo.pop_back();
            for (std::uint64_t g = 0; g < order_; ++g) {
                if (h[g]) continue;
                Subgroup bigger = closure(h, g);
                if (seen.insert(bigger).second) todo.push_back(std::move(bigger));
            }
        }
        return {seen.begin(), seen.end()};
    }

    /// Type of a subgroup H from n_k = log_p #{h in H : p^k h = 0}.
    Partition subgroup_type(const Subgroup& h) const {
        return from_counts([&](std::uint64_t pk) {
            std::uint64_t c = 0;
            for (std::uint64_t x = 0; x < order_; ++x)
                if (h[x] && scale(x, pk) == 0) ++c;
            return c;
        });
    }

    /// Type of G/H from #{x : p^k x in H} / |H|.
    Partition quotient_type(const Subgroup& h) const {
        const std::uint64_t size = static_cast<std::uint64_t>(std::count(h.begin(), h.end(), true));
        return from_counts([&](std::uint64_t pk) {
            std::uint64_t c = 0;
            for (std::uint64_t x = 0; x < order_; ++x)
                if (h[scale(x, pk)]) ++c;
            return c / size;
        });
    }

private:
    Subgroup closure(Subgroup h, std::uint64_t g) const {
        std::vector<std::uint64_t> members;
        for (std::uint64_t x = 0; x < order_; ++x)
            if (h[x]) members.push_back(x);
        if (members.empty()) {
            h[0] = true;
            members.push_back(0);
        }
        // H + <g>: add multiples of g to every member.
        std::uint64_t m = g;
        std::vector<std::uint64_t> multiples{0};
        while (m != 0) {
            multiples.push_back(m);
            m = add(m, g);
        }
        for (auto x : members)
            for (auto k : multiples) h[add(x, k)] = true;
        return h;
    }

    template <typename Count>
    Partition from_counts(Count count) const {
        // conjugate parts: log_p(count(p^k)) - log_p(count(p^{k-1})) for k = 1, 2, ...
        auto logp = [&](std::uint64_t c) {
            unsigned e = 0;
            while (c > 1) {
                c /= p_;
                ++e;
            }
            return e;
        };
        std::vector<unsigned> conj;
        unsigned prev = 0;
        std::uint64_t pk = 1;
        for (;;) {
            pk *= p_;
            const unsigned now = logp(count(pk));
            if (now == prev) break;
            conj.push_back(now - prev);
            prev = now;
        }
        return Partition(conj).conjugate();
    }

    std::uint64_t p_;
    std::vector<std::uint64_t> moduli_;
    std::uint64_t order_ = 1;
};

/// All (sub type, quotient type) pairs realized by subgroups of the group of type mid.
inline std::set<std::pair<Partition, Partition>> realized_extensions(std::uint64_t p, const Partition& mid) {
    const PGroup g(p, mid);
    std::set<std::pair<Partition, Partition>> out;
    for (const auto& h : g.subgroups()) out.emplace(g.subgroup_type(h), g.quotient_type(h));
    return out;
}

/// Multiplication by q is bijective on coker(A) iff coker(A) / q = coker(A mod q) vanishes,
/// i.e. A has full row rank over F_q.
inline bool multiplication_invertible(const Presentation& pres, std::uint64_t q) {
    const std::size_t n = pres.gens, m = pres.rels.cols();
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(m));
    const Int qi(q);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Int v = pres.rels(i, j) % qi;
            if (v < 0) v += qi;
            a[i][j] = static_cast<std::int64_t>(v);
        }
    const auto qq = static_cast<std::int64_t>(q);
    auto inverse = [&](std::int64_t x) {
        for (std::int64_t y = 1; y < qq; ++y)
            if (x * y % qq == 1) return y;
        return std::int64_t{0};
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[rank]);
        const std::int64_t inv = inverse(a[rank][col]);
        for (auto& v : a[rank]) v = v * inv % qq;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            const std::int64_t f = a[i][col];
            for (std::size_t j = 0; j < m; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % qq + qq) % qq;
        }
        ++rank;
    }
    return rank == n;
}

/// Random presentation with up to max_gens generators and small entries.
inline Presentation random_presentation(std::mt19937_64& rng, std::size_t max_gens = 4, int max_entry = 12) {
    std::uniform_int_distribution<std::size_t> gens(0, max_gens);
    const std::size_t n = gens(rng);
    std::uniform_int_distribution<std::size_t> relc(0, n + 1);
    const std::size_t m = relc(rng);
    std::uniform_int_distribution<int> entry(-max_entry, max_entry);
    std::bernoulli_distribution sparse(0.5);
    IntMatrix rels(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) rels(i, j) = sparse(rng) ? 0 : entry(rng);
    return {n, rels};
}

} // namespace oracle
