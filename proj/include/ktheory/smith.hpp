#pragma once

#include "ktheory/matrix.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ktheory {

/// u * a * v == diag(d) padded with zeros; d[i] | d[i+1]; nonzero entries first.
/// u_inv and v_inv are carried along so callers can map lattices back.
struct SnfResult {
    std::vector<Int> d;
    IntMatrix u;
    IntMatrix v;
    IntMatrix u_inv;
    IntMatrix v_inv;

    /// Number of nonzero invariant factors.
    std::size_t rank() const {
        return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const Int& x) { return x != 0; }));
    }
};

namespace detail {

// Row and column operations applied simultaneously to a, the transforms, and their inverses.
struct SnfState {
    IntMatrix a, u, v, u_inv, v_inv;

    void swap_rows(std::size_t i, std::size_t j) {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
        u_inv.swap_cols(i, j);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    }
    void add_row(std::size_t dst, std::size_t src, const Int& k) {
        a.add_row(dst, src, k);
        u.add_row(dst, src, k);
        u_inv.add_col(src, dst, -k);
    }
    void add_col(std::size_t dst, std::size_t src, const Int& k) {
        a.add_col(dst, src, k);
        v.add_col(dst, src, k);
        v_inv.add_row(src, dst, -k);
    }
    void negate_row(std::size_t r) {
        a.negate_row(r);
        u.negate_row(r);
        u_inv.negate_col(r);
    }
};

} // namespace detail

/// Smith normal form with a minimal-absolute-value pivot and full reduction.
inline SnfResult snf(const IntMatrix& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    detail::SnfState s{input, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
                       IntMatrix::identity(n)};
    IntMatrix& a = s.a;
    const std::size_t steps = std::min(m, n);

    // Smallest nonzero |entry| in the trailing block starting at (t, t).
    auto find_pivot = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Int best_abs;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (a(i, j) == 0) continue;
                Int x = abs(a(i, j));
                if (!best || x < best_abs) {
                    best = {i, j};
                    best_abs = x;
                    if (best_abs == 1) return best;
                }
            }
        return best;
    };

    for (std::size_t t = 0; t < steps; ++t) {
        auto pivot = find_pivot(t);
        if (!pivot) break;
        s.swap_rows(t, pivot->first);
        s.swap_cols(t, pivot->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                s.add_row(i, t, -(a(i, t) / a(t, t)));
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                s.add_col(j, t, -(a(t, j) / a(t, t)));
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; move it into the pivot slot.
                std::size_t bi = t, bj = t;
                Int best = abs(a(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < best) {
                        best = abs(a(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < best) {
                        best = abs(a(t, j));
                        bi = t;
                        bj = j;
                    }
                s.swap_rows(t, bi);
                s.swap_cols(t, bj);
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        s.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) s.negate_row(t);
    }

    SnfResult r;
    r.d.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) r.d[i] = a(i, i);
    r.u = std::move(s.u);
    r.v = std::move(s.v);
    r.u_inv = std::move(s.u_inv);
    r.v_inv = std::move(s.v_inv);
    return r;
}

/// Integer x with a * x == b, or nullopt when b is outside the column lattice of a.
inline std::optional<std::vector<Int>> solve_membership(const IntMatrix& a, std::span<const Int> b) {
    if (b.size() != a.rows()) throw DimensionError("solve_membership: right-hand side length differs from row count");
    const SnfResult s = snf(a);
    const std::vector<Int> c = (s.u * IntMatrix::column(b)).col(0);
    std::vector<Int> y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Int di = i < s.d.size() ? s.d[i] : Int(0);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
            continue;
        }
        if (c[i] % di != 0) return std::nullopt;
        y[i] = c[i] / di;
    }
    return (s.v * IntMatrix::column(y)).col(0);
}

inline bool in_column_lattice(const IntMatrix& a, std::span<const Int> b) { return solve_membership(a, b).has_value(); }

/// Basis (as columns) of the integer kernel {x : a x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
    const SnfResult s = snf(a);
    const std::size_t r = s.rank();
    IntMatrix k(a.cols(), a.cols() - r);
    for (std::size_t j = r; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - r) = s.v(i, j);
    return k;
}

/// Basis (as columns) of the lattice spanned by the columns of g.
inline IntMatrix column_basis(const IntMatrix& g) {
    const SnfResult s = snf(g);
    const std::size_t r = s.rank();
    IntMatrix b(g.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < g.rows(); ++i) b(i, j) = s.u_inv(i, j) * s.d[j];
    return b;
}

/// Smallest positive s prime to p with s * y in the column lattice of rels,
/// i.e. a witness that y lies in the p-localized lattice. nullopt if it does not.
inline std::optional<Int> local_multiplier(const IntMatrix& rels, std::span<const Int> y, std::uint64_t p) {
    if (y.size() != rels.rows()) throw DimensionError("local_multiplier: vector length differs from row count");
    const SnfResult s = snf(rels);
    const std::vector<Int> c = (s.u * IntMatrix::column(y)).col(0);
    Int mult = 1;
    for (std::size_t i = 0; i < rels.rows(); ++i) {
        const Int di = i < s.d.size() ? s.d[i] : Int(0);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
            continue;
        }
        const Int need = di / gcd(di, c[i]);
        if (need % p == 0) return std::nullopt;
        mult = lcm(mult, need);
    }
    return mult;
}

} // namespace ktheory
