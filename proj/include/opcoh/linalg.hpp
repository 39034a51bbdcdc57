#ifndef OPCOH_LINALG_HPP
#define OPCOH_LINALG_HPP

#include <algorithm>
#include <vector>

#include "opcoh/errors.hpp"
#include "opcoh/matrix.hpp"
#include "opcoh/rational.hpp"

namespace opcoh {

using Vec = std::vector<Rational>;

namespace detail {

// In-place reduced row echelon form; deterministic pivot choice: first
// nonzero column scanning rows top-down. Returns pivot columns.
inline std::vector<long> rref(std::vector<Vec>& m) {
    std::vector<long> pivots;
    if (m.empty()) return pivots;
    const long nc = static_cast<long>(m[0].size());
    long r = 0;
    for (long c = 0; c < nc && r < static_cast<long>(m.size()); ++c) {
        long p = -1;
        for (long i = r; i < static_cast<long>(m.size()); ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rational inv = Rational(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (long i = 0; i < static_cast<long>(m.size()); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (long j = 0; j < nc; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size());
    return pivots;
}

} // namespace detail

/// A linear subspace of Q^ambient stored as a reduced-echelon basis, so
/// equality and membership are plain comparisons.
struct Subspace {
    long ambient = 0;
    std::vector<Vec> basis;    // RREF rows, leading coefficient +1
    std::vector<long> pivots;  // strictly increasing pivot columns

    long dim() const { return static_cast<long>(basis.size()); }

    /// Span of arbitrary vectors (dependent vectors allowed).
    static Subspace span(std::vector<Vec> vectors, long ambient) {
        for (const auto& v : vectors)
            if (static_cast<long>(v.size()) != ambient)
                throw Error("span: vector length != ambient");
        Subspace s;
        s.ambient = ambient;
        s.pivots = detail::rref(vectors);
        s.basis = std::move(vectors);
        return s;
    }

    /// Like span() but requires the given vectors to be independent.
    static Subspace from_basis(std::vector<Vec> vectors, long ambient) {
        size_t n = vectors.size();
        Subspace s = span(std::move(vectors), ambient);
        if (s.basis.size() != n) throw Error("from_basis: vectors are dependent");
        return s;
    }

    static Subspace zero(long ambient) { return span({}, ambient); }

    static Subspace full(long ambient) {
        std::vector<Vec> id(ambient, Vec(ambient, Rational(0)));
        for (long i = 0; i < ambient; ++i) id[i][i] = 1;
        return span(std::move(id), ambient);
    }

    /// Residual of v after elimination against the basis; zero iff v lies
    /// in the subspace.
    Vec reduce(Vec v) const {
        if (static_cast<long>(v.size()) != ambient) throw Error("reduce: bad length");
        for (size_t i = 0; i < basis.size(); ++i) {
            Rational f = v[pivots[i]];
            if (f == 0) continue;
            for (long j = 0; j < ambient; ++j) v[j] -= f * basis[i][j];
        }
        return v;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
    }

    bool contains(const Subspace& sub) const {
        return std::all_of(sub.basis.begin(), sub.basis.end(),
                           [&](const Vec& v) { return contains(v); });
    }

    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && basis == o.basis;
    }
};

/// Left kernel {x : x M = 0} as a reduced-echelon subspace of Q^rows.
/// Row-vector convention: kernel elements are combinations of row labels.
inline Subspace kernel(const SparseMatrix& m) {
    const long n = m.rows, nc = m.cols;
    // eliminate [M | I]; rows whose M-part vanishes carry kernel vectors
    std::vector<Vec> aug(n, Vec(nc + n, Rational(0)));
    for (const auto& [rc, v] : m.entries) aug[rc.first][rc.second] = v;
    for (long i = 0; i < n; ++i) aug[i][nc + i] = 1;
    long r = 0;
    for (long c = 0; c < nc && r < n; ++c) {
        long p = -1;
        for (long i = r; i < n; ++i)
            if (aug[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(aug[r], aug[p]);
        Rational inv = Rational(1) / aug[r][c];
        for (auto& x : aug[r]) x *= inv;
        for (long i = 0; i < n; ++i) {
            if (i == r || aug[i][c] == 0) continue;
            Rational f = aug[i][c];
            for (long j = 0; j < nc + n; ++j) aug[i][j] -= f * aug[r][j];
        }
        ++r;
    }
    std::vector<Vec> ker;
    for (long i = r; i < n; ++i) ker.emplace_back(aug[i].begin() + nc, aug[i].end());
    return Subspace::span(std::move(ker), n);
}

/// Rank over Q via fraction-free Bareiss elimination on a denominator-cleared
/// integer copy. Intermediate divisions are asserted exact (the fraction-free
/// property); a failed division means a logic error, not user input.
inline long rank(const SparseMatrix& m) {
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols, 0));
    {
        std::vector<Int> lcm_row(m.rows, 1);
        for (const auto& [rc, v] : m.entries) {
            Int d = denominator(v);
            Int g = gcd(lcm_row[rc.first], d);
            lcm_row[rc.first] = lcm_row[rc.first] / g * d;
        }
        for (const auto& [rc, v] : m.entries)
            a[rc.first][rc.second] = numerator(v) * (lcm_row[rc.first] / denominator(v));
    }
    const long nr = m.rows, nc = m.cols;
    Int prev = 1;
    long r = 0;
    for (long c = 0; c < nc && r < nr; ++c) {
        long p = -1;
        for (long i = r; i < nr; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        for (long i = r + 1; i < nr; ++i) {
            for (long j = c + 1; j < nc; ++j) {
                Int num = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                Int q = num / prev;
                if (q * prev != num)
                    throw InternalInconsistency("Bareiss division not exact");
                a[i][j] = q;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// dim(space) - dim(sub); throws NotASubspace unless sub is contained in space.
inline long quotient_dim(const Subspace& space, const Subspace& sub) {
    if (space.ambient != sub.ambient) throw NotASubspace("ambient dimensions differ");
    if (!space.contains(sub)) throw NotASubspace("not a subspace");
    return space.dim() - sub.dim();
}

/// Deterministic complement of sub inside space: scan space's echelon basis
/// in order, keep vectors independent modulo sub and the kept set, fully
/// reduce each kept vector against that accumulation, normalize leading +1.
inline Subspace quotient_representatives(const Subspace& space, const Subspace& sub) {
    if (space.ambient != sub.ambient) throw NotASubspace("ambient dimensions differ");
    if (!space.contains(sub)) throw NotASubspace("not a subspace");
    std::vector<Vec> acc = sub.basis;
    std::vector<Vec> reps;
    for (const auto& v : space.basis) {
        std::vector<Vec> trial = acc;
        trial.push_back(v);
        auto piv = detail::rref(trial);
        if (static_cast<long>(piv.size()) == static_cast<long>(acc.size())) continue;
        acc.push_back(v);
        detail::rref(acc);
        // representative: v reduced against sub only, normalized
        Vec r = sub.reduce(v);
        for (long j = 0; j < space.ambient; ++j)
            if (r[j] != 0) {
                Rational inv = Rational(1) / r[j];
                for (auto& x : r) x *= inv;
                break;
            }
        reps.push_back(std::move(r));
    }
    return Subspace::span(std::move(reps), space.ambient);
}

} // namespace opcoh

#endif
