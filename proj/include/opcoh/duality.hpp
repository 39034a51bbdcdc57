#ifndef OPCOH_DUALITY_HPP
#define OPCOH_DUALITY_HPP

#include <sstream>
#include <string>
#include <vector>

#include "opcoh/coherence.hpp"
#include "opcoh/presentation.hpp"

namespace opcoh {

/// Dimension sequence indexed by arity, dims[0] = dim P(1) = 1.
struct DimSeries {
    std::vector<long> dims;
    Mode mode = Mode::NonSigma;

    static DimSeries of(const Presentation& p, int N) {
        DimSeries s;
        s.mode = p.mode;
        s.dims.push_back(1);
        for (long d : p.operad_dims(N)) s.dims.push_back(d);
        return s;
    }
};

namespace detail_dual {

// left-comb normal form of an arity-3 monomial: a(b(x,y),z) with sign from
// generator symmetry when the root's children must be swapped
struct LeftComb {
    int root_gen = 0;
    int inner_gen = 0;
    int word[3] = {0, 0, 0};
    int sign = 1;
    bool is_right_shape = false;  // nonsigma only: a(x,b(y,z)) kept as-is
};

inline LeftComb left_comb(const Tree& t, const std::vector<GeneratorSymbol>& gens, Mode mode) {
    LeftComb lc;
    lc.root_gen = t.sym;
    const Tree &k0 = t.kids[0], &k1 = t.kids[1];
    if (!k0.is_leaf()) {
        lc.inner_gen = k0.sym;
        lc.word[0] = k0.kids[0].leaf;
        lc.word[1] = k0.kids[1].leaf;
        lc.word[2] = k1.leaf;
    } else {
        // a(x, b(y,z))
        if (mode == Mode::NonSigma) {
            lc.is_right_shape = true;
            lc.inner_gen = k1.sym;
            lc.word[0] = k0.leaf;
            lc.word[1] = k1.kids[0].leaf;
            lc.word[2] = k1.kids[1].leaf;
        } else {
            const GeneratorSymbol& g = gens[t.sym];
            if (g.symmetry == Symmetry::None)
                throw NotQuadratic("symmetric quadratic dual needs declared binary symmetries");
            lc.inner_gen = k1.sym;
            lc.sign = g.symmetry == Symmetry::Sign ? -1 : 1;
            lc.word[0] = k1.kids[0].leaf;
            lc.word[1] = k1.kids[1].leaf;
            lc.word[2] = k0.leaf;
        }
    }
    return lc;
}

inline int perm_sign3(const int w[3]) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (w[i] > w[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

} // namespace detail_dual

/// Quadratic dual presentation: dual generators (sgn-twisted symmetry in the
/// symmetric case) with relation space the annihilator of R under the
/// arity-3 pairing. Nonsigma pairing: +1 on matching left combs, -1 on
/// matching right combs; symmetric pairing: rewrite to left combs through
/// the generator symmetry and weight by the sign of the leaf word.
inline Presentation quadratic_dual(const Presentation& p) {
    for (const auto& g : p.gens) {
        if (g.arity != 2 || g.degree != 0)
            throw NotQuadratic("quadratic dual needs binary degree-0 generators");
        if (p.mode == Mode::Symmetric && g.symmetry == Symmetry::None)
            throw NotQuadratic("symmetric quadratic dual needs declared binary symmetries");
    }
    if (p.rel_arity() != 3) throw NotQuadratic("quadratic dual needs ternary relations");

    std::vector<GeneratorSymbol> dual_gens;
    for (const auto& g : p.gens) {
        GeneratorSymbol d = g;
        d.name = g.name + "!";
        if (p.mode == Mode::Symmetric)
            d.symmetry = g.symmetry == Symmetry::Sign ? Symmetry::Trivial : Symmetry::Sign;
        dual_gens.push_back(d);
    }
    Symbols mine, dual;
    mine.gens = p.gens;
    dual.gens = dual_gens;

    auto b_mine = enumerate_basis(mine, 3, p.mode);
    auto b_dual = enumerate_basis(dual, 3, p.mode);
    const long fm = static_cast<long>(b_mine.size());
    const long fd = static_cast<long>(b_dual.size());

    // pairing matrix
    std::vector<Vec> P(fm, Vec(fd, Rational(0)));
    for (long i = 0; i < fm; ++i) {
        auto a = detail_dual::left_comb(b_mine[i], p.gens, p.mode);
        for (long j = 0; j < fd; ++j) {
            auto b = detail_dual::left_comb(b_dual[j], dual_gens, p.mode);
            if (a.root_gen != b.root_gen || a.inner_gen != b.inner_gen) continue;
            if (a.word[0] != b.word[0] || a.word[1] != b.word[1] || a.word[2] != b.word[2])
                continue;
            if (p.mode == Mode::NonSigma) {
                if (a.is_right_shape != b.is_right_shape) continue;
                P[i][j] = a.is_right_shape ? Rational(-1) : Rational(1);
            } else {
                P[i][j] = Rational(a.sign * b.sign * detail_dual::perm_sign3(a.word));
            }
        }
    }

    // relation coordinates over b_mine
    std::map<std::string, long> bidx;
    for (long i = 0; i < fm; ++i) bidx[encode(b_mine[i], mine)] = i;
    const auto& rbasis = p.relation_basis();
    const long d = static_cast<long>(rbasis.size());
    // (Rel * P)^T : columns indexed by relations, rows by dual monomials
    SparseMatrix rpt(fd, d);
    for (long k = 0; k < d; ++k) {
        Vec rel(fm, Rational(0));
        for (const auto& [m, c] : rbasis[k]) rel[bidx.at(m)] = c;
        for (long j = 0; j < fd; ++j) {
            Rational v(0);
            for (long i = 0; i < fm; ++i) v += rel[i] * P[i][j];
            if (v != 0) rpt.set(j, k, v);
        }
    }
    Subspace rperp = kernel(rpt);

    // build the dual presentation text and parse it (reuses all validation)
    std::ostringstream os;
    os << "operad " << p.name << "!\n";
    os << "mode " << (p.mode == Mode::NonSigma ? "nonsigma" : "symmetric") << "\n";
    for (const auto& g : dual_gens) {
        os << "gen " << g.name << " arity 2";
        if (g.symmetry == Symmetry::Sign) os << " sym anti";
        if (g.symmetry == Symmetry::Trivial) os << " sym comm";
        os << "\n";
    }
    std::vector<std::string> denc;
    for (const auto& t : b_dual) denc.push_back(encode(t, dual));
    long idx = 0;
    for (const auto& v : rperp.basis) {
        os << "rel d" << ++idx << " :";
        bool first = true;
        for (long j = 0; j < fd; ++j) {
            if (v[j] == 0) continue;
            Rational c = v[j];
            std::string sgn = c < 0 ? "- " : (first ? "" : "+ ");
            Rational a = c < 0 ? -c : c;
            os << " " << sgn;
            if (a != 1) os << to_string(a) << "*";
            os << denc[j];
            first = false;
        }
        os << "\n";
    }
    return Presentation::parse(os.str());
}

/// dim C for a Koszul quadratic operad from dim P(2..4); symmetric variant
/// uses the bracket [3 p2^2 - 2 p3].
inline long cp_formula(long p2, long p3, long p4, Mode mode) {
    if (mode == Mode::NonSigma) return p4 + 5 * p2 * (p2 * p2 - p3);
    return p4 + 5 * p2 * (3 * p2 * p2 - 2 * p3);
}

/// Coefficients of g_a(-g_b(-x)) - x through degree N; all zero means the
/// dimension data is consistent with Koszulness.
inline std::vector<Rational> koszul_gf_check(const DimSeries& a, const DimSeries& b, int N) {
    if (a.mode != b.mode) throw Error("gf check: mixed modes");
    auto coeff = [&](const DimSeries& s, int n) -> Rational {
        if (n < 1 || n > static_cast<int>(s.dims.size())) return Rational(0);
        Rational c(s.dims[n - 1]);
        if (s.mode == Mode::Symmetric) {
            Int f = 1;
            for (int i = 2; i <= n; ++i) f *= i;
            c /= Rational(f);
        }
        return c;
    };
    // u = -g_b(-x)
    std::vector<Rational> u(N + 1, Rational(0));
    for (int n = 1; n <= N; ++n) u[n] = coeff(b, n) * (n % 2 ? 1 : -1);
    // res = g_a(u) - x
    std::vector<Rational> res(N + 1, Rational(0));
    std::vector<Rational> upow(N + 1, Rational(0));
    upow[0] = 1;
    for (int k = 1; k <= N; ++k) {
        std::vector<Rational> nxt(N + 1, Rational(0));
        for (int i = 0; i <= N; ++i) {
            if (upow[i] == 0) continue;
            for (int j = 1; i + j <= N; ++j) nxt[i + j] += upow[i] * u[j];
        }
        upow = std::move(nxt);
        Rational ga = coeff(a, k);
        if (ga == 0) continue;
        for (int n = 0; n <= N; ++n) res[n] += ga * upow[n];
    }
    res[1] -= 1;
    return {res.begin() + 1, res.end()};
}

struct TheoremMainResult {
    bool ok = false;
    long dim_C4 = 0;
    long dim_dual4 = 0;
};

/// dim C_P(4) (coherence module) vs dim P!(4) (via the quadratic dual).
inline TheoremMainResult theorem_main_check(const Presentation& p) {
    TheoremMainResult r;
    r.dim_C4 = coherence_constraints(p, 4).dim_C;
    Presentation d = quadratic_dual(p);
    r.dim_dual4 = d.operad_dims(4).back();
    r.ok = r.dim_C4 == r.dim_dual4;
    return r;
}

inline std::string duality_report(const Presentation& p, int N = 4) {
    Presentation d = quadratic_dual(p);
    std::ostringstream os;
    os << "dual generators:";
    for (const auto& g : d.gens) {
        os << " " << g.name;
        if (g.symmetry == Symmetry::Sign) os << "(anti)";
        if (g.symmetry == Symmetry::Trivial) os << "(comm)";
    }
    os << "\n";
    long dimR = p.relation_dim();
    long dimF3 = static_cast<long>(p.basis(3).size());
    os << "dim R = " << dimR << ", dim R-perp = " << d.relation_dim()
       << ", dim F(E)(3) = " << dimF3 << "\n";
    os << "dual relations:\n";
    for (const auto& r : d.stated) {
        os << "  " << r.label << " :";
        bool first = true;
        for (const auto& [c, m] : r.terms) {
            os << " " << (c < 0 ? "- " : (first ? "" : "+ "));
            Rational a = c < 0 ? Rational(-c) : c;
            if (a != 1) os << to_string(a) << "*";
            os << m;
            first = false;
        }
        os << "\n";
    }
    auto pd = p.operad_dims(N);
    auto dd = d.operad_dims(N);
    os << "dims  P(2.." << N << ") =";
    for (long x : pd) os << " " << x;
    os << "\ndims  P!(2.." << N << ") =";
    for (long x : dd) os << " " << x;
    os << "\n";
    long cp = cp_formula(pd[0], pd[1], pd[2], p.mode);
    auto tm = theorem_main_check(p);
    os << "dim C by formula = " << cp << "\n";
    os << "dim C(4) = " << tm.dim_C4 << ", dim P!(4) = " << tm.dim_dual4 << " -> "
       << (tm.ok ? "match" : "MISMATCH") << "\n";
    auto res = koszul_gf_check(DimSeries::of(p, N), DimSeries::of(d, N), N);
    bool zero = std::all_of(res.begin(), res.end(), [](const Rational& c) { return c == 0; });
    os << "g_P(-g_P!(-x)) - x residual through degree " << N << ":";
    for (const auto& c : res) os << " " << to_string(c);
    os << (zero ? "  (consistent with Koszulness)" : "  (INCONSISTENT)") << "\n";
    return os.str();
}

} // namespace opcoh

#endif
