#ifndef OPCOH_COHERENCE_HPP
#define OPCOH_COHERENCE_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "opcoh/linalg.hpp"
#include "opcoh/presentation.hpp"

namespace opcoh {

/// The chain ker pi >= O, D = ker pi / O, C = indecomposables of D.
struct CoherenceReport {
    int arity = 0;
    long dim_ker = 0;
    long dim_O = 0;
    long dim_D = 0;
    long dim_dec = 0;  // decomposable part of D
    long dim_C = 0;
    std::vector<Vec> constraints;           // module coordinates, normalized
    std::vector<std::string> rendered;      // printable constraint elements
};

namespace detail_coh {

// all (slot -> arity) assignments: fixed slots get the given arities, the
// remaining ones run over compositions of what is left with each part >= 1
inline void arity_splits(int total, int slots, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& emit) {
    if (slots == 0) {
        if (total == 0) emit(cur);
        return;
    }
    for (int first = 1; first <= total - (slots - 1); ++first) {
        cur.push_back(first);
        arity_splits(total - first, slots - 1, cur, emit);
        cur.pop_back();
    }
}

} // namespace detail_coh

/// Span of the o' / o'' generators inside F(E)<R>(n): the tautological
/// kernel elements made of one relation substituted through another in the
/// two possible orders. Every generator is checked to lie in ker pi.
inline Subspace obvious_relations(const Presentation& p, int n) {
    const int ra = p.rel_arity();
    const long ambient = static_cast<long>(p.module_basis(n).size());
    if (n < 2 * ra - 1) return Subspace::zero(ambient);

    std::vector<Vec> gens_out;
    auto push_checked = [&](const Elem& e) {
        if (e.empty()) return;
        if (!p.pi_of_elem(e).empty())
            throw InternalInconsistency("obvious relation escapes ker pi");
        gens_out.push_back(p.module_coords(e, n));
    };

    // arity-k argument options: basis monomials; arity 1 is the operad unit,
    // marked by an empty element (pass-through when composing)
    auto arg_options = [&](int k) -> std::vector<Elem> {
        if (k == 1) return {Elem{}};
        std::vector<Elem> opts;
        for (const auto& enc : p.basis_encodings(k)) opts.push_back(p.monomial_elem(enc));
        return opts;
    };

    // compose `head` (element of arity l) with per-slot arguments, right to
    // left so that earlier slot indices stay valid; args[i] empty = unit
    std::function<void(const Elem&, const std::vector<std::vector<Elem>>&, int,
                       const std::function<void(const Elem&)>&)>
        fill = [&](const Elem& head, const std::vector<std::vector<Elem>>& opts, int slot,
                   const std::function<void(const Elem&)>& emit) {
            if (slot == 0) {
                emit(head);
                return;
            }
            for (const auto& arg : opts[slot - 1]) {
                if (arg.empty())
                    fill(head, opts, slot - 1, emit);  // operad unit
                else
                    fill(p.compose_any(head, slot, arg), opts, slot - 1, emit);
            }
        };

    // o' : x(a_1,...,pi(y)@s,...) - pi(x)(a_1,...,y@s,...)
    for (int l = ra; l <= n; ++l) {
        const auto& xs = p.module_encodings(l);
        if (xs.empty()) continue;
        for (int m = ra; m + l - 1 <= n; ++m) {
            const auto& ys = p.module_encodings(m);
            if (ys.empty()) continue;
            int rest = n - m;  // spread over l-1 slots
            if (rest < l - 1) continue;
            for (int s = 1; s <= l; ++s) {
                std::vector<int> cur;
                detail_coh::arity_splits(rest, l - 1, cur, [&](const std::vector<int>& ks) {
                    // ks are the arities of the non-s slots, in slot order
                    std::vector<int> slot_arity(l);
                    {
                        int j = 0;
                        for (int i = 1; i <= l; ++i)
                            slot_arity[i - 1] = (i == s) ? m : ks[j++];
                    }
                    std::vector<std::vector<Elem>> opts(l);
                    for (int i = 1; i <= l; ++i)
                        if (i != s) opts[i - 1] = arg_options(slot_arity[i - 1]);
                    for (const auto& xenc : xs) {
                        Elem x = p.monomial_elem(xenc);
                        Elem pix = p.pi_of_elem(x);
                        for (const auto& yenc : ys) {
                            Elem y = p.monomial_elem(yenc);
                            Elem piy = p.pi_of_elem(y);
                            std::vector<std::vector<Elem>> o1 = opts, o2 = opts;
                            o1[s - 1] = {piy};
                            o2[s - 1] = {y};
                            std::vector<Elem> lhs, rhs;
                            fill(x, o1, l, [&](const Elem& e) { lhs.push_back(e); });
                            fill(pix, o2, l, [&](const Elem& e) { rhs.push_back(e); });
                            // fill enumerates argument tuples in the same
                            // deterministic order on both sides
                            for (size_t k = 0; k < lhs.size(); ++k) {
                                Elem diff = lhs[k];
                                elem_add(diff, rhs[k], Rational(-1));
                                push_checked(diff);
                            }
                        }
                    }
                });
            }
        }
    }

    // o'' : b(...,pi(x)@s,...,y@t,...) - b(...,x@s,...,pi(y)@t,...)
    if (n >= 2 * ra) {
        for (int l = 2; l <= n - 2 * ra + 2; ++l) {
            const auto& bs = p.basis_encodings(l);
            if (bs.empty()) continue;
            for (int m1 = ra; m1 <= n; ++m1) {
                if (p.module_encodings(m1).empty()) continue;
                for (int m2 = ra; m1 + m2 + l - 2 <= n; ++m2) {
                    if (p.module_encodings(m2).empty()) continue;
                    int rest = n - m1 - m2;
                    if (rest < l - 2) continue;
                    for (int s = 1; s <= l; ++s)
                        for (int t = s + 1; t <= l; ++t) {
                            std::vector<int> cur;
                            detail_coh::arity_splits(rest, l - 2, cur, [&](const std::vector<int>& ks) {
                                std::vector<std::vector<Elem>> opts(l);
                                {
                                    int j = 0;
                                    for (int i = 1; i <= l; ++i) {
                                        if (i == s || i == t) continue;
                                        opts[i - 1] = arg_options(ks[j++]);
                                    }
                                }
                                for (const auto& benc : bs) {
                                    Elem b = p.monomial_elem(benc);
                                    for (const auto& xenc : p.module_encodings(m1))
                                        for (const auto& yenc : p.module_encodings(m2)) {
                                            Elem x = p.monomial_elem(xenc);
                                            Elem y = p.monomial_elem(yenc);
                                            Elem pix = p.pi_of_elem(x);
                                            Elem piy = p.pi_of_elem(y);
                                            auto o1 = opts, o2 = opts;
                                            o1[s - 1] = {pix};
                                            o1[t - 1] = {y};
                                            o2[s - 1] = {x};
                                            o2[t - 1] = {piy};
                                            std::vector<Elem> lhs, rhs;
                                            fill(b, o1, l, [&](const Elem& e) { lhs.push_back(e); });
                                            fill(b, o2, l, [&](const Elem& e) { rhs.push_back(e); });
                                            for (size_t k = 0; k < lhs.size(); ++k) {
                                                Elem diff = lhs[k];
                                                elem_add(diff, rhs[k], Rational(-1));
                                                push_checked(diff);
                                            }
                                        }
                                }
                            });
                        }
                }
            }
        }
    }

    return Subspace::span(std::move(gens_out), ambient);
}

/// O-saturated span of all compositions that place a lower-arity D
/// representative inside or around generator monomials; its image modulo
/// O(n) is the decomposable part of D(n).
inline Subspace decomposables_of_D(const Presentation& p, int n,
                                   const std::map<int, Subspace>& lower_D) {
    const int ra = p.rel_arity();
    const long ambient = static_cast<long>(p.module_basis(n).size());
    Subspace O = obvious_relations(p, n);
    std::vector<Vec> vecs = O.basis;

    auto arg_options = [&](int k) -> std::vector<Elem> {
        if (k == 1) return {Elem{}};
        std::vector<Elem> opts;
        for (const auto& enc : p.basis_encodings(k)) opts.push_back(p.monomial_elem(enc));
        return opts;
    };
    std::function<void(const Elem&, const std::vector<std::vector<Elem>>&, int,
                       const std::function<void(const Elem&)>&)>
        fill = [&](const Elem& head, const std::vector<std::vector<Elem>>& opts, int slot,
                   const std::function<void(const Elem&)>& emit) {
            if (slot == 0) {
                emit(head);
                return;
            }
            for (const auto& arg : opts[slot - 1]) {
                if (arg.empty())
                    fill(head, opts, slot - 1, emit);  // operad unit
                else
                    fill(p.compose_any(head, slot, arg), opts, slot - 1, emit);
            }
        };

    for (const auto& [m, D] : lower_D) {
        if (m >= n || D.dim() == 0) continue;
        std::vector<Elem> reps;
        for (const auto& v : D.basis) {
            Elem e;
            const auto& enc = p.module_encodings(m);
            for (size_t i = 0; i < enc.size(); ++i)
                if (v[i] != 0) elem_add(e, enc[i], v[i]);
            reps.push_back(std::move(e));
        }
        // rep(a_1,...,a_m), at least one argument of positive arity
        {
            std::vector<int> cur;
            detail_coh::arity_splits(n, m, cur, [&](const std::vector<int>& ks) {
                std::vector<std::vector<Elem>> opts(m);
                for (int i = 0; i < m; ++i) opts[i] = arg_options(ks[i]);
                for (const auto& rep : reps)
                    fill(rep, opts, m, [&](const Elem& e) {
                        if (!e.empty()) vecs.push_back(p.module_coords(e, n));
                    });
            });
        }
        // b(a_1,...,rep@s,...)
        for (int l = 2; l + m - 1 <= n; ++l) {
            const auto& bs = p.basis_encodings(l);
            if (bs.empty()) continue;
            int rest = n - m;
            if (rest < l - 1) continue;
            for (int s = 1; s <= l; ++s) {
                std::vector<int> cur;
                detail_coh::arity_splits(rest, l - 1, cur, [&](const std::vector<int>& ks) {
                    std::vector<std::vector<Elem>> opts(l);
                    {
                        int j = 0;
                        for (int i = 1; i <= l; ++i)
                            if (i != s) opts[i - 1] = arg_options(ks[j++]);
                    }
                    for (const auto& benc : bs) {
                        Elem b = p.monomial_elem(benc);
                        for (const auto& rep : reps) {
                            auto o = opts;
                            o[s - 1] = {rep};
                            fill(b, o, l, [&](const Elem& e) {
                                if (!e.empty()) vecs.push_back(p.module_coords(e, n));
                            });
                        }
                    }
                });
            }
        }
    }
    return Subspace::span(std::move(vecs), ambient);
}

/// Full coherence computation at arity n (Definition-level: D = ker/O and
/// C = D / decomposables), with lower arities handled recursively.
inline CoherenceReport coherence_constraints(const Presentation& p, int n) {
    const int ra = p.rel_arity();
    std::map<int, Subspace> D_reps;
    for (int m = ra; m < n; ++m) {
        if (p.module_basis(m).empty()) continue;
        Subspace ker_m = kernel(p.pi(m).mat);
        Subspace O_m = obvious_relations(p, m);
        D_reps[m] = quotient_representatives(ker_m, O_m);
    }
    CoherenceReport rep;
    rep.arity = n;
    Subspace ker_n = kernel(p.pi(n).mat);
    Subspace O_n = obvious_relations(p, n);
    Subspace dec = decomposables_of_D(p, n, D_reps);
    rep.dim_ker = ker_n.dim();
    rep.dim_O = O_n.dim();
    rep.dim_D = rep.dim_ker - rep.dim_O;
    rep.dim_dec = dec.dim() - O_n.dim();
    rep.dim_C = rep.dim_D - rep.dim_dec;
    Subspace reps = quotient_representatives(ker_n, dec);
    rep.constraints = reps.basis;
    const auto& labels = p.module_encodings(n);
    for (const auto& v : rep.constraints) rep.rendered.push_back(p.render(v, labels));
    return rep;
}

inline std::string coherence_text(const CoherenceReport& r) {
    std::ostringstream os;
    os << "arity " << r.arity << "\n"
       << "dim ker pi  = " << r.dim_ker << "\n"
       << "dim O       = " << r.dim_O << "\n"
       << "dim D       = " << r.dim_D << "\n"
       << "dim dec(D)  = " << r.dim_dec << "\n"
       << "dim C       = " << r.dim_C << "\n";
    for (size_t i = 0; i < r.rendered.size(); ++i)
        os << "constraint " << i + 1 << ": " << r.rendered[i] << "\n";
    return os.str();
}

} // namespace opcoh

#endif
