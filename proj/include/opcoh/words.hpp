#ifndef OPCOH_WORDS_HPP
#define OPCOH_WORDS_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "opcoh/graphs.hpp"
#include "opcoh/presentation.hpp"

namespace opcoh {

/// Formal invertible coefficient symbol; equality is string equality of
/// (base, decoration), no rewriting is ever applied.
struct CoeffSymbol {
    std::string base;
    std::string decoration;

    bool operator==(const CoeffSymbol&) const = default;
    auto operator<=>(const CoeffSymbol&) const = default;

    std::string display() const { return decoration.empty() ? base : decoration; }
};

/// Freely reducible word over coefficient symbols; factors multiply left to
/// right.
using Word = std::vector<std::pair<CoeffSymbol, int>>;

struct WordEquation {
    Word word;  // freely reduced; the equation is word = 1
    std::string cycle_ref;
};

inline Word reduce_word(const Word& w) {
    Word out;
    for (const auto& f : w) {
        if (f.second == 0) continue;
        if (!out.empty() && out.back().first == f.first &&
            out.back().second == -f.second) {
            out.pop_back();
        } else {
            out.push_back(f);
        }
    }
    return out;
}

inline Word invert_word(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
    return out;
}

inline Word cyclic_reduce(Word w) {
    w = reduce_word(w);
    while (w.size() >= 2 && w.front().first == w.back().first &&
           w.front().second == -w.back().second) {
        w.erase(w.begin());
        w.pop_back();
        w = reduce_word(w);
    }
    return w;
}

/// Equality up to cyclic rotation and global inversion.
inline bool word_equivalent(const Word& a, const Word& b) {
    Word x = cyclic_reduce(a), y = cyclic_reduce(b);
    if (x.size() != y.size()) return false;
    if (x.empty()) return true;
    auto rotations_contain = [&](const Word& target) {
        for (size_t r = 0; r < y.size(); ++r) {
            bool eq = true;
            for (size_t i = 0; i < y.size(); ++i)
                if (y[(r + i) % y.size()] != target[i]) {
                    eq = false;
                    break;
                }
            if (eq) return true;
        }
        return false;
    };
    if (rotations_contain(x)) return true;
    Word xi = invert_word(x);
    return rotations_contain(xi);
}

inline std::string render_word(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const auto& [sym, e] : w) {
        if (!s.empty()) s += " ";
        s += sym.display();
        if (e < 0) s += "^-1";
    }
    return s;
}

/// Two-sided rendering: when the reduced word is (negatives)(positives) up
/// to rotation, print "positives = inverted negatives"; else "word = 1".
inline std::string render_equation(const WordEquation& eq) {
    Word w = cyclic_reduce(eq.word);
    if (w.empty()) return "1 = 1";
    long n = static_cast<long>(w.size());
    for (long r = 0; r < n; ++r) {
        // candidate rotation: starts with the negative block
        long i = 0;
        while (i < n && w[(r + i) % n].second < 0) ++i;
        long j = i;
        while (j < n && w[(r + j) % n].second > 0) ++j;
        if (i > 0 && i < n && j == n) {
            Word neg(i), pos;
            for (long k = 0; k < i; ++k) neg[k] = w[(r + k) % n];
            for (long k = i; k < n; ++k) pos.push_back(w[(r + k) % n]);
            return render_word(pos) + " = " + render_word(invert_word(neg));
        }
    }
    return render_word(w) + " = 1";
}

/// Decorated pi entry: exact scalar (matching the numeric matrix) plus an
/// optional coefficient symbol.
struct DecoratedEntry {
    Rational scalar;
    std::optional<CoeffSymbol> symbol;
};

struct DecoratedPi {
    int arity = 0;
    std::map<std::pair<long, long>, DecoratedEntry> entries;  // (row, col)
};

namespace detail_words {

inline std::string block_op(const Tree& t) {
    if (t.is_leaf()) return "1";
    bool flat = true;
    for (const auto& k : t.kids)
        if (!k.is_leaf()) flat = false;
    if (flat) return "\xce\x94";  // one comultiplication step
    return "\xce\x94*";           // iterated comultiplication (bracketing-dependent)
}

// "(Δ⊗1^2)(Phi)" style, merging runs of 1s
inline std::string tensor_ops(const std::vector<std::string>& ops) {
    std::string s = "(";
    size_t i = 0;
    bool first = true;
    while (i < ops.size()) {
        if (!first) s += "\xe2\x8a\x97";
        if (ops[i] == "1") {
            size_t j = i;
            while (j < ops.size() && ops[j] == "1") ++j;
            s += (j - i > 1) ? "1^" + std::to_string(j - i) : "1";
            i = j;
        } else {
            s += ops[i];
            ++i;
        }
        first = false;
    }
    return s + ")";
}

} // namespace detail_words

/// Decorations of the pi matrix obtained by quantizing each relation term
/// with its declared coefficient symbol: a term's coefficient lives in
/// V^(rel arity) and is pushed to V^n through the comultiplications dictated
/// by the relation vertex's position, exactly like the classical decorated
/// pentagon matrix.
inline DecoratedPi derive_quantized(const Presentation& p, int n) {
    if (p.quantize.empty())
        throw MissingLabel("presentation declares no quantization symbols");
    const PiMatrix& pm = p.pi(n);
    DecoratedPi dp;
    dp.arity = n;
    std::map<std::string, long> cidx;
    for (long j = 0; j < pm.mat.cols; ++j) cidx[pm.mat.col_labels[j]] = j;

    const Symbols& sy = p.symbols();
    for (long i = 0; i < pm.mat.rows; ++i) {
        const Tree& row = pm.row_trees[i];
        // locate the relation vertex and its stated relation
        std::function<const Tree*(const Tree&)> find_rel = [&](const Tree& t) -> const Tree* {
            if (t.is_rel()) return &t;
            for (const auto& k : t.kids)
                if (const Tree* r = find_rel(k)) return r;
            return nullptr;
        };
        const Tree* rel = find_rel(row);
        int ri = rel->rel_index();
        if (ri >= static_cast<int>(p.stated.size()))
            throw MissingLabel("quantized words need stated-relation rows");
        const auto& stated = p.stated[ri];
        auto qit = p.quantize.find(stated.label);
        if (qit == p.quantize.end())
            throw MissingLabel("no quantization for relation " + stated.label);
        const auto& symbases = qit->second;

        // decoration context: block operators (relation at the root of its
        // subtree) and the leaf counts left/right of the relation vertex
        std::vector<std::string> ops;
        for (const auto& k : rel->kids) ops.push_back(detail_words::block_op(k));
        bool at_root = row.is_rel();
        int left_leaves = 0, right_leaves = 0;
        if (!at_root) {
            std::vector<int> all, relset;
            collect_leaves(row, all);
            collect_leaves(*rel, relset);
            std::set<int> rs(relset.begin(), relset.end());
            int before = 0;
            for (size_t k = 0; k < all.size(); ++k)
                if (rs.count(all[k])) {
                    before = static_cast<int>(k);
                    break;
                }
            left_leaves = before;
            right_leaves = static_cast<int>(all.size() - relset.size()) - before;
        }

        for (size_t k = 0; k < stated.terms.size(); ++k) {
            const auto& [coeff, menc] = stated.terms[k];
            // column and exact scalar of this term's image
            Tree pattern = parse_tree(menc, sy);
            Elem img = p.substitute_relation_term(row, pattern, coeff);
            if (img.size() != 1)
                throw InternalInconsistency("quantized term image is not a monomial");
            const auto& [cenc, cval] = *img.begin();
            long col = cidx.at(cenc);
            DecoratedEntry de;
            de.scalar = cval;
            if (symbases[k] != "1") {
                CoeffSymbol cs;
                cs.base = symbases[k];
                if (at_root) {
                    cs.decoration = detail_words::tensor_ops(ops) + "(" + cs.base + ")";
                } else {
                    std::vector<std::string> pos_ops;
                    for (int t = 0; t < left_leaves; ++t) pos_ops.push_back("1");
                    pos_ops.push_back(cs.base);
                    for (int t = 0; t < right_leaves; ++t) pos_ops.push_back("1");
                    cs.decoration = detail_words::tensor_ops(pos_ops);
                }
                de.symbol = cs;
            }
            auto key = std::make_pair(i, col);
            if (dp.entries.count(key))
                throw InternalInconsistency("two relation terms share a column");
            if (pm.mat.at(i, col) == 0)
                throw InternalInconsistency("decorated entry missing from pi");
            dp.entries[key] = de;
        }
    }
    return dp;
}

/// A Tel-A-graph whose edges carry forward-traversal factor words (a single
/// symbol for hand-labeled graphs; up to two for derived quantizations).
struct DecoratedGraph {
    const TelAGraph* g = nullptr;
    const Orientation* o = nullptr;
    std::vector<Word> forward;  // factor when traversing tail -> head
};

/// Spec operation: label every edge with one coefficient symbol; traversing
/// an edge forward contributes the symbol, backward its inverse.
inline DecoratedGraph decorate(const TelAGraph& g, const Orientation& o,
                               const std::map<std::string, CoeffSymbol>& labels) {
    DecoratedGraph dg;
    dg.g = &g;
    dg.o = &o;
    for (const auto& e : g.edges) {
        auto it = labels.find(e.label);
        if (it == labels.end()) throw MissingLabel("edge '" + e.label + "' has no label");
        dg.forward.push_back({{it->second, +1}});
    }
    return dg;
}

/// Derived decoration: edge factors read off the quantized pi matrix. For
/// the graphlike kind the consistency relation along an edge r traversed
/// tail->head is head_entry * tail_entry^-1; for the dual kind it is
/// head_entry^-1 * tail_entry (scalars drop out of the free-group word).
inline DecoratedGraph decorate_derived(const TelAGraph& g, const Orientation& o,
                                       const DecoratedPi& dp) {
    DecoratedGraph dg;
    dg.g = &g;
    dg.o = &o;
    for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        long tail = o.tail(g, e), head = o.head(g, e);
        auto entry = [&](long vtx) -> const DecoratedEntry& {
            std::pair<long, long> key = g.kind == TelAGraph::Kind::Graphlike
                                            ? std::make_pair(e, vtx)
                                            : std::make_pair(vtx, e);
            auto it = dp.entries.find(key);
            if (it == dp.entries.end())
                throw MissingLabel("no decorated entry for edge " + ed.label);
            return it->second;
        };
        const DecoratedEntry& te = entry(tail);
        const DecoratedEntry& he = entry(head);
        Word w;
        if (g.kind == TelAGraph::Kind::Graphlike) {
            if (he.symbol) w.emplace_back(*he.symbol, +1);
            if (te.symbol) w.emplace_back(*te.symbol, -1);
        } else {
            if (he.symbol) w.emplace_back(*he.symbol, -1);
            if (te.symbol) w.emplace_back(*te.symbol, +1);
        }
        dg.forward.push_back(reduce_word(w));
    }
    return dg;
}

/// One freely-reduced equation per cycle: the factors of the traversed
/// edges composed in reverse traversal order (the product that fixes the
/// unknown attached to the starting point), set equal to 1.
inline std::vector<WordEquation> derive_equations(const DecoratedGraph& dg,
                                                  const std::vector<Cycle>& cycles) {
    std::vector<WordEquation> out;
    for (const auto& c : cycles) {
        Word w;
        for (size_t k = c.edges.size(); k > 0; --k) {
            long e = c.edges[k - 1];
            bool along = (c.dirs[k - 1] > 0) == (dg.o->from_u[e] != 0);
            const Word& f = dg.forward[e];
            if (along)
                w.insert(w.end(), f.begin(), f.end());
            else {
                Word inv = invert_word(f);
                w.insert(w.end(), inv.begin(), inv.end());
            }
        }
        WordEquation eq;
        eq.word = reduce_word(w);
        eq.cycle_ref = dg.g->vertex_labels[c.verts[0]];
        out.push_back(std::move(eq));
    }
    return out;
}

inline std::vector<WordEquation> derive_equations(const DecoratedGraph& dg) {
    return derive_equations(dg, cycle_basis_any(*dg.g));
}

} // namespace opcoh

#endif
