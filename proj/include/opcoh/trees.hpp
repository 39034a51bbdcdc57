#ifndef OPCOH_TREES_HPP
#define OPCOH_TREES_HPP

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "opcoh/errors.hpp"
#include "opcoh/rational.hpp"

namespace opcoh {

enum class Mode { NonSigma, Symmetric };

enum class Symmetry { None, Trivial, Sign };

struct GeneratorSymbol {
    std::string name;
    int arity = 2;
    int degree = 0;
    Symmetry symmetry = Symmetry::None;

    bool operator==(const GeneratorSymbol&) const = default;
};

/// A vertex symbol for the relation-labeled vertex of module monomials.
struct RelSymbol {
    std::string name;
    int arity = 3;
    int degree = 0;
};

/// Symbol table shared by tree monomials: generator vertices plus (for
/// module monomials) relation-labeled vertices.
struct Symbols {
    std::vector<GeneratorSymbol> gens;
    std::vector<RelSymbol> rels;

    int gen_index(const std::string& name) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return static_cast<int>(i);
        return -1;
    }
    int rel_index(const std::string& name) const {
        for (size_t i = 0; i < rels.size(); ++i)
            if (rels[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

/// Planar rooted tree. sym >= 0: generator index; sym == kLeaf: leaf with
/// label `leaf`; sym <= kRelBase: relation vertex with index rel_index(sym).
struct Tree {
    static constexpr int kLeaf = -1;
    static constexpr int kRelBase = -2;

    int sym = kLeaf;
    int leaf = 0;
    std::vector<Tree> kids;

    static Tree make_leaf(int label) {
        Tree t;
        t.leaf = label;
        return t;
    }
    static Tree make_gen(int gen, std::vector<Tree> kids) {
        Tree t;
        t.sym = gen;
        t.kids = std::move(kids);
        return t;
    }
    static Tree make_rel(int rel, std::vector<Tree> kids) {
        Tree t;
        t.sym = kRelBase - rel;
        t.kids = std::move(kids);
        return t;
    }

    bool is_leaf() const { return sym == kLeaf; }
    bool is_rel() const { return sym <= kRelBase; }
    int rel_index() const { return kRelBase - sym; }

    bool operator==(const Tree& o) const {
        return sym == o.sym && leaf == o.leaf && kids == o.kids;
    }
};

inline int leaf_count(const Tree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (const auto& k : t.kids) n += leaf_count(k);
    return n;
}

inline int min_leaf(const Tree& t) {
    if (t.is_leaf()) return t.leaf;
    int m = 0;
    bool first = true;
    for (const auto& k : t.kids) {
        int v = min_leaf(k);
        if (first || v < m) m = v, first = false;
    }
    return m;
}

inline bool contains_rel(const Tree& t) {
    if (t.is_rel()) return true;
    for (const auto& k : t.kids)
        if (contains_rel(k)) return true;
    return false;
}

inline void collect_leaves(const Tree& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.leaf);
        return;
    }
    for (const auto& k : t.kids) collect_leaves(k, out);
}

inline int tree_degree(const Tree& t, const Symbols& sy) {
    if (t.is_leaf()) return 0;
    int d = t.is_rel() ? sy.rels[t.rel_index()].degree : sy.gens[t.sym].degree;
    for (const auto& k : t.kids) d += tree_degree(k, sy);
    return d;
}

/// Canonical string encoding "name(child,child,...)" with leaves printed as
/// integers; basis order is lexicographic on this encoding.
inline std::string encode(const Tree& t, const Symbols& sy) {
    if (t.is_leaf()) return std::to_string(t.leaf);
    std::string s = t.is_rel() ? sy.rels[t.rel_index()].name : sy.gens[t.sym].name;
    s += "(";
    for (size_t i = 0; i < t.kids.size(); ++i) {
        if (i) s += ",";
        s += encode(t.kids[i], sy);
    }
    s += ")";
    return s;
}

/// Parses the canonical encoding (and relation files' monomial syntax).
inline Tree parse_tree(const std::string& s, const Symbols& sy) {
    size_t pos = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw Error("monomial parse error at '" + s.substr(pos) + "': " + msg);
    };
    auto skip_ws = [&] {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    };
    std::function<Tree()> rec = [&]() -> Tree {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            int v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = v * 10 + (s[pos++] - '0');
            return Tree::make_leaf(v);
        }
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_' || s[pos] == '!' || s[pos] == '~' || s[pos] == '.'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name.empty()) fail("expected symbol name");
        skip_ws();
        if (pos >= s.size() || s[pos] != '(') fail("expected '(' after " + name);
        ++pos;
        std::vector<Tree> kids;
        while (true) {
            kids.push_back(rec());
            skip_ws();
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < s.size() && s[pos] == ')') {
                ++pos;
                break;
            }
            fail("expected ',' or ')'");
        }
        int g = sy.gen_index(name);
        if (g >= 0) {
            if (static_cast<int>(kids.size()) != sy.gens[g].arity)
                fail(name + " expects " + std::to_string(sy.gens[g].arity) + " arguments");
            return Tree::make_gen(g, std::move(kids));
        }
        int r = sy.rel_index(name);
        if (r >= 0) {
            if (static_cast<int>(kids.size()) != sy.rels[r].arity)
                fail(name + " expects " + std::to_string(sy.rels[r].arity) + " arguments");
            return Tree::make_rel(r, std::move(kids));
        }
        fail("unknown symbol '" + name + "'");
        return Tree{};
    };
    Tree t = rec();
    skip_ws();
    if (pos != s.size()) fail("trailing input");
    return t;
}

/// Canonical form under the declared generator symmetries: at every
/// symmetric binary vertex the child containing the smallest leaf comes
/// first; the returned sign is (-1)^(#swaps at sign-symmetric vertices).
/// Relation vertices are left untouched (opaque at this level).
inline std::pair<Tree, int> canonicalize(Tree t, const Symbols& sy) {
    if (t.is_leaf()) return {t, 1};
    int sign = 1;
    for (auto& k : t.kids) {
        auto [ck, s] = canonicalize(std::move(k), sy);
        k = std::move(ck);
        sign *= s;
    }
    if (!t.is_rel()) {
        const GeneratorSymbol& g = sy.gens[t.sym];
        if (g.arity == 2 && g.symmetry != Symmetry::None) {
            if (min_leaf(t.kids[0]) > min_leaf(t.kids[1])) {
                std::swap(t.kids[0], t.kids[1]);
                if (g.symmetry == Symmetry::Sign) sign = -sign;
            }
        }
    }
    return {std::move(t), sign};
}

namespace detail {

inline int path_left_degree(const Tree& t, int leaf, const Symbols& sy, bool& found) {
    if (t.is_leaf()) {
        found = (t.leaf == leaf);
        return 0;
    }
    int acc = 0;
    for (const auto& k : t.kids) {
        bool f = false;
        int d = path_left_degree(k, leaf, sy, f);
        if (f) {
            found = true;
            return acc + d;
        }
        acc += tree_degree(k, sy);
    }
    found = false;
    return 0;
}

inline Tree graft(const Tree& t, int slot, const Tree& inner_shifted, int inner_arity) {
    if (t.is_leaf()) {
        if (t.leaf == slot) return inner_shifted;
        if (t.leaf > slot) return Tree::make_leaf(t.leaf + inner_arity - 1);
        return t;
    }
    Tree out = t;
    for (auto& k : out.kids) k = graft(k, slot, inner_shifted, inner_arity);
    return out;
}

inline Tree shift_leaves(const Tree& t, int delta) {
    if (t.is_leaf()) return Tree::make_leaf(t.leaf + delta);
    Tree out = t;
    for (auto& k : out.kids) k = shift_leaves(k, delta);
    return out;
}

} // namespace detail

/// Operadic partial composition outer o_slot inner. The scalar is the
/// generator-symmetry sign from re-canonicalization times the Koszul sign
/// (-1)^(deg(inner) * total degree strictly left of the path to the slot).
inline std::pair<Tree, Rational> compose(const Tree& outer, int slot, const Tree& inner,
                                         const Symbols& sy) {
    int n_out = leaf_count(outer);
    if (slot < 1 || slot > n_out) throw SlotOutOfRange("slot " + std::to_string(slot));
    int m = leaf_count(inner);
    bool found = false;
    int left_deg = detail::path_left_degree(outer, slot, sy, found);
    if (!found) throw SlotOutOfRange("outer tree has no leaf " + std::to_string(slot));
    int di = tree_degree(inner, sy);
    int koszul = (di % 2 != 0 && left_deg % 2 != 0) ? -1 : 1;
    Tree inner_shifted = detail::shift_leaves(inner, slot - 1);
    Tree grafted = detail::graft(outer, slot, inner_shifted, m);
    auto [canon, sign] = canonicalize(std::move(grafted), sy);
    return {std::move(canon), Rational(koszul * sign)};
}

/// Leaf relabeling l -> perm[l-1]; perm is a permutation of 1..n.
inline Tree relabel(const Tree& t, const std::vector<int>& perm) {
    if (t.is_leaf()) return Tree::make_leaf(perm[t.leaf - 1]);
    Tree out = t;
    for (auto& k : out.kids) k = relabel(k, perm);
    return out;
}

namespace detail {

inline void ordered_compositions(int total, int parts, std::vector<int>& cur,
                                 const std::function<void(const std::vector<int>&)>& emit) {
    if (parts == 1) {
        cur.push_back(total);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int first = 1; first <= total - parts + 1; ++first) {
        cur.push_back(first);
        ordered_compositions(total - first, parts - 1, cur, emit);
        cur.pop_back();
    }
}

// all ways to split `pool` (sorted) into `parts` nonempty ordered blocks
inline void ordered_set_partitions(const std::vector<int>& pool, int parts,
                                   std::vector<std::vector<int>>& cur,
                                   const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    if (parts == 1) {
        if (pool.empty()) return;
        cur.push_back(pool);
        emit(cur);
        cur.pop_back();
        return;
    }
    int n = static_cast<int>(pool.size());
    // choose a nonempty proper subset for the first block
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> first, rest;
        for (int i = 0; i < n; ++i)
            ((mask >> i) & 1u ? first : rest).push_back(pool[i]);
        if (static_cast<int>(rest.size()) < parts - 1) continue;
        cur.push_back(first);
        ordered_set_partitions(rest, parts - 1, cur, emit);
        cur.pop_back();
    }
}

struct Enumerator {
    const Symbols& sy;
    Mode mode;

    // non-sigma: trees on the leaf range [lo, hi]
    std::vector<Tree> ns(int lo, int hi, bool need_rel) const {
        int cnt = hi - lo + 1;
        std::vector<Tree> out;
        if (cnt == 1) {
            if (!need_rel) out.push_back(Tree::make_leaf(lo));
            return out;
        }
        auto heads = head_list(need_rel, cnt);
        for (const auto& [sym, ar, isrel] : heads) {
            std::vector<int> comp;
            ordered_compositions(cnt, ar, comp, [&](const std::vector<int>& c) {
                std::vector<std::pair<int, int>> ranges;
                int start = lo;
                for (int w : c) {
                    ranges.emplace_back(start, start + w - 1);
                    start += w;
                }
                if (isrel) {
                    emit_products(ranges, -1, sym, true, out);
                } else if (!need_rel) {
                    emit_products(ranges, -1, sym, false, out);
                } else {
                    for (size_t which = 0; which < ranges.size(); ++which)
                        emit_products(ranges, static_cast<int>(which), sym, false, out);
                }
            });
        }
        return out;
    }

    // symmetric: trees on an arbitrary sorted leaf set
    std::vector<Tree> sym_set(const std::vector<int>& pool, bool need_rel) const {
        std::vector<Tree> out;
        if (pool.size() == 1) {
            if (!need_rel) out.push_back(Tree::make_leaf(pool[0]));
            return out;
        }
        int cnt = static_cast<int>(pool.size());
        auto heads = head_list(need_rel, cnt);
        for (const auto& [sym, ar, isrel] : heads) {
            if (isrel) {
                // relation vertex: unordered blocks, canonically sorted by min
                unordered_blocks(pool, ar, [&](std::vector<std::vector<int>> blocks) {
                    std::vector<std::vector<Tree>> opts;
                    for (auto& b : blocks) opts.push_back(sym_set(b, false));
                    cartesian(opts, [&](std::vector<Tree> kids) {
                        out.push_back(Tree::make_rel(Tree::kRelBase - sym, std::move(kids)));
                    });
                });
                continue;
            }
            const GeneratorSymbol& g = sy.gens[sym];
            if (g.arity == 2 && g.symmetry != Symmetry::None) {
                // canonical split: the block holding min(pool) comes first
                std::vector<int> rest(pool.begin() + 1, pool.end());
                int n_rest = static_cast<int>(rest.size());
                for (unsigned mask = 0; mask + 1 < (1u << n_rest); ++mask) {
                    std::vector<int> s1 = {pool[0]}, s2;
                    for (int i = 0; i < n_rest; ++i)
                        ((mask >> i) & 1u ? s1 : s2).push_back(rest[i]);
                    for (int rel_in = 0; rel_in < (need_rel ? 2 : 1); ++rel_in) {
                        bool r1 = need_rel && rel_in == 0;
                        bool r2 = need_rel && rel_in == 1;
                        auto o1 = sym_set(s1, r1);
                        auto o2 = sym_set(s2, r2);
                        for (const auto& a : o1)
                            for (const auto& b : o2)
                                out.push_back(Tree::make_gen(sym, {a, b}));
                    }
                }
            } else {
                // no declared symmetry: ordered blocks
                std::vector<std::vector<int>> cur;
                ordered_set_partitions(pool, ar, cur, [&](const std::vector<std::vector<int>>& blocks) {
                    int nb = static_cast<int>(blocks.size());
                    int lim = need_rel ? nb : 1;
                    for (int which = 0; which < lim; ++which) {
                        std::vector<std::vector<Tree>> opts;
                        bool ok = true;
                        for (int i = 0; i < nb; ++i) {
                            auto o = sym_set(blocks[i], need_rel && i == which);
                            if (o.empty() && !(blocks[i].size() == 1 && !(need_rel && i == which))) {
                                // empty option list kills this branch
                            }
                            if (o.empty()) {
                                ok = false;
                                break;
                            }
                            opts.push_back(std::move(o));
                        }
                        if (!ok) continue;
                        cartesian(opts, [&](std::vector<Tree> kids) {
                            out.push_back(Tree::make_gen(sym, std::move(kids)));
                        });
                    }
                });
            }
        }
        return out;
    }

private:
    std::vector<std::tuple<int, int, bool>> head_list(bool allow_rel, int cnt) const {
        std::vector<std::tuple<int, int, bool>> heads;
        for (size_t i = 0; i < sy.gens.size(); ++i)
            if (sy.gens[i].arity >= 2 && sy.gens[i].arity <= cnt)
                heads.emplace_back(static_cast<int>(i), sy.gens[i].arity, false);
        if (allow_rel)
            for (size_t i = 0; i < sy.rels.size(); ++i)
                if (sy.rels[i].arity <= cnt)
                    heads.emplace_back(Tree::kRelBase - static_cast<int>(i), sy.rels[i].arity, true);
        return heads;
    }

    void emit_products(const std::vector<std::pair<int, int>>& ranges, int rel_at, int sym,
                       bool head_is_rel, std::vector<Tree>& out) const {
        std::vector<std::vector<Tree>> opts;
        for (size_t i = 0; i < ranges.size(); ++i) {
            auto o = ns(ranges[i].first, ranges[i].second,
                        rel_at >= 0 && static_cast<int>(i) == rel_at);
            if (o.empty()) return;
            opts.push_back(std::move(o));
        }
        cartesian(opts, [&](std::vector<Tree> kids) {
            if (head_is_rel)
                out.push_back(Tree::make_rel(Tree::kRelBase - sym, std::move(kids)));
            else
                out.push_back(Tree::make_gen(sym, std::move(kids)));
        });
    }

    static void cartesian(const std::vector<std::vector<Tree>>& opts,
                          const std::function<void(std::vector<Tree>)>& emit) {
        std::vector<size_t> idx(opts.size(), 0);
        while (true) {
            std::vector<Tree> kids;
            kids.reserve(opts.size());
            for (size_t i = 0; i < opts.size(); ++i) kids.push_back(opts[i][idx[i]]);
            emit(std::move(kids));
            size_t i = opts.size();
            while (i > 0) {
                --i;
                if (++idx[i] < opts[i].size()) break;
                idx[i] = 0;
                if (i == 0) return;
            }
        }
    }

    // unordered partitions of pool into `parts` blocks, emitted with blocks
    // sorted by their minimum element (the canonical relation-slot order)
    void unordered_blocks(const std::vector<int>& pool, int parts,
                          const std::function<void(std::vector<std::vector<int>>)>& emit) const {
        std::vector<std::vector<int>> blocks;
        std::function<void(std::vector<int>)> rec = [&](std::vector<int> rest) {
            if (static_cast<int>(blocks.size()) == parts) {
                if (rest.empty()) {
                    auto sorted = blocks;
                    std::sort(sorted.begin(), sorted.end(),
                              [](const auto& a, const auto& b) { return a[0] < b[0]; });
                    emit(std::move(sorted));
                }
                return;
            }
            if (rest.empty()) return;
            // first block always contains rest[0] (kills duplicate orderings)
            int n_rest = static_cast<int>(rest.size());
            std::vector<int> tail(rest.begin() + 1, rest.end());
            int nt = n_rest - 1;
            for (unsigned mask = 0; mask < (1u << nt); ++mask) {
                std::vector<int> blk = {rest[0]}, rem;
                for (int i = 0; i < nt; ++i)
                    ((mask >> i) & 1u ? blk : rem).push_back(tail[i]);
                if (static_cast<int>(rem.size()) < parts - static_cast<int>(blocks.size()) - 1)
                    continue;
                blocks.push_back(blk);
                rec(rem);
                blocks.pop_back();
            }
        };
        rec(pool);
    }
};

} // namespace detail

/// Complete canonical basis of F(E)(n), ordered by canonical encoding.
/// Throws UnsupportedArity when a generator of arity >= 3 declares a
/// nontrivial binary symmetry.
inline std::vector<Tree> enumerate_basis(const Symbols& sy, int n, Mode mode) {
    if (n < 1) throw Error("arity must be >= 1");
    for (const auto& g : sy.gens) {
        if (g.arity < 2) throw UnsupportedArity("generator arity must be >= 2");
        if (g.symmetry != Symmetry::None && g.arity != 2)
            throw UnsupportedArity("declared symmetry requires arity 2 (" + g.name + ")");
        if (g.symmetry != Symmetry::None && mode == Mode::NonSigma)
            throw UnsupportedArity("symmetry declared in non-sigma mode (" + g.name + ")");
    }
    Symbols plain = sy;
    plain.rels.clear();
    detail::Enumerator en{plain, mode};
    std::vector<Tree> out;
    if (n == 1) {
        out.push_back(Tree::make_leaf(1));
        return out;
    }
    if (mode == Mode::NonSigma) {
        out = en.ns(1, n, false);
    } else {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i + 1;
        out = en.sym_set(pool, false);
    }
    std::sort(out.begin(), out.end(), [&](const Tree& a, const Tree& b) {
        return encode(a, plain) < encode(b, plain);
    });
    return out;
}

/// Canonical basis of the free module F(E)<R>(n): trees with exactly one
/// relation-labeled vertex. In symmetric mode the relation vertex's child
/// blocks are in canonical (min-leaf sorted) slot order.
inline std::vector<Tree> enumerate_module_trees(const Symbols& sy, int n, Mode mode) {
    detail::Enumerator en{sy, mode};
    std::vector<Tree> out;
    if (mode == Mode::NonSigma) {
        out = en.ns(1, n, true);
    } else {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i + 1;
        out = en.sym_set(pool, true);
    }
    std::sort(out.begin(), out.end(), [&](const Tree& a, const Tree& b) {
        return encode(a, sy) < encode(b, sy);
    });
    return out;
}

} // namespace opcoh

#endif
