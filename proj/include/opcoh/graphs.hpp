#ifndef OPCOH_GRAPHS_HPP
#define OPCOH_GRAPHS_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "opcoh/linalg.hpp"
#include "opcoh/presentation.hpp"

namespace opcoh {

/// Bipartite incidence graph of a pi matrix: tree-monomial vertices V(n),
/// relation-monomial vertices V'(n), one edge per nonzero entry.
struct BipartiteGraph {
    std::vector<std::string> tree_labels;  // columns of pi
    std::vector<std::string> rel_labels;   // rows of pi
    struct BEdge {
        long tree = 0, rel = 0;
        Rational coeff;
    };
    std::vector<BEdge> edges;

    static BipartiteGraph from(const PiMatrix& pm) {
        BipartiteGraph bg;
        bg.tree_labels = pm.mat.col_labels;
        bg.rel_labels = pm.mat.row_labels;
        for (const auto& [rc, v] : pm.mat.entries)
            bg.edges.push_back({rc.second, rc.first, v});
        return bg;
    }
};

enum class BClass { Graphlike, DualGraphlike, Both, Neither };

inline const char* to_string(BClass c) {
    switch (c) {
        case BClass::Graphlike: return "graphlike";
        case BClass::DualGraphlike: return "dual_graphlike";
        case BClass::Both: return "both";
        case BClass::Neither: return "neither";
    }
    return "?";
}

/// graphlike: every relation vertex meets exactly 2 edges; dual graphlike:
/// every tree vertex does.
inline BClass classify(const BipartiteGraph& bg) {
    std::vector<long> tdeg(bg.tree_labels.size(), 0), rdeg(bg.rel_labels.size(), 0);
    for (const auto& e : bg.edges) {
        ++tdeg[e.tree];
        ++rdeg[e.rel];
    }
    bool gl = !bg.rel_labels.empty() &&
              std::all_of(rdeg.begin(), rdeg.end(), [](long d) { return d == 2; });
    bool dl = !bg.tree_labels.empty() &&
              std::all_of(tdeg.begin(), tdeg.end(), [](long d) { return d == 2; });
    if (gl && dl) return BClass::Both;
    if (gl) return BClass::Graphlike;
    if (dl) return BClass::DualGraphlike;
    return BClass::Neither;
}

/// Tel-A-graph: concatenate the two edges at every degree-2 vertex of the
/// chosen side. Graphlike: vertices are tree monomials, edges are relation
/// monomials (and vice versa for the dual kind). Edges keep the two pi
/// entries at their endpoints.
struct TelAGraph {
    enum class Kind { Graphlike, Dual };
    Kind kind = Kind::Graphlike;
    std::vector<std::string> vertex_labels;
    struct Edge {
        long u = 0, v = 0;
        std::string label;
        Rational cu, cv;  // pi entries at the u / v endpoints
    };
    std::vector<Edge> edges;

    std::vector<long> components() const {  // vertex -> component id (by min vertex)
        std::vector<long> parent(vertex_labels.size());
        for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<long>(i);
        std::function<long(long)> find = [&](long x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : edges) {
            long a = find(e.u), b = find(e.v);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::vector<long> comp(parent.size());
        for (size_t i = 0; i < parent.size(); ++i) comp[i] = find(static_cast<long>(i));
        return comp;
    }

    long component_count() const {
        auto c = components();
        std::set<long> ids(c.begin(), c.end());
        return static_cast<long>(ids.size());
    }

    std::vector<std::vector<std::pair<long, long>>> adjacency() const {
        std::vector<std::vector<std::pair<long, long>>> adj(vertex_labels.size());
        for (long e = 0; e < static_cast<long>(edges.size()); ++e) {
            adj[edges[e].u].emplace_back(edges[e].v, e);
            if (edges[e].u != edges[e].v) adj[edges[e].v].emplace_back(edges[e].u, e);
        }
        return adj;
    }

    bool is_regular(long k) const {
        std::vector<long> deg(vertex_labels.size(), 0);
        for (const auto& e : edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        return std::all_of(deg.begin(), deg.end(), [k](long d) { return d == k; });
    }

    /// Length of a shortest cycle; 0 when the graph is a forest.
    long girth() const {
        long best = 0;
        for (const auto& e : edges)
            if (e.u == e.v) return 1;
        // parallel edges give girth 2
        std::set<std::pair<long, long>> seen;
        for (const auto& e : edges) {
            auto key = std::minmax(e.u, e.v);
            if (!seen.insert({key.first, key.second}).second) best = 2;
        }
        if (best == 2) return 2;
        auto adj = adjacency();
        for (long s = 0; s < static_cast<long>(vertex_labels.size()); ++s) {
            std::vector<long> dist(vertex_labels.size(), -1), via(vertex_labels.size(), -1);
            std::deque<long> q{s};
            dist[s] = 0;
            while (!q.empty()) {
                long v = q.front();
                q.pop_front();
                for (auto [w, e] : adj[v]) {
                    if (e == via[v]) continue;
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        via[w] = e;
                        q.push_back(w);
                    } else {
                        long len = dist[v] + dist[w] + 1;
                        if (best == 0 || len < best) best = len;
                    }
                }
            }
        }
        return best;
    }
};

inline TelAGraph tel_a(const BipartiteGraph& bg, TelAGraph::Kind kind) {
    BClass c = classify(bg);
    if (kind == TelAGraph::Kind::Graphlike && c != BClass::Graphlike && c != BClass::Both)
        throw WrongKind("relations are not graphlike");
    if (kind == TelAGraph::Kind::Dual && c != BClass::DualGraphlike && c != BClass::Both)
        throw WrongKind("relations are not dual graphlike");
    TelAGraph g;
    g.kind = kind;
    if (kind == TelAGraph::Kind::Graphlike) {
        g.vertex_labels = bg.tree_labels;
        std::map<long, std::vector<std::pair<long, Rational>>> by_rel;
        for (const auto& e : bg.edges) by_rel[e.rel].emplace_back(e.tree, e.coeff);
        for (long r = 0; r < static_cast<long>(bg.rel_labels.size()); ++r) {
            const auto& inc = by_rel.at(r);
            g.edges.push_back({inc[0].first, inc[1].first, bg.rel_labels[r],
                               inc[0].second, inc[1].second});
        }
    } else {
        g.vertex_labels = bg.rel_labels;
        std::map<long, std::vector<std::pair<long, Rational>>> by_tree;
        for (const auto& e : bg.edges) by_tree[e.tree].emplace_back(e.rel, e.coeff);
        for (long t = 0; t < static_cast<long>(bg.tree_labels.size()); ++t) {
            const auto& inc = by_tree.at(t);
            g.edges.push_back({inc[0].first, inc[1].first, bg.tree_labels[t],
                               inc[0].second, inc[1].second});
        }
    }
    return g;
}

/// Orientation data: per-vertex basis sign flips making every edge carry one
/// +1 and one -1 entry, and the resulting edge directions (tail -> head with
/// the flipped -1 at the tail). In the dual kind the vertex flips are the
/// paper's "sign changes of relations".
struct Orientation {
    std::vector<int> vertex_sign;
    std::vector<char> from_u;  // edge directed u -> v?

    long tail(const TelAGraph& g, long e) const { return from_u[e] ? g.edges[e].u : g.edges[e].v; }
    long head(const TelAGraph& g, long e) const { return from_u[e] ? g.edges[e].v : g.edges[e].u; }
};

inline Orientation orient(const TelAGraph& g) {
    for (const auto& e : g.edges)
        if ((e.cu != 1 && e.cu != -1) || (e.cv != 1 && e.cv != -1))
            throw NotPlusMinusOne("pi entries are not all +-1");
    const long nv = static_cast<long>(g.vertex_labels.size());
    Orientation o;
    o.vertex_sign.assign(nv, 0);
    o.from_u.assign(g.edges.size(), 0);
    auto adj = g.adjacency();
    std::vector<long> parent_edge(nv, -1), parent(nv, -1);
    for (long root = 0; root < nv; ++root) {
        if (o.vertex_sign[root] != 0) continue;
        o.vertex_sign[root] = 1;
        std::deque<long> q{root};
        while (!q.empty()) {
            long v = q.front();
            q.pop_front();
            for (auto [w, e] : adj[v]) {
                const auto& ed = g.edges[e];
                // want sign(u)*cu * sign(v)*cv == -1
                int prod = (ed.cu * ed.cv) == 1 ? 1 : -1;
                if (w == v) {  // self-loop: flips cancel
                    if (prod != -1) {
                        throw NoConsistentOrientation("self-loop cannot be oriented", {e});
                    }
                    continue;
                }
                int need = -prod;  // required sign(u)*sign(v)
                if (o.vertex_sign[w] == 0) {
                    o.vertex_sign[w] = o.vertex_sign[v] * need;
                    parent[w] = v;
                    parent_edge[w] = e;
                    q.push_back(w);
                } else if (o.vertex_sign[v] * o.vertex_sign[w] != need) {
                    // witness: tree paths v->root', w->root' plus e
                    std::vector<long> cyc{e};
                    std::set<long> va;
                    long x = v;
                    while (x >= 0) {
                        va.insert(x);
                        x = parent[x];
                    }
                    long meet = w;
                    while (!va.count(meet)) meet = parent[meet];
                    for (long y = v; y != meet; y = parent[y]) cyc.push_back(parent_edge[y]);
                    for (long y = w; y != meet; y = parent[y]) cyc.push_back(parent_edge[y]);
                    throw NoConsistentOrientation("no consistent orientation", cyc);
                }
            }
        }
    }
    for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        Rational fu = ed.cu * o.vertex_sign[ed.u];
        o.from_u[e] = (fu == -1);  // tail has the -1 entry
    }
    return o;
}

/// A closed edge path: verts[k] --edges[k]--> verts[k+1 (mod)], dirs[k] = +1
/// when edges[k] is traversed u->v in its stored endpoint order.
struct Cycle {
    std::vector<long> verts;
    std::vector<long> edges;
    std::vector<int> dirs;

    long length() const { return static_cast<long>(edges.size()); }
};

namespace detail_graph {

inline Cycle normalize_cycle(const TelAGraph& g, Cycle c) {
    // rotate to start at the lowest vertex; prefer the direction whose first
    // edge index is smaller
    long n = c.length();
    long best = 0;
    for (long i = 1; i < n; ++i)
        if (c.verts[i] < c.verts[best]) best = i;
    Cycle r;
    for (long k = 0; k < n; ++k) {
        long i = (best + k) % n;
        r.verts.push_back(c.verts[i]);
        r.edges.push_back(c.edges[i]);
        r.dirs.push_back(c.dirs[i]);
    }
    // reversed traversal
    Cycle rev;
    for (long k = 0; k < n; ++k) {
        long i = (best - 1 - k + 2 * n) % n;
        rev.verts.push_back(c.verts[(i + 1) % n]);
        rev.edges.push_back(c.edges[i]);
        rev.dirs.push_back(-c.dirs[i]);
    }
    return rev.edges[0] < r.edges[0] ? rev : r;
}

inline void cycles_from_forest(const TelAGraph& g, std::vector<Cycle>& out) {
    const long nv = static_cast<long>(g.vertex_labels.size());
    auto adj = g.adjacency();
    std::vector<long> parent(nv, -1), parent_edge(nv, -1);
    std::vector<char> visited(nv, 0), tree_edge(g.edges.size(), 0);
    for (long root = 0; root < nv; ++root) {
        if (visited[root]) continue;
        visited[root] = 1;
        std::deque<long> q{root};
        while (!q.empty()) {
            long v = q.front();
            q.pop_front();
            for (auto [w, e] : adj[v]) {
                if (visited[w]) continue;
                visited[w] = 1;
                parent[w] = v;
                parent_edge[w] = e;
                tree_edge[e] = 1;
                q.push_back(w);
            }
        }
    }
    for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
        if (tree_edge[e]) continue;
        long u = g.edges[e].u, v = g.edges[e].v;
        if (u == v) {
            out.push_back({{u}, {e}, {+1}});
            continue;
        }
        // path vertices u -> ... -> meet -> ... -> v along the forest
        std::vector<long> pverts;
        {
            std::set<long> anc;
            for (long x = u; x >= 0; x = parent[x]) anc.insert(x);
            long meet = v;
            while (!anc.count(meet)) meet = parent[meet];
            for (long x = u; x != meet; x = parent[x]) pverts.push_back(x);
            pverts.push_back(meet);
            std::vector<long> down;
            for (long x = v; x != meet; x = parent[x]) down.push_back(x);
            pverts.insert(pverts.end(), down.rbegin(), down.rend());
        }
        Cycle c;
        for (size_t i = 0; i + 1 < pverts.size(); ++i) {
            long x = pverts[i], y = pverts[i + 1];
            long e2 = parent[x] == y ? parent_edge[x] : parent_edge[y];
            c.verts.push_back(x);
            c.edges.push_back(e2);
            c.dirs.push_back(g.edges[e2].u == x ? +1 : -1);
        }
        c.verts.push_back(pverts.back());
        c.edges.push_back(e);
        c.dirs.push_back(g.edges[e].u == v ? +1 : -1);
        out.push_back(normalize_cycle(g, c));
    }
}

} // namespace detail_graph

/// Fundamental cycles of a BFS spanning forest (lowest-index roots, edges in
/// index order); |cycles| = |E| - |V| + #components.
inline std::vector<Cycle> cycle_basis_any(const TelAGraph& g) {
    std::vector<Cycle> out;
    detail_graph::cycles_from_forest(g, out);
    return out;
}

/// Spec'd operation: cycle basis of a graphlike Tel-A-graph.
inline std::vector<Cycle> cycle_basis(const TelAGraph& g) {
    if (g.kind != TelAGraph::Kind::Graphlike)
        throw WrongKind("cycle_basis expects the graphlike kind");
    return cycle_basis_any(g);
}

/// Horton-style minimum cycle basis (graphs here are tiny): shortest-path
/// candidate cycles, greedily chosen independent over GF(2).
inline std::vector<Cycle> minimum_cycle_basis(const TelAGraph& g) {
    auto fundamental = cycle_basis_any(g);
    const long rank_needed = static_cast<long>(fundamental.size());
    if (rank_needed == 0) return {};
    auto adj = g.adjacency();
    const long nv = static_cast<long>(g.vertex_labels.size());
    std::vector<Cycle> cands;
    // self-loops and parallel pairs
    std::map<std::pair<long, long>, std::vector<long>> pairs;
    for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
        if (g.edges[e].u == g.edges[e].v) {
            cands.push_back({{g.edges[e].u}, {e}, {+1}});
            continue;
        }
        auto key = std::minmax(g.edges[e].u, g.edges[e].v);
        pairs[{key.first, key.second}].push_back(e);
    }
    for (const auto& [k, es] : pairs)
        for (size_t i = 0; i + 1 < es.size(); ++i)
            for (size_t j = i + 1; j < es.size(); ++j) {
                long a = g.edges[es[i]].u, b = g.edges[es[i]].v;
                Cycle c;
                c.verts = {a, b};
                c.edges = {es[i], es[j]};
                c.dirs = {+1, g.edges[es[j]].u == b ? +1 : -1};
                cands.push_back(detail_graph::normalize_cycle(g, c));
            }
    // Horton candidates: per root vertex x and edge e=(u,v):
    for (long x = 0; x < nv; ++x) {
        std::vector<long> dist(nv, -1), pe(nv, -1), pv(nv, -1);
        std::deque<long> q{x};
        dist[x] = 0;
        while (!q.empty()) {
            long v = q.front();
            q.pop_front();
            for (auto [w, e] : adj[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    pe[w] = e;
                    pv[w] = v;
                    q.push_back(w);
                }
        }
        for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
            if (g.edges[e].u == g.edges[e].v) continue;
            for (int flip = 0; flip < 2; ++flip) {
                long u = flip ? g.edges[e].v : g.edges[e].u;
                long v = flip ? g.edges[e].u : g.edges[e].v;
                if (dist[u] < 0 || dist[v] < 0 || v == x) continue;
                // shortest-path arcs x..u and x..v sharing only x
                std::vector<long> A{x}, B{x};
                {
                    std::vector<long> tmp;
                    for (long y = u; y != x; y = pv[y]) tmp.push_back(y);
                    A.insert(A.end(), tmp.rbegin(), tmp.rend());
                    tmp.clear();
                    for (long y = v; y != x; y = pv[y]) tmp.push_back(y);
                    B.insert(B.end(), tmp.rbegin(), tmp.rend());
                }
                {
                    std::set<long> sa(A.begin() + 1, A.end());
                    bool clean = true;
                    for (size_t i = 1; i < B.size(); ++i)
                        if (sa.count(B[i])) {
                            clean = false;
                            break;
                        }
                    if (!clean) continue;
                }
                if (A.size() == 1 && B.size() <= 1) continue;
                // cycle vertices: x .. u, then v .. back toward x
                std::vector<long> pverts = A;
                for (size_t i = B.size(); i > 1; --i) pverts.push_back(B[i - 1]);
                Cycle c;
                long n_ = static_cast<long>(pverts.size());
                for (long i = 0; i < n_; ++i) {
                    long a = pverts[i], b = pverts[(i + 1) % n_];
                    long e2;
                    if (a == u && b == v)
                        e2 = e;
                    else
                        e2 = pv[a] == b ? pe[a] : pe[b];
                    c.verts.push_back(a);
                    c.edges.push_back(e2);
                    c.dirs.push_back(g.edges[e2].u == a ? +1 : -1);
                }
                cands.push_back(detail_graph::normalize_cycle(g, c));
            }
        }
    }
    // dedupe by edge set
    std::set<std::vector<long>> seen;
    std::vector<Cycle> uniq;
    for (auto& c : cands) {
        std::vector<long> key = c.edges;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) uniq.push_back(c);
    }
    std::sort(uniq.begin(), uniq.end(), [](const Cycle& a, const Cycle& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        std::vector<long> ka = a.edges, kb = b.edges;
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        return ka < kb;
    });
    // greedy GF(2) independence over edge sets
    std::vector<std::vector<unsigned long long>> basis_bits;
    auto to_bits = [&](const Cycle& c) {
        std::vector<unsigned long long> b((g.edges.size() + 63) / 64, 0);
        for (long e : c.edges) b[e / 64] ^= 1ull << (e % 64);
        return b;
    };
    std::vector<Cycle> out;
    for (const auto& c : uniq) {
        auto bits = to_bits(c);
        for (const auto& bb : basis_bits) {
            // reduce by leading bit
            long lead = -1;
            for (long i = static_cast<long>(bb.size()) - 1; i >= 0 && lead < 0; --i)
                if (bb[i]) {
                    for (int k = 63; k >= 0; --k)
                        if (bb[i] >> k & 1) {
                            lead = i * 64 + k;
                            break;
                        }
                }
            if (lead >= 0 && (bits[lead / 64] >> (lead % 64) & 1))
                for (size_t i = 0; i < bits.size(); ++i) bits[i] ^= bb[i];
        }
        bool zero = std::all_of(bits.begin(), bits.end(), [](auto x) { return x == 0; });
        if (zero) continue;
        basis_bits.push_back(bits);
        out.push_back(c);
        if (static_cast<long>(out.size()) == rank_needed) break;
    }
    if (static_cast<long>(out.size()) != rank_needed)
        throw InternalInconsistency("minimum cycle basis incomplete");
    return out;
}

/// Kernel vector of a graphlike cycle: +-1 per edge (row of pi), sign by
/// traversal direction against the orientation.
inline Vec cycle_kernel_vector(const TelAGraph& g, const Orientation& o, const Cycle& c,
                               long nrows) {
    if (g.kind != TelAGraph::Kind::Graphlike)
        throw WrongKind("kernel vectors come from graphlike cycles");
    Vec v(nrows, Rational(0));
    for (size_t k = 0; k < c.edges.size(); ++k) {
        long e = c.edges[k];
        int with_orient = (c.dirs[k] > 0) == (o.from_u[e] != 0) ? 1 : -1;
        v[e] += with_orient;
    }
    return v;
}

/// One vector per connected component of an oriented dual Tel-A-graph: the
/// flip-signed sum of its relation vertices; each lies in ker pi.
inline std::vector<Vec> component_sums(const TelAGraph& g, const Orientation& o) {
    if (g.kind != TelAGraph::Kind::Dual) throw WrongKind("component_sums expects the dual kind");
    if (o.vertex_sign.size() != g.vertex_labels.size())
        throw OrientationMissing("orientation does not match the graph");
    for (int s : o.vertex_sign)
        if (s == 0) throw OrientationMissing("orientation missing");
    auto comp = g.components();
    std::map<long, Vec> sums;
    const long nv = static_cast<long>(g.vertex_labels.size());
    for (long v = 0; v < nv; ++v) {
        auto [it, fresh] = sums.emplace(comp[v], Vec(nv, Rational(0)));
        it->second[v] = o.vertex_sign[v];
    }
    std::vector<Vec> out;
    for (auto& [id, v] : sums) out.push_back(std::move(v));
    return out;
}

struct H1Dims {
    long rank_q = 0;
    long rank_z = 0;
    bool torsion_free = false;
};

/// Both homology ranks of the 1-complex; the fundamental-cycle matrix
/// restricted to its non-tree edges is a signed identity, which certifies an
/// integral basis (hence no torsion), computed rather than assumed.
inline H1Dims h1_dims(const TelAGraph& g) {
    auto cycles = cycle_basis_any(g);
    H1Dims h;
    h.rank_q = static_cast<long>(cycles.size());
    // each fundamental cycle contains exactly one edge used by no other
    std::map<long, long> edge_uses;
    for (const auto& c : cycles)
        for (long e : c.edges) ++edge_uses[e];
    long unit_cols = 0;
    for (const auto& c : cycles) {
        bool has_private = false;
        for (long e : c.edges)
            if (edge_uses[e] == 1) has_private = true;
        if (has_private) ++unit_cols;
    }
    h.rank_z = h.rank_q;
    h.torsion_free = unit_cols == h.rank_q;
    if (!h.torsion_free && h.rank_q > 0)
        throw InternalInconsistency("fundamental cycle matrix is not unimodular");
    if (h.rank_q == 0) h.torsion_free = true;
    return h;
}

/// DOT rendering; oriented graphs become digraphs.
inline std::string to_dot(const TelAGraph& g, const std::string& name,
                          const Orientation* o = nullptr) {
    auto q = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out += '\\';
            out += ch;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << (o ? "digraph " : "graph ") << q(name) << " {\n";
    for (const auto& vl : g.vertex_labels) os << "  " << q(vl) << ";\n";
    for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        if (o) {
            long t = o->tail(g, e), h = o->head(g, e);
            os << "  " << q(g.vertex_labels[t]) << " -> " << q(g.vertex_labels[h]);
        } else {
            os << "  " << q(g.vertex_labels[ed.u]) << " -- " << q(g.vertex_labels[ed.v]);
        }
        os << " [label=" << q(ed.label) << "];\n";
    }
    os << "}\n";
    return os.str();
}

/// Renames vertex/edge labels through the presentation's paper alias tables
/// where entries exist (names only; alias signs are display metadata here).
inline TelAGraph apply_aliases(const Presentation& p, TelAGraph g, int arity) {
    auto rename = [&](const std::map<int, std::vector<PaperAlias>>& table,
                      std::vector<std::string>& labels) {
        auto it = table.find(arity);
        if (it == table.end()) return;
        std::map<std::string, std::string> m;
        for (const auto& a : it->second) m[a.canon] = a.name;
        for (auto& l : labels) {
            auto f = m.find(l);
            if (f != m.end()) l = f->second;
        }
    };
    std::vector<std::string> edge_labels;
    for (auto& e : g.edges) edge_labels.push_back(e.label);
    if (g.kind == TelAGraph::Kind::Dual) {
        rename(p.module_aliases, g.vertex_labels);
        rename(p.basis_aliases, edge_labels);
    } else {
        rename(p.basis_aliases, g.vertex_labels);
        rename(p.module_aliases, edge_labels);
    }
    for (size_t i = 0; i < g.edges.size(); ++i) g.edges[i].label = edge_labels[i];
    return g;
}

/// Human-readable commuting-diagram list for the cycle basis of a graphlike
/// oriented Tel-A-graph.
inline std::string coherence_certificate_text(const TelAGraph& g, const Orientation& o,
                                              const std::vector<Cycle>& cycles) {
    std::ostringstream os;
    os << cycles.size() << " diagram(s) whose commutativity is necessary and sufficient:\n";
    for (size_t i = 0; i < cycles.size(); ++i) {
        const auto& c = cycles[i];
        os << "D" << i + 1 << " (length " << c.length() << "): ";
        for (size_t k = 0; k < c.edges.size(); ++k) {
            long e = c.edges[k];
            bool along = (c.dirs[k] > 0) == (o.from_u[e] != 0);
            os << g.vertex_labels[c.verts[k]] << (along ? " --[" : " <-[") << g.edges[e].label
               << (along ? "]--> " : "]-- ");
        }
        os << g.vertex_labels[c.verts[0]] << "\n";
    }
    return os.str();
}

} // namespace opcoh

#endif
