#ifndef OPCOH_PRESENTATION_HPP
#define OPCOH_PRESENTATION_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opcoh/errors.hpp"
#include "opcoh/linalg.hpp"
#include "opcoh/matrix.hpp"
#include "opcoh/trees.hpp"

namespace opcoh {

/// Exact linear combination of canonical monomials, keyed by encoding.
using Elem = std::map<std::string, Rational>;

inline void elem_add(Elem& e, const std::string& mono, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = e.emplace(mono, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) e.erase(it);
    }
}

inline void elem_add(Elem& e, const Elem& other, const Rational& scale = Rational(1)) {
    for (const auto& [m, c] : other) elem_add(e, m, c * scale);
}

struct PaperAlias {
    std::string name;
    int sign = 1;
    std::string canon;  // canonical encoding of the monomial
};

namespace detail_pres {
// lets a value type carry a lazy-cache lock: copies get a fresh mutex
struct CacheMutex {
    mutable std::recursive_mutex mu;
    CacheMutex() = default;
    CacheMutex(const CacheMutex&) {}
    CacheMutex& operator=(const CacheMutex&) { return *this; }
};
} // namespace detail_pres

struct PiMatrix {
    int arity = 0;
    SparseMatrix mat;  // rows: module basis, cols: operad basis; canonical labels
    std::vector<Tree> row_trees;
    std::vector<Tree> col_trees;
};

/// An operad presentation P = <E; R> plus derived data: the relation-space
/// basis used for module monomials, its symmetric-group action, paper-label
/// alias tables and optional quantization symbols.
class Presentation {
public:
    std::string name;
    Mode mode = Mode::NonSigma;
    std::vector<GeneratorSymbol> gens;

    struct StatedRelation {
        std::string label;
        // terms in file order (for quantization); coefficients fold in
        // canonicalization signs
        std::vector<std::pair<Rational, std::string>> terms;
        Elem elem;
        int arity = 0;
        int degree = 0;
    };
    std::vector<StatedRelation> stated;

    // aliases[kind][arity] -> ordered entries; kind 0 = basis, 1 = module
    std::map<int, std::vector<PaperAlias>> basis_aliases;
    std::map<int, std::vector<PaperAlias>> module_aliases;

    // per-relation-term coefficient symbol bases; "1" means plain scalar
    std::map<std::string, std::vector<std::string>> quantize;

    std::vector<std::string> warnings;

    int rel_arity() const { return rel_arity_; }
    int rel_degree() const { return rel_degree_; }
    const Symbols& symbols() const { return symbols_; }
    const std::vector<Elem>& relation_basis() const { return rbasis_; }
    long relation_dim() const { return static_cast<long>(rbasis_.size()); }
    const std::string& source_text() const { return source_; }

    // ---------------- parsing ----------------

    static Presentation parse(const std::string& text) {
        Presentation p;
        p.source_ = text;
        std::istringstream is(text);
        std::string line;
        long ln = 0;
        std::vector<std::pair<long, std::string>> rel_lines, alias_lines, quant_lines;
        while (std::getline(is, line)) {
            ++ln;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string kw;
            ls >> kw;
            if (kw == "operad") {
                ls >> p.name;
                if (p.name.empty()) throw ParseError("operad needs a name", ln);
            } else if (kw == "mode") {
                std::string m;
                ls >> m;
                if (m == "nonsigma") p.mode = Mode::NonSigma;
                else if (m == "symmetric") p.mode = Mode::Symmetric;
                else throw ParseError("mode must be nonsigma|symmetric", ln);
            } else if (kw == "gen") {
                p.parse_gen(ls, ln);
            } else if (kw == "rel") {
                rel_lines.emplace_back(ln, line);
            } else if (kw == "alias") {
                alias_lines.emplace_back(ln, line);
            } else if (kw == "quantize") {
                quant_lines.emplace_back(ln, line);
            } else {
                throw ParseError("unknown statement '" + kw + "'", ln);
            }
        }
        if (p.name.empty()) throw ParseError("missing 'operad <name>'", 1);
        if (p.gens.empty()) throw ParseError("no generators", 1);
        for (auto& [l, s] : rel_lines) p.parse_rel(s, l);
        if (p.stated.empty()) throw ParseError("no relations", 1);
        p.finalize();
        for (auto& [l, s] : alias_lines) p.parse_alias(s, l);
        for (auto& [l, s] : quant_lines) p.parse_quantize(s, l);
        return p;
    }

    static Presentation parse_file(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw Error("cannot open presentation file: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

    /// Canonical text form; re-parses to an identical presentation.
    std::string write() const {
        std::ostringstream os;
        os << "operad " << name << "\n";
        os << "mode " << (mode == Mode::NonSigma ? "nonsigma" : "symmetric") << "\n";
        for (const auto& g : gens) {
            os << "gen " << g.name << " arity " << g.arity;
            if (g.degree != 0) os << " degree " << g.degree;
            if (g.symmetry == Symmetry::Sign) os << " sym anti";
            if (g.symmetry == Symmetry::Trivial) os << " sym comm";
            os << "\n";
        }
        for (const auto& r : stated) {
            os << "rel " << r.label << " :";
            bool first = true;
            for (const auto& [c, m] : r.terms) {
                os << " " << render_coeff(c, first) << m;
                first = false;
            }
            os << "\n";
        }
        for (const auto& [ar, list] : basis_aliases)
            for (const auto& a : list)
                os << "alias basis " << ar << " : " << a.name << " = "
                   << (a.sign < 0 ? "- " : "") << a.canon << "\n";
        for (const auto& [ar, list] : module_aliases)
            for (const auto& a : list)
                os << "alias module " << ar << " : " << a.name << " = "
                   << (a.sign < 0 ? "- " : "") << a.canon << "\n";
        for (const auto& [lbl, syms] : quantize) {
            os << "quantize " << lbl << " :";
            for (const auto& s : syms) os << " " << s;
            os << "\n";
        }
        return os.str();
    }

    bool same_as(const Presentation& o) const {
        return name == o.name && mode == o.mode && gens == o.gens &&
               stated_elems() == o.stated_elems() && quantize == o.quantize;
    }

    // ---------------- bases ----------------

    const std::vector<Tree>& basis(int n) const {
        std::lock_guard<std::recursive_mutex> lock(cache_mu_.mu);
        auto it = basis_cache_.find(n);
        if (it == basis_cache_.end()) {
            Symbols plain;
            plain.gens = gens;
            it = basis_cache_.emplace(n, enumerate_basis(plain, n, mode)).first;
            std::vector<std::string> enc;
            for (const auto& t : it->second) enc.push_back(encode(t, symbols_));
            basis_enc_cache_[n] = std::move(enc);
        }
        return it->second;
    }

    const std::vector<std::string>& basis_encodings(int n) const {
        std::lock_guard<std::recursive_mutex> lock(cache_mu_.mu);
        basis(n);
        return basis_enc_cache_[n];
    }

    const std::vector<Tree>& module_basis(int n) const {
        std::lock_guard<std::recursive_mutex> lock(cache_mu_.mu);
        auto it = module_cache_.find(n);
        if (it == module_cache_.end()) {
            std::vector<Tree> trees;
            if (n >= rel_arity_) trees = enumerate_module_trees(symbols_, n, mode);
            it = module_cache_.emplace(n, std::move(trees)).first;
            std::vector<std::string> enc;
            for (const auto& t : it->second) enc.push_back(encode(t, symbols_));
            module_enc_cache_[n] = std::move(enc);
        }
        return it->second;
    }

    const std::vector<std::string>& module_encodings(int n) const {
        std::lock_guard<std::recursive_mutex> lock(cache_mu_.mu);
        module_basis(n);
        return module_enc_cache_[n];
    }

    // ---------------- canonicalization of elements ----------------

    /// Operad element from a raw tree (canonicalizes, applies sign).
    Elem operad_elem(const Tree& raw, const Rational& coeff = Rational(1)) const {
        auto [t, s] = canonicalize(raw, symbols_);
        Elem e;
        elem_add(e, encode(t, symbols_), coeff * s);
        return e;
    }

    /// Module element from a raw module tree: canonicalizes generator
    /// vertices and, in symmetric mode, sorts the relation vertex's child
    /// blocks by minimum leaf through the relation-space action.
    Elem module_elem(const Tree& raw, const Rational& coeff = Rational(1)) const {
        auto [t, s] = canonicalize(raw, symbols_);
        Rational c = coeff * s;
        if (mode == Mode::NonSigma) {
            Elem e;
            elem_add(e, encode(t, symbols_), c);
            return e;
        }
        // locate relation vertex and its sorting permutation
        Tree* rel = find_rel(t);
        if (!rel) throw Error("module_elem: no relation vertex");
        int m = static_cast<int>(rel->kids.size());
        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return min_leaf(rel->kids[a]) < min_leaf(rel->kids[b]);
        });
        bool sorted = true;
        for (int i = 0; i < m; ++i)
            if (order[i] != i) sorted = false;
        int ri = rel->rel_index();
        if (sorted) {
            Elem e;
            elem_add(e, encode(t, symbols_), c);
            return e;
        }
        // (rho_i; d_1..d_m) = sum_j A(tau^{-1})_{ij} (rho_j; d_tau(1)..d_tau(m))
        std::vector<int> tau(m), tau_inv(m);
        for (int k = 0; k < m; ++k) tau[k] = order[k];
        for (int k = 0; k < m; ++k) tau_inv[tau[k]] = k;
        std::vector<Tree> sorted_kids;
        sorted_kids.reserve(m);
        for (int k = 0; k < m; ++k) sorted_kids.push_back(rel->kids[tau[k]]);
        const std::vector<Vec>& A = action_matrix(perm_one_based(tau_inv));
        Elem out;
        for (long j = 0; j < relation_dim(); ++j) {
            if (A[ri][j] == 0) continue;
            Tree variant = t;
            Tree* rv = find_rel(variant);
            rv->sym = Tree::kRelBase - static_cast<int>(j);
            rv->kids = sorted_kids;
            elem_add(out, encode(variant, symbols_), c * A[ri][j]);
        }
        return out;
    }

    /// sigma action on operad elements: leaf relabeling l -> sigma[l-1].
    Elem act(const Elem& e, const std::vector<int>& sigma) const {
        Elem out;
        for (const auto& [m, c] : e) {
            Tree t = parse_tree(m, symbols_);
            elem_add(out, operad_elem(relabel(t, sigma), c));
        }
        return out;
    }

    Elem act_module(const Elem& e, const std::vector<int>& sigma) const {
        Elem out;
        for (const auto& [m, c] : e) {
            Tree t = parse_tree(m, symbols_);
            Elem part = module_elem(relabel(t, sigma), c);
            elem_add(out, part);
        }
        return out;
    }

    // ---------------- pi ----------------

    /// Substitute the relation expansion for the relation vertex; the result
    /// is an operad element of the same arity as the monomial.
    Elem pi_of(const Tree& module_tree, const Rational& coeff = Rational(1)) const {
        const Tree* rel = find_rel(module_tree);
        if (!rel) throw Error("pi_of: no relation vertex");
        int ri = rel->rel_index();
        Elem out;
        for (const auto& [mstr, c] : rbasis_[ri]) {
            Tree pattern = parse_tree(mstr, symbols_);
            auto [subbed, koszul] = substitute_slots(pattern, rel->kids);
            Tree whole = replace_rel(module_tree, subbed);
            elem_add(out, operad_elem(whole, coeff * c * koszul));
        }
        return out;
    }

    Elem pi_of_elem(const Elem& module_elem_coords) const {
        Elem out;
        for (const auto& [m, c] : module_elem_coords)
            elem_add(out, pi_of(parse_tree(m, symbols_), c));
        return out;
    }

    /// Image of a module monomial when the relation vertex is replaced by a
    /// single expansion term (used by the quantized decorations).
    Elem substitute_relation_term(const Tree& module_tree, const Tree& term_pattern,
                                  const Rational& coeff) const {
        const Tree* rel = find_rel(module_tree);
        if (!rel) throw Error("substitute_relation_term: no relation vertex");
        auto [subbed, koszul] = substitute_slots(term_pattern, rel->kids);
        Tree whole = replace_rel(module_tree, subbed);
        return operad_elem(whole, coeff * koszul);
    }

    const PiMatrix& pi(int n) const {
        std::lock_guard<std::recursive_mutex> lock(cache_mu_.mu);
        auto it = pi_cache_.find(n);
        if (it != pi_cache_.end()) return it->second;
        PiMatrix pm;
        pm.arity = n;
        pm.row_trees = module_basis(n);
        pm.col_trees = basis(n);
        const auto& renc = module_encodings(n);
        const auto& cenc = basis_encodings(n);
        pm.mat = SparseMatrix(static_cast<long>(pm.row_trees.size()),
                              static_cast<long>(pm.col_trees.size()));
        pm.mat.row_labels = renc;
        pm.mat.col_labels = cenc;
        std::map<std::string, long> cidx;
        for (long j = 0; j < static_cast<long>(cenc.size()); ++j) cidx[cenc[j]] = j;
        for (long i = 0; i < static_cast<long>(pm.row_trees.size()); ++i) {
            Elem img = pi_of(pm.row_trees[i]);
            for (const auto& [m, c] : img) pm.mat.add(i, cidx.at(m), c);
        }
        return pi_cache_.emplace(n, std::move(pm)).first->second;
    }

    /// dim P(n) = dim F(E)(n) - rank(pi(n)) for 2 <= n <= N.
    std::vector<long> operad_dims(int N) const {
        std::vector<long> out;
        for (int n = 2; n <= N; ++n) {
            long f = static_cast<long>(basis(n).size());
            long r = n >= rel_arity_ ? rank(pi(n).mat) : 0;
            out.push_back(f - r);
        }
        return out;
    }

    // ---------------- module/operad compositions ----------------

    /// module-tree o_slot operad-tree -> module element
    Elem compose_module_operad(const Tree& mt, int slot, const Tree& ot) const {
        auto [t, c] = compose(mt, slot, ot, symbols_);
        return module_elem(t, c);
    }

    /// operad-tree o_slot module-tree -> module element
    Elem compose_operad_module(const Tree& ot, int slot, const Tree& mt) const {
        auto [t, c] = compose(ot, slot, mt, symbols_);
        return module_elem(t, c);
    }

    /// Canonical element from a raw tree, module-aware.
    Elem elem_of(const Tree& raw, const Rational& coeff = Rational(1)) const {
        return contains_rel(raw) ? module_elem(raw, coeff) : operad_elem(raw, coeff);
    }

    /// Bilinear partial composition of elements (operad or module parts; at
    /// most one relation vertex may appear in a product term).
    Elem compose_any(const Elem& a, int slot, const Elem& b) const {
        Elem out;
        for (const auto& [am, ac] : a)
            for (const auto& [bm, bc] : b) {
                auto [t, c] = compose(parse_tree(am, symbols_), slot,
                                      parse_tree(bm, symbols_), symbols_);
                elem_add(out, elem_of(t, ac * bc * c));
            }
        return out;
    }

    Elem monomial_elem(const std::string& enc, const Rational& c = Rational(1)) const {
        Elem e;
        elem_add(e, enc, c);
        return e;
    }

    // ---------------- coordinates ----------------

    Vec module_coords(const Elem& e, int n) const {
        const auto& enc = module_encodings(n);
        std::map<std::string, long> idx;
        for (long i = 0; i < static_cast<long>(enc.size()); ++i) idx[enc[i]] = i;
        Vec v(enc.size(), Rational(0));
        for (const auto& [m, c] : e) {
            auto it = idx.find(m);
            if (it == idx.end()) throw Error("module_coords: unknown monomial " + m);
            v[it->second] = c;
        }
        return v;
    }

    Vec basis_coords(const Elem& e, int n) const {
        const auto& enc = basis_encodings(n);
        std::map<std::string, long> idx;
        for (long i = 0; i < static_cast<long>(enc.size()); ++i) idx[enc[i]] = i;
        Vec v(enc.size(), Rational(0));
        for (const auto& [m, c] : e) {
            auto it = idx.find(m);
            if (it == idx.end()) throw Error("basis_coords: unknown monomial " + m);
            v[it->second] = c;
        }
        return v;
    }

    /// Renders a coordinate vector over the module (or operad) basis.
    std::string render(const Vec& v, const std::vector<std::string>& labels) const {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            if (v[i] == 1) s += s.empty() ? "" : " + ";
            else if (v[i] == -1) s += s.empty() ? "- " : " - ";
            else {
                std::string c = to_string(v[i] > 0 ? v[i] : -v[i]);
                s += (v[i] > 0 ? (s.empty() ? "" : " + ") : (s.empty() ? "- " : " - ")) + c + "*";
            }
            s += labels[i];
        }
        return s.empty() ? "0" : s;
    }

    // ---------------- helpers ----------------

    static std::string trim(const std::string& s) {
        size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return "";
        size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    }

    /// Parses "c1*mono1 +- c2*mono2 ..." into (coeff, raw tree) terms.
    std::vector<std::pair<Rational, Tree>> parse_element_terms(const std::string& text,
                                                               long ln) const {
        std::vector<std::pair<Rational, Tree>> terms;
        size_t pos = 0;
        auto skip = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
        bool first = true;
        while (true) {
            skip();
            if (pos >= text.size()) break;
            Rational sign(1);
            if (text[pos] == '+') { ++pos; }
            else if (text[pos] == '-') { sign = -1; ++pos; }
            else if (!first) throw ParseError("expected '+' or '-' between terms", ln);
            skip();
            // optional rational coefficient followed by '*'
            size_t save = pos;
            std::string num;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                num += text[pos++];
            skip();
            Rational coeff = sign;
            if (!num.empty() && pos < text.size() && text[pos] == '*') {
                ++pos;
                coeff = sign * parse_rational(num);
                skip();
            } else {
                pos = save;
            }
            // monomial extends to the matching close paren
            size_t start = pos;
            int depth = 0;
            while (pos < text.size()) {
                char ch = text[pos];
                if (ch == '(') ++depth;
                if (ch == ')') {
                    --depth;
                    if (depth == 0) { ++pos; break; }
                }
                ++pos;
            }
            if (depth != 0) throw ParseError("unbalanced parentheses", ln);
            std::string mono = trim(text.substr(start, pos - start));
            if (mono.empty()) throw ParseError("empty monomial", ln);
            Symbols gen_only;
            gen_only.gens = gens;
            try {
                terms.emplace_back(coeff, parse_tree(mono, gen_only));
            } catch (const Error& e) {
                throw ParseError(e.what(), ln);
            }
            first = false;
        }
        if (terms.empty()) throw ParseError("empty element", ln);
        return terms;
    }

private:
    int rel_arity_ = 0;
    int rel_degree_ = 0;
    Symbols symbols_;
    std::vector<Elem> rbasis_;  // expansions over basis(rel_arity_)
    std::string source_;
    mutable std::map<int, std::vector<Tree>> basis_cache_;
    mutable std::map<int, std::vector<std::string>> basis_enc_cache_;
    mutable std::map<int, std::vector<Tree>> module_cache_;
    mutable std::map<int, std::vector<std::string>> module_enc_cache_;
    mutable std::map<int, PiMatrix> pi_cache_;
    mutable std::map<std::vector<int>, std::vector<Vec>> action_cache_;
    mutable detail_pres::CacheMutex cache_mu_;

    std::vector<Elem> stated_elems() const {
        std::vector<Elem> out;
        for (const auto& r : stated) out.push_back(r.elem);
        return out;
    }

    static std::string render_coeff(const Rational& c, bool first) {
        std::string s;
        Rational a = c;
        if (c < 0) {
            s += first ? "- " : "- ";
            a = -c;
        } else if (!first) {
            s += "+ ";
        }
        if (a != 1) s += to_string(a) + "*";
        return s;
    }

    void parse_gen(std::istringstream& ls, long ln) {
        GeneratorSymbol g;
        ls >> g.name;
        std::string kw;
        while (ls >> kw) {
            if (kw == "arity") {
                if (!(ls >> g.arity)) throw ParseError("arity needs a number", ln);
            } else if (kw == "degree") {
                if (!(ls >> g.degree)) throw ParseError("degree needs a number", ln);
            } else if (kw == "sym") {
                std::string s;
                ls >> s;
                if (s == "anti") g.symmetry = Symmetry::Sign;
                else if (s == "comm") g.symmetry = Symmetry::Trivial;
                else throw ParseError("sym must be anti|comm", ln);
            } else {
                throw ParseError("unknown gen attribute '" + kw + "'", ln);
            }
        }
        if (g.name.empty()) throw ParseError("gen needs a name", ln);
        if (g.arity < 2) throw ParseError("generator arity must be >= 2", ln);
        if (g.symmetry != Symmetry::None && g.arity != 2)
            throw ParseError("declared symmetry requires arity 2", ln);
        if (g.symmetry != Symmetry::None && mode == Mode::NonSigma)
            throw ParseError("symmetry declared in nonsigma mode", ln);
        for (const auto& h : gens)
            if (h.name == g.name) throw ParseError("duplicate generator " + g.name, ln);
        gens.push_back(g);
    }

    void parse_rel(const std::string& line, long ln) {
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("rel needs ':'", ln);
        std::istringstream head(line.substr(0, colon));
        std::string kw, label;
        head >> kw >> label;
        if (label.empty()) throw ParseError("rel needs a label", ln);
        auto raw_terms = parse_element_terms(line.substr(colon + 1), ln);

        StatedRelation r;
        r.label = label;
        Symbols gen_only;
        gen_only.gens = gens;
        int arity = -1, degree = 0;
        for (const auto& [c, t] : raw_terms) {
            int n = leaf_count(t);
            std::vector<int> leaves;
            collect_leaves(t, leaves);
            std::vector<int> sorted = leaves;
            std::sort(sorted.begin(), sorted.end());
            for (int i = 0; i < n; ++i)
                if (sorted[i] != i + 1)
                    throw ParseError("monomial leaves must be exactly 1.." + std::to_string(n), ln);
            if (mode == Mode::NonSigma && leaves != sorted)
                throw ParseError("nonsigma monomial leaves must appear in order", ln);
            if (arity < 0) arity = n;
            if (n != arity) throw ParseError("relation terms have mixed arity", ln);
            int d = tree_degree(t, gen_only);
            if (&raw_terms.front() == &raw_terms[0] && r.terms.empty()) degree = d;
            if (d != degree) throw ParseError("relation terms have mixed degree", ln);
            auto [ct, s] = canonicalize(t, gen_only);
            std::string enc = encode(ct, gen_only);
            r.terms.emplace_back(c * s, enc);
            elem_add(r.elem, enc, c * s);
        }
        if (r.elem.empty()) throw ParseError("relation is zero", ln);
        r.arity = arity;
        r.degree = degree;
        for (const auto& s : stated) {
            if (s.label == r.label) throw ParseError("duplicate relation label", ln);
            if (s.arity != r.arity)
                throw ParseError("mixed relation arities are unsupported", ln);
        }
        stated.push_back(std::move(r));
    }

    void parse_alias(const std::string& line, long ln) {
        // alias basis|module N : NAME = [-] MONO
        std::istringstream ls(line);
        std::string kw, kind, colon;
        int arity;
        ls >> kw >> kind >> arity >> colon;
        if (colon != ":") throw ParseError("alias needs ':'", ln);
        std::string rest;
        std::getline(ls, rest);
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw ParseError("alias needs '='", ln);
        PaperAlias a;
        a.name = trim(rest.substr(0, eq));
        std::string rhs = trim(rest.substr(eq + 1));
        if (!rhs.empty() && rhs[0] == '-') {
            a.sign = -1;
            rhs = trim(rhs.substr(1));
        }
        a.canon = rhs;
        if (a.name.empty() || a.canon.empty()) throw ParseError("bad alias", ln);
        parse_tree(a.canon, symbols_);  // validates
        if (kind == "basis") basis_aliases[arity].push_back(a);
        else if (kind == "module") module_aliases[arity].push_back(a);
        else throw ParseError("alias kind must be basis|module", ln);
    }

    void parse_quantize(const std::string& line, long ln) {
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("quantize needs ':'", ln);
        std::istringstream head(line.substr(0, colon));
        std::string kw, label;
        head >> kw >> label;
        const StatedRelation* rel = nullptr;
        for (const auto& r : stated)
            if (r.label == label) rel = &r;
        if (!rel) throw ParseError("quantize: unknown relation " + label, ln);
        std::istringstream ls(line.substr(colon + 1));
        std::vector<std::string> syms;
        std::string s;
        while (ls >> s) syms.push_back(s);
        if (syms.size() != rel->terms.size())
            throw ParseError("quantize: need one symbol per relation term", ln);
        quantize[label] = syms;
    }

    void finalize() {
        rel_arity_ = stated.front().arity;
        rel_degree_ = stated.front().degree;
        for (const auto& r : stated)
            if (r.degree != rel_degree_)
                throw Error("relations of mixed degree are unsupported");

        Symbols gen_only;
        gen_only.gens = gens;
        basis_cache_.clear();

        // coordinates of stated relations over F(E)(m)
        std::vector<Tree> b = enumerate_basis(gen_only, rel_arity_, mode);
        std::vector<std::string> benc;
        for (const auto& t : b) benc.push_back(encode(t, gen_only));
        std::map<std::string, long> bidx;
        for (long i = 0; i < static_cast<long>(benc.size()); ++i) bidx[benc[i]] = i;
        auto coords = [&](const Elem& e) {
            Vec v(benc.size(), Rational(0));
            for (const auto& [m, c] : e) v[bidx.at(m)] = c;
            return v;
        };
        std::vector<Vec> stated_vecs;
        for (const auto& r : stated) stated_vecs.push_back(coords(r.elem));
        Subspace stated_span = Subspace::span(stated_vecs, static_cast<long>(benc.size()));
        if (stated_span.dim() != static_cast<long>(stated.size()))
            throw Error("stated relations are linearly dependent");
        // a decomposability diagnostic would look for relations generated by
        // relations of lower arity; with a single relation arity (mixed
        // arities are rejected above) there is nothing to check

        std::vector<std::pair<std::string, Elem>> rb;
        for (const auto& r : stated) rb.emplace_back(r.label, r.elem);

        if (mode == Mode::Symmetric) {
            // sigma-closure; extend the basis by translates if needed
            auto perms = all_perms(rel_arity_);
            std::vector<Vec> closure = stated_vecs;
            Subspace cl = stated_span;
            for (size_t k = 0; k < stated.size(); ++k) {
                for (const auto& sg : perms) {
                    Elem tr = translate(stated[k].elem, sg, gen_only);
                    Vec v = coords(tr);
                    if (!cl.contains(v)) {
                        rb.emplace_back(stated[k].label + "~" + perm_str(sg), tr);
                        closure.push_back(v);
                        cl = Subspace::span(closure, static_cast<long>(benc.size()));
                    }
                }
            }
        }

        symbols_.gens = gens;
        symbols_.rels.clear();
        rbasis_.clear();
        for (auto& [lbl, e] : rb) {
            symbols_.rels.push_back({lbl, rel_arity_, rel_degree_});
            rbasis_.push_back(e);
        }
        // validate stated relation independence after closure (already
        // guaranteed by construction: closure extends an independent set)
    }

    static Elem translate(const Elem& e, const std::vector<int>& sigma, const Symbols& sy) {
        Elem out;
        for (const auto& [m, c] : e) {
            Tree t = relabel(parse_tree(m, sy), sigma);
            auto [ct, s] = canonicalize(std::move(t), sy);
            elem_add(out, encode(ct, sy), c * s);
        }
        return out;
    }

    static std::vector<std::vector<int>> all_perms(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i + 1;
        std::vector<std::vector<int>> out;
        do out.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return out;
    }

    static std::string perm_str(const std::vector<int>& p) {
        std::string s;
        for (int v : p) s += std::to_string(v);
        return s;
    }

    static std::vector<int> perm_one_based(const std::vector<int>& zero_based) {
        std::vector<int> p(zero_based.size());
        for (size_t i = 0; i < p.size(); ++i) p[i] = zero_based[i] + 1;
        return p;
    }

    /// Action of sigma on the relation space: row i gives the coordinates of
    /// (rho_i . sigma) over the relation basis, where (rho_i . sigma) is the
    /// leaf relabeling l -> sigma(l) of the expansion.
    const std::vector<Vec>& action_matrix(const std::vector<int>& sigma) const {
        std::lock_guard<std::recursive_mutex> lock(cache_mu_.mu);
        auto it = action_cache_.find(sigma);
        if (it != action_cache_.end()) return it->second;
        Symbols gen_only;
        gen_only.gens = gens;
        std::vector<Tree> b = enumerate_basis(gen_only, rel_arity_, mode);
        std::vector<std::string> benc;
        for (const auto& t : b) benc.push_back(encode(t, gen_only));
        std::map<std::string, long> bidx;
        for (long i = 0; i < static_cast<long>(benc.size()); ++i) bidx[benc[i]] = i;
        auto coords = [&](const Elem& e) {
            Vec v(benc.size(), Rational(0));
            for (const auto& [m, c] : e) v[bidx.at(m)] = c;
            return v;
        };
        std::vector<Vec> B;
        for (const auto& e : rbasis_) B.push_back(coords(e));
        std::vector<Vec> A;
        for (long i = 0; i < relation_dim(); ++i) {
            Elem tr = translate(rbasis_[i], sigma, gen_only);
            auto x = express_in_span(B, coords(tr));
            if (!x) throw InternalInconsistency("relation space is not sigma-closed");
            A.push_back(*x);
        }
        return action_cache_.emplace(sigma, std::move(A)).first->second;
    }

    /// Solves x * rows = target exactly; nullopt when target is outside the span.
    static std::optional<Vec> express_in_span(const std::vector<Vec>& rows, const Vec& target) {
        if (rows.empty()) return std::nullopt;
        long n = static_cast<long>(rows.size());
        long nc = static_cast<long>(rows[0].size());
        // eliminate [rows | I], reduce target alongside
        std::vector<Vec> aug(n, Vec(nc + n, Rational(0)));
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < nc; ++j) aug[i][j] = rows[i][j];
            aug[i][nc + i] = 1;
        }
        detail::rref(aug);
        Vec t = target;
        Vec x(n, Rational(0));
        for (const auto& row : aug) {
            long piv = -1;
            for (long j = 0; j < nc; ++j)
                if (row[j] != 0) {
                    piv = j;
                    break;
                }
            if (piv < 0) continue;
            Rational f = t[piv];
            if (f == 0) continue;
            for (long j = 0; j < nc; ++j) t[j] -= f * row[j];
            for (long j = 0; j < n; ++j) x[j] += f * row[nc + j];
        }
        for (const auto& v : t)
            if (v != 0) return std::nullopt;
        return x;
    }

    static Tree* find_rel(Tree& t) {
        if (t.is_rel()) return &t;
        for (auto& k : t.kids)
            if (Tree* r = find_rel(k)) return r;
        return nullptr;
    }
    static const Tree* find_rel(const Tree& t) {
        if (t.is_rel()) return &t;
        for (const auto& k : t.kids)
            if (const Tree* r = find_rel(k)) return r;
        return nullptr;
    }

    /// Substitutes children into the slot leaves 1..m of `pattern` (children
    /// carry absolute leaf labels). Koszul signs follow the left-to-right
    /// convention, applied slot by slot from the rightmost slot down.
    std::pair<Tree, int> substitute_slots(const Tree& pattern,
                                          const std::vector<Tree>& children) const {
        int m = static_cast<int>(children.size());
        // mark slot leaves as negative to avoid clashes with absolute labels
        std::function<Tree(const Tree&)> mark = [&](const Tree& t) -> Tree {
            if (t.is_leaf()) return Tree::make_leaf(-t.leaf);
            Tree o = t;
            for (auto& k : o.kids) k = mark(k);
            return o;
        };
        Tree cur = mark(pattern);
        int sign = 1;
        for (int s = m; s >= 1; --s) {
            bool found = false;
            int ld = marked_left_degree(cur, -s, found);
            if (!found) throw InternalInconsistency("pattern slot missing");
            int di = tree_degree(children[s - 1], symbols_);
            if (di % 2 != 0 && ld % 2 != 0) sign = -sign;
            cur = replace_marked(cur, -s, children[s - 1]);
        }
        return {cur, sign};
    }

    int marked_left_degree(const Tree& t, int marker, bool& found) const {
        if (t.is_leaf()) {
            found = (t.leaf == marker);
            return 0;
        }
        int acc = 0;
        for (const auto& k : t.kids) {
            bool f = false;
            int d = marked_left_degree(k, marker, f);
            if (f) {
                found = true;
                return acc + d;
            }
            acc += tree_degree(k, symbols_);
        }
        found = false;
        return 0;
    }

    static Tree replace_marked(const Tree& t, int marker, const Tree& rep) {
        if (t.is_leaf()) return t.leaf == marker ? rep : t;
        Tree o = t;
        for (auto& k : o.kids) k = replace_marked(k, marker, rep);
        return o;
    }

    static Tree replace_rel(const Tree& t, const Tree& rep) {
        if (t.is_rel()) return rep;
        Tree o = t;
        for (auto& k : o.kids) k = replace_rel(k, rep);
        return o;
    }
};

/// Alias-permuted view of a pi matrix: rows/cols in the paper's order with
/// the recorded signs applied; requires complete alias coverage at the arity.
inline SparseMatrix aliased_view(const Presentation& p, const PiMatrix& pm) {
    auto mit = p.module_aliases.find(pm.arity);
    auto bit = p.basis_aliases.find(pm.arity);
    if (mit == p.module_aliases.end() || bit == p.basis_aliases.end())
        throw Error("no aliases recorded for arity " + std::to_string(pm.arity));
    const auto& ralias = mit->second;
    const auto& calias = bit->second;
    if (ralias.size() != static_cast<size_t>(pm.mat.rows) ||
        calias.size() != static_cast<size_t>(pm.mat.cols))
        throw Error("alias table does not cover the pi matrix");
    std::map<std::string, long> ridx, cidx;
    for (long i = 0; i < pm.mat.rows; ++i) ridx[pm.mat.row_labels[i]] = i;
    for (long j = 0; j < pm.mat.cols; ++j) cidx[pm.mat.col_labels[j]] = j;
    SparseMatrix out(pm.mat.rows, pm.mat.cols);
    for (size_t i = 0; i < ralias.size(); ++i) out.row_labels[i] = ralias[i].name;
    for (size_t j = 0; j < calias.size(); ++j) out.col_labels[j] = calias[j].name;
    for (size_t i = 0; i < ralias.size(); ++i) {
        long src_r = ridx.at(ralias[i].canon);
        for (size_t j = 0; j < calias.size(); ++j) {
            long src_c = cidx.at(calias[j].canon);
            Rational v = pm.mat.at(src_r, src_c);
            if (v != 0)
                out.set(static_cast<long>(i), static_cast<long>(j),
                        v * ralias[i].sign * calias[j].sign);
        }
    }
    return out;
}

} // namespace opcoh

#endif
