// Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
// Every tolerance is exact; the expected values are frozen from the classical
// tables and from independent brute-force computation.

#include <catch2/catch_amalgamated.hpp>

#include <iostream>
#include <map>
#include <random>
#include <set>

#include "opcoh/coherence.hpp"
#include "opcoh/duality.hpp"
#include "opcoh/graphs.hpp"
#include "opcoh/words.hpp"

using namespace opcoh;

namespace {

Presentation builtin(const std::string& name) {
    return Presentation::parse_file(std::string(OPCOH_DATA_DIR) + "/presentations/" + name +
                                    ".operad");
}

struct Criterion {
    int id;
    std::string text;
    bool ok = true;

    void check(bool cond) { ok = ok && cond; }
    ~Criterion() {
        std::cout << "[criterion " << id << "] " << (ok ? "PASS" : "FAIL") << " - " << text
                  << std::endl;
    }
};

const int kAss[5][5] = {{-1, 1, 0, 0, 0},
                        {0, -1, 1, 0, 0},
                        {0, 0, 1, -1, 0},
                        {0, 0, 0, 1, -1},
                        {-1, 0, 0, 0, 1}};

const int kLie[10][15] = {
    {1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
    {0, 1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, -1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
    {-1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1, -1, 0},
    {0, 0, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, 1, 0},
    {0, 0, 0, 0, 0, 0, -1, 1, -1, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, -1}};

const int kKozulinka[8][12] = {{1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0},
                               {0, 1, 0, 0, 0, 0, 0, 0, 0, -1, -1, 0},
                               {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1},
                               {1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1}};

} // namespace

TEST_CASE("criterion 1: Ass pentagon table, kernel and the element p") {
    Criterion c{1, "Ass pi(4) table exact; ker dim 1; kernel vector equals p"};
    auto ass = builtin("ass");
    SparseMatrix m = aliased_view(ass, ass.pi(4));
    bool table = m.rows == 5 && m.cols == 5;
    for (long i = 0; i < 5; ++i)
        for (long j = 0; j < 5; ++j) table = table && m.at(i, j) == kAss[i][j];
    c.check(table);
    REQUIRE(table);

    Subspace ker = kernel(ass.pi(4).mat);
    c.check(ker.dim() == 1);
    REQUIRE(ker.dim() == 1);
    // p has coefficients (1,-1,1,-1,1) against the rows (5,1,4,2,3); build it
    // through the alias table and compare with the normalized kernel basis
    std::map<std::string, long> row_of;
    for (long i = 0; i < 5; ++i) row_of[ass.pi(4).mat.row_labels[i]] = i;
    Vec p_vec(5, Rational(0));
    std::vector<std::pair<std::string, int>> p_coeffs = {
        {"5", 1}, {"1", -1}, {"4", 1}, {"2", -1}, {"3", 1}};
    for (const auto& [nm, coef] : p_coeffs) {
        const auto& aliases = ass.module_aliases.at(4);
        auto it = std::find_if(aliases.begin(), aliases.end(),
                               [&](const PaperAlias& a) { return a.name == nm; });
        REQUIRE(it != aliases.end());
        p_vec[row_of.at(it->canon)] = Rational(coef * it->sign);
    }
    // normalized kernel representative is p up to the overall sign convention
    bool is_p = ker.basis[0] == p_vec;
    if (!is_p) {
        Vec neg = p_vec;
        for (auto& x : neg) x = -x;
        is_p = ker.basis[0] == neg;
    }
    c.check(is_p);
    REQUIRE(is_p);
}

TEST_CASE("criterion 2: Lie matrix, Petersen certificate, flips, component sum") {
    Criterion c{2, "Lie pi(4) exact; ker = <ell>; Petersen; flips {3,6,7,9}; sum ~ ell"};
    auto lie = builtin("lie");
    SparseMatrix m = aliased_view(lie, lie.pi(4));
    bool table = m.rows == 10 && m.cols == 15;
    for (long i = 0; i < 10; ++i)
        for (long j = 0; j < 15; ++j) table = table && m.at(i, j) == kLie[i][j];
    c.check(table);
    REQUIRE(table);

    Subspace ker = kernel(lie.pi(4).mat);
    c.check(ker.dim() == 1);
    REQUIRE(ker.dim() == 1);
    // ell = -1 -2 +3 -4 -5 +6 +7 -8 +9 -10 through the aliases
    std::map<std::string, long> row_of;
    for (long i = 0; i < 10; ++i) row_of[lie.pi(4).mat.row_labels[i]] = i;
    Vec ell(10, Rational(0));
    std::map<std::string, int> ell_coeff = {{"1", -1}, {"2", -1}, {"3", 1}, {"4", -1},
                                            {"5", -1}, {"6", 1},  {"7", 1}, {"8", -1},
                                            {"9", 1},  {"10", -1}};
    std::map<std::string, std::string> name_of;
    for (const auto& a : lie.module_aliases.at(4)) {
        ell[row_of.at(a.canon)] = Rational(ell_coeff.at(a.name) * a.sign);
        name_of[a.canon] = a.name;
    }
    bool ell_in_ker = ker.contains(ell);
    c.check(ell_in_ker);
    REQUIRE(ell_in_ker);

    auto g = tel_a(BipartiteGraph::from(lie.pi(4)), TelAGraph::Kind::Dual);
    bool petersen = g.vertex_labels.size() == 10 && g.edges.size() == 15 &&
                    g.is_regular(3) && g.girth() == 5;
    c.check(petersen);
    REQUIRE(petersen);

    auto o = orient(g);
    // flips in paper labels, normalized so that row 1 is not flipped
    std::map<std::string, int> alias_sign;
    for (const auto& a : lie.module_aliases.at(4)) alias_sign[a.canon] = a.sign;
    int global = 0;
    for (size_t i = 0; i < g.vertex_labels.size(); ++i)
        if (name_of.at(g.vertex_labels[i]) == "1")
            global = o.vertex_sign[i] * alias_sign.at(g.vertex_labels[i]);
    std::set<std::string> flipped;
    for (size_t i = 0; i < g.vertex_labels.size(); ++i)
        if (o.vertex_sign[i] * alias_sign.at(g.vertex_labels[i]) * global < 0)
            flipped.insert(name_of.at(g.vertex_labels[i]));
    bool flips_ok = flipped == std::set<std::string>{"3", "6", "7", "9"};
    c.check(flips_ok);
    REQUIRE(flips_ok);

    auto sums = component_sums(g, o);
    bool sum_ok = sums.size() == 1 && ker.contains(sums[0]);
    // proportional to ell: both span the same 1-dimensional kernel
    c.check(sum_ok);
    REQUIRE(sum_ok);
}

TEST_CASE("criterion 3: arity-4 dimension formulas") {
    Criterion c{3, "dim V(4)/V'(4) formulas: ass 5/5, lie 15/10, ns-poisson 40/40, digebra 40/50"};
    for (const auto& [name, v, vp] :
         std::vector<std::tuple<std::string, size_t, size_t>>{{"ass", 5, 5},
                                                              {"lie", 15, 10},
                                                              {"ns-poisson", 40, 40},
                                                              {"digebra", 40, 50}}) {
        auto p = builtin(name);
        long dE = static_cast<long>(p.gens.size());
        long dR = static_cast<long>(p.stated.size());
        size_t fv = p.mode == Mode::NonSigma ? 5 * dE * dE * dE : 15 * dE * dE * dE;
        size_t fvp = p.mode == Mode::NonSigma ? 5 * dE * dR : 10 * dE * dR;
        bool ok = p.basis(4).size() == v && p.module_basis(4).size() == vp && fv == v && fvp == vp;
        c.check(ok);
        REQUIRE(ok);
    }
}

TEST_CASE("criterion 4: the closed formula matches the coherence module") {
    Criterion c{4, "cp_formula = dim C: ass 1, lie 1, ns-poisson 8, digebra 14"};
    for (const auto& [name, expect] : std::vector<std::pair<std::string, long>>{
             {"ass", 1}, {"lie", 1}, {"ns-poisson", 8}, {"digebra", 14}}) {
        auto p = builtin(name);
        auto dims = p.operad_dims(4);
        long formula = cp_formula(dims[0], dims[1], dims[2], p.mode);
        long computed = coherence_constraints(p, 4).dim_C;
        bool ok = formula == expect && computed == expect;
        c.check(ok);
        REQUIRE(ok);
    }
}

TEST_CASE("criterion 5: dim C(4) = dim P!(4); Lie! and Ass! dims") {
    Criterion c{5, "quadratic duals: C(4)=P!(4) for all four; Lie!=Comm dims; Ass!=Ass dims"};
    for (const std::string name : {"ass", "lie", "ns-poisson", "digebra"}) {
        auto tm = theorem_main_check(builtin(name));
        c.check(tm.ok);
        REQUIRE(tm.ok);
    }
    bool lie_comm = quadratic_dual(builtin("lie")).operad_dims(4) == std::vector<long>{1, 1, 1};
    bool ass_ass = quadratic_dual(builtin("ass")).operad_dims(4) == std::vector<long>{1, 1, 1};
    c.check(lie_comm);
    c.check(ass_ass);
    REQUIRE(lie_comm);
    REQUIRE(ass_ass);
}

TEST_CASE("criterion 6: generating-function residuals vanish through degree 4") {
    Criterion c{6, "g_P(-g_P!(-x)) = x for (ass,ass), (lie,comm), (nsp,nsp), (digebra,dual)"};
    auto zero = [](const std::vector<Rational>& v) {
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
    };
    auto series = [](Mode m, std::vector<long> d) {
        DimSeries s;
        s.mode = m;
        s.dims = std::move(d);
        return s;
    };
    auto ass = builtin("ass");
    c.check(zero(koszul_gf_check(DimSeries::of(ass, 4), series(Mode::NonSigma, {1, 1, 1, 1}), 4)));
    auto lie = builtin("lie");
    c.check(zero(koszul_gf_check(DimSeries::of(lie, 4), series(Mode::Symmetric, {1, 1, 1, 1}), 4)));
    auto nsp = builtin("ns-poisson");
    c.check(zero(koszul_gf_check(DimSeries::of(nsp, 4), series(Mode::NonSigma, {1, 2, 4, 8}), 4)));
    auto dig = builtin("digebra");
    auto dd = DimSeries::of(quadratic_dual(dig), 4);
    c.check(dd.dims == std::vector<long>{1, 2, 5, 14});
    c.check(zero(koszul_gf_check(DimSeries::of(dig, 4), dd, 4)));
    REQUIRE(c.ok);
}

TEST_CASE("criterion 7: graph/algebra equivalence at arity 4") {
    Criterion c{7, "cycle rank = dim D(4): ass 1, nsp 8 (eight pentagons), digebra 14 + span"};
    for (const auto& [name, expect] : std::vector<std::pair<std::string, long>>{
             {"ass", 1}, {"ns-poisson", 8}, {"digebra", 14}}) {
        auto p = builtin(name);
        auto g = tel_a(BipartiteGraph::from(p.pi(4)), TelAGraph::Kind::Graphlike);
        auto cycles = cycle_basis(g);
        auto rep = coherence_constraints(p, 4);
        bool ok = static_cast<long>(cycles.size()) == rep.dim_D && rep.dim_D == expect;
        c.check(ok);
        REQUIRE(ok);
    }
    // ns-poisson: 8 components, each a pentagon
    auto nsp = builtin("ns-poisson");
    auto g8 = tel_a(BipartiteGraph::from(nsp.pi(4)), TelAGraph::Kind::Graphlike);
    bool comps = g8.component_count() == 8 && g8.vertex_labels.size() == 40 &&
                 g8.edges.size() == 40 && g8.girth() == 5;
    for (const auto& cyc : cycle_basis(g8)) comps = comps && cyc.length() == 5;
    c.check(comps);
    REQUIRE(comps);
    // digebra: the fourteen printed cycles span the computed cycle space;
    // exercised in detail by the graphs suite, re-checked here via the
    // minimum basis length multiset
    auto dig = builtin("digebra");
    auto dg = tel_a(BipartiteGraph::from(dig.pi(4)), TelAGraph::Kind::Graphlike);
    std::multiset<long> lens;
    for (const auto& cyc : minimum_cycle_basis(dg)) lens.insert(cyc.length());
    bool multiset_ok = lens == std::multiset<long>{4, 4, 4, 4, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6};
    c.check(multiset_ok);
    REQUIRE(multiset_ok);
}

TEST_CASE("criterion 8: the A-infinity example") {
    Criterion c{8, "pi(7) support = classical 8x12 table; rank 7; Moebius graph connected"};
    auto ai = builtin("ainfty-mu3");
    SparseMatrix m = aliased_view(ai, ai.pi(7));
    bool support = m.rows == 8 && m.cols == 12;
    for (long i = 0; i < 8; ++i)
        for (long j = 0; j < 12; ++j) {
            support = support && ((m.at(i, j) != 0) == (kKozulinka[i][j] != 0));
            support = support && m.at(i, j) == kKozulinka[i][j];
        }
    for (long j = 0; j < 12; ++j) support = support && m.col_nnz(j) == 2;
    c.check(support);
    REQUIRE(support);

    long r = rank(ai.pi(7).mat);
    long kdim = kernel(ai.pi(7).mat).dim();
    bool rank_ok = kdim == 8 - r && kdim == 1;  // golden: the kernel is one-dimensional
    c.check(rank_ok);
    REQUIRE(rank_ok);

    auto g = tel_a(BipartiteGraph::from(ai.pi(7)), TelAGraph::Kind::Dual);
    long cycle_rank = static_cast<long>(cycle_basis_any(g).size());
    bool graph_ok = g.vertex_labels.size() == 8 && g.edges.size() == 12 &&
                    g.component_count() == 1 &&
                    cycle_rank == static_cast<long>(g.edges.size() - g.vertex_labels.size() + 1);
    c.check(graph_ok);
    REQUIRE(graph_ok);
    // report text compares the computed rank with the classical remark
    std::cout << "    note: computed cycle rank " << cycle_rank
              << " (the classical text remarks on 6 generators; the computed value for a "
                 "connected graph with 8 vertices and 12 edges is 5)"
              << std::endl;
    REQUIRE(cycle_rank == 5);
}

TEST_CASE("criterion 9: the decorated pentagon yields the pentagon identity") {
    Criterion c{9, "one word equation, equivalent to the pentagon identity"};
    auto ass = builtin("ass");
    auto g = tel_a(BipartiteGraph::from(ass.pi(4)), TelAGraph::Kind::Graphlike);
    auto o = orient(g);
    auto dg = decorate_derived(g, o, derive_quantized(ass, 4));
    auto eqs = derive_equations(dg);
    bool one = eqs.size() == 1;
    c.check(one);
    REQUIRE(one);
    auto full = [](const std::string& d) { return CoeffSymbol{"Phi", d}; };
    Word ppp = {{full("(1⊗Phi)"), 1},
                {full("(1⊗Δ⊗1)(Phi)"), 1},
                {full("(Phi⊗1)"), 1},
                {full("(Δ⊗1^2)(Phi)"), -1},
                {full("(1^2⊗Δ)(Phi)"), -1}};
    bool equiv = word_equivalent(eqs[0].word, ppp);
    c.check(equiv);
    REQUIRE(equiv);
}

TEST_CASE("criterion 10: property suites") {
    Criterion c{10, "rank-nullity, O in ker, Sigma-equivariance, canonical/compose laws, confluence"};
    // rank-nullity on all assembled matrices
    for (const std::string name : {"ass", "lie", "ns-poisson", "digebra"}) {
        auto p = builtin(name);
        for (int n = 3; n <= 4; ++n)
            c.check(rank(p.pi(n).mat) + kernel(p.pi(n).mat).dim() == p.pi(n).mat.rows);
    }
    {
        auto ai = builtin("ainfty-mu3");
        c.check(rank(ai.pi(7).mat) + kernel(ai.pi(7).mat).dim() == ai.pi(7).mat.rows);
        c.check(obvious_relations(ai, 7).dim() == 0);
    }
    // O(n) inside ker pi(n)
    {
        auto ass = builtin("ass");
        Subspace O5 = obvious_relations(ass, 5);
        c.check(O5.dim() == 3);
        c.check(kernel(ass.pi(5).mat).contains(O5));
    }
    // Sigma-equivariance of the Lie pi(4)
    {
        auto lie = builtin("lie");
        std::vector<int> perm = {1, 2, 3, 4};
        bool equi = true;
        do {
            for (const auto& renc : lie.module_encodings(4)) {
                Elem e = lie.monomial_elem(renc);
                equi = equi &&
                       lie.pi_of_elem(lie.act_module(e, perm)) == lie.act(lie.pi_of_elem(e), perm);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        c.check(equi);
    }
    // canonicalization idempotence and composition associativity at arities <= 4
    {
        Symbols sy;
        sy.gens.push_back({"br", 2, 0, Symmetry::Sign});
        bool laws = true;
        for (int n = 2; n <= 4; ++n)
            for (const auto& t : enumerate_basis(sy, n, Mode::Symmetric)) {
                auto [ct, s] = canonicalize(t, sy);
                laws = laws && encode(ct, sy) == encode(t, sy) && s == 1;
            }
        auto b2 = enumerate_basis(sy, 2, Mode::Symmetric);
        for (const auto& outer : enumerate_basis(sy, 3, Mode::Symmetric))
            for (const auto& x : b2)
                for (const auto& y : b2) {
                    auto [t1, c1] = compose(outer, 3, y, sy);
                    auto [t12, c12] = compose(t1, 1, x, sy);
                    auto [u1, d1] = compose(outer, 1, x, sy);
                    auto [u12, d12] = compose(u1, 4, y, sy);
                    laws = laws && encode(t12, sy) == encode(u12, sy) && c1 * c12 == d1 * d12;
                }
        c.check(laws);
    }
    // free-reduction confluence on 200 random words
    {
        std::mt19937 rng(31337);
        static const char* names[] = {"s", "t", "u", "v", "w", "x"};
        bool conf = true;
        for (int i = 0; i < 200; ++i) {
            Word w;
            int len = 1 + rng() % 30;
            for (int k = 0; k < len; ++k)
                w.emplace_back(CoeffSymbol{names[rng() % 6], ""}, rng() % 2 ? 1 : -1);
            Word a = reduce_word(w);
            // right-to-left reduction
            Word b = w;
            bool changed = true;
            while (changed) {
                changed = false;
                for (size_t k = b.size(); k >= 2; --k)
                    if (b[k - 2].first == b[k - 1].first && b[k - 2].second == -b[k - 1].second) {
                        b.erase(b.begin() + k - 2, b.begin() + k);
                        changed = true;
                        break;
                    }
            }
            conf = conf && a == b;
        }
        c.check(conf);
    }
    REQUIRE(c.ok);
}
