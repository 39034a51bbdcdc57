#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "opcoh/presentation.hpp"

using namespace opcoh;

namespace {

std::string data_path(const std::string& name) {
    return std::string(OPCOH_DATA_DIR) + "/presentations/" + name + ".operad";
}

Presentation builtin(const std::string& name) { return Presentation::parse_file(data_path(name)); }

// the paper tables again (shared source of truth with test_linalg)
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

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    return p;
}

} // namespace

TEST_CASE("module bases have the announced dimensions") {
    auto ass = builtin("ass");
    REQUIRE(ass.module_basis(4).size() == 5);
    REQUIRE(ass.module_basis(2).size() == 0);  // below the relation arity
    auto lie = builtin("lie");
    REQUIRE(lie.module_basis(4).size() == 10);
    auto dig = builtin("digebra");
    REQUIRE(dig.module_basis(4).size() == 50);
    auto ai = builtin("ainfty-mu3");
    REQUIRE(ai.module_basis(7).size() == 8);
    REQUIRE(ai.module_basis(6).size() == 0);
}

TEST_CASE("arity-4 dimension formulas hold for every builtin") {
    for (const auto& [name, v, vp] :
         std::vector<std::tuple<std::string, long, long>>{{"ass", 5, 5},
                                                          {"lie", 15, 10},
                                                          {"ns-poisson", 40, 40},
                                                          {"digebra", 40, 50}}) {
        auto p = builtin(name);
        long dE = static_cast<long>(p.gens.size());
        long dR = static_cast<long>(p.stated.size());
        long fv = p.mode == Mode::NonSigma ? 5 * dE * dE * dE : 15 * dE * dE * dE;
        long fvp = p.mode == Mode::NonSigma ? 5 * dE * dR : 10 * dE * dR;
        INFO(name);
        REQUIRE(fv == v);
        REQUIRE(fvp == vp);
        REQUIRE(static_cast<long>(p.basis(4).size()) == v);
        REQUIRE(static_cast<long>(p.module_basis(4).size()) == vp);
    }
}

TEST_CASE("assembled ass pi(4) equals the classical table under aliases") {
    auto ass = builtin("ass");
    SparseMatrix m = aliased_view(ass, ass.pi(4));
    REQUIRE(m.rows == 5);
    REQUIRE(m.cols == 5);
    std::vector<std::string> rl = {"1", "2", "3", "4", "5"};
    std::vector<std::string> cl = {"a", "b", "c", "d", "e"};
    REQUIRE(m.row_labels == rl);
    REQUIRE(m.col_labels == cl);
    for (long i = 0; i < 5; ++i)
        for (long j = 0; j < 5; ++j) REQUIRE(m.at(i, j) == kAss[i][j]);
}

TEST_CASE("assembled lie pi(4) equals the classical table under aliases") {
    auto lie = builtin("lie");
    SparseMatrix m = aliased_view(lie, lie.pi(4));
    REQUIRE(m.rows == 10);
    REQUIRE(m.cols == 15);
    for (long i = 0; i < 10; ++i)
        for (long j = 0; j < 15; ++j) {
            INFO("entry " << i + 1 << "," << j + 1);
            REQUIRE(m.at(i, j) == kLie[i][j]);
        }
}

TEST_CASE("assembled A-infinity pi(7) equals the classical table under aliases") {
    auto ai = builtin("ainfty-mu3");
    SparseMatrix m = aliased_view(ai, ai.pi(7));
    REQUIRE(m.rows == 8);
    REQUIRE(m.cols == 12);
    for (long i = 0; i < 8; ++i)
        for (long j = 0; j < 12; ++j) REQUIRE(m.at(i, j) == kKozulinka[i][j]);
    // two nonzero entries in every column
    for (long j = 0; j < 12; ++j) REQUIRE(m.col_nnz(j) == 2);
}

TEST_CASE("operad dimensions via cokernel ranks") {
    REQUIRE(builtin("ass").operad_dims(4) == std::vector<long>{1, 1, 1});
    REQUIRE(builtin("digebra").operad_dims(4) == std::vector<long>{2, 3, 4});
    REQUIRE(builtin("ns-poisson").operad_dims(4) == std::vector<long>{2, 4, 8});
    REQUIRE(builtin("lie").operad_dims(4) == std::vector<long>{1, 2, 6});
}

TEST_CASE("rank-nullity per builtin per arity") {
    for (const std::string name : {"ass", "lie", "ns-poisson", "digebra"}) {
        auto p = builtin(name);
        for (int n = 3; n <= 4; ++n) {
            const auto& pm = p.pi(n);
            REQUIRE(rank(pm.mat) + kernel(pm.mat).dim() == pm.mat.rows);
        }
    }
    auto ai = builtin("ainfty-mu3");
    const auto& pm = ai.pi(7);
    REQUIRE(rank(pm.mat) + kernel(pm.mat).dim() == pm.mat.rows);
}

TEST_CASE("pi is Sigma-equivariant for lie at arity 4") {
    auto lie = builtin("lie");
    const auto& rows = lie.module_encodings(4);
    std::vector<int> perm = identity_perm(4);
    do {
        for (const auto& renc : rows) {
            Elem e = lie.monomial_elem(renc);
            Elem lhs = lie.pi_of_elem(lie.act_module(e, perm));
            Elem rhs = lie.act(lie.pi_of_elem(e), perm);
            REQUIRE(lhs == rhs);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("presentation text round-trips") {
    for (const std::string name : {"ass", "lie", "ns-poisson", "digebra", "ainfty-mu3"}) {
        auto p = builtin(name);
        auto q = Presentation::parse(p.write());
        REQUIRE(p.same_as(q));
        REQUIRE(q.same_as(p));
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        Presentation::parse("operad x\nmode nonsigma\ngen m arity 2\nrel r : m(1,m(2,4))\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.line == 4);
    }
    REQUIRE_THROWS_AS(Presentation::parse("operad x\nmode bogus\n"), ParseError);
    // dependent relations are rejected
    REQUIRE_THROWS_AS(
        Presentation::parse("operad x\nmode nonsigma\ngen m arity 2\n"
                            "rel r1 : m(1,m(2,3)) - m(m(1,2),3)\n"
                            "rel r2 : 2*m(1,m(2,3)) - 2*m(m(1,2),3)\n"),
        Error);
}

TEST_CASE("dependent relation lists are rejected") {
    // r3 = r2 - r1, so the stated list is not independent
    REQUIRE_THROWS_AS(Presentation::parse(
                          "operad x\nmode nonsigma\ngen o arity 2\ngen b arity 2\n"
                          "rel r1 : o(1,o(2,3)) - o(o(1,2),3)\n"
                          "rel r2 : o(1,o(2,3)) - b(1,b(2,3))\n"
                          "rel r3 : o(o(1,2),3) - b(1,b(2,3))\n"),
                      Error);
}

TEST_CASE("nonsigma leaf order is enforced") {
    REQUIRE_THROWS_AS(
        Presentation::parse("operad x\nmode nonsigma\ngen m arity 2\nrel r : m(2,m(1,3))\n"),
        ParseError);
}

TEST_CASE("a stated relation that is not sigma-closed gets translate basis vectors") {
    // a single Jacobi-like term: its orbit spans all three brackets
    auto p = Presentation::parse(
        "operad halfjac\nmode symmetric\ngen br arity 2 sym anti\nrel r : br(1,br(2,3))\n");
    REQUIRE(p.relation_dim() == 3);
    REQUIRE(p.module_basis(4).size() == 30);  // 10 * dim E * dim R
    const auto& pm = p.pi(4);
    REQUIRE(rank(pm.mat) + kernel(pm.mat).dim() == pm.mat.rows);
    // the ideal is the whole bracket span, so P(3) = 0
    REQUIRE(p.operad_dims(3) == std::vector<long>{1, 0});
}

TEST_CASE("pi rows are nonzero and labeled canonically") {
    auto dig = builtin("digebra");
    const auto& pm = dig.pi(4);
    for (long i = 0; i < pm.mat.rows; ++i) {
        REQUIRE(pm.mat.row_nnz(i) > 0);
        REQUIRE(pm.mat.row_labels[i] == encode(pm.row_trees[i], dig.symbols()));
    }
}
