#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opcoh/matrix.hpp"
#include "opcoh/presentation.hpp"

using namespace opcoh;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(OPCOH_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WEXITSTATUS(status);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("basis subcommand lists the bases with the formula line") {
    auto r = run("basis ass 4");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("dim F(E)(4) = 5") != std::string::npos);
    REQUIRE(r.out.find("dim F(E)<R>(4) = 5") != std::string::npos);
    REQUIRE(r.out.find("formula check at n=4: dim V = 5 (ok), dim V' = 5 (ok)") !=
            std::string::npos);
    auto rl = run("basis lie 4");
    REQUIRE(rl.out.find("dim F(E)(4) = 15") != std::string::npos);
    REQUIRE(rl.out.find("dim F(E)<R>(4) = 10") != std::string::npos);
    auto rd = run("basis digebra 4");
    REQUIRE(rd.out.find("dim F(E)(4) = 40") != std::string::npos);
    REQUIRE(rd.out.find("dim F(E)<R>(4) = 50") != std::string::npos);
}

TEST_CASE("pimatrix emits the aliased CSV and round-trips") {
    fs::path tmp = fs::temp_directory_path() / "opcoh_cli_test";
    fs::remove_all(tmp);
    auto r = run("pimatrix ass 4 --out " + tmp.string());
    REQUIRE(r.code == 0);
    auto m = SparseMatrix::from_csv_string(slurp(tmp / "ass_pi_4.csv"));
    REQUIRE(m.rows == 5);
    REQUIRE(m.cols == 5);
    REQUIRE(m.at(0, 0) == -1);
    REQUIRE(m.at(0, 1) == 1);
    REQUIRE(m.at(4, 4) == 1);
    REQUIRE(m.row_labels == std::vector<std::string>{"1", "2", "3", "4", "5"});
    // CSV round trip through the library is bit-identical
    REQUIRE(SparseMatrix::from_csv_string(m.to_csv_string()) == m);
    // Jacobi at arity 3 is a single row
    auto r3 = run("pimatrix lie 3 --out " + tmp.string());
    REQUIRE(r3.code == 0);
    auto m3 = SparseMatrix::from_csv_string(slurp(tmp / "lie_pi_3.csv"));
    REQUIRE(m3.rows == 1);
    REQUIRE(m3.cols == 3);
    // and the Moebius support
    auto r7 = run("pimatrix ainfty-mu3 7 --out " + tmp.string());
    REQUIRE(r7.code == 0);
    auto m7 = SparseMatrix::from_csv_string(slurp(tmp / "ainfty-mu3_pi_7.csv"));
    REQUIRE(m7.rows == 8);
    REQUIRE(m7.cols == 12);
    REQUIRE(m7.nnz() == 24);
}

TEST_CASE("coherence subcommand, text and json") {
    auto r = run("coherence ass 4");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("dim C       = 1") != std::string::npos);
    auto rj = run("coherence digebra 4 --json");
    REQUIRE(rj.code == 0);
    REQUIRE(rj.out.find("\"dim_C\": 14") != std::string::npos);
    auto rl = run("coherence lie 4");
    REQUIRE(rl.out.find("dim C       = 1") != std::string::npos);
}

TEST_CASE("graph subcommand classification lines") {
    auto r = run("graph lie 3");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("classification: neither") != std::string::npos);
    auto rp = run("graph lie 4 --dual --dot");
    REQUIRE(rp.code == 0);
    REQUIRE(rp.out.find("classification: dual_graphlike") != std::string::npos);
    REQUIRE(rp.out.find("10 vertices, 15 edges") != std::string::npos);
    REQUIRE(rp.out.find("girth 5") != std::string::npos);
    REQUIRE(rp.out.find("graph \"lie_4_dual\"") != std::string::npos);
    auto ra = run("graph ass 4 --orient --dot");
    REQUIRE(ra.code == 0);
    REQUIRE(ra.out.find("digraph") != std::string::npos);
    REQUIRE(ra.out.find("flipped vertices: none") != std::string::npos);
}

TEST_CASE("koszul subcommand") {
    auto r = run("koszul ass");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("dims  P!(2..4) = 1 1 1") != std::string::npos);
    REQUIRE(r.out.find("dim C by formula = 1") != std::string::npos);
    auto rn = run("koszul ns-poisson");
    REQUIRE(rn.out.find("dims  P!(2..4) = 2 4 8") != std::string::npos);
    REQUIRE(rn.out.find("dim C by formula = 8") != std::string::npos);
    auto rl = run("koszul lie");
    REQUIRE(rl.out.find("dim C by formula = 1") != std::string::npos);
    REQUIRE(rl.out.find("consistent with Koszulness") != std::string::npos);
}

TEST_CASE("words subcommand") {
    auto r = run("words ass 4 --labels oslicek");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("1 word equation(s)") != std::string::npos);
    REQUIRE(r.out.find("(1⊗Phi) (1⊗Δ⊗1)(Phi) (Phi⊗1) = "
                       "(1^2⊗Δ)(Phi) (Δ⊗1^2)(Phi)") != std::string::npos);
    auto rm = run("words ainfty-mu3 7 --labels derived");
    REQUIRE(rm.code == 0);
    REQUIRE(rm.out.find("cycle rank = 5") != std::string::npos);
    REQUIRE(rm.out.find("5 word equation(s)") != std::string::npos);
}

TEST_CASE("check-all passes for every builtin") {
    for (const std::string name : {"ass", "lie", "ns-poisson", "digebra", "ainfty-mu3"}) {
        auto r = run("check-all " + name);
        INFO(name << "\n" << r.out);
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("CHECK-ALL PASS") != std::string::npos);
    }
}

TEST_CASE("errors exit nonzero with diagnostics") {
    auto r = run("basis nonexistent-operad 4");
    REQUIRE(r.code == 1);
    REQUIRE(r.out.find("error:") != std::string::npos);
    // parse error with a line number
    fs::path tmp = fs::temp_directory_path() / "opcoh_bad.operad";
    std::ofstream(tmp) << "operad bad\nmode nonsigma\ngen m arity 2\nrel r : m(1,zz(2,3))\n";
    auto rb = run("basis " + tmp.string() + " 4");
    REQUIRE(rb.code == 1);
    REQUIRE(rb.out.find("line 4") != std::string::npos);
    // arity cap
    auto rc = run("basis lie 8");
    REQUIRE(rc.code == 1);
    REQUIRE(rc.out.find("--force") != std::string::npos);
}

TEST_CASE("presentation files written by the tool re-parse identically") {
    for (const std::string name : {"ass", "lie", "digebra"}) {
        auto p = Presentation::parse_file(std::string(OPCOH_DATA_DIR) + "/presentations/" + name +
                                          ".operad");
        auto q = Presentation::parse(p.write());
        REQUIRE(p.same_as(q));
    }
}
