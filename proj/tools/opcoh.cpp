// Command-line front end: parse presentations, run the computations, write
// reports, matrices and DOT files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "opcoh/coherence.hpp"
#include "opcoh/duality.hpp"
#include "opcoh/graphs.hpp"
#include "opcoh/presentation.hpp"
#include "opcoh/report.hpp"
#include "opcoh/words.hpp"

namespace fs = std::filesystem;
using namespace opcoh;

namespace {

constexpr int kArityCap = 7;

fs::path data_dir() {
    if (const char* env = std::getenv("OPCOH_DATA")) return env;
#ifdef OPCOH_DATA_DIR
    if (fs::exists(OPCOH_DATA_DIR)) return OPCOH_DATA_DIR;
#endif
    return "data";
}

Presentation load(const std::string& name_or_path) {
    if (fs::exists(name_or_path)) return Presentation::parse_file(name_or_path);
    fs::path builtin = data_dir() / "presentations" / (name_or_path + ".operad");
    if (fs::exists(builtin)) return Presentation::parse_file(builtin.string());
    throw Error("no such presentation file or builtin: " + name_or_path);
}

void check_cap(int n, bool force) {
    if (n > kArityCap && !force)
        throw Error("arity " + std::to_string(n) + " above the default cap " +
                    std::to_string(kArityCap) +
                    " (bases grow factorially); pass --force to override");
}

void emit(const std::string& out_dir, const std::string& filename, const std::string& content) {
    if (out_dir.empty()) {
        std::cout << content;
        return;
    }
    fs::path p = fs::path(out_dir) / filename;
    atomic_write(p, content);
    std::cout << "wrote " << p.string() << "\n";
}

std::string classification_line(const Presentation& p, int n) {
    auto bg = BipartiteGraph::from(p.pi(n));
    return std::string("classification: ") + to_string(classify(bg));
}

int critical_arity(const Presentation& p) {
    int min_gen = p.gens.front().arity;
    for (const auto& g : p.gens) min_gen = std::min(min_gen, g.arity);
    return p.rel_arity() + min_gen - 1;
}

std::string basis_report(const Presentation& p, int n) {
    std::ostringstream os;
    os << report_header(p, n);
    const auto& b = p.basis_encodings(n);
    const auto& m = p.module_encodings(n);
    os << "dim F(E)(" << n << ") = " << b.size() << "\n";
    for (const auto& s : b) os << "  " << s << "\n";
    os << "dim F(E)<R>(" << n << ") = " << m.size() << "\n";
    for (const auto& s : m) os << "  " << s << "\n";
    if (n == 4 && p.rel_arity() == 3) {
        long dE = static_cast<long>(p.gens.size());
        long dR = static_cast<long>(p.stated.size());
        long v = p.mode == Mode::NonSigma ? 5 * dE * dE * dE : 15 * dE * dE * dE;
        long vp = p.mode == Mode::NonSigma ? 5 * dE * dR : 10 * dE * dR;
        os << "formula check at n=4: dim V = " << v << " (" << (v == (long)b.size() ? "ok" : "MISMATCH")
           << "), dim V' = " << vp << " (" << (vp == (long)m.size() ? "ok" : "MISMATCH") << ")\n";
    }
    return os.str();
}

std::string coherence_json(const Presentation& p, const CoherenceReport& r) {
    nlohmann::json j;
    j["arity"] = r.arity;
    j["dim_ker"] = r.dim_ker;
    j["dim_O"] = r.dim_O;
    j["dim_D"] = r.dim_D;
    j["dim_dec"] = r.dim_dec;
    j["dim_C"] = r.dim_C;
    j["constraints"] = r.rendered;
    (void)p;
    return j.dump(2) + "\n";
}

int run_words(const Presentation& p, int n, const std::string& labels, bool dual,
              const std::string& out_dir) {
    if (labels != "derived" && labels != "oslicek")
        throw Error("--labels must be 'derived' or 'oslicek'");
    auto bg = BipartiteGraph::from(p.pi(n));
    BClass cls = classify(bg);
    TelAGraph::Kind kind = dual ? TelAGraph::Kind::Dual : TelAGraph::Kind::Graphlike;
    if (!dual && cls == BClass::DualGraphlike) kind = TelAGraph::Kind::Dual;
    auto g = tel_a(bg, kind);
    auto o = orient(g);
    auto dp = derive_quantized(p, n);
    auto dg = decorate_derived(g, o, dp);
    auto eqs = derive_equations(dg);
    std::ostringstream os;
    os << report_header(p, n);
    os << classification_line(p, n) << "\n";
    os << "cycle rank = " << cycle_basis_any(g).size() << "\n";
    os << eqs.size() << " word equation(s):\n";
    for (const auto& e : eqs) {
        os << "  [" << e.cycle_ref << "]  " << render_word(e.word) << " = 1\n";
        os << "      i.e.  " << render_equation(e) << "\n";
    }
    emit(out_dir, p.name + "_words_" + std::to_string(n) + ".txt", os.str());
    return 0;
}

int run_check_all(const Presentation& p, const std::string& out_dir) {
    std::ostringstream os;
    int n_crit = critical_arity(p);
    os << report_header(p, n_crit);
    for (const auto& w : p.warnings) os << "warning: " << w << "\n";
    // dims and rank/nullity
    os << "dims P(2.." << n_crit << ") =";
    for (long d : p.operad_dims(n_crit)) os << " " << d;
    os << "\n";
    bool ok = true;
    for (int n = p.rel_arity(); n <= n_crit; ++n) {
        const auto& pm = p.pi(n);
        long r = rank(pm.mat), k = kernel(pm.mat).dim();
        bool rn = r + k == pm.mat.rows;
        ok = ok && rn;
        os << "pi(" << n << "): " << pm.mat.rows << "x" << pm.mat.cols << " rank " << r
           << " ker " << k << (rn ? "" : "  RANK-NULLITY FAILED") << "\n";
    }
    // coherence at the critical arity
    auto rep = coherence_constraints(p, n_crit);
    os << "coherence at " << n_crit << ": ker " << rep.dim_ker << ", O " << rep.dim_O << ", D "
       << rep.dim_D << ", dec " << rep.dim_dec << ", C " << rep.dim_C << "\n";
    // graph side
    auto bg = BipartiteGraph::from(p.pi(n_crit));
    BClass cls = classify(bg);
    os << classification_line(p, n_crit) << "\n";
    if (cls == BClass::Graphlike || cls == BClass::Both) {
        auto g = tel_a(bg, TelAGraph::Kind::Graphlike);
        auto cycles = cycle_basis(g);
        os << "Tel-A graph: " << g.vertex_labels.size() << " vertices, " << g.edges.size()
           << " edges, " << g.component_count() << " component(s), cycle rank "
           << cycles.size() << "\n";
        bool match = static_cast<long>(cycles.size()) == rep.dim_ker;
        os << "cycle rank vs dim ker pi: " << (match ? "equal" : "DIFFER") << "\n";
        ok = ok && match;
    }
    if (cls == BClass::DualGraphlike || cls == BClass::Both) {
        auto g = tel_a(bg, TelAGraph::Kind::Dual);
        os << "dual Tel-A graph: " << g.vertex_labels.size() << " vertices, " << g.edges.size()
           << " edges, " << g.component_count() << " component(s)\n";
        try {
            auto o = orient(g);
            auto sums = component_sums(g, o);
            Subspace ker = kernel(p.pi(n_crit).mat);
            bool inker = true;
            for (const auto& v : sums) inker = inker && ker.contains(v);
            os << "component sums: " << sums.size() << " vector(s), all in ker pi: "
               << (inker ? "yes" : "NO") << "\n";
            ok = ok && inker;
        } catch (const NoConsistentOrientation&) {
            os << "dual graph not orientable\n";
        } catch (const NotPlusMinusOne&) {
            os << "entries not +-1; orientation skipped\n";
        }
    }
    // duality for quadratic presentations
    bool quadratic = p.rel_arity() == 3;
    for (const auto& g : p.gens) quadratic = quadratic && g.arity == 2 && g.degree == 0;
    if (quadratic) {
        auto pd = p.operad_dims(4);
        long cp = cp_formula(pd[0], pd[1], pd[2], p.mode);
        auto tm = theorem_main_check(p);
        os << "cp formula = " << cp << ", dim C(4) = " << tm.dim_C4 << ", dim P!(4) = "
           << tm.dim_dual4 << (tm.ok && cp == tm.dim_C4 ? " (consistent)" : " (MISMATCH)") << "\n";
        ok = ok && tm.ok && cp == tm.dim_C4;
        auto d = quadratic_dual(p);
        auto res = koszul_gf_check(DimSeries::of(p, 4), DimSeries::of(d, 4), 4);
        bool zero = std::all_of(res.begin(), res.end(), [](const Rational& c) { return c == 0; });
        os << "gf residual zero through 4: " << (zero ? "yes" : "NO") << "\n";
        ok = ok && zero;
    }
    os << (ok ? "CHECK-ALL PASS" : "CHECK-ALL FAIL") << "\n";
    emit(out_dir, p.name + "_check.txt", os.str());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for operad coherence constraints"};
    app.require_subcommand(1);

    std::string pres, out_dir, mode_check;
    int arity = 4;
    bool force = false, raw = false, dual = false, do_orient = false, dot = false, json = false;
    std::string labels = "derived";

    auto add_common = [&](CLI::App* c, bool with_arity) {
        c->add_option("presentation", pres, "builtin name or path to a .operad file")->required();
        if (with_arity) c->add_option("arity", arity, "arity n")->required();
        c->add_option("--out", out_dir, "write reports into this directory");
        c->add_option("--mode", mode_check, "assert the presentation mode (nonsigma|symmetric)");
        c->add_flag("--force", force, "override the arity cap");
    };

    auto* c_basis = app.add_subcommand("basis", "list the F(E)(n) and F(E)<R>(n) bases");
    add_common(c_basis, true);

    auto* c_pi = app.add_subcommand("pimatrix", "assemble pi(n) and write it as CSV");
    add_common(c_pi, true);
    c_pi->add_flag("--raw", raw, "canonical labels even when paper aliases exist");
    c_pi->add_flag("--csv", [](std::int64_t) {}, "CSV output (always on; flag kept for symmetry)");

    auto* c_coh = app.add_subcommand("coherence", "kernel / obvious relations / constraints");
    add_common(c_coh, true);
    c_coh->add_flag("--json", json, "machine-readable report");

    auto* c_graph = app.add_subcommand("graph", "bipartite classification and Tel-A-graphs");
    add_common(c_graph, true);
    c_graph->add_flag("--dual", dual, "build the dual Tel-A-graph");
    c_graph->add_flag("--orient", do_orient, "search for a consistent orientation");
    c_graph->add_flag("--dot", dot, "emit DOT");

    auto* c_koszul = app.add_subcommand("koszul", "quadratic dual and dimension checks");
    add_common(c_koszul, false);

    auto* c_words = app.add_subcommand("words", "cyclic word equations of the quantized relations");
    add_common(c_words, true);
    c_words->add_option("--labels", labels, "derived|oslicek");
    c_words->add_flag("--dual", dual, "use the dual Tel-A-graph");

    auto* c_all = app.add_subcommand("check-all", "run every computation and cross-check");
    add_common(c_all, false);

    CLI11_PARSE(app, argc, argv);

    try {
        Presentation p = load(pres);
        if (!mode_check.empty()) {
            Mode want = mode_check == "symmetric" ? Mode::Symmetric : Mode::NonSigma;
            if (mode_check != "symmetric" && mode_check != "nonsigma")
                throw Error("--mode must be nonsigma|symmetric");
            if (p.mode != want)
                throw Error("presentation " + p.name + " declares the other mode");
        }
        for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
        if (c_basis->parsed()) {
            check_cap(arity, force);
            emit(out_dir, p.name + "_basis_" + std::to_string(arity) + ".txt",
                 basis_report(p, arity));
        } else if (c_pi->parsed()) {
            check_cap(arity, force);
            const auto& pm = p.pi(arity);
            bool aliased = !raw && p.module_aliases.count(arity) && p.basis_aliases.count(arity);
            SparseMatrix out = aliased ? aliased_view(p, pm) : pm.mat;
            emit(out_dir, p.name + "_pi_" + std::to_string(arity) + ".csv", out.to_csv_string());
        } else if (c_coh->parsed()) {
            check_cap(arity, force);
            auto rep = coherence_constraints(p, arity);
            std::string body = json ? coherence_json(p, rep)
                                    : report_header(p, arity) + coherence_text(rep);
            emit(out_dir,
                 p.name + "_coherence_" + std::to_string(arity) + (json ? ".json" : ".txt"), body);
        } else if (c_graph->parsed()) {
            check_cap(arity, force);
            auto bg = BipartiteGraph::from(p.pi(arity));
            std::ostringstream os;
            os << report_header(p, arity) << classification_line(p, arity) << "\n";
            BClass cls = classify(bg);
            bool can = dual ? (cls == BClass::DualGraphlike || cls == BClass::Both)
                            : (cls == BClass::Graphlike || cls == BClass::Both);
            os << "bipartite: " << bg.tree_labels.size() << " tree vertices, "
               << bg.rel_labels.size() << " relation vertices, " << bg.edges.size()
               << " edges\n";
            if (can) {
                auto g = apply_aliases(
                    p, tel_a(bg, dual ? TelAGraph::Kind::Dual : TelAGraph::Kind::Graphlike),
                    arity);
                os << (dual ? "dual " : "") << "Tel-A graph: " << g.vertex_labels.size()
                   << " vertices, " << g.edges.size() << " edges, " << g.component_count()
                   << " component(s), girth " << g.girth() << "\n";
                const Orientation* op = nullptr;
                Orientation o;
                if (do_orient) {
                    o = orient(g);
                    op = &o;
                    os << "orientation found; flipped vertices:";
                    bool any = false;
                    for (size_t i = 0; i < o.vertex_sign.size(); ++i)
                        if (o.vertex_sign[i] < 0) {
                            os << " " << g.vertex_labels[i];
                            any = true;
                        }
                    if (!any) os << " none";
                    os << "\n";
                }
                if (dot) {
                    std::string dotfile =
                        to_dot(g, p.name + "_" + std::to_string(arity) + (dual ? "_dual" : ""), op);
                    emit(out_dir,
                         p.name + "_" + std::to_string(arity) + (dual ? "_dual" : "") + ".dot",
                         dotfile);
                }
            }
            emit(out_dir, p.name + "_graph_" + std::to_string(arity) + ".txt", os.str());
        } else if (c_koszul->parsed()) {
            std::string body = report_header(p, 4) + duality_report(p, 4);
            emit(out_dir, p.name + "_koszul.txt", body);
        } else if (c_words->parsed()) {
            check_cap(arity, force);
            return run_words(p, arity, labels, dual, out_dir);
        } else if (c_all->parsed()) {
            check_cap(critical_arity(p), force);
            return run_check_all(p, out_dir);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
