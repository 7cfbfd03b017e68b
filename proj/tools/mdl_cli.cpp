#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "mdl/json_io.hpp"

namespace {

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw mdl::ParseError("cannot write " + out_path);
    f << payload;
}

struct EntropyArgs {
    std::string system_path;
    std::string kind = "auto";
    std::string base = "e";
    int max_n = 12;
    int decomp_len = 3;
    int pool = 0;
    double tol = 1e-6;
    std::string out_path;
    std::string format = "csv";
};

int cmd_entropy(const EntropyArgs& a) {
    mdl::ShiftSystem sys = mdl::shift_from_json(mdl::load_json_file(a.system_path));
    const bool topological =
        a.kind == "auto" ? sys.kind == mdl::ShiftKind::Sft : a.kind == "topological";

    mdl::EntropyConfig cfg;
    cfg.log_base = a.base == "2" ? mdl::LogBase::Two : mdl::LogBase::E;
    cfg.folner_max_n = a.max_n;
    cfg.decomposition_max_len = a.decomp_len;
    cfg.cover_pool_max_size = a.pool;
    cfg.tolerance = a.tol;

    const mdl::ConvergenceTable table = mdl::shift_entropy_table(sys, topological, cfg);
    if (a.format == "json")
        emit(mdl::table_to_json(table).dump(2) + "\n", a.out_path);
    else
        emit(mdl::table_to_csv(table), a.out_path);
    return 0;
}

struct CounterArgs {
    double eps = 0.0;
    std::string base = "2";
    std::string format = "text";
    std::string out_path;
};

int cmd_counterexample(const CounterArgs& a) {
    const mdl::CounterexampleReport rep = mdl::run_counterexample(a.eps);
    const mdl::LogBase base = a.base == "2" ? mdl::LogBase::Two : mdl::LogBase::E;
    if (a.format == "json") {
        emit(mdl::counterexample_to_json(rep, base).dump(2) + "\n", a.out_path);
        return 0;
    }
    const double scale = base == mdl::LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
    std::string text;
    text += "epsilon          " + g12(rep.eps) + "\n";
    text += "base             " + a.base + "\n";
    text += "h_palm_sub       " + g12(rep.palm_w * scale) + "\n";
    text += "h_palm_ambient   " + g12(rep.palm_v * scale) + "\n";
    text += "h_localized      " + g12(rep.localized * scale) + "\n";
    if (rep.anomaly)
        text += "anomaly          yes (the generated sub-object carries more palm "
                "entropy than the ambient algebra)\n";
    else
        text += "anomaly          no (ambient palm entropy dominates at this weight)\n";
    emit(text, a.out_path);
    return 0;
}

struct VerifyArgs {
    std::string suite;
    std::string lattice_path;
    std::string pairs_path;
    std::string out_path;
    std::string format = "text";
};

int cmd_verify(const VerifyArgs& a) {
    mdl::SuiteInputs in;
    if (!a.lattice_path.empty())
        in.lattice = mdl::measured_from_json(mdl::load_json_file(a.lattice_path));
    if (!a.pairs_path.empty())
        in.pairs = mdl::pairs_from_json(mdl::load_json_file(a.pairs_path));

    const mdl::SuiteReport rep = mdl::run_suite(a.suite, in);
    if (a.format == "json") {
        emit(mdl::report_to_json(rep).dump(2) + "\n", a.out_path);
    } else {
        std::string text = "suite: " + rep.suite + "\n";
        for (const mdl::Check& c : rep.checks)
            text += std::string(c.pass ? "  [PASS] " : "  [FAIL] ") + c.name + ": " +
                    c.detail + "\n";
        text += rep.passed()
                    ? "all " + std::to_string(rep.checks.size()) + " checks passed\n"
                    : std::to_string(rep.failed_count()) + " of " +
                          std::to_string(rep.checks.size()) + " checks failed\n";
        emit(text, a.out_path);
    }
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy of measured distributive lattices under group actions"};
    app.require_subcommand(1);

    EntropyArgs ea;
    CLI::App* ent = app.add_subcommand(
        "entropy", "ratio table h(window n)/n for a shift system file");
    ent->add_option("--system", ea.system_path, "shift system JSON file")->required();
    ent->add_option("--kind", ea.kind, "measure, topological, or auto (default)")
        ->check(CLI::IsMember({"auto", "measure", "topological"}));
    ent->add_option("--base", ea.base, "report log base: e (default) or 2")
        ->check(CLI::IsMember({"e", "2"}));
    ent->add_option("--max-n", ea.max_n, "largest window length")
        ->check(CLI::Range(1, 20));
    ent->add_option("--decomp-len", ea.decomp_len, "decomposition length bound");
    ent->add_option("--pool", ea.pool, "cover pool member bound, 0 = automatic");
    ent->add_option("--tol", ea.tol, "ratio convergence tolerance, 0 = no early stop");
    ent->add_option("--out", ea.out_path, "write to file instead of stdout");
    ent->add_option("--format", ea.format, "csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CounterArgs ca;
    CLI::App* cex = app.add_subcommand(
        "counterexample", "palm entropy of the three-point witness lattice");
    cex->add_option("--epsilon", ca.eps, "end point weight, in (0, 1/2)")->required();
    cex->add_option("--base", ca.base, "report log base: 2 (default) or e")
        ->check(CLI::IsMember({"e", "2"}));
    cex->add_option("--format", ca.format, "text (default) or json")
        ->check(CLI::IsMember({"text", "json"}));
    cex->add_option("--out", ca.out_path, "write to file instead of stdout");

    VerifyArgs va;
    CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", va.suite,
                    "one of: axioms, ornstein-weiss-preconditions, monotonicity, "
                    "functor-laws, localization-minimality, oracle-equivalence")
        ->required();
    ver->add_option("--lattice", va.lattice_path,
                    "measured lattice JSON file (axioms suite)");
    ver->add_option("--pairs", va.pairs_path, "factor pair JSON file (monotonicity)");
    ver->add_option("--out", va.out_path, "write to file instead of stdout");
    ver->add_option("--format", va.format, "text (default) or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (ent->parsed()) return cmd_entropy(ea);
        if (cex->parsed()) return cmd_counterexample(ca);
        return cmd_verify(va);
    } catch (const mdl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mdl::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mdl::StructuralError& e) {
        std::cerr << "invalid structure: " << e.what() << "\n";
        return 3;
    } catch (const mdl::InvariantError& e) {
        std::cerr << "internal invariant broken: " << e.what() << "\n";
        return 3;
    }
}
