#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chsh_atlas/factor_graphs.hpp"
#include "chsh_atlas/json_text.hpp"
#include "chsh_atlas/realizability.hpp"
#include "chsh_atlas/scenarios.hpp"
#include "chsh_atlas/suites.hpp"

namespace {

using namespace chsh;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson beliefs_report(const BeliefCollection& b) {
    ojson j = ojson::parse(beliefs_to_json(b, -1));
    ojson out;
    out["beliefs"] = j;
    try {
        out["corr_chsh"] = corr_chsh(b);
    } catch (const DegenerateMarginal& e) {
        out["corr_chsh"] = nullptr;
        out["corr_chsh_note"] = std::string("degenerate marginal: ") + e.what();
    }
    return out;
}

void print_lines(const SuiteResult& result, const std::string& format) {
    if (format == "json") {
        ojson arr = ojson::array();
        for (const CheckLine& l : result.lines)
            arr.push_back(ojson{{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        std::cout << dump_canonical(ojson{{"checks", arr}, {"all_pass", result.all_pass}});
    } else {
        for (const CheckLine& l : result.lines)
            std::printf("[%s] %s: %s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.detail.c_str());
        std::printf("%s\n", result.all_pass ? "all checks passed" : "SOME CHECKS FAILED");
    }
}

int cmd_marginals(const std::string& input, const std::string& format) {
    std::string text = slurp(input);
    ojson probe = ojson::parse(text);
    BeliefCollection b;
    if (probe.contains("rho")) {
        b = quantum_beliefs(model_from_json(text));
    } else if (probe.contains("type")) {
        b = beliefs_of(induced_pmf(snfg_from_json(text)));
    } else {
        throw std::runtime_error("input is neither a graph description (type) nor a model (rho)");
    }
    ojson rep = beliefs_report(b);
    if (format == "text") {
        std::cout << beliefs_to_json(b);
        if (!rep.at("corr_chsh").is_null())
            std::printf("corr_chsh = %s\n", fmt_sig12(rep.at("corr_chsh").get<double>()).c_str());
        return kExitOk;
    }
    std::cout << dump_canonical(rep);
    return kExitOk;
}

int cmd_check(const std::string& input, std::string sets_csv, const SearchConfig& cfg,
              double lm_tol, const std::string& format) {
    BeliefCollection b = beliefs_from_json(slurp(input));
    if (sets_csv.empty()) sets_csv = "lm,snfg,markov,fcyc,qnfg";
    std::vector<std::string> sets;
    {
        std::stringstream ss(sets_csv);
        std::string item;
        while (std::getline(ss, item, ',')) sets.push_back(item);
    }
    const double tsirelson = 2.0 * std::sqrt(2.0);
    std::optional<double> corr;
    try {
        corr = corr_chsh(b);
    } catch (const DegenerateMarginal&) {
    }

    // the exact joint-PMF test runs first so set-logic upgrades can use it
    std::optional<MembershipVerdict> snfg;
    auto need = [&](const std::string& s) {
        return std::find(sets.begin(), sets.end(), s) != sets.end();
    };
    if (need("snfg") || need("fcyc")) snfg = member_snfg(b);

    ojson rows = ojson::array();
    auto row = [&](const std::string& set, const char* status, const char* evidence,
                   const std::string& note, const ojson& extra = {}) {
        ojson r{{"set", set}, {"status", status}, {"evidence", evidence}, {"note", note}};
        if (!extra.is_null() && !extra.empty()) r["verdict"] = extra;
        rows.push_back(r);
    };

    for (const std::string& set : sets) {
        if (set == "lm") {
            LmReport rep = validate_lm(b, lm_tol);
            row("lm", rep.member ? "IN" : "OUT", "certified",
                rep.member ? "local consistency holds"
                           : "violated: " + rep.violations.front().constraint);
        } else if (set == "snfg") {
            row("snfg", status_name(snfg->status), "certified",
                snfg->status == MembershipStatus::IN ? "rational LP witness" : "Farkas certificate",
                snfg->to_json());
        } else if (set == "markov") {
            MembershipVerdict v = member_markov(b);
            row("markov", status_name(v.status), "certified",
                v.status == MembershipStatus::IN ? "chain reconstruction round trip"
                                                 : "chain reconstruction mismatch",
                v.to_json());
        } else if (set == "fcyc") {
            MembershipVerdict v = member_fcyc(b, cfg);
            if (v.status == MembershipStatus::UNKNOWN && snfg->status == MembershipStatus::OUT) {
                row("fcyc", "OUT", "certified", "inclusion: outside M(SNFG)");
            } else {
                row("fcyc", status_name(v.status),
                    v.status == MembershipStatus::IN ? "certified" : "numerical",
                    v.status == MembershipStatus::IN
                        ? "cycle factors found"
                        : "best fit residual " + fmt_sig12(v.residual.value_or(0.0)),
                    v.to_json());
            }
        } else if (set == "qnfg") {
            MembershipVerdict v = member_qnfg(b, cfg);
            if (v.status == MembershipStatus::UNKNOWN && corr && std::abs(*corr) > tsirelson + 1e-9) {
                row("qnfg", "OUT", "certified",
                    "|corr_chsh| = " + fmt_sig12(std::abs(*corr)) + " exceeds 2 sqrt 2");
            } else {
                row("qnfg", status_name(v.status),
                    v.status == MembershipStatus::IN ? "certified" : "numerical",
                    v.status == MembershipStatus::IN
                        ? "model found"
                        : "best fit residual " + fmt_sig12(v.residual.value_or(0.0)),
                    v.to_json());
            }
        } else {
            throw std::runtime_error("unknown set: " + set);
        }
    }
    ojson out;
    if (corr) out["corr_chsh"] = *corr;
    out["verdicts"] = rows;
    if (format == "text") {
        for (const auto& r : rows)
            std::printf("%-7s %-8s %-10s %s\n", r.at("set").get<std::string>().c_str(),
                        r.at("status").get<std::string>().c_str(),
                        r.at("evidence").get<std::string>().c_str(),
                        r.at("note").get<std::string>().c_str());
    } else {
        std::cout << dump_canonical(out);
    }
    return kExitOk;
}

ojson mat2j(const Mat2& m) { return ojson{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}; }

int cmd_optimize(const std::string& target, const SearchConfig& cfg, bool mixed, bool minimize,
                 bool product_only, const std::string& trace_csv, const std::string& format) {
    OptResult r;
    bool record = !trace_csv.empty();
    if (target == "classical") {
        r = maximize_classical_chsh(cfg, minimize ? Direction::minimize : Direction::maximize,
                                    product_only, record);
    } else if (target == "quantum") {
        r = maximize_quantum_chsh(cfg, mixed, record);
    } else if (target == "markov-variant") {
        r = maximize_markov_variant(cfg, record);
    } else if (target == "monotonicity-gap") {
        r = find_quantum_monotonicity_violation(cfg, record);
    } else {
        throw std::runtime_error("unknown optimize target: " + target);
    }
    if (record) {
        std::ofstream out(trace_csv, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write trace file: " + trace_csv);
        out << "restart,iteration,objective\n";
        for (const TracePoint& t : r.trace)
            out << t.restart << "," << t.iteration << "," << fmt_sig12(t.objective) << "\n";
    }
    ojson j;
    j["target"] = target;
    j["value"] = r.value;
    ojson arg;
    if (r.pmf) {
        ojson arr = ojson::array();
        for (int i = 0; i < 16; ++i) arr.push_back(r.pmf->table(i));
        arg = ojson{{"kind", "pmf"}, {"table", arr}};
    }
    if (r.model) arg = ojson{{"kind", "model"}, {"model", ojson::parse(model_to_json(*r.model, -1))}};
    if (r.chain)
        arg = ojson{{"kind", "chain"},
                    {"m12", mat2j(r.chain->m12)},
                    {"m4given1", mat2j(r.chain->m4given1)},
                    {"m3given2", mat2j(r.chain->m3given2)}};
    j["argument"] = arg;
    j["config"] = ojson{{"seed", cfg.seed}, {"restarts", cfg.restarts}, {"iterations", cfg.iterations}};
    ojson rv = ojson::array();
    for (double v : r.restart_values) rv.push_back(v);
    j["restart_values"] = rv;
    if (format == "text")
        std::printf("%s optimum: %s\n", target.c_str(), fmt_sig12(r.value).c_str());
    else
        std::cout << dump_canonical(j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical tooling for the four-variable binary cycle scenario: "
                 "factor-graph marginals, Pearson-correlation CHSH functionals, membership "
                 "certificates, and the scenario witness suite"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    SearchConfig cfg;
    std::string format = "json";
    app.add_option("--seed", cfg.seed, "seed for all randomized searches")->capture_default_str();
    app.add_option("--restarts", cfg.restarts, "multi-start restarts")->capture_default_str();
    app.add_option("--iterations", cfg.iterations, "iterations per restart")->capture_default_str();
    app.add_option("--format", format, "output format: json|text")->capture_default_str();

    auto* marginals = app.add_subcommand("marginals", "exact beliefs of a graph or model file");
    std::string marg_input;
    marginals->fallthrough();
    marginals->add_option("--input", marg_input, "graph description or model JSON file")->required();

    auto* check = app.add_subcommand("check", "membership verdicts for a beliefs file");
    std::string check_input, sets_csv;
    double tol = 1e-9;
    check->fallthrough();
    check->add_option("--input", check_input, "beliefs JSON file")->required();
    check->add_option("--sets", sets_csv, "comma list from lm,snfg,markov,fcyc,qnfg");
    check->add_option("--tol", tol, "LM validation tolerance")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    std::string witness_dir;
    verify->fallthrough();
    verify->add_option("--suite", suite, "classical|quantum|markov|venn|all")->capture_default_str();
    verify->add_option("--witness-dir", witness_dir, "stored witness directory");

    auto* optimize = app.add_subcommand("optimize", "run one of the extremal searches");
    std::string target = "classical", trace_csv;
    bool mixed = false, minimize = false, product_only = false;
    optimize->fallthrough();
    optimize->add_option("--target", target, "classical|quantum|markov-variant|monotonicity-gap")
        ->capture_default_str();
    optimize->add_flag("--mixed", mixed, "mixed-state chart for the quantum search");
    optimize->add_flag("--minimize", minimize, "minimize instead of maximize (classical)");
    optimize->add_flag("--product-only", product_only, "restrict to product PMFs (classical)");
    optimize->add_option("--trace-csv", trace_csv, "write per-iteration objective trace");

    auto* witnesses = app.add_subcommand("witnesses", "witness data maintenance");
    witnesses->fallthrough();
    auto* regen = witnesses->add_subcommand("regenerate", "regenerate the stored witness files");
    regen->fallthrough();
    std::string regen_dir;
    regen->add_option("--dir", regen_dir, "output directory (default: witness dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (marginals->parsed()) return cmd_marginals(marg_input, format);
        if (check->parsed()) return cmd_check(check_input, sets_csv, cfg, tol, format);
        if (verify->parsed()) {
            std::filesystem::path dir = witness_dir.empty() ? default_witness_dir() : std::filesystem::path(witness_dir);
            SuiteResult result = run_suite(suite, cfg, dir);
            print_lines(result, format);
            return result.all_pass ? kExitOk : kExitVerifyFailed;
        }
        if (optimize->parsed())
            return cmd_optimize(target, cfg, mixed, minimize, product_only, trace_csv, format);
        if (regen->parsed()) {
            std::filesystem::path dir = regen_dir.empty() ? default_witness_dir() : std::filesystem::path(regen_dir);
            write_witness_files(dir, cfg);
            std::printf("witness files written to %s\n", dir.string().c_str());
            return kExitOk;
        }
        std::fprintf(stderr, "no subcommand\n");
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
}
