// ============================================================================
// clres — command line front end
// ============================================================================
//
//   clres prove <input>            decide satisfiability (or validity)
//   clres gen <outdir>             generate random benchmark suites
//   clres check <model> <input>    model-check an input against a model file
//   clres bench <dir>              run the prover over generated suites
//
// Exit codes: prove returns 10 for SAT, 20 for UNSAT, 30 for timeout;
// check returns 0 when the input holds and 2 when it fails; 1 signals
// usage or input errors everywhere.
//
// ============================================================================

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "clres/bench.hpp"
#include "clres/cgm.hpp"
#include "clres/clause.hpp"
#include "clres/engine.hpp"
#include "clres/formula.hpp"
#include "clres/snf.hpp"

namespace fs = std::filesystem;
using namespace clres;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitTimeout = 30;
constexpr int kExitUsage = 1;
constexpr int kExitFails = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct RunReport {
    std::string verdict;
    double elapsed = 0.0;
    SaturationStats stats;
    std::size_t proof_steps = 0;
    TimeoutReason timeout_reason = TimeoutReason::none;
    int exit_code = kExitUsage;
};

RunReport run_prover(const CoalitionProblem& problem, const EngineConfig& config,
                     Derivation* trace_out) {
    Verdict verdict = saturate(problem, config);
    RunReport report;
    report.stats = verdict.stats;
    report.elapsed = verdict.stats.elapsed_seconds;
    switch (verdict.kind) {
        case Verdict::Kind::unsatisfiable: {
            report.verdict = "UNSAT";
            report.exit_code = kExitUnsat;
            report.proof_steps = extract_proof(verdict).steps.size();
            break;
        }
        case Verdict::Kind::satisfiable:
            report.verdict = "SAT";
            report.exit_code = kExitSat;
            break;
        case Verdict::Kind::timeout:
            report.verdict = "TIMEOUT";
            report.exit_code = kExitTimeout;
            report.timeout_reason = verdict.timeout_reason;
            break;
    }
    if (trace_out) *trace_out = std::move(verdict.derivation);
    return report;
}

void print_porcelain(const RunReport& report) {
    std::cout << "verdict=" << report.verdict << "\n";
    std::cout << "elapsed=" << report.elapsed << "\n";
    std::cout << "given=" << report.stats.given << "\n";
    std::cout << "derived=" << report.stats.derived << "\n";
    std::cout << "subsumed=" << report.stats.subsumed << "\n";
    std::cout << "tautologies=" << report.stats.tautologies << "\n";
    if (report.verdict == "UNSAT") std::cout << "proof_steps=" << report.proof_steps << "\n";
    if (report.verdict == "TIMEOUT")
        std::cout << "timeout_reason="
                  << (report.timeout_reason == TimeoutReason::clause_limit ? "clauses" : "time")
                  << "\n";
    std::cout << "exit=" << report.exit_code << "\n";
}

// problem_2.cl before problem_10.cl
bool numeric_aware_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) &&
            std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            long long va = std::stoll(a.substr(i, i2 - i));
            long long vb = std::stoll(b.substr(j, j2 - j));
            if (va != vb) return va < vb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() < b.size();
}

struct ProveOptions {
    std::string input;
    std::string format = "formula";
    bool valid = false;
    bool trace = false;
    bool porcelain = false;
    double timeout = 100.0;
    unsigned seed = 0;
    std::string sigma_rule = "on";
    std::size_t max_clauses = 0;
};

EngineConfig engine_config(double timeout, unsigned seed, const std::string& sigma_rule,
                           std::size_t max_clauses) {
    EngineConfig config;
    config.timeout_seconds = timeout;
    config.seed = seed;
    config.sigma_rule_enabled = (sigma_rule != "off");
    config.max_clauses = max_clauses;
    return config;
}

int cmd_prove(const ProveOptions& opt) {
    CoalitionProblem problem;
    if (opt.format == "problem") {
        if (opt.valid) {
            std::cerr << "error: --valid applies to formula inputs only\n";
            return kExitUsage;
        }
        problem = read_problem_file(opt.input);
    } else {
        Formula f = parse(slurp(opt.input));
        if (opt.valid) f = negate_for_validity(f);
        problem = normalize(f);
    }
    Derivation derivation;
    RunReport report = run_prover(
        problem, engine_config(opt.timeout, opt.seed, opt.sigma_rule, opt.max_clauses),
        &derivation);
    std::cout << report.verdict << "\n";
    if (opt.trace) std::cout << render_trace(derivation);
    if (opt.porcelain) print_porcelain(report);
    return report.exit_code;
}

struct CheckOptions {
    std::string model_path;
    std::string input;
    std::string format = "formula";
};

int cmd_check(const CheckOptions& opt) {
    Cgm model = read_model_file(opt.model_path);
    bool holds;
    if (opt.format == "problem") {
        CoalitionProblem problem = read_problem_file(opt.input);
        if (!problem.sigma().subset_of(model.agents())) {
            std::cerr << "error: problem agents {" << problem.sigma().to_string()
                      << "} not all present in the model\n";
            return kExitUsage;
        }
        holds = check_problem(model, problem);
    } else {
        Formula f = parse(slurp(opt.input));
        if (!agents_of(f).subset_of(model.agents())) {
            std::cerr << "error: formula agents {" << agents_of(f).to_string()
                      << "} not all present in the model\n";
            return kExitUsage;
        }
        holds = eval(model, model.initial_state(), f);
    }
    std::cout << (holds ? "HOLDS" : "FAILS") << "\n";
    return holds ? 0 : kExitFails;
}

struct GenOptions {
    std::string out_dir;
    BenchParams params;
    unsigned count = 10;
};

int cmd_gen(const GenOptions& opt) {
    fs::path manifest = gen_suite(opt.params, opt.count, opt.out_dir);
    std::cout << manifest.string() << "\n";
    return 0;
}

struct BenchOptions {
    std::string dir;
    double timeout = 100.0;
    unsigned jobs = 1;
    std::string sigma_rule = "on";
    std::size_t max_clauses = 0;
    bool porcelain = false;
};

struct BenchResult {
    int exit_code = 0;
    double seconds = 0.0;
};

int cmd_bench(const BenchOptions& opt) {
    // One row per directory that contains .cl files; the directory itself
    // counts as a set when it holds them directly.
    std::vector<std::pair<std::string, std::vector<fs::path>>> sets;
    auto collect = [](const fs::path& dir) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".cl")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
            return numeric_aware_less(a.filename().string(), b.filename().string());
        });
        return files;
    };
    fs::path root(opt.dir);
    if (!fs::is_directory(root)) {
        std::cerr << "error: " << opt.dir << " is not a directory\n";
        return kExitUsage;
    }
    if (auto own = collect(root); !own.empty()) sets.emplace_back(root.filename().string(), own);
    std::vector<fs::path> subdirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) subdirs.push_back(entry.path());
    std::sort(subdirs.begin(), subdirs.end());
    for (const fs::path& sub : subdirs)
        if (auto files = collect(sub); !files.empty())
            sets.emplace_back(sub.filename().string(), files);
    if (sets.empty()) {
        std::cerr << "error: no .cl problems under " << opt.dir << "\n";
        return kExitUsage;
    }

    EngineConfig config = engine_config(opt.timeout, 0, opt.sigma_rule, opt.max_clauses);

    if (opt.porcelain) {
        std::cout << "sets=" << sets.size() << "\n";
    } else {
        std::printf("%-16s %8s %8s %6s %6s %8s %10s\n", "set", "problems", "solved", "sat",
                    "unsat", "timeout", "avg_s");
    }
    for (const auto& [name, files] : sets) {
        std::vector<BenchResult> results(files.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= files.size()) return;
                try {
                    Formula f = parse(slurp(files[i].string()));
                    Verdict v = saturate(normalize(f), config);
                    results[i].seconds = v.stats.elapsed_seconds;
                    results[i].exit_code = v.unsat()  ? kExitUnsat
                                           : v.sat() ? kExitSat
                                                     : kExitTimeout;
                } catch (const std::exception& e) {
                    std::cerr << files[i].string() << ": " << e.what() << "\n";
                    results[i].exit_code = kExitUsage;
                }
            }
        };
        unsigned jobs = std::max(1u, opt.jobs);
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (std::thread& t : pool) t.join();

        std::size_t sat = 0, unsat = 0, timeouts = 0;
        double total = 0.0;
        for (const BenchResult& r : results) {
            if (r.exit_code == kExitSat) ++sat;
            if (r.exit_code == kExitUnsat) ++unsat;
            if (r.exit_code == kExitTimeout) ++timeouts;
            // timeouts enter the average at the cap
            total += (r.exit_code == kExitTimeout) ? opt.timeout : r.seconds;
        }
        std::size_t solved = sat + unsat;
        double avg = files.empty() ? 0.0 : total / static_cast<double>(files.size());
        if (opt.porcelain) {
            std::cout << "set=" << name << " problems=" << files.size() << " solved=" << solved
                      << " sat=" << sat << " unsat=" << unsat << " timeout=" << timeouts
                      << " avg_s=" << avg << "\n";
        } else {
            std::printf("%-16s %8zu %8zu %6zu %6zu %8zu %10.4f\n", name.c_str(), files.size(),
                        solved, sat, unsat, timeouts, avg);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resolution-based satisfiability solver for coalition logic"};
    app.require_subcommand(1);

    ProveOptions prove_opt;
    CLI::App* prove = app.add_subcommand("prove", "decide a formula or clause problem");
    prove->add_option("input", prove_opt.input, "formula (.cl) or problem (.clp) file")
        ->required();
    prove->add_option("--format", prove_opt.format, "input format")
        ->check(CLI::IsMember({"formula", "problem"}));
    prove->add_flag("--valid", prove_opt.valid, "prove validity: refute the negation");
    prove->add_flag("--trace", prove_opt.trace, "print the full derivation");
    prove->add_flag("--porcelain", prove_opt.porcelain, "machine readable report");
    prove->add_option("--timeout", prove_opt.timeout, "seconds before giving up");
    prove->add_option("--seed", prove_opt.seed, "shuffle the initial clause order");
    prove->add_option("--sigma-rule", prove_opt.sigma_rule, "grand coalition lift")
        ->check(CLI::IsMember({"on", "off"}));
    prove->add_option("--max-clauses", prove_opt.max_clauses, "clause store limit (0 = none)");

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "generate a random benchmark suite");
    gen->add_option("outdir", gen_opt.out_dir, "output directory")->required();
    gen->add_option("-N", gen_opt.params.n_props, "number of propositions");
    gen->add_option("-A", gen_opt.params.n_agents, "number of agents");
    gen->add_option("-L", gen_opt.params.n_conjuncts, "number of conjuncts");
    gen->add_option("-D", gen_opt.params.modal_degree, "modal degree");
    gen->add_option("-P", gen_opt.params.probability, "modal probability");
    gen->add_option("--count", gen_opt.count, "problems per set");
    gen->add_option("--seed", gen_opt.params.seed, "generator seed");

    CheckOptions check_opt;
    CLI::App* check = app.add_subcommand("check", "evaluate an input against a model");
    check->add_option("model", check_opt.model_path, "model file")->required();
    check->add_option("input", check_opt.input, "formula or problem file")->required();
    check->add_option("--format", check_opt.format, "input format")
        ->check(CLI::IsMember({"formula", "problem"}));

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "prove every problem under a directory");
    bench->add_option("dir", bench_opt.dir, "directory of generated suites")->required();
    bench->add_option("--timeout", bench_opt.timeout, "per-problem cap in seconds");
    bench->add_option("--jobs", bench_opt.jobs, "parallel workers");
    bench->add_option("--sigma-rule", bench_opt.sigma_rule, "grand coalition lift")
        ->check(CLI::IsMember({"on", "off"}));
    bench->add_option("--max-clauses", bench_opt.max_clauses, "clause store limit (0 = none)");
    bench->add_flag("--porcelain", bench_opt.porcelain, "machine readable rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (prove->parsed()) return cmd_prove(prove_opt);
        if (gen->parsed()) return cmd_gen(gen_opt);
        if (check->parsed()) return cmd_check(check_opt);
        if (bench->parsed()) return cmd_bench(bench_opt);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
