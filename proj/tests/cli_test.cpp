#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "clres/clause.hpp"
#include "clres/engine.hpp"
#include "helpers.hpp"

using namespace clres;
using clres::testing::fixture;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    fs::path out = fs::temp_directory_path() /
                   ("clres_cli_out_" + std::to_string(::getpid()) + ".txt");
    std::string command =
        std::string(CLRES_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    fs::remove(out);
    return result;
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "clres_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("prove a problem file reports UNSAT with a trace") {
    CliResult r = run_cli("prove " + fixture("light.clp") + " --format problem --trace");
    CHECK(r.exit_code == 20);
    CHECK(r.output.rfind("UNSAT\n", 0) == 0);
    CHECK(r.output.find("(I, ires1,") != std::string::npos);
    CHECK(r.output.find("false") != std::string::npos);

    // every trace line re-parses and the derivation replays
    std::istringstream lines(r.output);
    std::string line;
    std::getline(lines, line);  // the verdict line
    Derivation derivation;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        TraceLine tl = parse_trace_line(line);
        derivation.steps.push_back(tl.clause);
    }
    derivation.sigma = Coalition{1, 2};
    CHECK(!derivation.steps.empty());
    CHECK(replay_derivation(derivation));
}

TEST_CASE("prove --valid on the axiom fixtures") {
    for (const char* name : {"axiom_bot", "axiom_top", "axiom_m", "axiom_s", "axiom_sigma",
                             "lemma_split"}) {
        CliResult r = run_cli("prove --valid " + fixture("axioms/" + std::string(name) + ".cl"));
        CAPTURE(name);
        CHECK(r.exit_code == 20);
        CHECK(r.output.rfind("UNSAT\n", 0) == 0);
    }
}

TEST_CASE("prove a satisfiable formula exits 10") {
    CliResult r = run_cli("prove " + fixture("sat/additivity_neg.cl") + " --porcelain");
    CHECK(r.exit_code == 10);
    CHECK(r.output.rfind("SAT\n", 0) == 0);
    CHECK(r.output.find("verdict=SAT") != std::string::npos);
    CHECK(r.output.find("exit=10") != std::string::npos);
}

TEST_CASE("prove --valid agrees with proving a hand-negated formula") {
    fs::path dir = temp_dir();
    fs::path negated = dir / "axiom_m_negated.cl";
    {
        std::ofstream out(negated);
        out << "<1> (p & q) & [1] ~p\n";  // negation of the monotonicity instance
    }
    CliResult direct = run_cli("prove " + negated.string());
    CliResult valid = run_cli("prove --valid " + fixture("axioms/axiom_m.cl"));
    CHECK(direct.exit_code == 20);
    CHECK(valid.exit_code == 20);
}

TEST_CASE("prove rejects bad usage") {
    CHECK(run_cli("prove").exit_code == 1);
    CHECK(run_cli("prove /nonexistent/file.cl").exit_code == 1);
    CHECK(run_cli("prove --valid --format problem " + fixture("light.clp")).exit_code == 1);
    fs::path dir = temp_dir();
    fs::path bad = dir / "bad.cl";
    {
        std::ofstream out(bad);
        out << "p &\n";
    }
    CHECK(run_cli("prove " + bad.string()).exit_code == 1);
}

TEST_CASE("prove with a microscopic timeout exits 30") {
    CliResult r = run_cli("prove " + fixture("light.clp") +
                          " --format problem --timeout 0.000000001 --porcelain");
    CHECK(r.exit_code == 30);
    CHECK(r.output.rfind("TIMEOUT\n", 0) == 0);
    CHECK(r.output.find("timeout_reason=time") != std::string::npos);

    CliResult r2 = run_cli("prove " + fixture("light.clp") +
                           " --format problem --max-clauses 4 --porcelain");
    CHECK(r2.exit_code == 30);
    CHECK(r2.output.find("timeout_reason=clauses") != std::string::npos);
}

TEST_CASE("check exit codes") {
    fs::path dir = temp_dir();
    fs::path diamond = dir / "diamond_p.cl";
    {
        std::ofstream out(diamond);
        out << "<> p\n";
    }
    fs::path box_not = dir / "box_not_p.cl";
    {
        std::ofstream out(box_not);
        out << "[1] ~p\n";
    }
    CliResult holds = run_cli("check " + fixture("models/one_state.cgm") + " " +
                              diamond.string());
    CHECK(holds.exit_code == 0);
    CHECK(holds.output == "HOLDS\n");

    CliResult fails = run_cli("check " + fixture("models/one_state.cgm") + " " +
                              box_not.string());
    CHECK(fails.exit_code == 2);
    CHECK(fails.output == "FAILS\n");

    // the light-switch problem fails on any one-state fixture
    CliResult problem = run_cli("check " + fixture("models/two_agent.cgm") + " " +
                                fixture("light.clp") + " --format problem");
    CHECK(problem.exit_code == 2);
    CHECK(problem.output == "FAILS\n");

    // agent mismatch: formula speaks about agent 2, the model only has 1
    fs::path two = dir / "needs_agent2.cl";
    {
        std::ofstream out(two);
        out << "<2> p\n";
    }
    CliResult mismatch = run_cli("check " + fixture("models/one_state.cgm") + " " +
                                 two.string());
    CHECK(mismatch.exit_code == 1);
}

TEST_CASE("gen writes suites and honors validation") {
    fs::path dir = temp_dir() / "gen_out";
    fs::remove_all(dir);
    CliResult r = run_cli("gen -N 5 -A 2 -L 9 -D 1 -P 1 --count 10 --seed 7 " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("manifest.txt") != std::string::npos);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "5-2-009-1"))
        if (entry.path().extension() == ".cl") ++files;
    CHECK(files == 10);

    // identical seed, identical bytes
    fs::path dir2 = temp_dir() / "gen_out_2";
    fs::remove_all(dir2);
    run_cli("gen -N 5 -A 2 -L 9 -D 1 -P 1 --count 10 --seed 7 " + dir2.string());
    std::ifstream a(dir / "5-2-009-1" / "problem_0.cl");
    std::ifstream b(dir2 / "5-2-009-1" / "problem_0.cl");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    CHECK(run_cli("gen -L 0 " + dir.string()).exit_code == 1);
}

TEST_CASE("bench runs a directory and accounts for timeouts") {
    fs::path dir = temp_dir() / "bench_suite";
    fs::remove_all(dir);
    run_cli("gen -N 3 -A 2 -L 2 -D 1 -P 1 --count 3 --seed 11 " + dir.string());

    CliResult r = run_cli("bench " + dir.string() + " --timeout 30 --porcelain");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("set=3-2-002-1") != std::string::npos);
    CHECK(r.output.find("problems=3") != std::string::npos);
    CHECK(r.output.find("solved=3") != std::string::npos);

    // a single SAT fixture counts as one solved row
    fs::path single = temp_dir() / "bench_single";
    fs::remove_all(single);
    fs::create_directories(single);
    fs::copy_file(fixture("sat/additivity_neg.cl"), single / "only.cl");
    CliResult one = run_cli("bench " + single.string() + " --porcelain");
    CHECK(one.exit_code == 0);
    CHECK(one.output.find("solved=1") != std::string::npos);
    CHECK(one.output.find("sat=1") != std::string::npos);

    // empty directory is a usage error
    fs::path empty = temp_dir() / "bench_empty";
    fs::remove_all(empty);
    fs::create_directories(empty);
    CHECK(run_cli("bench " + empty.string()).exit_code == 1);

    // a microscopic cap forces timeout accounting at the cap
    CliResult capped = run_cli("bench " + dir.string() + " --timeout 0.000000001 --porcelain");
    CHECK(capped.exit_code == 0);
    CHECK(capped.output.find("timeout=3") != std::string::npos);
    CHECK(capped.output.find("avg_s=1e-09") != std::string::npos);

    // parallel workers produce the same table
    CliResult serial = run_cli("bench " + dir.string() + " --timeout 30 --porcelain");
    CliResult parallel = run_cli("bench " + dir.string() + " --timeout 30 --jobs 3 --porcelain");
    CHECK(serial.output.substr(0, serial.output.find("avg_s")) ==
          parallel.output.substr(0, parallel.output.find("avg_s")));
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("frobnicate x").exit_code == 1);
    CHECK(run_cli("prove --format nonsense x.cl").exit_code == 1);
}
