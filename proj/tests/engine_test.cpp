#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "clres/cgm.hpp"
#include "clres/engine.hpp"
#include "clres/snf.hpp"
#include "helpers.hpp"

using namespace clres;
using clres::testing::fixture;

namespace {

Clause ini(std::vector<Literal> d) { return Clause::initial(std::move(d)); }
Clause glob(std::vector<Literal> d) { return Clause::global(std::move(d)); }
Clause pos(std::vector<Literal> c, Coalition a, std::vector<Literal> d) {
    return Clause::positive(std::move(c), std::move(a), std::move(d));
}
Clause negc(std::vector<Literal> c, Coalition a, std::vector<Literal> d) {
    return Clause::negative(std::move(c), std::move(a), std::move(d));
}

std::string core(const std::optional<Clause>& c) {
    REQUIRE(c.has_value());
    return c->to_string();
}

}  // namespace

TEST_CASE("ires1") {
    CHECK(core(ires1(ini({lit("t0")}), glob({nlit("t0")}), lit("t0"))) == "false");
    CHECK(core(ires1(ini({lit("p"), lit("q")}), ini({nlit("p"), lit("q")}), lit("p"))) == "q");
    CHECK(core(ires1(ini({lit("p")}), glob({nlit("p"), lit("r")}), lit("p"))) == "r");
    CHECK_THROWS_AS(ires1(ini({lit("p")}), glob({lit("p")}), lit("p")), rule_error);
    CHECK_THROWS_AS(ires1(glob({lit("p")}), ini({nlit("p")}), lit("p")), rule_error);
}

TEST_CASE("gres1") {
    CHECK(core(gres1(glob({nlit("t0"), lit("t1")}), glob({nlit("t1"), lit("t4")}), lit("t1"))) ==
          "~t0 | t4");
    CHECK(core(gres1(glob({nlit("t1"), nlit("t4")}), glob({nlit("t0"), lit("t4")}),
                     nlit("t4"))) == "~t0 | ~t1");
    CHECK(core(gres1(glob({nlit("t0"), nlit("t1")}), glob({nlit("t0"), lit("t1")}),
                     nlit("t1"))) == "~t0");
    CHECK_THROWS_AS(gres1(ini({lit("p")}), glob({nlit("p")}), lit("p")), rule_error);
}

TEST_CASE("cres1") {
    CHECK(core(cres1(pos({lit("tog1"), nlit("l")}, Coalition{1}, {lit("l")}),
                     pos({lit("t4")}, Coalition{}, {nlit("l")}), lit("l"))) ==
          "~l & t4 & tog1 => <1> false");
    CHECK(core(cres1(pos({lit("t1")}, Coalition{}, {lit("l"), nlit("tog1")}),
                     pos({lit("t1")}, Coalition{1}, {lit("tog1")}), nlit("tog1"))) ==
          "t1 => <1> l");
    CHECK(core(cres1(pos({lit("t1")}, Coalition{1}, {lit("l")}),
                     pos({lit("t4")}, Coalition{}, {nlit("l")}), lit("l"))) ==
          "t1 & t4 => <1> false");
    // overlapping coalitions are rejected
    CHECK_THROWS_AS(cres1(pos({}, Coalition{1}, {lit("p")}),
                          pos({}, Coalition{1, 2}, {nlit("p")}), lit("p")),
                    rule_error);
}

TEST_CASE("cres2") {
    CHECK(core(cres2(glob({nlit("t1"), lit("t4")}), pos({lit("t1")}, Coalition{}, {lit("t1")}),
                     nlit("t1"))) == "t1 => <> t4");
    CHECK(core(cres2(glob({lit("l"), nlit("t4"), nlit("tog1")}),
                     pos({lit("t1")}, Coalition{}, {lit("t4")}), nlit("t4"))) ==
          "t1 => <> l | ~tog1");
    CHECK(core(cres2(glob({lit("q")}), pos({lit("c")}, Coalition{1}, {nlit("q")}), lit("q"))) ==
          "c => <1> false");
    CHECK_THROWS_AS(cres2(glob({lit("q")}), negc({}, Coalition{1}, {nlit("q")}), lit("q")),
                    rule_error);
}

TEST_CASE("cres3") {
    CHECK(core(cres3(pos({}, Coalition{1}, {lit("p")}), negc({}, Coalition{1, 2}, {nlit("p")}),
                     lit("p"))) == "true => [2] false");
    CHECK(core(cres3(pos({lit("c")}, Coalition{}, {lit("p")}),
                     negc({lit("c2")}, Coalition{}, {nlit("p"), lit("q")}), lit("p"))) ==
          "c & c2 => [] q");
    // the positive coalition must be inside the negative one
    CHECK_THROWS_AS(cres3(pos({}, Coalition{1, 2}, {lit("p")}),
                          negc({}, Coalition{1}, {nlit("p")}), lit("p")),
                    rule_error);
}

TEST_CASE("cres4") {
    CHECK(core(cres4(glob({lit("p"), lit("q")}), negc({lit("c")}, Coalition{1}, {nlit("p")}),
                     lit("p"))) == "c => [1] q");
    CHECK(core(cres4(glob({lit("r")}), negc({}, Coalition{}, {nlit("r")}), lit("r"))) ==
          "true => [] false");
    CHECK(core(cres4(glob({nlit("a"), lit("b")}), negc({lit("x")}, Coalition{1, 2},
                                                       {lit("a"), lit("c")}), nlit("a"))) ==
          "x => [1,2] b | c");
}

TEST_CASE("rw1 and rw2") {
    CHECK(core(rw1(pos({lit("t4"), lit("tog1"), nlit("l")}, Coalition{1}, {}))) ==
          "l | ~t4 | ~tog1");
    CHECK(core(rw1(pos({lit("t1"), lit("t4")}, Coalition{1}, {}))) == "~t1 | ~t4");
    CHECK(core(rw1(pos({}, Coalition{1}, {}))) == "false");
    CHECK(core(rw2(negc({lit("p"), lit("q")}, Coalition{1}, {}))) == "~p | ~q");
    CHECK(core(rw2(negc({}, Coalition{2}, {}))) == "false");
    CHECK_THROWS_AS(rw1(pos({}, Coalition{1}, {lit("p")})), rule_error);
    CHECK_THROWS_AS(rw2(negc({}, Coalition{1}, {lit("p")})), rule_error);
    CHECK_THROWS_AS(rw1(negc({}, Coalition{1}, {})), rule_error);
}

TEST_CASE("sigma_lift") {
    CHECK(core(sigma_lift(negc({lit("t")}, Coalition{}, {lit("p")}), Coalition{1, 2})) ==
          "t => <1,2> p");
    CHECK_THROWS_AS(sigma_lift(negc({}, Coalition{1}, {lit("p")}), Coalition{1, 2}),
                    rule_error);
    CHECK_THROWS_AS(sigma_lift(pos({}, Coalition{}, {lit("p")}), Coalition{1}), rule_error);
}

TEST_CASE("subsumes") {
    CHECK(subsumes(glob({lit("p")}), ini({lit("p"), lit("q")})));
    CHECK(!subsumes(ini({lit("p")}), glob({lit("p"), lit("q")})));
    CHECK(subsumes(pos({lit("t1")}, Coalition{1}, {lit("l")}),
                   pos({lit("t1"), lit("t4")}, Coalition{1, 2}, {lit("l"), lit("m")})));
    // The coalition inclusion is reversed for negative clauses: a bigger box
    // is the stronger statement, so it subsumes the smaller one.
    CHECK(subsumes(negc({lit("c")}, Coalition{1, 2}, {lit("d")}),
                   negc({lit("c")}, Coalition{1}, {lit("d")})));
    CHECK(!subsumes(negc({lit("c")}, Coalition{1}, {lit("d")}),
                    negc({lit("c")}, Coalition{1, 2}, {lit("d")})));
    // no global-over-coalition subsumption
    CHECK(!subsumes(glob({lit("p")}), pos({}, Coalition{1}, {lit("p"), lit("q")})));
}

// ── Saturation ──────────────────────────────────────────────────────────────

TEST_CASE("golden refutation of the light-switch problem") {
    CoalitionProblem problem = read_problem_file(fixture("light.clp"));
    REQUIRE(problem.clause_count() == 14);
    CHECK(problem.sigma() == Coalition{1, 2});

    Verdict verdict = saturate(problem);
    REQUIRE(verdict.unsat());

    Derivation proof = extract_proof(verdict);
    std::multiset<std::string> derived;
    for (const Clause& c : proof.steps)
        if (!c.justification.is_given()) derived.insert(c.to_string());

    // the eleven-step refutation, modulo numbering and order
    std::multiset<std::string> expected{
        "~t0 | t4",
        "~l & t4 & tog1 => <1> false",
        "t1 => <> t4",
        "l | ~t4 | ~tog1",
        "t1 => <> l | ~tog1",
        "t1 => <1> l",
        "t1 & t4 => <1> false",
        "~t1 | ~t4",
        "~t0 | ~t1",
        "~t0",
        "false",
    };
    CHECK(derived == expected);

    // the contradiction lands in the initial set
    const Clause& last = proof.steps.back();
    CHECK(last.is_false());
    CHECK(last.kind == ClauseKind::Initial);

    CHECK(replay_derivation(proof));
    CHECK(replay_derivation(verdict.derivation));
}

TEST_CASE("saturate trivial problems") {
    CoalitionProblem p;
    p.initial.push_back(ini({lit("p")}));
    p.initial.back().id = 1;
    Verdict v = saturate(p);
    CHECK(v.sat());
    CHECK(v.saturated.initial.size() == 1);

    CoalitionProblem q = read_problem("I:\np\nU:\n~p\n");
    Verdict vq = saturate(q);
    REQUIRE(vq.unsat());
    Derivation proof = extract_proof(vq);
    CHECK(proof.steps.size() == 3);  // two inputs, one derived false
}

TEST_CASE("additivity does not hold") {
    Formula negated = parse("<1> p & <1> q & [1] (~p | ~q)");
    Verdict v = saturate(normalize(negated));
    CHECK(v.sat());
}

TEST_CASE("cres3 plus rw2 refute joint inconsistency") {
    // the oracle exhausts every model within bounds, so refutation is expected
    Formula f = parse("<1> p & [1] ~p");
    CHECK(!bounded_search(f, SearchBounds{3, 2}).has_value());
    Verdict v = saturate(normalize(f));
    CHECK(v.unsat());
}

TEST_CASE("sigma rule decides the grand coalition axiom") {
    Formula f = parse("[] p & [1,2] ~p");
    CHECK(!bounded_search(f, SearchBounds{3, 2}).has_value());

    EngineConfig with_sigma;
    Verdict v1 = saturate(normalize(f), with_sigma);
    CHECK(v1.unsat());

    EngineConfig without_sigma;
    without_sigma.sigma_rule_enabled = false;
    Verdict v2 = saturate(normalize(f), without_sigma);
    CHECK(v2.sat());  // the listed rules alone cannot resolve two negatives
}

TEST_CASE("saturation is deterministic per seed") {
    CoalitionProblem problem = read_problem_file(fixture("light.clp"));
    EngineConfig config;
    config.seed = 5;
    Verdict a = saturate(problem, config);
    Verdict b = saturate(problem, config);
    CHECK(render_trace(a.derivation) == render_trace(b.derivation));
    CHECK(a.unsat());
    CHECK(b.unsat());

    config.seed = 0;
    Verdict c = saturate(problem, config);
    CHECK(render_trace(c.derivation) != render_trace(a.derivation));
}

TEST_CASE("extract_proof rejects satisfiable verdicts") {
    CoalitionProblem p;
    p.initial.push_back(ini({lit("p")}));
    p.initial.back().id = 1;
    Verdict v = saturate(p);
    CHECK_THROWS_AS(extract_proof(v), std::logic_error);
}

TEST_CASE("budget limits report distinctly") {
    CoalitionProblem problem = read_problem_file(fixture("light.clp"));

    EngineConfig tiny_store;
    tiny_store.max_clauses = 16;
    Verdict v1 = saturate(problem, tiny_store);
    CHECK(v1.kind == Verdict::Kind::timeout);
    CHECK(v1.timeout_reason == TimeoutReason::clause_limit);

    EngineConfig tiny_clock;
    tiny_clock.timeout_seconds = 1e-9;
    Verdict v2 = saturate(problem, tiny_clock);
    CHECK(v2.kind == Verdict::Kind::timeout);
    CHECK(v2.timeout_reason == TimeoutReason::wall_clock);

    EngineConfig bad;
    bad.timeout_seconds = 0;
    CHECK_THROWS_AS(saturate(problem, bad), std::invalid_argument);
}

TEST_CASE("no stored clause subsumes another after saturation") {
    CoalitionProblem problem = read_problem_file(fixture("light.clp"));
    Verdict v = saturate(problem);
    const auto& steps = v.derivation.steps;
    // forward guarantee: no later clause is subsumed by an earlier one
    for (std::size_t i = 0; i < steps.size(); ++i)
        for (std::size_t j = i + 1; j < steps.size(); ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(!subsumes(steps[i], steps[j]));
        }
}

TEST_CASE("trace lines re-parse and replay") {
    CoalitionProblem problem = read_problem_file(fixture("light.clp"));
    Verdict v = saturate(problem);
    std::string trace = render_trace(v.derivation);

    std::vector<Clause> parsed;
    std::size_t start = 0;
    while (start < trace.size()) {
        std::size_t end = trace.find('\n', start);
        std::string_view line(trace.data() + start, end - start);
        TraceLine tl = parse_trace_line(line);
        // the set tag matches the clause kind
        if (tl.set_tag == 'I') CHECK(tl.clause.kind == ClauseKind::Initial);
        if (tl.set_tag == 'U') CHECK(tl.clause.kind == ClauseKind::Global);
        if (tl.set_tag == 'N') CHECK(tl.clause.is_coalition());
        parsed.push_back(tl.clause);
        start = end + 1;
    }
    REQUIRE(parsed.size() == v.derivation.steps.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].same_core(v.derivation.steps[i]));
        CHECK(parsed[i].id == v.derivation.steps[i].id);
    }
    Derivation reparsed{std::move(parsed), v.derivation.input_count, v.derivation.sigma};
    CHECK(replay_derivation(reparsed));
}

// ── Rule properties over random clauses ─────────────────────────────────────

namespace {

std::vector<Literal> random_literals(std::mt19937& rng, unsigned max_size) {
    static const char* names[] = {"p1", "p2", "p3", "p4"};
    std::vector<Literal> out;
    unsigned n = rng() % (max_size + 1);
    for (unsigned i = 0; i < n; ++i)
        out.push_back(Literal{names[rng() % 4], (rng() % 2) == 1});
    return out;
}

Coalition random_coalition(std::mt19937& rng) {
    std::vector<Agent> members;
    for (Agent a = 1; a <= 3; ++a)
        if (rng() % 2) members.push_back(a);
    return Coalition(std::move(members));
}

Clause random_clause(std::mt19937& rng) {
    switch (rng() % 4) {
        case 0: return Clause::initial(random_literals(rng, 3));
        case 1: return Clause::global(random_literals(rng, 3));
        case 2:
            return Clause::positive(random_literals(rng, 2), random_coalition(rng),
                                    random_literals(rng, 3));
        default:
            return Clause::negative(random_literals(rng, 2), random_coalition(rng),
                                    random_literals(rng, 3));
    }
}

// Independent inclusion checker: naive quadratic scans.
bool naive_subset(const std::vector<Literal>& a, const std::vector<Literal>& b) {
    for (const Literal& x : a) {
        bool found = false;
        for (const Literal& y : b)
            if (x == y) found = true;
        if (!found) return false;
    }
    return true;
}

bool naive_subsumes(const Clause& a, const Clause& b) {
    if (a.kind == ClauseKind::Initial)
        return b.kind == ClauseKind::Initial && naive_subset(a.disjunction, b.disjunction);
    if (a.kind == ClauseKind::Global)
        return (b.kind == ClauseKind::Initial || b.kind == ClauseKind::Global) &&
               naive_subset(a.disjunction, b.disjunction);
    if (a.kind != b.kind) return false;
    bool coalition_ok = a.kind == ClauseKind::PositiveCoalition
                            ? a.coalition.subset_of(b.coalition)
                            : b.coalition.subset_of(a.coalition);
    return coalition_ok && naive_subset(a.antecedent, b.antecedent) &&
           naive_subset(a.disjunction, b.disjunction);
}

}  // namespace

TEST_CASE("rule side conditions and coalition arithmetic on random pairs") {
    std::mt19937 rng(2024);
    int cres1_fired = 0, cres3_fired = 0;
    for (int i = 0; i < 30000; ++i) {
        Clause a = random_clause(rng);
        Clause b = random_clause(rng);
        if (!clause_simplify(a) || !clause_simplify(b)) continue;
        a = *clause_simplify(a);
        b = *clause_simplify(b);
        for (const Literal& pivot : a.disjunction) {
            bool pair_ok = std::find(b.disjunction.begin(), b.disjunction.end(),
                                     pivot.complement()) != b.disjunction.end();
            if (a.kind == ClauseKind::PositiveCoalition &&
                b.kind == ClauseKind::PositiveCoalition) {
                bool applicable = pair_ok && a.coalition.disjoint_with(b.coalition);
                if (applicable) {
                    auto r = cres1(a, b, pivot);
                    if (r) {
                        ++cres1_fired;
                        CHECK(r->coalition == a.coalition.united_with(b.coalition));
                        CHECK(r->kind == ClauseKind::PositiveCoalition);
                    }
                } else {
                    CHECK_THROWS_AS(cres1(a, b, pivot), rule_error);
                }
            }
            if (a.kind == ClauseKind::PositiveCoalition &&
                b.kind == ClauseKind::NegativeCoalition) {
                bool applicable = pair_ok && a.coalition.subset_of(b.coalition);
                if (applicable) {
                    auto r = cres3(a, b, pivot);
                    if (r) {
                        ++cres3_fired;
                        CHECK(r->coalition == b.coalition.minus(a.coalition));
                        CHECK(r->kind == ClauseKind::NegativeCoalition);
                    }
                } else {
                    CHECK_THROWS_AS(cres3(a, b, pivot), rule_error);
                }
            }
        }
    }
    CHECK(cres1_fired > 50);
    CHECK(cres3_fired > 50);
}

TEST_CASE("subsumes agrees with the naive inclusion checker") {
    std::mt19937 rng(99);
    for (int i = 0; i < 5000; ++i) {
        auto a = clause_simplify(random_clause(rng));
        auto b = clause_simplify(random_clause(rng));
        if (!a || !b) continue;
        CHECK(subsumes(*a, *b) == naive_subsumes(*a, *b));
    }
}
