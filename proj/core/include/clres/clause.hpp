// ============================================================================
// clres/clause.hpp — clauses and coalition problems
// ============================================================================
//
// A coalition problem is a triple <I, U, N>: initial clauses (hold at the
// initial state), global clauses (hold at every state), and coalition
// clauses (hold at every state).  Initial and global clauses are literal
// disjunctions; coalition clauses are of the form
//
//     l1 & ... & lm => <A> d1 | ... | dn      (positive)
//     l1 & ... & lm => [A] d1 | ... | dn      (negative)
//
// An empty antecedent is the empty conjunction (true), an empty disjunction
// is false.  Literal sets are kept sorted and duplicate-free; tautologies
// are never stored.
//
// Problem file format (one clause per line, '#' comments):
//
//     I:
//     t0
//     U:
//     ~t0 | ~l
//     N:
//     tog1 & ~l => <1> l
//     true => <> t1
//     t1 & t4 => <1> false
//
// ============================================================================

#ifndef CLRES_CLAUSE_HPP
#define CLRES_CLAUSE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clres/formula.hpp"

namespace clres {

using ClauseId = std::uint32_t;

enum class ClauseKind : std::uint8_t {
    Initial,            // disjunction, holds at s0
    Global,             // disjunction, holds everywhere
    PositiveCoalition,  // C => <A> D
    NegativeCoalition,  // C => [A] D
};

enum class RuleKind : std::uint8_t {
    given,
    ires1,
    gres1,
    cres1,
    cres2,
    cres3,
    cres4,
    rw1,
    rw2,
    sigma,
};

const char* rule_name(RuleKind r) noexcept;
std::optional<RuleKind> rule_from_name(std::string_view name) noexcept;

// ── Justification ───────────────────────────────────────────────────────────
// Input clauses are `given`; derived clauses carry the rule, the premise ids
// in rule-template order, and (for binary resolution rules) the pivot literal
// as it occurs in the first premise.

struct Justification {
    RuleKind rule = RuleKind::given;
    std::vector<ClauseId> premises;
    std::optional<Literal> pivot;

    static Justification given() { return {}; }
    static Justification derived(RuleKind rule, std::vector<ClauseId> premises,
                                 std::optional<Literal> pivot = std::nullopt) {
        return {rule, std::move(premises), std::move(pivot)};
    }

    bool is_given() const noexcept { return rule == RuleKind::given; }
};

// ── Clause ──────────────────────────────────────────────────────────────────

struct Clause {
    ClauseId id = 0;
    ClauseKind kind = ClauseKind::Global;
    std::vector<Literal> antecedent;   // C, conjunction; empty for Initial/Global
    Coalition coalition;               // A; empty for Initial/Global
    std::vector<Literal> disjunction;  // D
    Justification justification;

    static Clause initial(std::vector<Literal> d);
    static Clause global(std::vector<Literal> d);
    static Clause positive(std::vector<Literal> c, Coalition a, std::vector<Literal> d);
    static Clause negative(std::vector<Literal> c, Coalition a, std::vector<Literal> d);

    bool is_coalition() const noexcept {
        return kind == ClauseKind::PositiveCoalition || kind == ClauseKind::NegativeCoalition;
    }
    bool is_false() const noexcept {
        return !is_coalition() && disjunction.empty();
    }

    // Same kind, antecedent, coalition, and disjunction; id/justification ignored.
    bool same_core(const Clause& other) const noexcept;

    // "t1 & t4 => <1> false", "~t0 | t4", "false", ...
    std::string to_string() const;
};

// Sorts, deduplicates, and drops constants from both literal sets.  Returns
// nullopt when the clause is a tautology: complementary pair or `true` in D,
// complementary pair or `false` in C.  A coalition clause with empty D is
// returned unchanged for the rewrite rules to consume.
std::optional<Clause> clause_simplify(Clause c);

// ── CoalitionProblem ────────────────────────────────────────────────────────

struct CoalitionProblem {
    std::vector<Clause> initial;
    std::vector<Clause> global;
    std::vector<Clause> coalition;

    // Sigma_C: the union of all coalitions in global and coalition clauses.
    Coalition sigma() const;

    std::size_t clause_count() const noexcept {
        return initial.size() + global.size() + coalition.size();
    }

    // All clauses in id order.
    std::vector<Clause> all() const;

    // Sorted proposition names occurring anywhere in the problem.
    std::vector<std::string> props() const;
};

// ── Problem file I/O ────────────────────────────────────────────────────────

/// Parses the section-based problem format shown above.  Clause ids are
/// assigned in file order starting at 1; boolean simplification is applied
/// and tautological lines are dropped.
CoalitionProblem read_problem(std::string_view text);
CoalitionProblem read_problem_file(const std::string& path);

std::string write_problem(const CoalitionProblem& problem);

/// Parses a single clause body, e.g. "t1 & ~l => <1,2> p | q" or "~t0 | t4".
/// Disjunction-only bodies yield `kind` Initial or Global per the caller.
Clause parse_clause(std::string_view text, ClauseKind disjunction_kind);

}  // namespace clres

#endif  // CLRES_CLAUSE_HPP
