// ============================================================================
// clres/engine.hpp — the resolution calculus and the saturation loop
// ============================================================================
//
// Inference rules (antecedents C, C', coalitions A, B, disjunctions D, D',
// pivot literal l):
//
//   ires1   D|l in I,  D'|~l in I+U            =>  D|D' in I
//   gres1   D|l in U,  D'|~l in U              =>  D|D' in U
//   cres1   C => <A>(D|l),  C' => <B>(D'|~l),  A,B disjoint
//                                              =>  C&C' => <A+B>(D|D')
//   cres2   D|l in U,  C => <A>(D'|~l)         =>  C => <A>(D|D')
//   cres3   C => <A>(D|l),  C' => [B](D'|~l),  A subset of B
//                                              =>  C&C' => [B\A](D|D')
//   cres4   D|l in U,  C => [A](D'|~l)         =>  C => [A](D|D')
//   rw1     C => <A> false                     =>  ~C in U
//   rw2     C => [A] false                     =>  ~C in U
//   sigma   C => [] D                          =>  C => <Sigma_C> D
//
// The rule functions throw rule_error when side conditions fail and return
// nullopt when the simplified conclusion is a tautology.  `sigma` is an
// optional strengthening justified by the grand-coalition axiom (every
// agent set is the problem's own Sigma_C under tight satisfiability); it is
// the only way two negative coalition clauses can interact, and it can be
// switched off to run the listed rules alone.
//
// saturate() runs a given-clause loop: pick an unprocessed clause, resolve
// it against all processed clauses, rewrite, simplify, discard tautologies,
// forward-subsume new clauses against everything stored, and enqueue the
// survivors.  Selection is FIFO by clause id with one twist: initial
// clauses wait until the global/coalition queue drains, so the endgame
// resolves the initial state against a saturated global set.  Partners are
// scanned derived-clauses-first, then input clauses, each in id order.
// Refutation ends the run as soon as an empty disjunction lands in I or U.
//
// Trace line format (stable; re-parseable through the clause reader):
//
//   <id>. <clause>  (<set>, <rule>[, <premise ids>][, pivot=<lit>])
//   16. ~l & t4 & tog1 => <1> false  (N, cres1, 5 14, pivot=l)
//
// ============================================================================

#ifndef CLRES_ENGINE_HPP
#define CLRES_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "clres/clause.hpp"

namespace clres {

// ── Rule applications ───────────────────────────────────────────────────────

class rule_error : public std::logic_error {
public:
    explicit rule_error(const std::string& what) : std::logic_error(what) {}
};

std::optional<Clause> ires1(const Clause& c1, const Clause& c2, const Literal& pivot);
std::optional<Clause> gres1(const Clause& c1, const Clause& c2, const Literal& pivot);
std::optional<Clause> cres1(const Clause& c1, const Clause& c2, const Literal& pivot);
std::optional<Clause> cres2(const Clause& c1, const Clause& c2, const Literal& pivot);
std::optional<Clause> cres3(const Clause& c1, const Clause& c2, const Literal& pivot);
std::optional<Clause> cres4(const Clause& c1, const Clause& c2, const Literal& pivot);
std::optional<Clause> rw1(const Clause& c);
std::optional<Clause> rw2(const Clause& c);
std::optional<Clause> sigma_lift(const Clause& c, const Coalition& sigma);

/// Forward subsumption: c1 subsumes c2.  Within a kind this is componentwise
/// set inclusion (with the coalition inclusion reversed for negative
/// clauses); across kinds only Global-over-Initial holds.
bool subsumes(const Clause& c1, const Clause& c2);

// ── Saturation ──────────────────────────────────────────────────────────────

struct EngineConfig {
    double timeout_seconds = 100.0;
    bool sigma_rule_enabled = true;
    unsigned seed = 0;          // > 0 shuffles the initial queue order
    std::size_t max_clauses = 0;  // 0 = unlimited
};

struct SaturationStats {
    std::size_t given = 0;        // clauses moved to the processed set
    std::size_t derived = 0;      // non-input clauses stored
    std::size_t subsumed = 0;     // new clauses dropped by forward subsumption
    std::size_t tautologies = 0;  // new clauses dropped as tautologies
    double elapsed_seconds = 0.0;
};

struct Derivation {
    std::vector<Clause> steps;    // all stored clauses, in id order
    std::size_t input_count = 0;  // clauses justified as `given`
    Coalition sigma;              // Sigma_C of the input problem
};

enum class TimeoutReason : std::uint8_t { none, wall_clock, clause_limit };

struct Verdict {
    enum class Kind : std::uint8_t { unsatisfiable, satisfiable, timeout };

    Kind kind = Kind::timeout;
    Derivation derivation;
    CoalitionProblem saturated;  // populated for satisfiable verdicts
    TimeoutReason timeout_reason = TimeoutReason::none;
    SaturationStats stats;

    bool unsat() const noexcept { return kind == Kind::unsatisfiable; }
    bool sat() const noexcept { return kind == Kind::satisfiable; }
};

Verdict saturate(const CoalitionProblem& problem, const EngineConfig& config = {});

/// The refutation inside an unsatisfiable verdict: the backward-reachable
/// clauses from the final false clause, in id order.  Throws
/// std::logic_error on any other verdict.
Derivation extract_proof(const Verdict& verdict);

/// Re-applies the justification of a derived clause to its premises and
/// returns the result; the caller compares it against the stored clause.
/// Premises are looked up by id in `steps`.
std::optional<Clause> replay_step(const Clause& step, const std::vector<Clause>& steps,
                                  const Coalition& sigma);

/// True when every derived step of the derivation replays to itself.
bool replay_derivation(const Derivation& derivation);

// ── Trace rendering ─────────────────────────────────────────────────────────

std::string trace_line(const Clause& c);
std::string render_trace(const Derivation& derivation);

struct TraceLine {
    Clause clause;  // with id and justification filled in
    char set_tag = 'U';
};

TraceLine parse_trace_line(std::string_view line);

}  // namespace clres

#endif  // CLRES_ENGINE_HPP
