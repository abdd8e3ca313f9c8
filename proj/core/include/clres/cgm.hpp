// ============================================================================
// clres/cgm.hpp — concurrent game models and the bounded model oracle
// ============================================================================
//
// A Cgm is an explicit concurrent game model: a finite set of agents, states
// 0..num_states-1 with a distinguished initial state, a move count
// d(a,s) >= 1 per agent and state, a total transition function delta from
// (state, move vector) to states, and a valuation per state.  Move vectors
// are indexed in mixed radix with the last agent varying fastest.
//
// eval() implements the satisfaction relation: <A> f holds at s when some
// A-move forces f in every outcome; [A] f holds when every A-move leaves
// some outcome satisfying f.  Unknown propositions evaluate to false.
//
// bounded_search() enumerates models inside the given bounds exhaustively
// and deterministically (states, then valuations, then move counts, then
// transition tables, lexicographically) and returns the first model of the
// problem, pruning on initial/global clauses as valuations are chosen and
// on coalition clauses as transitions are filled in.  It is sound for
// satisfiability only: "no model within bounds" is not a refutation.
// Configurations whose valuation space does not fit the guard below are
// refused (see search_space_guard).
//
// Model file format (line oriented, '#' comments):
//
//     agents: 1,2
//     states: 2
//     init: 0
//     moves: 1 0 2          # agent state count   (count defaults to 1)
//     delta: 0 (0,1) 1      # state (m1,...,mk) successor; must be total
//     val: 0 p q            # propositions true at state 0
//
// ============================================================================

#ifndef CLRES_CGM_HPP
#define CLRES_CGM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clres/clause.hpp"
#include "clres/formula.hpp"

namespace clres {

class Cgm {
public:
    Cgm() = default;
    // moves[i][s] is d(a_i, s) for the i-th agent in coalition order;
    // delta[s][v] the successor for mixed-radix move vector v.
    Cgm(Coalition agents, int num_states, int initial_state,
        std::vector<std::vector<int>> moves, std::vector<std::vector<int>> delta,
        std::vector<std::vector<std::string>> valuation);

    const Coalition& agents() const noexcept { return agents_; }
    int num_states() const noexcept { return num_states_; }
    int initial_state() const noexcept { return initial_state_; }

    int move_count(Agent a, int state) const;
    int vector_count(int state) const;
    int successor(int state, int vector_index) const;
    bool holds(int state, const std::string& prop) const;
    const std::vector<std::string>& valuation(int state) const;

    // Decomposes/composes mixed-radix move vectors at `state`.
    std::vector<int> vector_moves(int state, int vector_index) const;

private:
    void validate() const;

    Coalition agents_;
    int num_states_ = 0;
    int initial_state_ = 0;
    std::vector<std::vector<int>> moves_;
    std::vector<std::vector<int>> delta_;
    std::vector<std::vector<std::string>> valuation_;
};

// ── A-moves ─────────────────────────────────────────────────────────────────
// A fixed move for every member of the coalition, wildcard elsewhere.
// choices[i] pairs with coalition.ids()[i].

struct AMove {
    Coalition coalition;
    std::vector<int> choices;
};

/// All states reachable from `state` by move vectors extending `move`,
/// sorted and duplicate-free.
std::vector<int> outcomes(const Cgm& m, int state, const AMove& move);

// ── Satisfaction ────────────────────────────────────────────────────────────

/// Requires agents_of(f) to be a subset of m.agents().
bool eval(const Cgm& m, int state, const Formula& f);

/// Initial clauses at the initial state, global and coalition clauses at
/// every state.  Requires the problem's agent set to be within m.agents().
bool check_problem(const Cgm& m, const CoalitionProblem& problem);

// ── Bounded search ──────────────────────────────────────────────────────────

struct SearchBounds {
    int max_states = 2;
    int max_moves = 2;  // per agent per state
};

/// Refuses configurations that cannot be enumerated: more than 30
/// state-proposition valuation bits, more than 8 agents, or more than 64
/// move vectors per state.  Throws std::invalid_argument.
void search_space_guard(std::size_t num_agents, std::size_t num_props,
                        const SearchBounds& bounds);

/// First model of the problem within bounds, if any.  Agents are exactly the
/// problem's Sigma_C; a problem without agents is searched with one dummy
/// one-move agent.
std::optional<Cgm> bounded_search(const CoalitionProblem& problem, const SearchBounds& bounds);

/// First model of the formula (at the initial state) within bounds.
std::optional<Cgm> bounded_search(const Formula& f, const SearchBounds& bounds);

/// Visits every model over (agents, props) within bounds in enumeration
/// order until the visitor returns false.  Exposed for exhaustive
/// validity checks in tests.
void enumerate_models(const Coalition& agents, const std::vector<std::string>& props,
                      const SearchBounds& bounds, const std::function<bool(const Cgm&)>& visit);

// ── Model file I/O ──────────────────────────────────────────────────────────

Cgm read_model(std::string_view text);
Cgm read_model_file(const std::string& path);
std::string write_model(const Cgm& m);

}  // namespace clres

#endif  // CLRES_CGM_HPP
