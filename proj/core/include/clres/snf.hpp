// ============================================================================
// clres/snf.hpp — clausification into coalition problems
// ============================================================================
//
// normalize() turns an arbitrary formula into an equisatisfiable coalition
// problem by definitional renaming: the input is seeded as I = {_t0} with
// _t0 defining nnf(f), and the definition is unfolded by structural
// recursion.  Conjunctions split, every modal subformula and every embedded
// non-clausal disjunct is renamed with a fresh symbol, and definitional
// clauses land in U (propositional) or N (modal).  Fresh symbols use the
// reserved prefix "_t" and are numbered in pre-order; they never collide
// with symbols of the input.  Output size is linear in the input size.
//
// ============================================================================

#ifndef CLRES_SNF_HPP
#define CLRES_SNF_HPP

#include <string>
#include <utility>
#include <vector>

#include "clres/clause.hpp"
#include "clres/formula.hpp"

namespace clres {

struct NormalizeResult {
    CoalitionProblem problem;
    // Fresh symbol -> the renamed subformula, in NNF over the input's own
    // propositions.  _t0 maps to nnf of the whole input.  Useful for
    // extending a model of the input to a model of the problem.
    std::vector<std::pair<std::string, Formula>> definitions;
};

NormalizeResult normalize_full(const Formula& f);

/// Equisatisfiable coalition problem for f.
CoalitionProblem normalize(const Formula& f);

/// nnf(~f): refuting this decides validity of f.
Formula negate_for_validity(const Formula& f);

}  // namespace clres

#endif  // CLRES_SNF_HPP
