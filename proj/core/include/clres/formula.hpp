// ============================================================================
// clres/formula.hpp — coalition logic formulas
// ============================================================================
//
// Agents are positive integers, coalitions are finite agent sets (the empty
// coalition is legal).  Formulas are immutable trees shared through
// std::shared_ptr, so copies are cheap and values are safe to share across
// threads.  Equality is structural.
//
// Concrete syntax accepted by parse():
//
//   formula := iff ; iff := imp { "<->" imp } ; imp := or [ "->" imp ] ;
//   or := and { "|" and } ; and := unary { "&" unary } ;
//   unary := "~" unary | "<" agents ">" unary | "[" agents "]" unary
//          | ident | "true" | "false" | "(" formula ")" ;
//   agents := [ nat { "," nat } ]            (nat >= 1)
//
// "<a1,...,ak> f" is the coalition modality ("the coalition can ensure f"),
// "[a1,...,ak] f" its dual ("the coalition cannot avoid f"); "<>" and "[]"
// denote the empty coalition.  Identifiers match [a-z][A-Za-z0-9_]*, with
// "true"/"false" reserved.  "#" starts a line comment.  "->" associates to
// the right; "<->" chains to the left.
//
// ============================================================================

#ifndef CLRES_FORMULA_HPP
#define CLRES_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace clres {

using Agent = std::uint32_t;

// ── Coalition ───────────────────────────────────────────────────────────────
// A sorted, duplicate-free set of agents.  Comparison is set equality.

class Coalition {
public:
    Coalition() = default;
    Coalition(std::initializer_list<Agent> agents);
    explicit Coalition(std::vector<Agent> agents);

    bool empty() const noexcept { return ids_.empty(); }
    std::size_t size() const noexcept { return ids_.size(); }
    bool contains(Agent a) const noexcept;
    bool subset_of(const Coalition& other) const noexcept;
    bool disjoint_with(const Coalition& other) const noexcept;

    Coalition united_with(const Coalition& other) const;
    Coalition minus(const Coalition& other) const;

    const std::vector<Agent>& ids() const noexcept { return ids_; }

    // Rendered as "1,2,5"; the empty coalition renders as "".
    std::string to_string() const;

    bool operator==(const Coalition& other) const noexcept = default;
    auto operator<=>(const Coalition& other) const noexcept = default;

private:
    std::vector<Agent> ids_;  // sorted, unique, all >= 1
};

// ── Literal ─────────────────────────────────────────────────────────────────
// A proposition or its negation, always in simplified form (no double
// negation).  The constant names "true"/"false" may appear transiently in
// clauses read from files; simplification removes them.

struct Literal {
    std::string name;
    bool negated = false;

    Literal complement() const { return Literal{name, !negated}; }
    std::string to_string() const { return negated ? "~" + name : name; }

    bool operator==(const Literal&) const = default;
    auto operator<=>(const Literal&) const = default;
};

inline Literal lit(std::string name) { return Literal{std::move(name), false}; }
inline Literal nlit(std::string name) { return Literal{std::move(name), true}; }

// ── Formula ─────────────────────────────────────────────────────────────────

class Formula {
public:
    enum class Kind : std::uint8_t {
        True,
        False,
        Prop,
        Not,
        And,
        Or,
        Implies,
        Iff,
        Coop,      // <A> f
        DualCoop,  // [A] f
    };

    Formula() : Formula(tru()) {}

    static Formula tru();
    static Formula fls();
    static Formula prop(std::string name);
    static Formula neg(Formula f);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula iff(Formula lhs, Formula rhs);
    static Formula coop(Coalition a, Formula f);
    static Formula dual_coop(Coalition a, Formula f);
    static Formula from_literal(const Literal& l);

    Kind kind() const noexcept;
    const std::string& prop_name() const;   // Prop only
    const Coalition& coalition() const;      // Coop/DualCoop only
    const Formula& child(std::size_t i = 0) const;
    std::size_t arity() const noexcept;

    bool is_literal() const noexcept;  // Prop or Not(Prop)
    bool is_constant() const noexcept;

    bool operator==(const Formula& other) const noexcept;
    bool operator!=(const Formula& other) const noexcept { return !(*this == other); }

    // Number of nodes in the tree.
    std::size_t node_count() const noexcept;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula build_node(Kind kind, Coalition coalition, std::vector<Formula> kids);
    std::shared_ptr<const Node> node_;
};

// ── Errors ──────────────────────────────────────────────────────────────────

class parse_error : public std::runtime_error {
public:
    parse_error(std::string message, int line, int column);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// ── Operations ──────────────────────────────────────────────────────────────

/// Parses the grammar above.  Throws parse_error with line/column on bad
/// input, including agent id 0 and empty input.
Formula parse(std::string_view text);

/// Renders with minimal parentheses; parse(render(f)) == f.
std::string render(const Formula& f);

/// Negation normal form: no Implies/Iff, negation only on propositions,
/// modal duals pushed through, constants folded eagerly.
Formula nnf(const Formula& f);

/// The set of agents occurring in f (union of all coalitions).
Coalition agents_of(const Formula& f);

/// Proposition names occurring in f, sorted.
std::vector<std::string> props_of(const Formula& f);

}  // namespace clres

#endif  // CLRES_FORMULA_HPP
