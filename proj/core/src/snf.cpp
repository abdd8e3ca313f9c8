#include "clres/snf.hpp"

#include <algorithm>

namespace clres {

namespace {

class Normalizer {
public:
    explicit Normalizer(const Formula& f) {
        used_names_ = props_of(f);
        Formula body = nnf(f);
        std::string root = fresh(body);
        result_.problem.initial.push_back(Clause::initial({lit(root)}));
        define(root, body);
        assign_ids();
    }

    NormalizeResult take() { return std::move(result_); }

private:
    // x => body, body in NNF.
    void define(const std::string& x, const Formula& body) {
        switch (body.kind()) {
            case Formula::Kind::True:
                return;
            case Formula::Kind::False:
                emit_global({nlit(x)});
                return;
            case Formula::Kind::And:
                define(x, body.child(0));
                define(x, body.child(1));
                return;
            case Formula::Kind::Coop:
            case Formula::Kind::DualCoop: {
                std::string t = fresh(body);
                emit_global({nlit(x), lit(t)});
                define_modal(t, body);
                return;
            }
            default: {
                // literal or disjunction
                std::vector<Literal> d{nlit(x)};
                flatten_disjunct(body, d);
                emit_global(std::move(d));
                return;
            }
        }
    }

    // Appends the disjuncts of `body` to `d`, renaming modal operands and
    // embedded conjunctions.
    void flatten_disjunct(const Formula& body, std::vector<Literal>& d) {
        switch (body.kind()) {
            case Formula::Kind::Or:
                flatten_disjunct(body.child(0), d);
                flatten_disjunct(body.child(1), d);
                return;
            case Formula::Kind::Prop:
                d.push_back(lit(body.prop_name()));
                return;
            case Formula::Kind::Not:
                d.push_back(nlit(body.child().prop_name()));
                return;
            case Formula::Kind::True:
                d.push_back(lit("true"));  // folded away by simplification
                return;
            case Formula::Kind::False:
                return;
            case Formula::Kind::Coop:
            case Formula::Kind::DualCoop: {
                std::string t = fresh(body);
                d.push_back(lit(t));
                define_modal(t, body);
                return;
            }
            case Formula::Kind::And: {
                std::string t = fresh(body);
                d.push_back(lit(t));
                define(t, body);
                return;
            }
            default:
                throw std::logic_error("normalize: input not in NNF");
        }
    }

    // x => <A> arg  /  x => [A] arg, arg renamed unless already a literal.
    void define_modal(const std::string& x, const Formula& modal) {
        const Formula& arg = modal.child();
        std::vector<Literal> d;
        if (arg.is_literal()) {
            d.push_back(arg.kind() == Formula::Kind::Not ? nlit(arg.child().prop_name())
                                                         : lit(arg.prop_name()));
        } else if (arg.kind() == Formula::Kind::False) {
            // empty disjunction
        } else if (arg.kind() == Formula::Kind::True) {
            d.push_back(lit("true"));
        } else {
            std::string t = fresh(arg);
            d.push_back(lit(t));
            define(t, arg);
        }
        Clause c = (modal.kind() == Formula::Kind::Coop)
                       ? Clause::positive({lit(x)}, modal.coalition(), std::move(d))
                       : Clause::negative({lit(x)}, modal.coalition(), std::move(d));
        emit(std::move(c));
    }

    void emit_global(std::vector<Literal> d) { emit(Clause::global(std::move(d))); }

    void emit(Clause c) {
        std::optional<Clause> simplified = clause_simplify(std::move(c));
        if (!simplified) return;
        switch (simplified->kind) {
            case ClauseKind::Initial:
                result_.problem.initial.push_back(std::move(*simplified));
                break;
            case ClauseKind::Global:
                result_.problem.global.push_back(std::move(*simplified));
                break;
            default:
                result_.problem.coalition.push_back(std::move(*simplified));
                break;
        }
    }

    std::string fresh(const Formula& definition) {
        std::string name;
        do {
            name = "_t" + std::to_string(counter_++);
        } while (std::binary_search(used_names_.begin(), used_names_.end(), name));
        result_.definitions.emplace_back(name, definition);
        return name;
    }

    void assign_ids() {
        // Emission order is already the pre-order of the transformation;
        // number I first, then U, then N, matching the file layout.
        ClauseId id = 1;
        for (Clause& c : result_.problem.initial) c.id = id++;
        for (Clause& c : result_.problem.global) c.id = id++;
        for (Clause& c : result_.problem.coalition) c.id = id++;
    }

    NormalizeResult result_;
    std::vector<std::string> used_names_;  // sorted
    unsigned counter_ = 0;
};

}  // namespace

NormalizeResult normalize_full(const Formula& f) { return Normalizer(f).take(); }

CoalitionProblem normalize(const Formula& f) { return normalize_full(f).problem; }

Formula negate_for_validity(const Formula& f) { return nnf(Formula::neg(f)); }

}  // namespace clres
