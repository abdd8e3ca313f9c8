// Shared test utilities: a full-connective random formula generator (the
// bench generator never emits ->, <->, or [A]) and small builders.

#ifndef CLRES_TESTS_HELPERS_HPP
#define CLRES_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "clres/clause.hpp"
#include "clres/formula.hpp"

namespace clres::testing {

struct RandomFormulaOptions {
    unsigned max_depth = 4;
    unsigned num_props = 2;
    unsigned num_agents = 2;
};

inline Formula random_formula(std::mt19937& rng, const RandomFormulaOptions& opt,
                              unsigned depth = 0) {
    auto pick = [&](unsigned n) { return static_cast<unsigned>(rng() % n); };
    if (depth >= opt.max_depth || pick(5) == 0) {
        switch (pick(4)) {
            case 0: return Formula::tru();
            case 1: return Formula::fls();
            default:
                return Formula::prop("p" + std::to_string(pick(opt.num_props) + 1));
        }
    }
    auto coalition = [&]() {
        std::vector<Agent> members;
        for (unsigned a = 1; a <= opt.num_agents; ++a)
            if (pick(2)) members.push_back(a);
        return Coalition(std::move(members));
    };
    switch (pick(7)) {
        case 0: return Formula::neg(random_formula(rng, opt, depth + 1));
        case 1:
            return Formula::conj(random_formula(rng, opt, depth + 1),
                                 random_formula(rng, opt, depth + 1));
        case 2:
            return Formula::disj(random_formula(rng, opt, depth + 1),
                                 random_formula(rng, opt, depth + 1));
        case 3:
            return Formula::implies(random_formula(rng, opt, depth + 1),
                                    random_formula(rng, opt, depth + 1));
        case 4:
            return Formula::iff(random_formula(rng, opt, depth + 1),
                                random_formula(rng, opt, depth + 1));
        case 5: return Formula::coop(coalition(), random_formula(rng, opt, depth + 1));
        default:
            return Formula::dual_coop(coalition(), random_formula(rng, opt, depth + 1));
    }
}

inline std::string fixture(const std::string& relative) {
    return std::string(CLRES_FIXTURES_DIR) + "/" + relative;
}

}  // namespace clres::testing

#endif
