#include "clres/cgm.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace clres {

// ── Cgm ─────────────────────────────────────────────────────────────────────

Cgm::Cgm(Coalition agents, int num_states, int initial_state,
         std::vector<std::vector<int>> moves, std::vector<std::vector<int>> delta,
         std::vector<std::vector<std::string>> valuation)
    : agents_(std::move(agents)),
      num_states_(num_states),
      initial_state_(initial_state),
      moves_(std::move(moves)),
      delta_(std::move(delta)),
      valuation_(std::move(valuation)) {
    for (auto& v : valuation_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    validate();
}

void Cgm::validate() const {
    if (agents_.empty()) throw std::invalid_argument("a model needs at least one agent");
    if (num_states_ <= 0) throw std::invalid_argument("a model needs at least one state");
    if (initial_state_ < 0 || initial_state_ >= num_states_)
        throw std::invalid_argument("initial state out of range");
    if (moves_.size() != agents_.size() ||
        valuation_.size() != static_cast<std::size_t>(num_states_) ||
        delta_.size() != static_cast<std::size_t>(num_states_))
        throw std::invalid_argument("model component sizes disagree");
    for (const auto& per_state : moves_) {
        if (per_state.size() != static_cast<std::size_t>(num_states_))
            throw std::invalid_argument("move counts must cover every state");
        for (int d : per_state)
            if (d < 1) throw std::invalid_argument("every agent has at least one move");
    }
    for (int s = 0; s < num_states_; ++s) {
        if (delta_[s].size() != static_cast<std::size_t>(vector_count(s)))
            throw std::invalid_argument("transition function must be total");
        for (int succ : delta_[s])
            if (succ < 0 || succ >= num_states_)
                throw std::invalid_argument("transition target out of range");
    }
}

int Cgm::move_count(Agent a, int state) const {
    const auto& ids = agents_.ids();
    auto it = std::lower_bound(ids.begin(), ids.end(), a);
    if (it == ids.end() || *it != a) throw std::invalid_argument("unknown agent");
    return moves_[static_cast<std::size_t>(it - ids.begin())][state];
}

int Cgm::vector_count(int state) const {
    int n = 1;
    for (const auto& per_state : moves_) n *= per_state[state];
    return n;
}

int Cgm::successor(int state, int vector_index) const {
    return delta_.at(state).at(vector_index);
}

bool Cgm::holds(int state, const std::string& prop) const {
    const auto& v = valuation_.at(state);
    return std::binary_search(v.begin(), v.end(), prop);
}

const std::vector<std::string>& Cgm::valuation(int state) const {
    return valuation_.at(state);
}

std::vector<int> Cgm::vector_moves(int state, int vector_index) const {
    std::vector<int> out(agents_.size());
    for (std::size_t i = agents_.size(); i-- > 0;) {
        int d = moves_[i][state];
        out[i] = vector_index % d;
        vector_index /= d;
    }
    return out;
}

// ── Outcomes and satisfaction ───────────────────────────────────────────────

namespace {

// Index of each coalition member within m.agents(), in coalition order.
std::vector<std::size_t> member_indices(const Cgm& m, const Coalition& a) {
    std::vector<std::size_t> out;
    const auto& all = m.agents().ids();
    for (Agent agent : a.ids()) {
        auto it = std::lower_bound(all.begin(), all.end(), agent);
        if (it == all.end() || *it != agent)
            throw std::invalid_argument("coalition agent not in the model");
        out.push_back(static_cast<std::size_t>(it - all.begin()));
    }
    return out;
}

// Iterates all full move vectors at `state` consistent with the members'
// choices; stops early when `check` returns false.  Reports whether every
// checked successor passed.
template <typename Check>
bool vectors_extending(const Cgm& m, int state, const std::vector<std::size_t>& members,
                       const std::vector<int>& choices, Check check) {
    int n = m.vector_count(state);
    for (int v = 0; v < n; ++v) {
        std::vector<int> mv = m.vector_moves(state, v);
        bool extends = true;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (mv[members[i]] != choices[i]) {
                extends = false;
                break;
            }
        }
        if (extends && !check(m.successor(state, v))) return false;
    }
    return true;
}

// Enumerates member move tuples of D(A, s); true when fn accepts one.
template <typename Fn>
bool any_amove(const Cgm& m, int state, const Coalition& coalition,
               const std::vector<std::size_t>& members, Fn fn) {
    std::vector<int> choices(members.size(), 0);
    for (;;) {
        if (fn(choices)) return true;
        std::size_t i = members.size();
        for (;;) {
            if (i == 0) return false;
            --i;
            if (++choices[i] < m.move_count(coalition.ids()[i], state)) break;
            choices[i] = 0;
        }
    }
}

}  // namespace

std::vector<int> outcomes(const Cgm& m, int state, const AMove& move) {
    std::vector<std::size_t> members = member_indices(m, move.coalition);
    if (move.choices.size() != members.size())
        throw std::invalid_argument("A-move needs one choice per member");
    for (std::size_t i = 0; i < members.size(); ++i) {
        int d = m.move_count(move.coalition.ids()[i], state);
        if (move.choices[i] < 0 || move.choices[i] >= d)
            throw std::invalid_argument("A-move choice out of range");
    }
    std::vector<int> out;
    vectors_extending(m, state, members, move.choices, [&](int succ) {
        out.push_back(succ);
        return true;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool eval(const Cgm& m, int state, const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True:
            return true;
        case Formula::Kind::False:
            return false;
        case Formula::Kind::Prop:
            return m.holds(state, f.prop_name());
        case Formula::Kind::Not:
            return !eval(m, state, f.child());
        case Formula::Kind::And:
            return eval(m, state, f.child(0)) && eval(m, state, f.child(1));
        case Formula::Kind::Or:
            return eval(m, state, f.child(0)) || eval(m, state, f.child(1));
        case Formula::Kind::Implies:
            return !eval(m, state, f.child(0)) || eval(m, state, f.child(1));
        case Formula::Kind::Iff:
            return eval(m, state, f.child(0)) == eval(m, state, f.child(1));
        case Formula::Kind::Coop: {
            std::vector<std::size_t> members = member_indices(m, f.coalition());
            return any_amove(m, state, f.coalition(), members,
                             [&](const std::vector<int>& choices) {
                                 return vectors_extending(
                                     m, state, members, choices,
                                     [&](int succ) { return eval(m, succ, f.child()); });
                             });
        }
        case Formula::Kind::DualCoop: {
            std::vector<std::size_t> members = member_indices(m, f.coalition());
            // refuted by an A-move with no satisfying outcome
            return !any_amove(m, state, f.coalition(), members,
                              [&](const std::vector<int>& choices) {
                                  bool found = false;
                                  vectors_extending(m, state, members, choices, [&](int succ) {
                                      if (eval(m, succ, f.child())) {
                                          found = true;
                                          return false;
                                      }
                                      return true;
                                  });
                                  return !found;
                              });
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

bool literal_holds(const Cgm& m, int state, const Literal& l) {
    if (l.name == "true") return !l.negated;
    if (l.name == "false") return l.negated;
    return m.holds(state, l.name) != l.negated;
}

bool disjunction_holds(const Cgm& m, int state, const std::vector<Literal>& d) {
    for (const Literal& l : d)
        if (literal_holds(m, state, l)) return true;
    return false;
}

bool conjunction_holds(const Cgm& m, int state, const std::vector<Literal>& c) {
    for (const Literal& l : c)
        if (!literal_holds(m, state, l)) return false;
    return true;
}

bool coalition_clause_holds(const Cgm& m, int state, const Clause& c) {
    if (!conjunction_holds(m, state, c.antecedent)) return true;
    std::vector<std::size_t> members = member_indices(m, c.coalition);
    if (c.kind == ClauseKind::PositiveCoalition) {
        return any_amove(m, state, c.coalition, members, [&](const std::vector<int>& choices) {
            return vectors_extending(m, state, members, choices, [&](int succ) {
                return disjunction_holds(m, succ, c.disjunction);
            });
        });
    }
    return !any_amove(m, state, c.coalition, members, [&](const std::vector<int>& choices) {
        bool found = false;
        vectors_extending(m, state, members, choices, [&](int succ) {
            if (disjunction_holds(m, succ, c.disjunction)) {
                found = true;
                return false;
            }
            return true;
        });
        return !found;
    });
}

}  // namespace

bool check_problem(const Cgm& m, const CoalitionProblem& problem) {
    for (const Clause& c : problem.initial)
        if (!disjunction_holds(m, m.initial_state(), c.disjunction)) return false;
    for (int s = 0; s < m.num_states(); ++s) {
        for (const Clause& c : problem.global)
            if (!disjunction_holds(m, s, c.disjunction)) return false;
        for (const Clause& c : problem.coalition)
            if (!coalition_clause_holds(m, s, c)) return false;
    }
    return true;
}

// ── Bounded enumeration ─────────────────────────────────────────────────────

namespace {
constexpr std::size_t kMaxValuationBits = 30;
constexpr int kMaxVectorsPerState = 64;
}  // namespace

void search_space_guard(std::size_t num_agents, std::size_t num_props,
                        const SearchBounds& bounds) {
    if (bounds.max_states < 1 || bounds.max_moves < 1)
        throw std::invalid_argument("bounds must allow at least one state and move");
    if (num_agents > 8) throw std::invalid_argument("bounded search supports at most 8 agents");
    std::size_t valuation_bits = num_props * static_cast<std::size_t>(bounds.max_states);
    if (valuation_bits > kMaxValuationBits)
        throw std::invalid_argument("bounded search refused: " + std::to_string(valuation_bits) +
                                    " valuation bits exceed the ceiling of " +
                                    std::to_string(kMaxValuationBits));
    double vectors_per_state = 1.0;
    for (std::size_t i = 0; i < num_agents; ++i) vectors_per_state *= bounds.max_moves;
    if (vectors_per_state > kMaxVectorsPerState)
        throw std::invalid_argument("bounded search refused: more than " +
                                    std::to_string(kMaxVectorsPerState) +
                                    " move vectors per state");
}

namespace {

using ValMask = std::uint64_t;

struct LiteralMasks {
    ValMask pos = 0;
    ValMask neg = 0;
    bool has_true = false;   // a literal that is constantly true
    bool has_false = false;  // a literal that is constantly false
};

struct CompiledClause {
    ClauseKind kind = ClauseKind::Global;
    LiteralMasks c;                    // antecedent
    LiteralMasks d;                    // disjunction
    std::vector<std::size_t> members;  // coalition agent indices
};

// Exhaustive, deterministic enumeration: states outermost, then valuations
// (state-major, low masks first), then move counts, then transition tables.
// accept() is called on every complete model; returning true stops the
// search with that model.
class Searcher {
public:
    Searcher(Coalition agents, std::vector<std::string> props, SearchBounds bounds)
        : agents_(std::move(agents)), props_(std::move(props)), bounds_(bounds) {}

    void compile(const CoalitionProblem& problem) {
        for (const Clause& cl : problem.initial)
            initial_.push_back({cl.kind, {}, compile_literals(cl.disjunction), {}});
        for (const Clause& cl : problem.global)
            global_.push_back({cl.kind, {}, compile_literals(cl.disjunction), {}});
        const auto& ids = agents_.ids();
        for (const Clause& cl : problem.coalition) {
            CompiledClause cc{cl.kind, compile_literals(cl.antecedent),
                              compile_literals(cl.disjunction), {}};
            for (Agent a : cl.coalition.ids()) {
                auto it = std::lower_bound(ids.begin(), ids.end(), a);
                cc.members.push_back(static_cast<std::size_t>(it - ids.begin()));
            }
            coalition_.push_back(std::move(cc));
        }
    }

    template <typename Accept>
    std::optional<Cgm> run(Accept accept) {
        for (num_states_ = 1; num_states_ <= bounds_.max_states; ++num_states_) {
            vals_.assign(num_states_, 0);
            if (assign_valuation(0, accept)) return found_;
        }
        return std::nullopt;
    }

private:
    std::size_t prop_index(const std::string& name) const {
        auto it = std::lower_bound(props_.begin(), props_.end(), name);
        return static_cast<std::size_t>(it - props_.begin());
    }

    LiteralMasks compile_literals(const std::vector<Literal>& ls) const {
        LiteralMasks m;
        for (const Literal& l : ls) {
            if (l.name == "true") {
                (l.negated ? m.has_false : m.has_true) = true;
            } else if (l.name == "false") {
                (l.negated ? m.has_true : m.has_false) = true;
            } else {
                ValMask bit = ValMask{1} << prop_index(l.name);
                (l.negated ? m.neg : m.pos) |= bit;
            }
        }
        return m;
    }

    bool disj_true(const LiteralMasks& d, ValMask val) const {
        return d.has_true || (val & d.pos) != 0 || (~val & d.neg) != 0;
    }

    bool conj_true(const LiteralMasks& c, ValMask val) const {
        return !c.has_false && (val & c.pos) == c.pos && (val & c.neg) == 0;
    }

    int vector_count(int state) const {
        int n = 1;
        for (const auto& per_agent : moves_) n *= per_agent[state];
        return n;
    }

    std::vector<int> vector_moves(int state, int v) const {
        std::vector<int> out(moves_.size());
        for (std::size_t i = moves_.size(); i-- > 0;) {
            int d = moves_[i][state];
            out[i] = v % d;
            v /= d;
        }
        return out;
    }

    template <typename Accept>
    bool assign_valuation(int state, Accept accept) {
        if (state == num_states_) return assign_moves(accept);
        ValMask limit = ValMask{1} << props_.size();
        for (ValMask v = 0; v < limit; ++v) {
            vals_[state] = v;
            bool ok = true;
            for (const CompiledClause& cc : global_)
                if (!disj_true(cc.d, v)) {
                    ok = false;
                    break;
                }
            if (ok && state == 0)
                for (const CompiledClause& cc : initial_)
                    if (!disj_true(cc.d, v)) {
                        ok = false;
                        break;
                    }
            if (ok && assign_valuation(state + 1, accept)) return true;
        }
        return false;
    }

    template <typename Accept>
    bool assign_moves(Accept accept) {
        moves_.assign(agents_.size(), std::vector<int>(num_states_, 1));
        return next_move_slot(0, accept);
    }

    template <typename Accept>
    bool next_move_slot(std::size_t slot, Accept accept) {
        if (slot == agents_.size() * static_cast<std::size_t>(num_states_))
            return assign_delta(accept);
        std::size_t agent = slot / num_states_;
        int state = static_cast<int>(slot % num_states_);
        for (int d = 1; d <= bounds_.max_moves; ++d) {
            moves_[agent][state] = d;
            if (next_move_slot(slot + 1, accept)) return true;
        }
        return false;
    }

    template <typename Accept>
    bool assign_delta(Accept accept) {
        delta_.assign(num_states_, {});
        for (int s = 0; s < num_states_; ++s) delta_[s].assign(vector_count(s), -1);
        return next_delta_slot(0, 0, accept);
    }

    template <typename Accept>
    bool next_delta_slot(int state, int v, Accept accept) {
        while (state < num_states_ && v >= vector_count(state)) {
            ++state;
            v = 0;
        }
        if (state == num_states_) {
            Cgm model = to_model();
            if (accept(model)) {
                found_ = std::move(model);
                return true;
            }
            return false;
        }
        for (int succ = 0; succ < num_states_; ++succ) {
            delta_[state][v] = succ;
            if (coalition_clauses_ok(state) && next_delta_slot(state, v + 1, accept))
                return true;
        }
        delta_[state][v] = -1;
        return false;
    }

    // Violation checks on the possibly-partial transition row of `state`.
    bool coalition_clauses_ok(int state) {
        for (const CompiledClause& cc : coalition_) {
            if (!conj_true(cc.c, vals_[state])) continue;
            if (cc.kind == ClauseKind::PositiveCoalition) {
                if (!positive_possible(state, cc)) return false;
            } else {
                if (!negative_possible(state, cc)) return false;
            }
        }
        return true;
    }

    // Some A-move has no assigned outcome outside D yet.
    bool positive_possible(int state, const CompiledClause& cc) {
        return for_each_amove(state, cc.members, [&](const std::vector<int>& choices) {
            bool alive = true;
            for_each_extension(state, cc.members, choices, [&](int v) {
                int succ = delta_[state][v];
                if (succ >= 0 && !disj_true(cc.d, vals_[succ])) alive = false;
                return alive;
            });
            return alive;
        });
    }

    // No A-move is fully assigned with every outcome outside D.
    bool negative_possible(int state, const CompiledClause& cc) {
        return !for_each_amove(state, cc.members, [&](const std::vector<int>& choices) {
            bool complete = true, any_good = false;
            for_each_extension(state, cc.members, choices, [&](int v) {
                int succ = delta_[state][v];
                if (succ < 0) {
                    complete = false;
                    return false;
                }
                if (disj_true(cc.d, vals_[succ])) {
                    any_good = true;
                    return false;
                }
                return true;
            });
            return complete && !any_good;
        });
    }

    template <typename Fn>
    bool for_each_amove(int state, const std::vector<std::size_t>& members, Fn fn) {
        std::vector<int> choices(members.size(), 0);
        for (;;) {
            if (fn(choices)) return true;
            std::size_t i = members.size();
            for (;;) {
                if (i == 0) return false;
                --i;
                if (++choices[i] < moves_[members[i]][state]) break;
                choices[i] = 0;
            }
        }
    }

    template <typename Fn>
    void for_each_extension(int state, const std::vector<std::size_t>& members,
                            const std::vector<int>& choices, Fn fn) {
        int n = vector_count(state);
        for (int v = 0; v < n; ++v) {
            std::vector<int> mv = vector_moves(state, v);
            bool extends = true;
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (mv[members[i]] != choices[i]) {
                    extends = false;
                    break;
                }
            }
            if (extends && !fn(v)) return;
        }
    }

    Cgm to_model() const {
        std::vector<std::vector<std::string>> valuation(num_states_);
        for (int s = 0; s < num_states_; ++s)
            for (std::size_t p = 0; p < props_.size(); ++p)
                if (vals_[s] & (ValMask{1} << p)) valuation[s].push_back(props_[p]);
        return Cgm(agents_, num_states_, 0, moves_, delta_, std::move(valuation));
    }

    Coalition agents_;
    std::vector<std::string> props_;
    SearchBounds bounds_;
    std::vector<CompiledClause> initial_, global_, coalition_;

    int num_states_ = 1;
    std::vector<ValMask> vals_;
    std::vector<std::vector<int>> moves_;
    std::vector<std::vector<int>> delta_;
    std::optional<Cgm> found_;
};

}  // namespace

std::optional<Cgm> bounded_search(const CoalitionProblem& problem, const SearchBounds& bounds) {
    Coalition agents = problem.sigma();
    SearchBounds effective = bounds;
    if (agents.empty()) {
        // Tight satisfiability: no occurring agents means a propositional
        // reading, searched with one dummy one-move agent.
        agents = Coalition{1};
        effective.max_moves = 1;
    }
    std::vector<std::string> props = problem.props();
    search_space_guard(agents.size(), props.size(), effective);
    Searcher s(std::move(agents), std::move(props), effective);
    s.compile(problem);
    return s.run([](const Cgm&) { return true; });
}

void enumerate_models(const Coalition& agents, const std::vector<std::string>& props,
                      const SearchBounds& bounds,
                      const std::function<bool(const Cgm&)>& visit) {
    Coalition effective_agents = agents;
    SearchBounds effective = bounds;
    if (effective_agents.empty()) {
        effective_agents = Coalition{1};
        effective.max_moves = 1;
    }
    std::vector<std::string> sorted_props = props;
    std::sort(sorted_props.begin(), sorted_props.end());
    sorted_props.erase(std::unique(sorted_props.begin(), sorted_props.end()),
                       sorted_props.end());
    search_space_guard(effective_agents.size(), sorted_props.size(), effective);
    Searcher s(std::move(effective_agents), std::move(sorted_props), effective);
    s.run([&](const Cgm& m) { return !visit(m); });
}

std::optional<Cgm> bounded_search(const Formula& f, const SearchBounds& bounds) {
    std::optional<Cgm> found;
    enumerate_models(agents_of(f), props_of(f), bounds, [&](const Cgm& m) {
        if (eval(m, m.initial_state(), f)) {
            found = m;
            return false;
        }
        return true;
    });
    return found;
}

// ── Model file I/O ──────────────────────────────────────────────────────────

namespace {

std::string_view strip_view(std::string_view sv) {
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
        sv.remove_prefix(1);
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
        sv.remove_suffix(1);
    return sv;
}

std::vector<std::string> split_ws(std::string_view sv) {
    std::vector<std::string> out;
    std::istringstream in{std::string(sv)};
    std::string word;
    while (in >> word) out.push_back(word);
    return out;
}

}  // namespace

Cgm read_model(std::string_view text) {
    Coalition agents;
    int num_states = -1, init = 0;
    std::vector<std::tuple<Agent, int, int>> move_entries;
    std::vector<std::tuple<int, std::vector<int>, int>> delta_entries;
    std::vector<std::pair<int, std::vector<std::string>>> val_entries;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = text.substr(
            start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;

        std::string_view ln = raw;
        if (auto hash = ln.find('#'); hash != std::string_view::npos) ln = ln.substr(0, hash);
        ln = strip_view(ln);
        if (ln.empty()) continue;
        auto colon = ln.find(':');
        if (colon == std::string_view::npos)
            throw parse_error("expected 'key: ...'", line_no, 1);
        std::string key{strip_view(ln.substr(0, colon))};
        std::string_view rest = strip_view(ln.substr(colon + 1));
        if (key == "agents") {
            std::vector<Agent> ids;
            std::string buf{rest};
            for (char& c : buf)
                if (c == ',') c = ' ';
            for (const std::string& w : split_ws(buf)) {
                unsigned long v = std::stoul(w);
                if (v == 0) throw parse_error("agent ids start at 1", line_no, 1);
                ids.push_back(static_cast<Agent>(v));
            }
            agents = Coalition(std::move(ids));
        } else if (key == "states") {
            num_states = std::stoi(std::string(rest));
        } else if (key == "init") {
            init = std::stoi(std::string(rest));
        } else if (key == "moves") {
            auto words = split_ws(rest);
            if (words.size() != 3) throw parse_error("moves: agent state count", line_no, 1);
            move_entries.emplace_back(static_cast<Agent>(std::stoul(words[0])),
                                      std::stoi(words[1]), std::stoi(words[2]));
        } else if (key == "delta") {
            auto open = rest.find('(');
            auto close = rest.find(')');
            if (open == std::string_view::npos || close == std::string_view::npos ||
                close < open)
                throw parse_error("delta: state (m1,...,mk) successor", line_no, 1);
            int s = std::stoi(std::string(strip_view(rest.substr(0, open))));
            std::string inner{rest.substr(open + 1, close - open - 1)};
            for (char& c : inner)
                if (c == ',') c = ' ';
            std::vector<int> mv;
            for (const std::string& w : split_ws(inner)) mv.push_back(std::stoi(w));
            int succ = std::stoi(std::string(strip_view(rest.substr(close + 1))));
            delta_entries.emplace_back(s, std::move(mv), succ);
        } else if (key == "val") {
            auto words = split_ws(rest);
            if (words.empty()) throw parse_error("val: state [props...]", line_no, 1);
            int s = std::stoi(words[0]);
            val_entries.emplace_back(s,
                                     std::vector<std::string>(words.begin() + 1, words.end()));
        } else {
            throw parse_error("unknown model key '" + key + "'", line_no, 1);
        }
    }

    if (agents.empty()) throw std::invalid_argument("model file needs an agents: line");
    if (num_states <= 0) throw std::invalid_argument("model file needs states: >= 1");

    std::vector<std::vector<int>> moves(agents.size(), std::vector<int>(num_states, 1));
    const auto& ids = agents.ids();
    for (auto& [a, s, k] : move_entries) {
        auto it = std::lower_bound(ids.begin(), ids.end(), a);
        if (it == ids.end() || *it != a) throw std::invalid_argument("moves: unknown agent");
        if (s < 0 || s >= num_states) throw std::invalid_argument("moves: state out of range");
        moves[static_cast<std::size_t>(it - ids.begin())][s] = k;
    }

    std::vector<std::vector<int>> delta(num_states);
    for (int s = 0; s < num_states; ++s) {
        int n = 1;
        for (const auto& per_agent : moves) n *= per_agent[s];
        delta[s].assign(n, -1);
    }
    for (auto& [s, mv, succ] : delta_entries) {
        if (s < 0 || s >= num_states) throw std::invalid_argument("delta: state out of range");
        if (mv.size() != agents.size())
            throw std::invalid_argument("delta: one move per agent required");
        int index = 0;
        for (std::size_t i = 0; i < mv.size(); ++i) {
            int d = moves[i][s];
            if (mv[i] < 0 || mv[i] >= d) throw std::invalid_argument("delta: move out of range");
            index = index * d + mv[i];
        }
        delta[s][index] = succ;
    }
    for (int s = 0; s < num_states; ++s)
        for (int succ : delta[s])
            if (succ < 0) throw std::invalid_argument("delta: transition function must be total");

    std::vector<std::vector<std::string>> valuation(num_states);
    for (auto& [s, props] : val_entries) {
        if (s < 0 || s >= num_states) throw std::invalid_argument("val: state out of range");
        auto& v = valuation[s];
        v.insert(v.end(), props.begin(), props.end());
    }

    return Cgm(agents, num_states, init, std::move(moves), std::move(delta),
               std::move(valuation));
}

Cgm read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_model(buffer.str());
}

std::string write_model(const Cgm& m) {
    std::ostringstream out;
    out << "agents: " << m.agents().to_string() << "\n";
    out << "states: " << m.num_states() << "\n";
    out << "init: " << m.initial_state() << "\n";
    for (Agent a : m.agents().ids())
        for (int s = 0; s < m.num_states(); ++s)
            out << "moves: " << a << " " << s << " " << m.move_count(a, s) << "\n";
    for (int s = 0; s < m.num_states(); ++s) {
        int n = m.vector_count(s);
        for (int v = 0; v < n; ++v) {
            std::vector<int> mv = m.vector_moves(s, v);
            out << "delta: " << s << " (";
            for (std::size_t i = 0; i < mv.size(); ++i) {
                if (i) out << ",";
                out << mv[i];
            }
            out << ") " << m.successor(s, v) << "\n";
        }
    }
    for (int s = 0; s < m.num_states(); ++s) {
        out << "val: " << s;
        for (const std::string& p : m.valuation(s)) out << " " << p;
        out << "\n";
    }
    return out.str();
}

}  // namespace clres
