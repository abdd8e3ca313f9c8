#include "clres/engine.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <random>
#include <sstream>

namespace clres {

// ── Rule applications ───────────────────────────────────────────────────────

namespace {

bool contains(const std::vector<Literal>& ls, const Literal& l) {
    return std::binary_search(ls.begin(), ls.end(), l);
}

std::vector<Literal> without(const std::vector<Literal>& ls, const Literal& l) {
    std::vector<Literal> out;
    out.reserve(ls.size() - 1);
    for (const Literal& x : ls)
        if (x != l) out.push_back(x);
    return out;
}

std::vector<Literal> merged(std::vector<Literal> a, const std::vector<Literal>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void require(bool condition, const char* message) {
    if (!condition) throw rule_error(message);
}

void require_pivot(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(contains(c1.disjunction, pivot), "pivot not in the first premise");
    require(contains(c2.disjunction, pivot.complement()),
            "pivot complement not in the second premise");
}

}  // namespace

std::optional<Clause> ires1(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(c1.kind == ClauseKind::Initial, "ires1: first premise must be initial");
    require(c2.kind == ClauseKind::Initial || c2.kind == ClauseKind::Global,
            "ires1: second premise must be initial or global");
    require_pivot(c1, c2, pivot);
    return clause_simplify(Clause::initial(merged(without(c1.disjunction, pivot),
                                                  without(c2.disjunction, pivot.complement()))));
}

std::optional<Clause> gres1(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(c1.kind == ClauseKind::Global && c2.kind == ClauseKind::Global,
            "gres1: both premises must be global");
    require_pivot(c1, c2, pivot);
    return clause_simplify(Clause::global(merged(without(c1.disjunction, pivot),
                                                 without(c2.disjunction, pivot.complement()))));
}

std::optional<Clause> cres1(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(c1.kind == ClauseKind::PositiveCoalition &&
                c2.kind == ClauseKind::PositiveCoalition,
            "cres1: both premises must be positive coalition clauses");
    require(c1.coalition.disjoint_with(c2.coalition), "cres1: coalitions must be disjoint");
    require_pivot(c1, c2, pivot);
    return clause_simplify(Clause::positive(
        merged(c1.antecedent, c2.antecedent), c1.coalition.united_with(c2.coalition),
        merged(without(c1.disjunction, pivot), without(c2.disjunction, pivot.complement()))));
}

std::optional<Clause> cres2(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(c1.kind == ClauseKind::Global, "cres2: first premise must be global");
    require(c2.kind == ClauseKind::PositiveCoalition,
            "cres2: second premise must be a positive coalition clause");
    require_pivot(c1, c2, pivot);
    return clause_simplify(Clause::positive(
        c2.antecedent, c2.coalition,
        merged(without(c1.disjunction, pivot), without(c2.disjunction, pivot.complement()))));
}

std::optional<Clause> cres3(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(c1.kind == ClauseKind::PositiveCoalition &&
                c2.kind == ClauseKind::NegativeCoalition,
            "cres3: premises must be a positive and a negative coalition clause");
    require(c1.coalition.subset_of(c2.coalition),
            "cres3: positive coalition must be included in the negative one");
    require_pivot(c1, c2, pivot);
    return clause_simplify(Clause::negative(
        merged(c1.antecedent, c2.antecedent), c2.coalition.minus(c1.coalition),
        merged(without(c1.disjunction, pivot), without(c2.disjunction, pivot.complement()))));
}

std::optional<Clause> cres4(const Clause& c1, const Clause& c2, const Literal& pivot) {
    require(c1.kind == ClauseKind::Global, "cres4: first premise must be global");
    require(c2.kind == ClauseKind::NegativeCoalition,
            "cres4: second premise must be a negative coalition clause");
    require_pivot(c1, c2, pivot);
    return clause_simplify(Clause::negative(
        c2.antecedent, c2.coalition,
        merged(without(c1.disjunction, pivot), without(c2.disjunction, pivot.complement()))));
}

namespace {

std::optional<Clause> rewrite_empty(const Clause& c, ClauseKind expected, const char* name) {
    require(c.kind == expected, name);
    require(c.disjunction.empty(), "rewrite rules need an empty disjunction");
    std::vector<Literal> negated;
    negated.reserve(c.antecedent.size());
    for (const Literal& l : c.antecedent) negated.push_back(l.complement());
    return clause_simplify(Clause::global(std::move(negated)));
}

}  // namespace

std::optional<Clause> rw1(const Clause& c) {
    return rewrite_empty(c, ClauseKind::PositiveCoalition,
                         "rw1: premise must be a positive coalition clause");
}

std::optional<Clause> rw2(const Clause& c) {
    return rewrite_empty(c, ClauseKind::NegativeCoalition,
                         "rw2: premise must be a negative coalition clause");
}

std::optional<Clause> sigma_lift(const Clause& c, const Coalition& sigma) {
    require(c.kind == ClauseKind::NegativeCoalition,
            "sigma: premise must be a negative coalition clause");
    require(c.coalition.empty(), "sigma: premise coalition must be empty");
    return clause_simplify(Clause::positive(c.antecedent, sigma, c.disjunction));
}

// ── Subsumption ─────────────────────────────────────────────────────────────

namespace {

bool literal_subset(const std::vector<Literal>& a, const std::vector<Literal>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool subsumes(const Clause& c1, const Clause& c2) {
    switch (c1.kind) {
        case ClauseKind::Initial:
            return c2.kind == ClauseKind::Initial &&
                   literal_subset(c1.disjunction, c2.disjunction);
        case ClauseKind::Global:
            return (c2.kind == ClauseKind::Initial || c2.kind == ClauseKind::Global) &&
                   literal_subset(c1.disjunction, c2.disjunction);
        case ClauseKind::PositiveCoalition:
            return c2.kind == ClauseKind::PositiveCoalition &&
                   literal_subset(c1.antecedent, c2.antecedent) &&
                   c1.coalition.subset_of(c2.coalition) &&
                   literal_subset(c1.disjunction, c2.disjunction);
        case ClauseKind::NegativeCoalition:
            return c2.kind == ClauseKind::NegativeCoalition &&
                   literal_subset(c1.antecedent, c2.antecedent) &&
                   c2.coalition.subset_of(c1.coalition) &&
                   literal_subset(c1.disjunction, c2.disjunction);
    }
    return false;
}

// ── Saturation ──────────────────────────────────────────────────────────────

namespace {

// 64-bit membership signatures for cheap subsumption prefiltering:
// sig(c1) must be a submask of sig(c2) whenever c1's literals are a subset.
std::uint64_t literal_signature(const std::vector<Literal>& ls) {
    std::uint64_t sig = 0;
    for (const Literal& l : ls) {
        std::size_t h = std::hash<std::string>{}(l.name) * 2 + (l.negated ? 1 : 0);
        sig |= std::uint64_t{1} << (h % 64);
    }
    return sig;
}

struct StoredClause {
    Clause clause;
    std::uint64_t ante_sig = 0;
    std::uint64_t disj_sig = 0;
};

class Saturation {
public:
    Saturation(const CoalitionProblem& problem, const EngineConfig& config)
        : config_(config), sigma_(problem.sigma()) {
        start_ = std::chrono::steady_clock::now();
        std::vector<Clause> inputs = problem.all();
        if (config.seed != 0) {
            std::mt19937 rng(config.seed);
            std::shuffle(inputs.begin(), inputs.end(), rng);
        }
        for (Clause& c : inputs) {
            c.id = 0;
            c.justification = Justification::given();
            insert(std::move(c));
            if (done_) break;
        }
    }

    Verdict run() {
        while (!done_) {
            if (out_of_budget()) break;
            std::optional<ClauseId> given = choose();
            if (!given) {
                finish_satisfiable();
                break;
            }
            process(*given);
        }
        stats_.elapsed_seconds = elapsed();
        verdict_.stats = stats_;
        verdict_.derivation.steps.clear();
        verdict_.derivation.steps.reserve(store_.size());
        verdict_.derivation.input_count = 0;
        for (const StoredClause& sc : store_) {
            verdict_.derivation.steps.push_back(sc.clause);
            if (sc.clause.justification.is_given()) ++verdict_.derivation.input_count;
        }
        verdict_.derivation.sigma = sigma_;
        return std::move(verdict_);
    }

private:
    using Clock = std::chrono::steady_clock;

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

    bool out_of_budget() {
        if (config_.max_clauses != 0 && store_.size() >= config_.max_clauses) {
            verdict_.kind = Verdict::Kind::timeout;
            verdict_.timeout_reason = TimeoutReason::clause_limit;
            done_ = true;
            return true;
        }
        if (elapsed() > config_.timeout_seconds) {
            verdict_.kind = Verdict::Kind::timeout;
            verdict_.timeout_reason = TimeoutReason::wall_clock;
            done_ = true;
            return true;
        }
        return false;
    }

    // Initial clauses wait until the main queue is drained.
    std::optional<ClauseId> choose() {
        if (!main_queue_.empty()) {
            ClauseId id = main_queue_.front();
            main_queue_.pop_front();
            return id;
        }
        if (!initial_queue_.empty()) {
            ClauseId id = initial_queue_.front();
            initial_queue_.pop_front();
            return id;
        }
        return std::nullopt;
    }

    void finish_satisfiable() {
        verdict_.kind = Verdict::Kind::satisfiable;
        CoalitionProblem saturated;
        for (const StoredClause& sc : store_) {
            switch (sc.clause.kind) {
                case ClauseKind::Initial: saturated.initial.push_back(sc.clause); break;
                case ClauseKind::Global: saturated.global.push_back(sc.clause); break;
                default: saturated.coalition.push_back(sc.clause); break;
            }
        }
        verdict_.saturated = std::move(saturated);
    }

    const Clause& clause(ClauseId id) const { return store_[id - 1].clause; }

    void process(ClauseId given) {
        ++stats_.given;
        if (clause(given).kind == ClauseKind::Initial) {
            processed_initial_.push_back(given);
        } else {
            processed_main_.push_back(given);
        }

        // Derived partners first, then inputs, each in ascending id order.
        std::vector<ClauseId> pool;
        pool.reserve(processed_main_.size() + processed_initial_.size());
        pool.insert(pool.end(), processed_main_.begin(), processed_main_.end());
        pool.insert(pool.end(), processed_initial_.begin(), processed_initial_.end());
        std::sort(pool.begin(), pool.end());
        partners_.clear();
        for (ClauseId id : pool)
            if (id != given && !clause(id).justification.is_given()) partners_.push_back(id);
        for (ClauseId id : pool)
            if (id != given && clause(id).justification.is_given()) partners_.push_back(id);

        for (ClauseId partner : partners_) {
            resolve_pair(partner, given);
            if (done_) return;
            if ((++budget_tick_ & 0x3f) == 0 && out_of_budget()) return;
        }
    }

    // All resolvents between the two clauses, both orientations.
    void resolve_pair(ClauseId a, ClauseId b) {
        resolve_oriented(a, b);
        if (!done_) resolve_oriented(b, a);
    }

    void resolve_oriented(ClauseId id1, ClauseId id2) {
        const Clause& c1 = clause(id1);
        const Clause& c2 = clause(id2);
        for (const Literal& pivot : c1.disjunction) {
            if (done_) return;
            if (!contains(c2.disjunction, pivot.complement())) continue;
            switch (c1.kind) {
                case ClauseKind::Initial:
                    if (c2.kind == ClauseKind::Initial || c2.kind == ClauseKind::Global)
                        derive(ires1(c1, c2, pivot), RuleKind::ires1, {id1, id2}, pivot);
                    break;
                case ClauseKind::Global:
                    if (c2.kind == ClauseKind::Global)
                        derive(gres1(c1, c2, pivot), RuleKind::gres1, {id1, id2}, pivot);
                    else if (c2.kind == ClauseKind::PositiveCoalition)
                        derive(cres2(c1, c2, pivot), RuleKind::cres2, {id1, id2}, pivot);
                    else if (c2.kind == ClauseKind::NegativeCoalition)
                        derive(cres4(c1, c2, pivot), RuleKind::cres4, {id1, id2}, pivot);
                    break;
                case ClauseKind::PositiveCoalition:
                    if (c2.kind == ClauseKind::PositiveCoalition &&
                        c1.coalition.disjoint_with(c2.coalition))
                        derive(cres1(c1, c2, pivot), RuleKind::cres1, {id1, id2}, pivot);
                    else if (c2.kind == ClauseKind::NegativeCoalition &&
                             c1.coalition.subset_of(c2.coalition))
                        derive(cres3(c1, c2, pivot), RuleKind::cres3, {id1, id2}, pivot);
                    break;
                case ClauseKind::NegativeCoalition:
                    break;  // negative clauses resolve only as second premises
            }
        }
    }

    void derive(std::optional<Clause> resolvent, RuleKind rule, std::vector<ClauseId> premises,
                const Literal& pivot) {
        if (!resolvent) {
            ++stats_.tautologies;
            return;
        }
        resolvent->justification = Justification::derived(rule, std::move(premises), pivot);
        insert(std::move(*resolvent));
    }

    void insert(Clause c) {
        if (done_) return;
        std::optional<Clause> simplified = clause_simplify(std::move(c));
        if (!simplified) {
            ++stats_.tautologies;
            return;
        }
        StoredClause sc{std::move(*simplified), 0, 0};
        sc.ante_sig = literal_signature(sc.clause.antecedent);
        sc.disj_sig = literal_signature(sc.clause.disjunction);
        for (const StoredClause& old : store_) {
            if (!subsumption_prefilter(old, sc)) continue;
            if (subsumes(old.clause, sc.clause)) {
                ++stats_.subsumed;
                return;
            }
        }
        sc.clause.id = static_cast<ClauseId>(store_.size() + 1);
        if (!sc.clause.justification.is_given()) ++stats_.derived;
        const Clause& stored = store_.emplace_back(std::move(sc)).clause;

        if (stored.kind == ClauseKind::Initial) {
            initial_queue_.push_back(stored.id);
        } else {
            main_queue_.push_back(stored.id);
        }

        if (stored.is_false()) {
            verdict_.kind = Verdict::Kind::unsatisfiable;
            done_ = true;
            return;
        }

        // Eager rewriting of fresh empty-disjunction coalition clauses; the
        // clause itself stays queued so subsumption can see it.
        if (stored.is_coalition() && stored.disjunction.empty()) {
            ClauseId parent = stored.id;
            std::optional<Clause> rewritten =
                stored.kind == ClauseKind::PositiveCoalition ? rw1(stored) : rw2(stored);
            RuleKind rule =
                stored.kind == ClauseKind::PositiveCoalition ? RuleKind::rw1 : RuleKind::rw2;
            derive_unary(std::move(rewritten), rule, parent);
        } else if (config_.sigma_rule_enabled && stored.kind == ClauseKind::NegativeCoalition &&
                   stored.coalition.empty()) {
            ClauseId parent = stored.id;
            derive_unary(sigma_lift(stored, sigma_), RuleKind::sigma, parent);
        }
    }

    void derive_unary(std::optional<Clause> result, RuleKind rule, ClauseId premise) {
        if (!result) {
            ++stats_.tautologies;
            return;
        }
        result->justification = Justification::derived(rule, {premise});
        insert(std::move(*result));
    }

    bool subsumption_prefilter(const StoredClause& candidate_subsumer,
                               const StoredClause& candidate) const {
        const Clause& a = candidate_subsumer.clause;
        const Clause& b = candidate.clause;
        if (a.disjunction.size() > b.disjunction.size()) return false;
        if (a.antecedent.size() > b.antecedent.size()) return false;
        if ((candidate_subsumer.disj_sig & ~candidate.disj_sig) != 0) return false;
        if ((candidate_subsumer.ante_sig & ~candidate.ante_sig) != 0) return false;
        return true;
    }

    EngineConfig config_;
    Coalition sigma_;
    Clock::time_point start_;

    std::vector<StoredClause> store_;  // store_[i].clause.id == i + 1
    std::deque<ClauseId> main_queue_;
    std::deque<ClauseId> initial_queue_;
    std::vector<ClauseId> processed_main_;
    std::vector<ClauseId> processed_initial_;
    std::vector<ClauseId> partners_;

    SaturationStats stats_;
    Verdict verdict_;
    std::size_t budget_tick_ = 0;
    bool done_ = false;
};

}  // namespace

Verdict saturate(const CoalitionProblem& problem, const EngineConfig& config) {
    if (config.timeout_seconds <= 0)
        throw std::invalid_argument("timeout must be positive");
    return Saturation(problem, config).run();
}

// ── Proof extraction and replay ─────────────────────────────────────────────

Derivation extract_proof(const Verdict& verdict) {
    if (verdict.kind != Verdict::Kind::unsatisfiable)
        throw std::logic_error("extract_proof needs an unsatisfiable verdict");
    const auto& steps = verdict.derivation.steps;
    const Clause* contradiction = nullptr;
    for (const Clause& c : steps) {
        if (c.is_false()) {
            contradiction = &c;
            break;
        }
    }
    if (!contradiction) throw std::logic_error("unsatisfiable verdict without a false clause");

    std::vector<bool> reachable(steps.size() + 1, false);
    std::vector<ClauseId> worklist{contradiction->id};
    reachable[contradiction->id] = true;
    while (!worklist.empty()) {
        ClauseId id = worklist.back();
        worklist.pop_back();
        const Clause& c = steps[id - 1];
        for (ClauseId p : c.justification.premises) {
            if (!reachable[p]) {
                reachable[p] = true;
                worklist.push_back(p);
            }
        }
    }

    Derivation proof;
    proof.sigma = verdict.derivation.sigma;
    for (const Clause& c : steps)
        if (reachable[c.id]) proof.steps.push_back(c);
    proof.input_count = 0;
    for (const Clause& c : proof.steps)
        if (c.justification.is_given()) ++proof.input_count;
    return proof;
}

std::optional<Clause> replay_step(const Clause& step, const std::vector<Clause>& steps,
                                  const Coalition& sigma) {
    auto find = [&](ClauseId id) -> const Clause& {
        for (const Clause& c : steps)
            if (c.id == id) return c;
        throw std::logic_error("replay: premise " + std::to_string(id) + " missing");
    };
    const Justification& j = step.justification;
    if (j.is_given()) throw std::logic_error("replay: input clauses have no rule to replay");
    auto pivot = [&]() -> const Literal& {
        if (!j.pivot) throw std::logic_error("replay: missing pivot");
        return *j.pivot;
    };
    auto premise = [&](std::size_t i) -> const Clause& {
        if (i >= j.premises.size()) throw std::logic_error("replay: missing premise");
        return find(j.premises[i]);
    };
    switch (j.rule) {
        case RuleKind::ires1: return ires1(premise(0), premise(1), pivot());
        case RuleKind::gres1: return gres1(premise(0), premise(1), pivot());
        case RuleKind::cres1: return cres1(premise(0), premise(1), pivot());
        case RuleKind::cres2: return cres2(premise(0), premise(1), pivot());
        case RuleKind::cres3: return cres3(premise(0), premise(1), pivot());
        case RuleKind::cres4: return cres4(premise(0), premise(1), pivot());
        case RuleKind::rw1: return rw1(premise(0));
        case RuleKind::rw2: return rw2(premise(0));
        case RuleKind::sigma: return sigma_lift(premise(0), sigma);
        case RuleKind::given: break;
    }
    throw std::logic_error("replay: unknown rule");
}

bool replay_derivation(const Derivation& derivation) {
    for (const Clause& c : derivation.steps) {
        if (c.justification.is_given()) continue;
        std::optional<Clause> replayed = replay_step(c, derivation.steps, derivation.sigma);
        if (!replayed || !replayed->same_core(c)) return false;
    }
    return true;
}

// ── Trace rendering ─────────────────────────────────────────────────────────

namespace {

char set_tag(const Clause& c) {
    switch (c.kind) {
        case ClauseKind::Initial: return 'I';
        case ClauseKind::Global: return 'U';
        default: return 'N';
    }
}

}  // namespace

std::string trace_line(const Clause& c) {
    std::ostringstream out;
    out << c.id << ". " << c.to_string() << "  (" << set_tag(c) << ", "
        << rule_name(c.justification.rule);
    if (!c.justification.premises.empty()) {
        out << ",";
        for (ClauseId p : c.justification.premises) out << " " << p;
    }
    if (c.justification.pivot) out << ", pivot=" << c.justification.pivot->to_string();
    out << ")";
    return out.str();
}

std::string render_trace(const Derivation& derivation) {
    std::string out;
    for (const Clause& c : derivation.steps) {
        out += trace_line(c);
        out += '\n';
    }
    return out;
}

TraceLine parse_trace_line(std::string_view line) {
    auto dot = line.find('.');
    if (dot == std::string_view::npos) throw parse_error("trace line needs 'id.'", 1, 1);
    ClauseId id = static_cast<ClauseId>(std::stoul(std::string(line.substr(0, dot))));

    auto open = line.rfind('(');
    auto close = line.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw parse_error("trace line needs a (set, rule, ...) annotation", 1, 1);

    std::string_view body = line.substr(dot + 1, open - dot - 1);
    std::string_view annotation = line.substr(open + 1, close - open - 1);

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= annotation.size()) {
        std::size_t comma = annotation.find(',', start);
        std::string_view field = annotation.substr(
            start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        fields.emplace_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (fields.size() < 2) throw parse_error("trace annotation needs set and rule", 1, 1);

    TraceLine out;
    out.set_tag = fields[0].empty() ? 'U' : fields[0][0];
    ClauseKind section = out.set_tag == 'I' ? ClauseKind::Initial : ClauseKind::Global;
    std::optional<Clause> clause = clause_simplify(parse_clause(body, section));
    if (!clause) throw parse_error("trace line holds a tautology", 1, 1);
    out.clause = std::move(*clause);
    out.clause.id = id;

    auto rule = rule_from_name(fields[1]);
    if (!rule) throw parse_error("unknown rule '" + fields[1] + "'", 1, 1);
    Justification j;
    j.rule = *rule;
    for (std::size_t i = 2; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        if (f.rfind("pivot=", 0) == 0) {
            std::string text = f.substr(6);
            bool neg = !text.empty() && text[0] == '~';
            j.pivot = Literal{neg ? text.substr(1) : text, neg};
        } else {
            std::istringstream in(f);
            ClauseId p;
            while (in >> p) j.premises.push_back(p);
        }
    }
    out.clause.justification = std::move(j);
    return out;
}

}  // namespace clres
