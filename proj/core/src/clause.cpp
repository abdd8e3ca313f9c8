#include "clres/clause.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace clres {

const char* rule_name(RuleKind r) noexcept {
    switch (r) {
        case RuleKind::given: return "given";
        case RuleKind::ires1: return "ires1";
        case RuleKind::gres1: return "gres1";
        case RuleKind::cres1: return "cres1";
        case RuleKind::cres2: return "cres2";
        case RuleKind::cres3: return "cres3";
        case RuleKind::cres4: return "cres4";
        case RuleKind::rw1: return "rw1";
        case RuleKind::rw2: return "rw2";
        case RuleKind::sigma: return "sigma";
    }
    return "?";
}

std::optional<RuleKind> rule_from_name(std::string_view name) noexcept {
    for (auto r : {RuleKind::given, RuleKind::ires1, RuleKind::gres1, RuleKind::cres1,
                   RuleKind::cres2, RuleKind::cres3, RuleKind::cres4, RuleKind::rw1,
                   RuleKind::rw2, RuleKind::sigma}) {
        if (name == rule_name(r)) return r;
    }
    return std::nullopt;
}

// ── Clause construction ─────────────────────────────────────────────────────

namespace {

std::vector<Literal> sorted_unique(std::vector<Literal> ls) {
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    return ls;
}

bool has_complementary_pair(const std::vector<Literal>& ls) {
    // Sorted order places p immediately before ~p.
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
        if (ls[i].name == ls[i + 1].name && ls[i].negated != ls[i + 1].negated) return true;
    }
    return false;
}

bool contains_constant(const std::vector<Literal>& ls, bool value) {
    // `value` true means the literal evaluates to true: "true" or "~false".
    for (const Literal& l : ls) {
        if (l.name == "true" && l.negated != value) return true;
        if (l.name == "false" && l.negated == value) return true;
    }
    return false;
}

void drop_constants(std::vector<Literal>& ls) {
    ls.erase(std::remove_if(ls.begin(), ls.end(),
                            [](const Literal& l) {
                                return l.name == "true" || l.name == "false";
                            }),
             ls.end());
}

}  // namespace

Clause Clause::initial(std::vector<Literal> d) {
    Clause c;
    c.kind = ClauseKind::Initial;
    c.disjunction = sorted_unique(std::move(d));
    return c;
}

Clause Clause::global(std::vector<Literal> d) {
    Clause c;
    c.kind = ClauseKind::Global;
    c.disjunction = sorted_unique(std::move(d));
    return c;
}

Clause Clause::positive(std::vector<Literal> c0, Coalition a, std::vector<Literal> d) {
    Clause c;
    c.kind = ClauseKind::PositiveCoalition;
    c.antecedent = sorted_unique(std::move(c0));
    c.coalition = std::move(a);
    c.disjunction = sorted_unique(std::move(d));
    return c;
}

Clause Clause::negative(std::vector<Literal> c0, Coalition a, std::vector<Literal> d) {
    Clause c;
    c.kind = ClauseKind::NegativeCoalition;
    c.antecedent = sorted_unique(std::move(c0));
    c.coalition = std::move(a);
    c.disjunction = sorted_unique(std::move(d));
    return c;
}

bool Clause::same_core(const Clause& other) const noexcept {
    return kind == other.kind && coalition == other.coalition &&
           antecedent == other.antecedent && disjunction == other.disjunction;
}

std::string Clause::to_string() const {
    std::string out;
    if (is_coalition()) {
        if (antecedent.empty()) {
            out += "true";
        } else {
            for (std::size_t i = 0; i < antecedent.size(); ++i) {
                if (i > 0) out += " & ";
                out += antecedent[i].to_string();
            }
        }
        out += " => ";
        out += (kind == ClauseKind::PositiveCoalition) ? '<' : '[';
        out += coalition.to_string();
        out += (kind == ClauseKind::PositiveCoalition) ? '>' : ']';
        out += ' ';
    }
    if (disjunction.empty()) {
        out += "false";
    } else {
        for (std::size_t i = 0; i < disjunction.size(); ++i) {
            if (i > 0) out += " | ";
            out += disjunction[i].to_string();
        }
    }
    return out;
}

std::optional<Clause> clause_simplify(Clause c) {
    c.antecedent = sorted_unique(std::move(c.antecedent));
    c.disjunction = sorted_unique(std::move(c.disjunction));
    if (has_complementary_pair(c.disjunction) || contains_constant(c.disjunction, true))
        return std::nullopt;
    if (c.is_coalition() &&
        (has_complementary_pair(c.antecedent) || contains_constant(c.antecedent, false)))
        return std::nullopt;
    drop_constants(c.antecedent);   // remaining: `true` in C, a no-op conjunct
    drop_constants(c.disjunction);  // remaining: `false` in D, a no-op disjunct
    return c;
}

// ── CoalitionProblem ────────────────────────────────────────────────────────

Coalition CoalitionProblem::sigma() const {
    Coalition s;
    for (const Clause& c : coalition) s = s.united_with(c.coalition);
    return s;
}

std::vector<Clause> CoalitionProblem::all() const {
    std::vector<Clause> out;
    out.reserve(clause_count());
    out.insert(out.end(), initial.begin(), initial.end());
    out.insert(out.end(), global.begin(), global.end());
    out.insert(out.end(), coalition.begin(), coalition.end());
    std::sort(out.begin(), out.end(),
              [](const Clause& a, const Clause& b) { return a.id < b.id; });
    return out;
}

std::vector<std::string> CoalitionProblem::props() const {
    std::vector<std::string> names;
    auto add = [&](const std::vector<Literal>& ls) {
        for (const Literal& l : ls) names.push_back(l.name);
    };
    for (const Clause& c : initial) add(c.disjunction);
    for (const Clause& c : global) add(c.disjunction);
    for (const Clause& c : coalition) {
        add(c.antecedent);
        add(c.disjunction);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

// ── Problem files ───────────────────────────────────────────────────────────

namespace {

class ClauseScanner {
public:
    ClauseScanner(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_).starts_with(word)) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) {
        throw parse_error(message, line_, static_cast<int>(pos_) + 1);
    }

    Literal literal() {
        skip_ws();
        bool neg = eat('~');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++pos_;
            else break;
        }
        if (start == pos_) fail("expected a literal");
        char first = text_[start];
        if (!std::islower(static_cast<unsigned char>(first)) && first != '_')
            fail("proposition names start with a lowercase letter or '_'");
        return Literal{std::string(text_.substr(start, pos_ - start)), neg};
    }

    Coalition agents(char closer) {
        std::vector<Agent> ids;
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] != closer) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_) fail("expected an agent id");
            unsigned long v = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (v == 0) fail("agent ids start at 1");
            ids.push_back(static_cast<Agent>(v));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        }
        if (!eat(closer)) fail(std::string("expected '") + closer + "'");
        return Coalition(std::move(ids));
    }

    std::vector<Literal> literal_list(char separator) {
        std::vector<Literal> ls;
        ls.push_back(literal());
        while (eat(separator)) ls.push_back(literal());
        return ls;
    }

    std::size_t pos() const { return pos_; }
    std::string_view rest() {
        skip_ws();
        return text_.substr(pos_);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

Clause parse_clause_at(std::string_view text, ClauseKind disjunction_kind, int line) {
    ClauseScanner s(text, line);
    if (text.find("=>") == std::string_view::npos) {
        std::vector<Literal> d = s.literal_list('|');
        if (!s.at_end()) s.fail("trailing input after clause");
        Clause c = (disjunction_kind == ClauseKind::Initial) ? Clause::initial(std::move(d))
                                                             : Clause::global(std::move(d));
        return c;
    }
    std::vector<Literal> antecedent = s.literal_list('&');
    if (!s.eat("=>")) s.fail("expected '=>'");
    ClauseKind kind;
    Coalition a;
    if (s.eat('<')) {
        kind = ClauseKind::PositiveCoalition;
        a = s.agents('>');
    } else if (s.eat('[')) {
        kind = ClauseKind::NegativeCoalition;
        a = s.agents(']');
    } else {
        s.fail("expected '<' or '[' after '=>'");
    }
    std::vector<Literal> d = s.literal_list('|');
    if (!s.at_end()) s.fail("trailing input after clause");
    return kind == ClauseKind::PositiveCoalition
               ? Clause::positive(std::move(antecedent), std::move(a), std::move(d))
               : Clause::negative(std::move(antecedent), std::move(a), std::move(d));
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Clause parse_clause(std::string_view text, ClauseKind disjunction_kind) {
    return parse_clause_at(text, disjunction_kind, 1);
}

CoalitionProblem read_problem(std::string_view text) {
    CoalitionProblem problem;
    std::optional<ClauseKind> section;
    ClauseId next_id = 1;
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
        ln = strip(ln);
        if (ln.empty()) continue;
        if (ln == "I:") { section = ClauseKind::Initial; continue; }
        if (ln == "U:") { section = ClauseKind::Global; continue; }
        if (ln == "N:") { section = ClauseKind::PositiveCoalition; continue; }
        if (!section) throw parse_error("clause outside of an I:/U:/N: section", line_no, 1);

        Clause c = parse_clause_at(ln, *section, line_no);
        if (*section == ClauseKind::PositiveCoalition) {
            if (!c.is_coalition())
                throw parse_error("N: section lines must contain '=>'", line_no, 1);
        } else if (c.is_coalition()) {
            throw parse_error("coalition clause outside the N: section", line_no, 1);
        }
        std::optional<Clause> simplified = clause_simplify(std::move(c));
        if (!simplified) continue;  // tautology
        simplified->id = next_id++;
        switch (simplified->kind) {
            case ClauseKind::Initial: problem.initial.push_back(std::move(*simplified)); break;
            case ClauseKind::Global: problem.global.push_back(std::move(*simplified)); break;
            default: problem.coalition.push_back(std::move(*simplified)); break;
        }
    }
    return problem;
}

CoalitionProblem read_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_problem(buffer.str());
}

std::string write_problem(const CoalitionProblem& problem) {
    std::string out;
    out += "I:\n";
    for (const Clause& c : problem.initial) out += c.to_string() + "\n";
    out += "U:\n";
    for (const Clause& c : problem.global) out += c.to_string() + "\n";
    out += "N:\n";
    for (const Clause& c : problem.coalition) out += c.to_string() + "\n";
    return out;
}

}  // namespace clres
