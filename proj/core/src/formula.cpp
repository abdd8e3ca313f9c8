#include "clres/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace clres {

// ── Coalition ───────────────────────────────────────────────────────────────

namespace {

std::vector<Agent> normalized(std::vector<Agent> agents) {
    for (Agent a : agents) {
        if (a == 0) throw std::invalid_argument("agent ids start at 1");
    }
    std::sort(agents.begin(), agents.end());
    agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
    return agents;
}

}  // namespace

Coalition::Coalition(std::initializer_list<Agent> agents)
    : ids_(normalized(std::vector<Agent>(agents))) {}

Coalition::Coalition(std::vector<Agent> agents) : ids_(normalized(std::move(agents))) {}

bool Coalition::contains(Agent a) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), a);
}

bool Coalition::subset_of(const Coalition& other) const noexcept {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

bool Coalition::disjoint_with(const Coalition& other) const noexcept {
    auto it = ids_.begin();
    auto jt = other.ids_.begin();
    while (it != ids_.end() && jt != other.ids_.end()) {
        if (*it < *jt) ++it;
        else if (*jt < *it) ++jt;
        else return false;
    }
    return true;
}

Coalition Coalition::united_with(const Coalition& other) const {
    std::vector<Agent> out;
    out.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out));
    Coalition c;
    c.ids_ = std::move(out);
    return c;
}

Coalition Coalition::minus(const Coalition& other) const {
    std::vector<Agent> out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
    Coalition c;
    c.ids_ = std::move(out);
    return c;
}

std::string Coalition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(ids_[i]);
    }
    return out;
}

// ── Formula nodes ───────────────────────────────────────────────────────────

struct Formula::Node {
    Kind kind;
    std::string name;          // Prop
    Coalition coalition;       // Coop/DualCoop
    std::vector<Formula> kids;
};

Formula Formula::tru() {
    static const Formula f = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::True;
        return Formula(std::move(n));
    }();
    return f;
}

Formula Formula::fls() {
    static const Formula f = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::False;
        return Formula(std::move(n));
    }();
    return f;
}

Formula Formula::prop(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prop;
    n->name = std::move(name);
    return Formula(std::move(n));
}

Formula Formula::build_node(Kind kind, Coalition coalition, std::vector<Formula> kids) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->coalition = std::move(coalition);
    n->kids = std::move(kids);
    return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
    return build_node(Kind::Not, {}, {std::move(f)});
}

Formula Formula::conj(Formula lhs, Formula rhs) {
    return build_node(Kind::And, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::disj(Formula lhs, Formula rhs) {
    return build_node(Kind::Or, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::implies(Formula lhs, Formula rhs) {
    return build_node(Kind::Implies, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::iff(Formula lhs, Formula rhs) {
    return build_node(Kind::Iff, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::coop(Coalition a, Formula f) {
    return build_node(Kind::Coop, std::move(a), {std::move(f)});
}

Formula Formula::dual_coop(Coalition a, Formula f) {
    return build_node(Kind::DualCoop, std::move(a), {std::move(f)});
}

Formula Formula::from_literal(const Literal& l) {
    if (l.name == "true") return l.negated ? fls() : tru();
    if (l.name == "false") return l.negated ? tru() : fls();
    Formula p = prop(l.name);
    return l.negated ? neg(std::move(p)) : p;
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::prop_name() const { return node_->name; }

const Coalition& Formula::coalition() const { return node_->coalition; }

const Formula& Formula::child(std::size_t i) const { return node_->kids.at(i); }

std::size_t Formula::arity() const noexcept { return node_->kids.size(); }

bool Formula::is_literal() const noexcept {
    return kind() == Kind::Prop ||
           (kind() == Kind::Not && child().kind() == Kind::Prop);
}

bool Formula::is_constant() const noexcept {
    return kind() == Kind::True || kind() == Kind::False;
}

bool Formula::operator==(const Formula& other) const noexcept {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    if (node_->name != other.node_->name) return false;
    if (node_->coalition != other.node_->coalition) return false;
    if (node_->kids.size() != other.node_->kids.size()) return false;
    for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (!(node_->kids[i] == other.node_->kids[i])) return false;
    }
    return true;
}

std::size_t Formula::node_count() const noexcept {
    std::size_t n = 1;
    for (const Formula& k : node_->kids) n += k.node_count();
    return n;
}

// ── Parsing ─────────────────────────────────────────────────────────────────

parse_error::parse_error(std::string message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok : std::uint8_t {
    Ident, Nat, True, False,
    Tilde, Amp, Pipe, Arrow, DArrow,
    LAngle, RAngle, LBracket, RBracket, LParen, RParen, Comma,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws_and_comments();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        char c = text_[pos_];
        if (std::islower(static_cast<unsigned char>(c))) {
            std::string word = take_while([](char ch) {
                return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
            });
            if (word == "true") return {Tok::True, word, line, col};
            if (word == "false") return {Tok::False, word, line, col};
            return {Tok::Ident, word, line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = take_while([](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch)) != 0;
            });
            return {Tok::Nat, num, line, col};
        }
        switch (c) {
            case '~': advance(); return {Tok::Tilde, "~", line, col};
            case '&': advance(); return {Tok::Amp, "&", line, col};
            case '|': advance(); return {Tok::Pipe, "|", line, col};
            case '(': advance(); return {Tok::LParen, "(", line, col};
            case ')': advance(); return {Tok::RParen, ")", line, col};
            case '[': advance(); return {Tok::LBracket, "[", line, col};
            case ']': advance(); return {Tok::RBracket, "]", line, col};
            case ',': advance(); return {Tok::Comma, ",", line, col};
            case '>': advance(); return {Tok::RAngle, ">", line, col};
            case '<':
                advance();
                if (peek() == '-' && peek(1) == '>') {
                    advance();
                    advance();
                    return {Tok::DArrow, "<->", line, col};
                }
                return {Tok::LAngle, "<", line, col};
            case '-':
                advance();
                if (peek() == '>') {
                    advance();
                    return {Tok::Arrow, "->", line, col};
                }
                throw parse_error("expected '>' after '-'", line_, col_);
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    template <typename Pred>
    std::string take_while(Pred pred) {
        std::string out;
        while (pos_ < text_.size() && pred(text_[pos_])) {
            out += text_[pos_];
            advance();
        }
        return out;
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { bump(); }

    Formula parse_formula() {
        if (tok_.kind == Tok::End) throw parse_error("empty input", tok_.line, tok_.column);
        Formula f = parse_iff();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    void bump() { tok_ = lexer_.next(); }

    void expect(Tok kind, const char* what) {
        if (tok_.kind != kind) {
            throw parse_error(std::string("expected ") + what, tok_.line, tok_.column);
        }
    }

    Formula parse_iff() {
        Formula f = parse_imp();
        while (tok_.kind == Tok::DArrow) {
            bump();
            f = Formula::iff(std::move(f), parse_imp());
        }
        return f;
    }

    Formula parse_imp() {
        Formula f = parse_or();
        if (tok_.kind == Tok::Arrow) {
            bump();
            return Formula::implies(std::move(f), parse_imp());  // right-assoc
        }
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (tok_.kind == Tok::Pipe) {
            bump();
            f = Formula::disj(std::move(f), parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (tok_.kind == Tok::Amp) {
            bump();
            f = Formula::conj(std::move(f), parse_unary());
        }
        return f;
    }

    Coalition parse_agents(Tok closer) {
        std::vector<Agent> agents;
        if (tok_.kind != closer) {
            for (;;) {
                expect(Tok::Nat, "agent id");
                unsigned long v = std::stoul(tok_.text);
                if (v == 0) throw parse_error("agent ids start at 1", tok_.line, tok_.column);
                agents.push_back(static_cast<Agent>(v));
                bump();
                if (tok_.kind != Tok::Comma) break;
                bump();
            }
        }
        expect(closer, closer == Tok::RAngle ? "'>'" : "']'");
        bump();
        return Coalition(std::move(agents));
    }

    Formula parse_unary() {
        switch (tok_.kind) {
            case Tok::Tilde:
                bump();
                return Formula::neg(parse_unary());
            case Tok::LAngle: {
                bump();
                Coalition a = parse_agents(Tok::RAngle);
                return Formula::coop(std::move(a), parse_unary());
            }
            case Tok::LBracket: {
                bump();
                Coalition a = parse_agents(Tok::RBracket);
                return Formula::dual_coop(std::move(a), parse_unary());
            }
            case Tok::True:
                bump();
                return Formula::tru();
            case Tok::False:
                bump();
                return Formula::fls();
            case Tok::Ident: {
                Formula f = Formula::prop(tok_.text);
                bump();
                return f;
            }
            case Tok::LParen: {
                bump();
                Formula f = parse_iff();
                expect(Tok::RParen, "')'");
                bump();
                return f;
            }
            default:
                throw parse_error("expected a formula", tok_.line, tok_.column);
        }
    }

    Lexer lexer_;
    Token tok_{Tok::End, "", 1, 1};
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_formula(); }

// ── Rendering ───────────────────────────────────────────────────────────────

namespace {

// Binding strength, loosest to tightest.
int precedence(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Iff: return 0;
        case Formula::Kind::Implies: return 1;
        case Formula::Kind::Or: return 2;
        case Formula::Kind::And: return 3;
        default: return 4;  // unary and atoms
    }
}

void render_into(const Formula& f, std::string& out, int min_prec) {
    int prec = precedence(f.kind());
    bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (f.kind()) {
        case Formula::Kind::True: out += "true"; break;
        case Formula::Kind::False: out += "false"; break;
        case Formula::Kind::Prop: out += f.prop_name(); break;
        case Formula::Kind::Not:
            out += '~';
            render_into(f.child(), out, 4);
            break;
        case Formula::Kind::Coop:
            out += '<';
            out += f.coalition().to_string();
            out += "> ";
            render_into(f.child(), out, 4);
            break;
        case Formula::Kind::DualCoop:
            out += '[';
            out += f.coalition().to_string();
            out += "] ";
            render_into(f.child(), out, 4);
            break;
        case Formula::Kind::And:
            render_into(f.child(0), out, 3);
            out += " & ";
            render_into(f.child(1), out, 4);
            break;
        case Formula::Kind::Or:
            render_into(f.child(0), out, 2);
            out += " | ";
            render_into(f.child(1), out, 3);
            break;
        case Formula::Kind::Implies:
            // right-associative: the left operand needs strictly tighter binding
            render_into(f.child(0), out, 2);
            out += " -> ";
            render_into(f.child(1), out, 1);
            break;
        case Formula::Kind::Iff:
            render_into(f.child(0), out, 0);
            out += " <-> ";
            render_into(f.child(1), out, 1);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
    std::string out;
    render_into(f, out, 0);
    return out;
}

// ── Negation normal form ────────────────────────────────────────────────────

namespace {

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f);

Formula fold_and(Formula a, Formula b) {
    if (a.kind() == Formula::Kind::False || b.kind() == Formula::Kind::False)
        return Formula::fls();
    if (a.kind() == Formula::Kind::True) return b;
    if (b.kind() == Formula::Kind::True) return a;
    return Formula::conj(std::move(a), std::move(b));
}

Formula fold_or(Formula a, Formula b) {
    if (a.kind() == Formula::Kind::True || b.kind() == Formula::Kind::True)
        return Formula::tru();
    if (a.kind() == Formula::Kind::False) return b;
    if (b.kind() == Formula::Kind::False) return a;
    return Formula::disj(std::move(a), std::move(b));
}

// <A> true and [A] true are valid, <A> false and [A] false unsatisfiable.
Formula fold_coop(Coalition a, Formula f) {
    if (f.kind() == Formula::Kind::True) return Formula::tru();
    if (f.kind() == Formula::Kind::False) return Formula::fls();
    return Formula::coop(std::move(a), std::move(f));
}

Formula fold_dual(Coalition a, Formula f) {
    if (f.kind() == Formula::Kind::True) return Formula::tru();
    if (f.kind() == Formula::Kind::False) return Formula::fls();
    return Formula::dual_coop(std::move(a), std::move(f));
}

Formula nnf_pos(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Prop:
            return f;
        case Formula::Kind::Not:
            return nnf_neg(f.child());
        case Formula::Kind::And:
            return fold_and(nnf_pos(f.child(0)), nnf_pos(f.child(1)));
        case Formula::Kind::Or:
            return fold_or(nnf_pos(f.child(0)), nnf_pos(f.child(1)));
        case Formula::Kind::Implies:
            return fold_or(nnf_neg(f.child(0)), nnf_pos(f.child(1)));
        case Formula::Kind::Iff:
            return fold_and(fold_or(nnf_neg(f.child(0)), nnf_pos(f.child(1))),
                            fold_or(nnf_neg(f.child(1)), nnf_pos(f.child(0))));
        case Formula::Kind::Coop:
            return fold_coop(f.coalition(), nnf_pos(f.child()));
        case Formula::Kind::DualCoop:
            return fold_dual(f.coalition(), nnf_pos(f.child()));
    }
    throw std::logic_error("unreachable");
}

Formula nnf_neg(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True:
            return Formula::fls();
        case Formula::Kind::False:
            return Formula::tru();
        case Formula::Kind::Prop:
            return Formula::neg(f);
        case Formula::Kind::Not:
            return nnf_pos(f.child());
        case Formula::Kind::And:
            return fold_or(nnf_neg(f.child(0)), nnf_neg(f.child(1)));
        case Formula::Kind::Or:
            return fold_and(nnf_neg(f.child(0)), nnf_neg(f.child(1)));
        case Formula::Kind::Implies:
            return fold_and(nnf_pos(f.child(0)), nnf_neg(f.child(1)));
        case Formula::Kind::Iff:
            return fold_or(fold_and(nnf_pos(f.child(0)), nnf_neg(f.child(1))),
                           fold_and(nnf_pos(f.child(1)), nnf_neg(f.child(0))));
        case Formula::Kind::Coop:
            return fold_dual(f.coalition(), nnf_neg(f.child()));
        case Formula::Kind::DualCoop:
            return fold_coop(f.coalition(), nnf_neg(f.child()));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_pos(f); }

// ── Agent and proposition extraction ────────────────────────────────────────

namespace {

void collect_agents(const Formula& f, std::vector<Agent>& out) {
    if (f.kind() == Formula::Kind::Coop || f.kind() == Formula::Kind::DualCoop) {
        const auto& ids = f.coalition().ids();
        out.insert(out.end(), ids.begin(), ids.end());
    }
    for (std::size_t i = 0; i < f.arity(); ++i) collect_agents(f.child(i), out);
}

void collect_props(const Formula& f, std::vector<std::string>& out) {
    if (f.kind() == Formula::Kind::Prop) out.push_back(f.prop_name());
    for (std::size_t i = 0; i < f.arity(); ++i) collect_props(f.child(i), out);
}

}  // namespace

Coalition agents_of(const Formula& f) {
    std::vector<Agent> ids;
    collect_agents(f, ids);
    return Coalition(std::move(ids));
}

std::vector<std::string> props_of(const Formula& f) {
    std::vector<std::string> names;
    collect_props(f, names);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

}  // namespace clres
