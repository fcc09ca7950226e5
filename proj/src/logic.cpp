#include "permlogic/logic.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace permlogic {

Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }

std::string to_string(Var v) { return v == Var::X ? "x" : "y"; }

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr f_true() {
    Formula f;
    f.kind = FormulaKind::True;
    return node(std::move(f));
}

FormulaPtr f_pred(const Letter& p, Var v) {
    Formula f;
    f.kind = FormulaKind::Pred;
    f.letter = p;
    f.var = v;
    return node(std::move(f));
}

FormulaPtr f_succr(Var v, Var w) {
    Formula f;
    f.kind = FormulaKind::SuccR;
    f.var = v;
    f.var2 = w;
    return node(std::move(f));
}

FormulaPtr f_succd(Var v, Var w) {
    Formula f;
    f.kind = FormulaKind::SuccD;
    f.var = v;
    f.var2 = w;
    return node(std::move(f));
}

FormulaPtr f_not(FormulaPtr f) {
    Formula out;
    out.kind = FormulaKind::Not;
    out.lhs = std::move(f);
    return node(std::move(out));
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    Formula out;
    out.kind = FormulaKind::And;
    out.lhs = std::move(a);
    out.rhs = std::move(b);
    return node(std::move(out));
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    Formula out;
    out.kind = FormulaKind::Or;
    out.lhs = std::move(a);
    out.rhs = std::move(b);
    return node(std::move(out));
}

FormulaPtr f_exists(Var v, FormulaPtr body) {
    Formula out;
    out.kind = FormulaKind::Exists;
    out.var = v;
    out.lhs = std::move(body);
    return node(std::move(out));
}

FormulaPtr f_forall(Var v, FormulaPtr body) {
    Formula out;
    out.kind = FormulaKind::Forall;
    out.var = v;
    out.lhs = std::move(body);
    return node(std::move(out));
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::Pred:
            return a->letter == b->letter && a->var == b->var;
        case FormulaKind::SuccR:
        case FormulaKind::SuccD:
            return a->var == b->var && a->var2 == b->var2;
        case FormulaKind::Not:
            return formula_equal(a->lhs, b->lhs);
        case FormulaKind::And:
        case FormulaKind::Or:
            return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            return a->var == b->var && formula_equal(a->lhs, b->lhs);
    }
    return false;
}

// --- parsing -----------------------------------------------------------------

ParseError::ParseError(int line_, int col_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ", column " +
                         std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

namespace {

struct Token {
    enum class Type { Ident, LParen, RParen, Bang, Amp, Pipe, Dot, Arrow, DownArrow, End };
    Type type;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Type t, std::string s) {
        out.push_back({t, std::move(s), line, col});
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(Token::Type::Ident, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        switch (ch) {
            case '(': push(Token::Type::LParen, "("); break;
            case ')': push(Token::Type::RParen, ")"); break;
            case '!': push(Token::Type::Bang, "!"); break;
            case '&': push(Token::Type::Amp, "&"); break;
            case '.': push(Token::Type::Dot, "."); break;
            case '|':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    push(Token::Type::DownArrow, "|>");
                    ++i;
                    ++col;
                } else {
                    push(Token::Type::Pipe, "|");
                }
                break;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    push(Token::Type::Arrow, "->");
                    ++i;
                    ++col;
                } else {
                    throw ParseError(line, col, "expected '->'");
                }
                break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        ++col;
        ++i;
    }
    out.push_back({Token::Type::End, "", line, col});
    return out;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_formula();
        if (peek().type != Token::Type::End)
            throw ParseError(peek().line, peek().col, "unexpected trailing input");
        return f;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(peek().line, peek().col, msg);
    }

    Var parse_var() {
        const Token& t = peek();
        if (t.type != Token::Type::Ident || (t.text != "x" && t.text != "y"))
            fail("expected variable x or y");
        advance();
        return t.text == "x" ? Var::X : Var::Y;
    }

    FormulaPtr parse_formula() {
        const Token& t = peek();
        if (t.type == Token::Type::Ident && (t.text == "forall" || t.text == "exists")) {
            const bool universal = t.text == "forall";
            advance();
            const Var v = parse_var();
            if (peek().type != Token::Type::Dot) fail("expected '.' after quantified variable");
            advance();
            FormulaPtr body = parse_formula();
            return universal ? f_forall(v, std::move(body)) : f_exists(v, std::move(body));
        }
        return parse_or();
    }

    FormulaPtr parse_or() {
        FormulaPtr lhs = parse_and();
        while (peek().type == Token::Type::Pipe) {
            advance();
            lhs = f_or(std::move(lhs), parse_and());
        }
        return lhs;
    }

    FormulaPtr parse_and() {
        FormulaPtr lhs = parse_term();
        while (peek().type == Token::Type::Amp) {
            advance();
            lhs = f_and(std::move(lhs), parse_term());
        }
        return lhs;
    }

    FormulaPtr parse_term() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::Bang:
                advance();
                return f_not(parse_term());
            case Token::Type::LParen: {
                advance();
                FormulaPtr f = parse_formula();
                if (peek().type != Token::Type::RParen) fail("expected ')'");
                advance();
                return f;
            }
            case Token::Type::Ident: {
                if (t.text == "forall" || t.text == "exists")
                    fail("quantified formula must be parenthesized in this position");
                if (t.text == "x" || t.text == "y") {
                    const Var v = parse_var();
                    const Token& op = peek();
                    if (op.type == Token::Type::Arrow) {
                        advance();
                        return f_succr(v, parse_var());
                    }
                    if (op.type == Token::Type::DownArrow) {
                        advance();
                        return f_succd(v, parse_var());
                    }
                    fail("expected '->' or '|>' after variable");
                }
                const std::string name = t.text;
                advance();
                if (peek().type != Token::Type::LParen) fail("expected '(' after predicate name");
                advance();
                const Var v = parse_var();
                if (peek().type != Token::Type::RParen) fail("expected ')'");
                advance();
                return f_pred(name, v);
            }
            default:
                fail("expected a formula");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(tokenize(text)).parse(); }

// --- printing ------------------------------------------------------------------

namespace {

// Precedence levels: quantifier body 0 (extends right), or 1, and 2, unary 3.
void print_rec(std::ostringstream& os, const FormulaPtr& f, int min_prec) {
    switch (f->kind) {
        case FormulaKind::True:
            os << "!(x -> x)";
            return;
        case FormulaKind::Pred:
            os << f->letter << "(" << to_string(f->var) << ")";
            return;
        case FormulaKind::SuccR:
            os << to_string(f->var) << " -> " << to_string(f->var2);
            return;
        case FormulaKind::SuccD:
            os << to_string(f->var) << " |> " << to_string(f->var2);
            return;
        case FormulaKind::Not:
            os << "!";
            // Binary atoms parse as full terms after '!', but parenthesize
            // them for readability; composites need the parens.
            if (f->lhs->kind == FormulaKind::Pred) {
                print_rec(os, f->lhs, 3);
            } else if (f->lhs->kind == FormulaKind::Not) {
                print_rec(os, f->lhs, 3);
            } else {
                os << "(";
                print_rec(os, f->lhs, 0);
                os << ")";
            }
            return;
        case FormulaKind::And: {
            const bool wrap = min_prec > 2;
            if (wrap) os << "(";
            print_rec(os, f->lhs, 2);
            os << " & ";
            print_rec(os, f->rhs, 3);  // right operand must not be a bare And
            if (wrap) os << ")";
            return;
        }
        case FormulaKind::Or: {
            const bool wrap = min_prec > 1;
            if (wrap) os << "(";
            print_rec(os, f->lhs, 1);
            os << " | ";
            print_rec(os, f->rhs, 2);  // right operand must not be a bare Or
            if (wrap) os << ")";
            return;
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            const bool wrap = min_prec > 0;
            if (wrap) os << "(";
            os << (f->kind == FormulaKind::Forall ? "forall " : "exists ")
               << to_string(f->var) << ". ";
            print_rec(os, f->lhs, 0);
            if (wrap) os << ")";
            return;
        }
    }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
    std::ostringstream os;
    print_rec(os, f, 0);
    return os.str();
}

// --- structural queries ----------------------------------------------------

std::set<Letter> letters_of(const FormulaPtr& f) {
    std::set<Letter> out;
    const std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (!g) return;
        if (g->kind == FormulaKind::Pred) out.insert(g->letter);
        walk(g->lhs);
        walk(g->rhs);
    };
    walk(f);
    return out;
}

bool is_quantifier_free(const FormulaPtr& f) {
    if (!f) return true;
    if (f->kind == FormulaKind::Exists || f->kind == FormulaKind::Forall) return false;
    return is_quantifier_free(f->lhs) && is_quantifier_free(f->rhs);
}

namespace {

void free_vars_rec(const FormulaPtr& f, std::set<Var>& bound_mask, std::set<Var>& out) {
    switch (f->kind) {
        case FormulaKind::True:
            return;
        case FormulaKind::Pred:
            if (!bound_mask.count(f->var)) out.insert(f->var);
            return;
        case FormulaKind::SuccR:
        case FormulaKind::SuccD:
            if (!bound_mask.count(f->var)) out.insert(f->var);
            if (!bound_mask.count(f->var2)) out.insert(f->var2);
            return;
        case FormulaKind::Not:
            free_vars_rec(f->lhs, bound_mask, out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
            free_vars_rec(f->lhs, bound_mask, out);
            free_vars_rec(f->rhs, bound_mask, out);
            return;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            const bool was_bound = bound_mask.count(f->var) > 0;
            bound_mask.insert(f->var);
            free_vars_rec(f->lhs, bound_mask, out);
            if (!was_bound) bound_mask.erase(f->var);
            return;
        }
    }
}

}  // namespace

std::set<Var> free_vars(const FormulaPtr& f) {
    std::set<Var> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

// --- evaluation ---------------------------------------------------------------

bool eval_formula(const ValuedPermutation& m, const FormulaPtr& f, const Assignment& mu) {
    switch (f->kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::Pred: {
            const auto& e = mu.get(f->var);
            if (!e) throw std::invalid_argument("eval_formula: unbound variable " +
                                                to_string(f->var));
            return m.sigma_at(*e).count(f->letter) > 0;
        }
        case FormulaKind::SuccR: {
            const auto& a = mu.get(f->var);
            const auto& b = mu.get(f->var2);
            if (!a || !b) throw std::invalid_argument("eval_formula: unbound variable");
            return b->c == a->c + 1;
        }
        case FormulaKind::SuccD: {
            const auto& a = mu.get(f->var);
            const auto& b = mu.get(f->var2);
            if (!a || !b) throw std::invalid_argument("eval_formula: unbound variable");
            return b->r == a->r + 1;
        }
        case FormulaKind::Not:
            return !eval_formula(m, f->lhs, mu);
        case FormulaKind::And:
            return eval_formula(m, f->lhs, mu) && eval_formula(m, f->rhs, mu);
        case FormulaKind::Or:
            return eval_formula(m, f->lhs, mu) || eval_formula(m, f->rhs, mu);
        case FormulaKind::Exists:
            for (int r = 1; r <= m.n; ++r)
                if (eval_formula(m, f->lhs, mu.with(f->var, {r, m.row_to_col[r]})))
                    return true;
            return false;
        case FormulaKind::Forall:
            for (int r = 1; r <= m.n; ++r)
                if (!eval_formula(m, f->lhs, mu.with(f->var, {r, m.row_to_col[r]})))
                    return false;
            return true;
    }
    return false;
}

// --- Scott normal form ----------------------------------------------------------

namespace {

/// Renames variables in a quantifier-free formula.
FormulaPtr rename_qf(const FormulaPtr& f, Var from1, Var to1, Var from2, Var to2) {
    auto map_var = [&](Var v) { return v == from1 ? to1 : (v == from2 ? to2 : v); };
    switch (f->kind) {
        case FormulaKind::True:
            return f;
        case FormulaKind::Pred:
            return f_pred(f->letter, map_var(f->var));
        case FormulaKind::SuccR:
            return f_succr(map_var(f->var), map_var(f->var2));
        case FormulaKind::SuccD:
            return f_succd(map_var(f->var), map_var(f->var2));
        case FormulaKind::Not:
            return f_not(rename_qf(f->lhs, from1, to1, from2, to2));
        case FormulaKind::And:
            return f_and(rename_qf(f->lhs, from1, to1, from2, to2),
                         rename_qf(f->rhs, from1, to1, from2, to2));
        case FormulaKind::Or:
            return f_or(rename_qf(f->lhs, from1, to1, from2, to2),
                        rename_qf(f->rhs, from1, to1, from2, to2));
        default:
            throw std::invalid_argument("rename_qf: formula must be quantifier-free");
    }
}

FormulaPtr rename_qf(const FormulaPtr& f, Var from, Var to) {
    return rename_qf(f, from, to, from, to);
}

/// Finds (DFS, left to right) the first quantified node whose body is
/// quantifier-free. Returns nullptr when f is quantifier-free.
FormulaPtr find_innermost_quantifier(const FormulaPtr& f) {
    if (!f) return nullptr;
    switch (f->kind) {
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            if (is_quantifier_free(f->lhs)) return f;
            return find_innermost_quantifier(f->lhs);
        case FormulaKind::Not:
            return find_innermost_quantifier(f->lhs);
        case FormulaKind::And:
        case FormulaKind::Or: {
            FormulaPtr hit = find_innermost_quantifier(f->lhs);
            return hit ? hit : find_innermost_quantifier(f->rhs);
        }
        default:
            return nullptr;
    }
}

/// Replaces the first DFS occurrence (by node identity) of target with repl.
FormulaPtr replace_first(const FormulaPtr& f, const FormulaPtr& target,
                         const FormulaPtr& repl, bool& done) {
    if (done || !f) return f;
    if (f == target) {
        done = true;
        return repl;
    }
    switch (f->kind) {
        case FormulaKind::Not: {
            FormulaPtr inner = replace_first(f->lhs, target, repl, done);
            return inner == f->lhs ? f : f_not(inner);
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            FormulaPtr l = replace_first(f->lhs, target, repl, done);
            FormulaPtr r = replace_first(f->rhs, target, repl, done);
            if (l == f->lhs && r == f->rhs) return f;
            return f->kind == FormulaKind::And ? f_and(l, r) : f_or(l, r);
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            FormulaPtr inner = replace_first(f->lhs, target, repl, done);
            if (inner == f->lhs) return f;
            return f->kind == FormulaKind::Exists ? f_exists(f->var, inner)
                                                  : f_forall(f->var, inner);
        }
        default:
            return f;
    }
}

struct SnfBuilder {
    std::vector<FormulaPtr> chi_parts;
    std::vector<FormulaPtr> psis;
    std::set<Letter> vocabulary;
    std::vector<FreshDef> fresh;
    int counter = 0;

    Letter next_fresh() {
        Letter p;
        do {
            p = "_snf" + std::to_string(counter++);
        } while (vocabulary.count(p));
        vocabulary.insert(p);
        return p;
    }

    /// Drops top-level quantifiers binding a variable the body never uses.
    static FormulaPtr strip_vacuous(FormulaPtr c) {
        while ((c->kind == FormulaKind::Exists || c->kind == FormulaKind::Forall) &&
               !free_vars(c->lhs).count(c->var))
            c = c->lhs;
        return c;
    }

    bool direct_shape(const FormulaPtr& c0) {
        const FormulaPtr c = strip_vacuous(c0);
        // A conjunct whose quantifiers were all vacuous is a closed
        // quantifier-free constant; it joins chi as-is.
        if (is_quantifier_free(c)) {
            chi_parts.push_back(c);
            return true;
        }
        if (c->kind == FormulaKind::Forall) {
            const Var v = c->var;
            const FormulaPtr body = strip_vacuous(c->lhs);
            if (is_quantifier_free(body)) {
                chi_parts.push_back(rename_qf(body, v, Var::X));
                return true;
            }
            if (body->kind == FormulaKind::Forall && body->var != v &&
                is_quantifier_free(body->lhs)) {
                chi_parts.push_back(rename_qf(body->lhs, v, Var::X, body->var, Var::Y));
                return true;
            }
            if (body->kind == FormulaKind::Exists && body->var != v &&
                is_quantifier_free(body->lhs)) {
                psis.push_back(rename_qf(body->lhs, v, Var::X, body->var, Var::Y));
                return true;
            }
            return false;
        }
        if (c->kind == FormulaKind::Exists && is_quantifier_free(c->lhs)) {
            psis.push_back(rename_qf(c->lhs, c->var, Var::Y));
            return true;
        }
        return false;
    }

    void scottize(FormulaPtr work) {
        while (true) {
            const FormulaPtr eta = find_innermost_quantifier(work);
            if (!eta) break;
            const Var v = eta->var;
            const FormulaPtr alpha = eta->lhs;
            std::set<Var> fr = free_vars(alpha);
            fr.erase(v);
            const Letter p = next_fresh();
            FormulaPtr replacement;
            if (!fr.empty()) {
                const Var u = *fr.begin();
                const FormulaPtr alpha_std = rename_qf(alpha, u, Var::X, v, Var::Y);
                if (eta->kind == FormulaKind::Exists) {
                    psis.push_back(f_or(f_not(f_pred(p, Var::X)), alpha_std));
                    chi_parts.push_back(f_or(f_not(alpha_std), f_pred(p, Var::X)));
                } else {
                    chi_parts.push_back(f_or(f_not(f_pred(p, Var::X)), alpha_std));
                    psis.push_back(f_or(f_pred(p, Var::X), f_not(alpha_std)));
                }
                replacement = f_pred(p, u);
                fresh.push_back({p, u, eta});
            } else {
                // Closed subformula: p is made constant across elements.
                const FormulaPtr alpha_x = rename_qf(alpha, v, Var::X);
                const FormulaPtr alpha_y = rename_qf(alpha, v, Var::Y);
                if (eta->kind == FormulaKind::Exists) {
                    psis.push_back(f_or(f_not(f_pred(p, Var::X)), alpha_y));
                    chi_parts.push_back(f_or(f_not(alpha_x), f_pred(p, Var::X)));
                } else {
                    chi_parts.push_back(f_or(f_not(f_pred(p, Var::X)), alpha_x));
                    psis.push_back(f_or(f_pred(p, Var::X), f_not(alpha_y)));
                }
                chi_parts.push_back(f_or(f_not(f_pred(p, Var::X)), f_pred(p, Var::Y)));
                chi_parts.push_back(f_or(f_pred(p, Var::X), f_not(f_pred(p, Var::Y))));
                replacement = f_pred(p, Var::X);
                fresh.push_back({p, std::nullopt, eta});
            }
            bool done = false;
            work = replace_first(work, eta, replacement, done);
        }
        // work is now quantifier-free; its free variables (if any) came from
        // top-level replacements and are universally closed into chi.
        std::set<Var> fr = free_vars(work);
        if (fr.count(Var::Y)) work = rename_qf(work, Var::Y, Var::X);
        chi_parts.push_back(work);
    }
};

}  // namespace

SnfFormula to_snf(const FormulaPtr& f) {
    if (!is_closed(f)) throw std::invalid_argument("to_snf: formula must be closed");
    SnfBuilder b;
    b.vocabulary = letters_of(f);

    std::vector<FormulaPtr> conjuncts;
    const std::function<void(const FormulaPtr&)> split = [&](const FormulaPtr& c) {
        if (c->kind == FormulaKind::And) {
            split(c->lhs);
            split(c->rhs);
        } else {
            conjuncts.push_back(c);
        }
    };
    split(f);

    for (const auto& c : conjuncts)
        if (!b.direct_shape(c)) b.scottize(c);

    SnfFormula out;
    out.psis = std::move(b.psis);
    out.vocabulary = std::move(b.vocabulary);
    out.fresh = std::move(b.fresh);
    if (b.chi_parts.empty()) {
        out.chi = f_true();
    } else {
        FormulaPtr chi = b.chi_parts.front();
        for (std::size_t i = 1; i < b.chi_parts.size(); ++i)
            chi = f_and(chi, b.chi_parts[i]);
        out.chi = chi;
    }
    return out;
}

FormulaPtr snf_to_formula(const SnfFormula& snf) {
    FormulaPtr out = f_forall(Var::X, f_forall(Var::Y, snf.chi));
    for (const auto& psi : snf.psis)
        out = f_and(out, f_forall(Var::X, f_exists(Var::Y, psi)));
    return out;
}

bool eval_snf(const ValuedPermutation& m, const SnfFormula& snf) {
    return eval_formula(m, snf_to_formula(snf), {});
}

// --- atomic satisfaction ---------------------------------------------------------

bool atomic_sat(const AtomContext& ctx, const FormulaPtr& psi) {
    switch (psi->kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::Pred:
            return (psi->var == Var::X ? ctx.s : ctx.s2).count(psi->letter) > 0;
        case FormulaKind::SuccR:
            if (psi->var == psi->var2) return false;
            if (psi->var == Var::X)
                return ctx.t == NType::NE || ctx.t == NType::E || ctx.t == NType::SE;
            return ctx.t == NType::NW || ctx.t == NType::W || ctx.t == NType::SW;
        case FormulaKind::SuccD:
            if (psi->var == psi->var2) return false;
            if (psi->var == Var::X)
                return ctx.t == NType::SW || ctx.t == NType::S || ctx.t == NType::SE;
            return ctx.t == NType::NW || ctx.t == NType::N || ctx.t == NType::NE;
        case FormulaKind::Not:
            return !atomic_sat(ctx, psi->lhs);
        case FormulaKind::And:
            return atomic_sat(ctx, psi->lhs) && atomic_sat(ctx, psi->rhs);
        case FormulaKind::Or:
            return atomic_sat(ctx, psi->lhs) || atomic_sat(ctx, psi->rhs);
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            throw std::invalid_argument("atomic_sat: formula must be quantifier-free");
    }
    return false;
}

}  // namespace permlogic
