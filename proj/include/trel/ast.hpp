#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trel/error.hpp"

namespace trel {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermKind { Variable, Constant };

/// An argument of an atomic formula. Variables and constants share one
/// lexical shape ([a-z][a-z0-9_]*); the parser classifies an occurrence as a
/// variable exactly when it is bound by an enclosing quantifier, and as a
/// constant otherwise.
struct Term {
    TermKind kind;
    std::string name;

    static Term variable(std::string n) { return Term{TermKind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return Term{TermKind::Constant, std::move(n)}; }

    bool operator==(const Term& other) const {
        return kind == other.kind && name == other.name;
    }
    bool operator!=(const Term& other) const { return !(*this == other); }
};

inline bool is_valid_var_name(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!(std::islower(u) || std::isdigit(u) || c == '_')) return false;
    }
    return true;
}

inline bool is_valid_pred_name(const std::string& s) {
    if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_')) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class FormulaKind { Atom, Not, And, Or, Implies, Iff, ForAll, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Propositional variables are 0-ary atoms.
struct Formula {
    FormulaKind kind;
    std::string pred;        // Atom: predicate name
    std::vector<Term> args;  // Atom: argument terms
    FormulaPtr lhs;          // Not/ForAll/Exists: operand; And/Or/Implies/Iff: left
    FormulaPtr rhs;          // And/Or/Implies/Iff: right
    std::string var;         // ForAll/Exists: bound variable
};

inline FormulaPtr mk_atom(std::string pred, std::vector<Term> args = {}) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Atom;
    f->pred = std::move(pred);
    f->args = std::move(args);
    return f;
}

inline FormulaPtr mk_not(FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Not;
    f->lhs = std::move(a);
    return f;
}

inline FormulaPtr mk_binary(FormulaKind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

inline FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_binary(FormulaKind::And, std::move(a), std::move(b)); }
inline FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_binary(FormulaKind::Or, std::move(a), std::move(b)); }
inline FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) { return mk_binary(FormulaKind::Implies, std::move(a), std::move(b)); }
inline FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) { return mk_binary(FormulaKind::Iff, std::move(a), std::move(b)); }

inline FormulaPtr mk_quant(FormulaKind k, std::string var, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = std::move(var);
    f->lhs = std::move(body);
    return f;
}

inline FormulaPtr mk_forall(std::string var, FormulaPtr body) { return mk_quant(FormulaKind::ForAll, std::move(var), std::move(body)); }
inline FormulaPtr mk_exists(std::string var, FormulaPtr body) { return mk_quant(FormulaKind::Exists, std::move(var), std::move(body)); }

/// Structural equality.
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case FormulaKind::Atom:
        return a->pred == b->pred && a->args == b->args;
    case FormulaKind::Not:
        return equal(a->lhs, b->lhs);
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
        return a->var == b->var && equal(a->lhs, b->lhs);
    default:
        return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
}

inline bool is_quantifier_free(const FormulaPtr& f) {
    switch (f->kind) {
    case FormulaKind::Atom: return true;
    case FormulaKind::ForAll:
    case FormulaKind::Exists: return false;
    case FormulaKind::Not: return is_quantifier_free(f->lhs);
    default: return is_quantifier_free(f->lhs) && is_quantifier_free(f->rhs);
    }
}

namespace detail {

inline void free_variables_rec(const FormulaPtr& f, std::vector<std::string>& scope,
                               std::vector<std::string>& out) {
    switch (f->kind) {
    case FormulaKind::Atom:
        for (const Term& t : f->args) {
            if (t.kind != TermKind::Variable) continue;
            bool bound = false;
            for (const auto& v : scope)
                if (v == t.name) { bound = true; break; }
            if (!bound) {
                bool seen = false;
                for (const auto& v : out)
                    if (v == t.name) { seen = true; break; }
                if (!seen) out.push_back(t.name);
            }
        }
        return;
    case FormulaKind::Not:
        free_variables_rec(f->lhs, scope, out);
        return;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
        scope.push_back(f->var);
        free_variables_rec(f->lhs, scope, out);
        scope.pop_back();
        return;
    default:
        free_variables_rec(f->lhs, scope, out);
        free_variables_rec(f->rhs, scope, out);
        return;
    }
}

} // namespace detail

/// Free variables in first-occurrence order.
inline std::vector<std::string> free_variables(const FormulaPtr& f) {
    std::vector<std::string> scope, out;
    detail::free_variables_rec(f, scope, out);
    return out;
}

/// Collects the arity of every predicate occurring in f; throws on conflict.
inline void collect_arities(const FormulaPtr& f, std::map<std::string, int>& arities) {
    switch (f->kind) {
    case FormulaKind::Atom: {
        auto [it, inserted] = arities.emplace(f->pred, static_cast<int>(f->args.size()));
        if (!inserted && it->second != static_cast<int>(f->args.size()))
            throw SemanticError("predicate " + f->pred + " used with two arities");
        return;
    }
    case FormulaKind::Not:
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
        collect_arities(f->lhs, arities);
        return;
    default:
        collect_arities(f->lhs, arities);
        collect_arities(f->rhs, arities);
        return;
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

// Precedence levels: <-> 1, -> 2, | 3, & 4, unary (atoms, ~, binders) 5.
inline int precedence(FormulaKind k) {
    switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
    }
}

inline void print_rec(const FormulaPtr& f, std::ostringstream& out);

// Prints a subformula, parenthesizing when its precedence is below `minimum`.
inline void print_child(const FormulaPtr& f, int minimum, std::ostringstream& out) {
    if (precedence(f->kind) < minimum) {
        out << '(';
        print_rec(f, out);
        out << ')';
    } else {
        print_rec(f, out);
    }
}

inline void print_rec(const FormulaPtr& f, std::ostringstream& out) {
    switch (f->kind) {
    case FormulaKind::Atom:
        out << f->pred;
        if (!f->args.empty()) {
            out << '(';
            for (std::size_t i = 0; i < f->args.size(); ++i) {
                if (i) out << ',';
                out << f->args[i].name;
            }
            out << ')';
        }
        return;
    case FormulaKind::Not:
        out << '~';
        print_child(f->lhs, 5, out);
        return;
    case FormulaKind::ForAll:
        out << '(' << f->var << ')';
        print_child(f->lhs, 5, out);
        return;
    case FormulaKind::Exists:
        out << "(E" << f->var << ')';
        print_child(f->lhs, 5, out);
        return;
    case FormulaKind::And:
        print_child(f->lhs, 4, out);
        out << " & ";
        print_child(f->rhs, 5, out);
        return;
    case FormulaKind::Or:
        print_child(f->lhs, 3, out);
        out << " | ";
        print_child(f->rhs, 4, out);
        return;
    case FormulaKind::Implies:
        // Printed non-associatively: nested implications keep their parentheses.
        print_child(f->lhs, 3, out);
        out << " -> ";
        print_child(f->rhs, 3, out);
        return;
    case FormulaKind::Iff:
        print_child(f->lhs, 1, out);
        out << " <-> ";
        print_child(f->rhs, 2, out);
        return;
    }
}

} // namespace detail

/// Renders f with minimal parentheses; output re-parses to an identical AST.
inline std::string print_formula(const FormulaPtr& f) {
    std::ostringstream out;
    detail::print_rec(f, out);
    return out.str();
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

enum class TokKind { LParen, RParen, Comma, Tilde, Amp, Pipe, Arrow, DArrow, Ident, End };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> toks;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == '#') { // line comment
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        std::size_t start = i;
        switch (c) {
        case '(': toks.push_back({TokKind::LParen, "(", start}); ++i; continue;
        case ')': toks.push_back({TokKind::RParen, ")", start}); ++i; continue;
        case ',': toks.push_back({TokKind::Comma, ",", start}); ++i; continue;
        case '~': toks.push_back({TokKind::Tilde, "~", start}); ++i; continue;
        case '&': toks.push_back({TokKind::Amp, "&", start}); ++i; continue;
        case '|': toks.push_back({TokKind::Pipe, "|", start}); ++i; continue;
        case '-':
            if (i + 1 < n && text[i + 1] == '>') { toks.push_back({TokKind::Arrow, "->", start}); i += 2; continue; }
            throw ParseError("expected '->'", start);
        case '<':
            if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') {
                toks.push_back({TokKind::DArrow, "<->", start});
                i += 3;
                continue;
            }
            throw ParseError("expected '<->'", start);
        default:
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
                toks.push_back({TokKind::Ident, text.substr(i, j - i), start});
                i = j;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
    toks.push_back({TokKind::End, "", n});
    return toks;
}

class FormulaParser {
public:
    explicit FormulaParser(const std::string& text) : toks_(lex(text)) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_iff();
        if (peek().kind != TokKind::End)
            throw ParseError("unexpected trailing input", peek().pos);
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    std::vector<std::string> scope_;
    std::map<std::string, int> arities_;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = at_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& take() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }
    void expect(TokKind k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
        take();
    }

    FormulaPtr parse_iff() {
        FormulaPtr f = parse_imp();
        while (peek().kind == TokKind::DArrow) {
            take();
            f = mk_iff(f, parse_imp());
        }
        return f;
    }

    FormulaPtr parse_imp() {
        FormulaPtr f = parse_or();
        if (peek().kind == TokKind::Arrow) {
            take();
            return mk_implies(f, parse_imp()); // right-associative
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (peek().kind == TokKind::Pipe) {
            take();
            f = mk_or(f, parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary();
        while (peek().kind == TokKind::Amp) {
            take();
            f = mk_and(f, parse_unary());
        }
        return f;
    }

    // A binder is "(" VAR ")" or "(E" VAR ")". Parenthesized subformulas start
    // with '~', '(' or an uppercase atom, so the lookahead is unambiguous;
    // "(Exy)"-shaped tokens are always read as existential binders.
    bool binder_lookahead(bool& existential, std::string& var) const {
        if (peek().kind != TokKind::LParen) return false;
        if (peek(1).kind != TokKind::Ident || peek(2).kind != TokKind::RParen) return false;
        const std::string& id = peek(1).text;
        if (is_valid_var_name(id)) {
            existential = false;
            var = id;
            return true;
        }
        if (id.size() >= 2 && id[0] == 'E' && is_valid_var_name(id.substr(1))) {
            existential = true;
            var = id.substr(1);
            return true;
        }
        return false;
    }

    FormulaPtr parse_unary() {
        const Token& t = peek();
        if (t.kind == TokKind::Tilde) {
            take();
            return mk_not(parse_unary());
        }
        bool existential = false;
        std::string var;
        if (binder_lookahead(existential, var)) {
            take(); // (
            take(); // ident
            take(); // )
            scope_.push_back(var);
            FormulaPtr body = parse_unary();
            scope_.pop_back();
            return existential ? mk_exists(var, std::move(body)) : mk_forall(var, std::move(body));
        }
        if (t.kind == TokKind::LParen) {
            take();
            FormulaPtr f = parse_iff();
            expect(TokKind::RParen, "')'");
            return f;
        }
        if (t.kind == TokKind::Ident) {
            if (!is_valid_pred_name(t.text))
                throw ParseError("expected a predicate (uppercase-initial identifier)", t.pos);
            return parse_atom();
        }
        throw ParseError("expected a formula", t.pos);
    }

    FormulaPtr parse_atom() {
        Token name = take();
        std::vector<Term> args;
        if (peek().kind == TokKind::LParen) {
            take();
            args.push_back(parse_term());
            while (peek().kind == TokKind::Comma) {
                take();
                args.push_back(parse_term());
            }
            expect(TokKind::RParen, "')'");
        }
        auto [it, inserted] = arities_.emplace(name.text, static_cast<int>(args.size()));
        if (!inserted && it->second != static_cast<int>(args.size()))
            throw ParseError("predicate " + name.text + " used with conflicting arities", name.pos);
        return mk_atom(name.text, std::move(args));
    }

    Term parse_term() {
        const Token& t = peek();
        if (t.kind != TokKind::Ident || !is_valid_var_name(t.text))
            throw ParseError("expected a term (lowercase identifier)", t.pos);
        std::string name = take().text;
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (*it == name) return Term::variable(name);
        return Term::constant(name);
    }
};

} // namespace detail

/// Parses the surface syntax. A lowercase argument bound by an enclosing
/// binder becomes a variable; any other lowercase argument is a constant.
inline FormulaPtr parse_formula(const std::string& text) {
    return detail::FormulaParser(text).parse();
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

/// Replaces every free occurrence of variable `var` with constant `constant`.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                             const std::string& constant) {
    switch (f->kind) {
    case FormulaKind::Atom: {
        bool hit = false;
        for (const Term& t : f->args)
            if (t.kind == TermKind::Variable && t.name == var) { hit = true; break; }
        if (!hit) return f;
        std::vector<Term> args = f->args;
        for (Term& t : args)
            if (t.kind == TermKind::Variable && t.name == var) t = Term::constant(constant);
        return mk_atom(f->pred, std::move(args));
    }
    case FormulaKind::Not: {
        FormulaPtr sub = substitute(f->lhs, var, constant);
        return sub == f->lhs ? f : mk_not(std::move(sub));
    }
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
        if (f->var == var) return f; // occurrences below are bound
        FormulaPtr sub = substitute(f->lhs, var, constant);
        return sub == f->lhs ? f : mk_quant(f->kind, f->var, std::move(sub));
    }
    default: {
        FormulaPtr l = substitute(f->lhs, var, constant);
        FormulaPtr r = substitute(f->rhs, var, constant);
        return (l == f->lhs && r == f->rhs) ? f : mk_binary(f->kind, std::move(l), std::move(r));
    }
    }
}

/// ~f with top-level double negation removed: negated(~g) = g.
inline FormulaPtr negated(const FormulaPtr& f) {
    if (f->kind == FormulaKind::Not) return f->lhs;
    return mk_not(f);
}

// ---------------------------------------------------------------------------
// Prenex sentences
// ---------------------------------------------------------------------------

enum class QuantKind { Universal, Existential };

struct Quantifier {
    QuantKind kind;
    std::string var;

    bool operator==(const Quantifier& other) const {
        return kind == other.kind && var == other.var;
    }
};

/// A quantifier prefix over a quantifier-free matrix; the shape every
/// relevance-semantics operation expects.
struct PrenexSentence {
    std::vector<Quantifier> prefix;
    FormulaPtr matrix;
};

/// Splits a formula that is literally a quantifier chain over a
/// quantifier-free body. Performs no quantifier movement.
inline PrenexSentence to_prenex_sentence(const FormulaPtr& f) {
    PrenexSentence s;
    FormulaPtr cur = f;
    while (cur->kind == FormulaKind::ForAll || cur->kind == FormulaKind::Exists) {
        QuantKind k = cur->kind == FormulaKind::ForAll ? QuantKind::Universal : QuantKind::Existential;
        for (const Quantifier& q : s.prefix)
            if (q.var == cur->var)
                throw ParseError("duplicate quantifier variable '" + cur->var + "' in prefix");
        s.prefix.push_back(Quantifier{k, cur->var});
        cur = cur->lhs;
    }
    if (!is_quantifier_free(cur))
        throw ParseError("formula is not in prenex form: quantifier below a connective");
    s.matrix = cur;
    std::vector<std::string> fv = free_variables(cur);
    for (const std::string& v : fv) {
        bool bound = false;
        for (const Quantifier& q : s.prefix)
            if (q.var == v) { bound = true; break; }
        if (!bound) throw SemanticError("free variable '" + v + "' in formula");
    }
    return s;
}

inline FormulaPtr formula_of(const PrenexSentence& s) {
    FormulaPtr f = s.matrix;
    for (auto it = s.prefix.rbegin(); it != s.prefix.rend(); ++it)
        f = mk_quant(it->kind == QuantKind::Universal ? FormulaKind::ForAll : FormulaKind::Exists,
                     it->var, std::move(f));
    return f;
}

inline std::string print_sentence(const PrenexSentence& s) {
    return print_formula(formula_of(s));
}

/// Dualizes every quantifier in the prefix and negates the matrix (removing a
/// top-level double negation). Applying it twice restores the sentence.
inline PrenexSentence prenex_negate(const PrenexSentence& s) {
    PrenexSentence out;
    out.prefix.reserve(s.prefix.size());
    for (const Quantifier& q : s.prefix)
        out.prefix.push_back(Quantifier{
            q.kind == QuantKind::Universal ? QuantKind::Existential : QuantKind::Universal, q.var});
    out.matrix = negated(s.matrix);
    return out;
}

inline bool all_universal(const std::vector<Quantifier>& prefix) {
    for (const Quantifier& q : prefix)
        if (q.kind != QuantKind::Universal) return false;
    return !prefix.empty();
}

inline bool all_existential(const std::vector<Quantifier>& prefix) {
    for (const Quantifier& q : prefix)
        if (q.kind != QuantKind::Existential) return false;
    return !prefix.empty();
}

} // namespace trel
