#pragma once

#include <map>
#include <string>
#include <vector>

#include "trel/ast.hpp"
#include "trel/error.hpp"
#include "trel/model.hpp"

namespace trel {

using Valuation = std::map<std::string, std::string>; // variable -> constant

namespace detail {

inline bool atom_truth(const FormulaPtr& f, const Interpretation& m, const Valuation& env) {
    std::vector<std::string> args;
    args.reserve(f->args.size());
    for (const Term& t : f->args) {
        if (t.kind == TermKind::Variable) {
            auto it = env.find(t.name);
            if (it == env.end())
                throw SemanticError("unbound variable '" + t.name + "'");
            args.push_back(it->second);
        } else {
            if (!m.has_constant(t.name))
                throw SemanticError("unknown constant '" + t.name + "'");
            args.push_back(t.name);
        }
    }
    return m.holds(f->pred, args);
}

} // namespace detail

/// Classical Tarskian truth over a finite interpretation. Accepts arbitrary
/// formulas, prenex or not; free variables must be bound by env.
inline bool eval_classical(const FormulaPtr& f, const Interpretation& m, Valuation env = {}) {
    switch (f->kind) {
    case FormulaKind::Atom:
        return detail::atom_truth(f, m, env);
    case FormulaKind::Not:
        return !eval_classical(f->lhs, m, env);
    case FormulaKind::And:
        return eval_classical(f->lhs, m, env) && eval_classical(f->rhs, m, env);
    case FormulaKind::Or:
        return eval_classical(f->lhs, m, env) || eval_classical(f->rhs, m, env);
    case FormulaKind::Implies:
        return !eval_classical(f->lhs, m, env) || eval_classical(f->rhs, m, env);
    case FormulaKind::Iff:
        return eval_classical(f->lhs, m, env) == eval_classical(f->rhs, m, env);
    case FormulaKind::ForAll: {
        for (const auto& c : m.universe) {
            Valuation next = env;
            next[f->var] = c;
            if (!eval_classical(f->lhs, m, next)) return false;
        }
        return true;
    }
    case FormulaKind::Exists: {
        for (const auto& c : m.universe) {
            Valuation next = env;
            next[f->var] = c;
            if (eval_classical(f->lhs, m, next)) return true;
        }
        return false;
    }
    }
    return false;
}

namespace detail {

/// Expands every quantifier into an explicit conjunction/disjunction over the
/// universe, leaving a ground formula.
inline FormulaPtr expand_quantifiers(const FormulaPtr& f, const Interpretation& m) {
    switch (f->kind) {
    case FormulaKind::Atom:
        return f;
    case FormulaKind::Not:
        return mk_not(expand_quantifiers(f->lhs, m));
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
        FormulaPtr combined;
        for (const auto& c : m.universe) {
            FormulaPtr inst = expand_quantifiers(substitute(f->lhs, f->var, c), m);
            if (!combined)
                combined = inst;
            else
                combined = f->kind == FormulaKind::ForAll ? mk_and(combined, inst)
                                                          : mk_or(combined, inst);
        }
        return combined;
    }
    default:
        return mk_binary(f->kind, expand_quantifiers(f->lhs, m), expand_quantifiers(f->rhs, m));
    }
}

inline bool eval_ground_truthfunctional(const FormulaPtr& f, const Interpretation& m) {
    switch (f->kind) {
    case FormulaKind::Atom:
        return predicate_truth(m, f);
    case FormulaKind::Not:
        return !eval_ground_truthfunctional(f->lhs, m);
    case FormulaKind::And:
        return eval_ground_truthfunctional(f->lhs, m) && eval_ground_truthfunctional(f->rhs, m);
    case FormulaKind::Or:
        return eval_ground_truthfunctional(f->lhs, m) || eval_ground_truthfunctional(f->rhs, m);
    case FormulaKind::Implies:
        return !eval_ground_truthfunctional(f->lhs, m) || eval_ground_truthfunctional(f->rhs, m);
    case FormulaKind::Iff:
        return eval_ground_truthfunctional(f->lhs, m) == eval_ground_truthfunctional(f->rhs, m);
    default:
        throw SemanticError("expected a ground formula");
    }
}

} // namespace detail

/// Independent route for the classical value: expand quantifiers into ground
/// connectives over the universe, then evaluate truth-functionally. Always
/// agrees with eval_classical.
inline bool eval_classical_bruteforce(const FormulaPtr& f, const Interpretation& m) {
    if (!free_variables(f).empty())
        throw SemanticError("formula is not closed");
    return detail::eval_ground_truthfunctional(detail::expand_quantifiers(f, m), m);
}

} // namespace trel
