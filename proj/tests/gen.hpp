#pragma once

// Random scope-correct formulas for round-trip and property tests. Variable
// and constant pools are disjoint so a printed formula reclassifies its terms
// identically when parsed back.

#include <random>
#include <string>
#include <vector>

#include "trel/ast.hpp"

namespace gen {

using trel::FormulaPtr;
using trel::Term;

inline const std::vector<std::pair<std::string, int>>& predicate_pool() {
    static const std::vector<std::pair<std::string, int>> pool = {
        {"P", 0}, {"Q", 0}, {"R", 0}, {"F", 1}, {"G", 1}, {"H", 2}};
    return pool;
}

inline Term random_term(std::mt19937& rng, const std::vector<std::string>& scope) {
    static const std::vector<std::string> constants = {"a", "b", "c"};
    if (!scope.empty()) {
        std::uniform_int_distribution<int> coin(0, 9);
        if (coin(rng) < 7) {
            std::uniform_int_distribution<std::size_t> pick(0, scope.size() - 1);
            return Term::variable(scope[pick(rng)]);
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, constants.size() - 1);
    return Term::constant(constants[pick(rng)]);
}

inline FormulaPtr random_atom(std::mt19937& rng, const std::vector<std::string>& scope) {
    const auto& pool = predicate_pool();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto [name, arity] = pool[pick(rng)];
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, scope));
    return trel::mk_atom(name, std::move(args));
}

/// Random formula of depth at most `depth`; every variable occurrence is
/// bound by an enclosing quantifier.
inline FormulaPtr random_formula(std::mt19937& rng, int depth,
                                 std::vector<std::string> scope = {}) {
    static const std::vector<std::string> vars = {"x", "y", "z", "u", "v"};
    std::uniform_int_distribution<int> shape(0, 7);
    int s = depth <= 0 ? 0 : shape(rng);
    switch (s) {
    case 0:
        return random_atom(rng, scope);
    case 1:
        return trel::mk_not(random_formula(rng, depth - 1, scope));
    case 2:
        return trel::mk_and(random_formula(rng, depth - 1, scope),
                            random_formula(rng, depth - 1, scope));
    case 3:
        return trel::mk_or(random_formula(rng, depth - 1, scope),
                           random_formula(rng, depth - 1, scope));
    case 4:
        return trel::mk_implies(random_formula(rng, depth - 1, scope),
                                random_formula(rng, depth - 1, scope));
    case 5:
        return trel::mk_iff(random_formula(rng, depth - 1, scope),
                            random_formula(rng, depth - 1, scope));
    default: {
        std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
        std::string var = vars[pick(rng)];
        scope.push_back(var);
        FormulaPtr body = random_formula(rng, depth - 1, scope);
        return s == 6 ? trel::mk_forall(var, body) : trel::mk_exists(var, body);
    }
    }
}

/// Random quantifier-free formula over 0-ary atoms.
inline FormulaPtr random_prop(std::mt19937& rng, int depth) {
    static const std::vector<std::string> atoms = {"P", "Q", "R", "W"};
    std::uniform_int_distribution<int> shape(0, 5);
    int s = depth <= 0 ? 0 : shape(rng);
    if (s == 0) {
        std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
        return trel::mk_atom(atoms[pick(rng)]);
    }
    FormulaPtr lhs = random_prop(rng, depth - 1);
    if (s == 1) return trel::mk_not(lhs);
    FormulaPtr rhs = random_prop(rng, depth - 1);
    switch (s) {
    case 2: return trel::mk_and(lhs, rhs);
    case 3: return trel::mk_or(lhs, rhs);
    case 4: return trel::mk_implies(lhs, rhs);
    default: return trel::mk_iff(lhs, rhs);
    }
}

} // namespace gen
