#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trel/ast.hpp"
#include "trel/classical.hpp"
#include "trel/error.hpp"
#include "trel/model.hpp"
#include "trel/prop.hpp"
#include "trel/verdict.hpp"

namespace trel {

// ---------------------------------------------------------------------------
// One-quantified-variable semantics
// ---------------------------------------------------------------------------

/// Extent of a one-variable view over the universe: satisfied by no object,
/// by every object, or by some but not all.
enum class Status { Empty, Universal, Mixed };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::Empty: return "empty";
    case Status::Universal: return "universal";
    default: return "mixed";
    }
}

/// Atoms of a one-variable matrix, split into views (contain the target
/// variable) and grounds (contain no variable), each in first-occurrence
/// order. Distinct syntactic atoms are distinct views: F(x,a) and F(x,b)
/// are separate columns.
struct ViewSplit {
    std::vector<FormulaPtr> views;
    std::vector<FormulaPtr> grounds;
};

inline ViewSplit extract_views(const FormulaPtr& matrix, const std::string& var) {
    ViewSplit split;
    for (const FormulaPtr& atom : atoms_of(matrix)) {
        bool has_target = false;
        for (const Term& t : atom->args) {
            if (t.kind != TermKind::Variable) continue;
            if (t.name == var)
                has_target = true;
            else
                throw SemanticError("atom " + print_formula(atom) + " contains variable '" +
                                    t.name + "', expected only '" + var + "'");
        }
        (has_target ? split.views : split.grounds).push_back(atom);
    }
    return split;
}

/// Classifies a view by instantiating the target variable with every object.
inline Status view_status(const Interpretation& m, const FormulaPtr& view, const std::string& var) {
    int holds = 0;
    for (const auto& c : m.universe)
        if (predicate_truth(m, substitute(view, var, c))) ++holds;
    if (holds == 0) return Status::Empty;
    if (holds == static_cast<int>(m.universe.size())) return Status::Universal;
    return Status::Mixed;
}

namespace detail {

struct MonoTable {
    TruthTable table;                       // over views then grounds
    std::vector<bool> is_view;              // per column
    std::vector<std::optional<bool>> pin;   // per column: stuck value under m, if any
};

/// Builds the combined table and the per-column stuck facts of m: an empty
/// view is stuck at 0, a universal one at 1, a mixed one is free; a ground
/// atom is stuck at its actual truth value.
inline MonoTable mono_table(const FormulaPtr& matrix, const std::string& var,
                            const Interpretation* m) {
    extract_views(matrix, var); // rejects matrices mentioning a second variable
    if (m && m->has_constant(var))
        throw SemanticError("variable '" + var + "' collides with a universe element name");
    MonoTable t;
    t.table = truth_table(matrix);
    for (const FormulaPtr& atom : t.table.atoms) {
        bool view = false;
        for (const Term& arg : atom->args)
            if (arg.kind == TermKind::Variable && arg.name == var) { view = true; break; }
        t.is_view.push_back(view);
        if (!m) {
            t.pin.push_back(std::nullopt);
        } else if (view) {
            switch (view_status(*m, atom, var)) {
            case Status::Empty: t.pin.push_back(false); break;
            case Status::Universal: t.pin.push_back(true); break;
            default: t.pin.push_back(std::nullopt); break;
            }
        } else {
            t.pin.push_back(predicate_truth(*m, atom));
        }
    }
    return t;
}

/// Determination with an explicit member mask: members contribute their stuck
/// facts as pins, everything else ranges freely, and the matrix must be
/// constant on the allowed rows. A single constancy check covers both
/// quantifier flavors: over a nonempty universe the quantified value varies
/// with the choice of inhabited rows unless the matrix is constant there.
inline bool mono_determining(const MonoTable& t, const std::set<int>& members) {
    std::vector<std::pair<int, bool>> pins;
    for (int i : members)
        if (t.pin[static_cast<std::size_t>(i)])
            pins.emplace_back(i, *t.pin[static_cast<std::size_t>(i)]);
    return constant_on_groups(t.table, pins, /*key_mask=*/0);
}

} // namespace detail

/// Truth determination under interpretation m: members of S that are stuck
/// (empty or universal views, grounds) are pinned; a mixed view in S pins
/// nothing, since it could as well be empty or universal.
inline bool is_td_under_interpretation(QuantKind /*flavor*/, const FormulaPtr& matrix,
                                       const std::string& var,
                                       const std::set<std::string>& members,
                                       const Interpretation& m) {
    detail::MonoTable t = detail::mono_table(matrix, var, &m);
    std::set<int> member_idx;
    for (const std::string& name : members) {
        bool found = false;
        for (std::size_t i = 0; i < t.table.names.size(); ++i)
            if (t.table.names[i] == name) {
                member_idx.insert(static_cast<int>(i));
                found = true;
                break;
            }
        if (!found)
            throw SemanticError("atom '" + name + "' does not occur in the matrix");
    }
    return detail::mono_determining(t, member_idx);
}

/// T-relevance under m: no proper subset of the atom set is truth-determining.
/// Determination is monotone in the member set, so checking the co-singletons
/// suffices. Insensitive to the quantifier flavor and to matrix negation.
inline bool is_t_relevant_1var(QuantKind /*flavor*/, const FormulaPtr& matrix,
                               const std::string& var, const Interpretation& m) {
    detail::MonoTable t = detail::mono_table(matrix, var, &m);
    int k = t.table.atom_count();
    for (int drop = 0; drop < k; ++drop) {
        std::set<int> members;
        for (int i = 0; i < k; ++i)
            if (i != drop) members.insert(i);
        if (detail::mono_determining(t, members)) return false;
    }
    return true;
}

/// T-relevance under any interpretation: no stuck facts are available, so a
/// set determines only when the matrix is constant outright.
inline bool is_t_relevant_any(QuantKind /*flavor*/, const FormulaPtr& matrix,
                              const std::string& var) {
    detail::MonoTable t = detail::mono_table(matrix, var, nullptr);
    bool seen_true = false, seen_false = false;
    for (bool v : t.table.values) (v ? seen_true : seen_false) = true;
    return seen_true && seen_false;
}

enum class RelevanceMode { Interpretation, Any };

namespace detail {

inline bool mono_relevant(RelevanceMode mode, QuantKind flavor, const FormulaPtr& matrix,
                          const std::string& var, const Interpretation& m) {
    return mode == RelevanceMode::Any ? is_t_relevant_any(flavor, matrix, var)
                                      : is_t_relevant_1var(flavor, matrix, var, m);
}

} // namespace detail

/// The single-quantifier truth rule: true iff classically satisfied and
/// t-relevant; false iff the negation is true by the same rule; gap otherwise.
inline Verdict evaluate_monadic(const PrenexSentence& s, const Interpretation& m,
                                RelevanceMode mode = RelevanceMode::Interpretation) {
    if (s.prefix.size() != 1)
        throw SemanticError("expected a sentence with exactly one quantifier");
    const Quantifier& q = s.prefix[0];
    bool satisfied = eval_classical(formula_of(s), m);
    if (satisfied && detail::mono_relevant(mode, q.kind, s.matrix, q.var, m))
        return Verdict::True;
    PrenexSentence neg = prenex_negate(s);
    const Quantifier& nq = neg.prefix[0];
    bool neg_satisfied = eval_classical(formula_of(neg), m);
    if (neg_satisfied && detail::mono_relevant(mode, nq.kind, neg.matrix, nq.var, m))
        return Verdict::False;
    return Verdict::Gap;
}

} // namespace trel
