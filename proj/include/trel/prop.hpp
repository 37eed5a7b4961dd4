#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "trel/ast.hpp"
#include "trel/error.hpp"

namespace trel {

// ---------------------------------------------------------------------------
// Truth tables over syntactic atoms
// ---------------------------------------------------------------------------

/// Everything here enumerates rows, so cost is exponential in the number of
/// atoms; inputs beyond this bound are rejected.
inline constexpr int kMaxTableAtoms = 20;

/// Distinct atomic subformulas in first-occurrence order. Atom identity is
/// syntactic: repeated occurrences of the same atom share one column.
inline void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    switch (f->kind) {
    case FormulaKind::Atom: {
        std::string key = print_formula(f);
        for (const auto& a : out)
            if (print_formula(a) == key) return;
        out.push_back(f);
        return;
    }
    case FormulaKind::Not:
        collect_atoms(f->lhs, out);
        return;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
        throw SemanticError("expected a quantifier-free formula");
    default:
        collect_atoms(f->lhs, out);
        collect_atoms(f->rhs, out);
        return;
    }
}

inline std::vector<FormulaPtr> atoms_of(const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    collect_atoms(f, out);
    if (static_cast<int>(out.size()) > kMaxTableAtoms)
        throw SemanticError("formula has more than " + std::to_string(kMaxTableAtoms) + " atoms");
    return out;
}

namespace detail {

/// Evaluates a quantifier-free formula on one row. Bit i of `row` (counting
/// from the most significant of the k used bits) is the value of atom i, so
/// rows enumerate in lexicographic order as row runs 0..2^k-1.
inline bool eval_row(const FormulaPtr& f, const std::map<std::string, int>& index,
                     std::uint32_t row, int k) {
    switch (f->kind) {
    case FormulaKind::Atom: {
        int i = index.at(print_formula(f));
        return (row >> (k - 1 - i)) & 1;
    }
    case FormulaKind::Not:
        return !eval_row(f->lhs, index, row, k);
    case FormulaKind::And:
        return eval_row(f->lhs, index, row, k) && eval_row(f->rhs, index, row, k);
    case FormulaKind::Or:
        return eval_row(f->lhs, index, row, k) || eval_row(f->rhs, index, row, k);
    case FormulaKind::Implies:
        return !eval_row(f->lhs, index, row, k) || eval_row(f->rhs, index, row, k);
    case FormulaKind::Iff:
        return eval_row(f->lhs, index, row, k) == eval_row(f->rhs, index, row, k);
    default:
        throw SemanticError("expected a quantifier-free formula");
    }
}

} // namespace detail

/// Classical truth table: one value per row, rows in lexicographic order over
/// the atom list (first atom = most significant bit).
struct TruthTable {
    std::vector<FormulaPtr> atoms;
    std::vector<std::string> names;
    std::vector<bool> values; // size 2^k

    int atom_count() const { return static_cast<int>(atoms.size()); }
    std::uint32_t rows() const { return std::uint32_t{1} << atoms.size(); }

    /// Value of atom i on row r.
    bool bit(std::uint32_t row, int i) const {
        return (row >> (atom_count() - 1 - i)) & 1;
    }
};

inline TruthTable truth_table(const FormulaPtr& f) {
    TruthTable t;
    t.atoms = atoms_of(f);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < t.atoms.size(); ++i) {
        t.names.push_back(print_formula(t.atoms[i]));
        index[t.names.back()] = static_cast<int>(i);
    }
    int k = t.atom_count();
    t.values.resize(std::size_t{1} << k);
    for (std::uint32_t r = 0; r < t.rows(); ++r)
        t.values[r] = detail::eval_row(f, index, r, k);
    return t;
}

// ---------------------------------------------------------------------------
// Truth-determining sets
// ---------------------------------------------------------------------------

/// Preconditions pinning some atoms to a single value ("stuck" inputs).
using StuckMap = std::map<std::string, bool>;

namespace detail {

struct PropContext {
    TruthTable table;
    std::map<std::string, int> index;
};

inline PropContext prop_context(const FormulaPtr& f) {
    PropContext ctx;
    ctx.table = truth_table(f);
    for (std::size_t i = 0; i < ctx.table.names.size(); ++i)
        ctx.index[ctx.table.names[i]] = static_cast<int>(i);
    return ctx;
}

inline void check_stuck(const PropContext& ctx, const StuckMap& stuck) {
    for (const auto& [name, value] : stuck) {
        (void)value;
        if (!ctx.index.count(name))
            throw SemanticError("stuck atom '" + name + "' does not occur in the formula");
    }
}

/// The row-constraint kernel shared with the one-variable semantics: iterate
/// all rows, drop those violating the pins, and require the formula value to
/// be constant within each group of rows that agree on the key bits.
/// With an empty key mask this is plain constancy over the allowed rows.
inline bool constant_on_groups(const TruthTable& table,
                               const std::vector<std::pair<int, bool>>& pins,
                               std::uint32_t key_mask) {
    std::map<std::uint32_t, bool> group_value;
    for (std::uint32_t r = 0; r < table.rows(); ++r) {
        bool allowed = true;
        for (const auto& [i, v] : pins)
            if (table.bit(r, i) != v) { allowed = false; break; }
        if (!allowed) continue;
        std::uint32_t key = r & key_mask;
        auto [it, inserted] = group_value.emplace(key, table.values[r]);
        if (!inserted && it->second != static_cast<bool>(table.values[r])) return false;
    }
    return true;
}

/// Determination for a member set given as a bitset over the atom indices.
/// Stuck values restrict only the assignments to members of S; atoms outside
/// S range over both values even when stuck.
inline bool determining(const PropContext& ctx, std::uint32_t member_bits,
                        const StuckMap& stuck) {
    int k = ctx.table.atom_count();
    std::vector<std::pair<int, bool>> pins;
    std::uint32_t key_mask = 0;
    for (int i = 0; i < k; ++i) {
        if (!((member_bits >> i) & 1)) continue;
        key_mask |= std::uint32_t{1} << (k - 1 - i);
        auto it = stuck.find(ctx.table.names[static_cast<std::size_t>(i)]);
        if (it != stuck.end()) pins.emplace_back(i, it->second);
    }
    return constant_on_groups(ctx.table, pins, key_mask);
}

} // namespace detail

/// True iff fixing any permitted assignment to S fixes the value of f
/// regardless of all atoms outside S.
inline bool is_truth_determining(const FormulaPtr& f, const std::set<std::string>& members,
                                 const StuckMap& stuck = {}) {
    detail::PropContext ctx = detail::prop_context(f);
    detail::check_stuck(ctx, stuck);
    std::uint32_t bits = 0;
    for (const auto& name : members) {
        auto it = ctx.index.find(name);
        if (it == ctx.index.end())
            throw SemanticError("atom '" + name + "' does not occur in the formula");
        bits |= std::uint32_t{1} << it->second;
    }
    return detail::determining(ctx, bits, stuck);
}

/// All minimal truth-determining sets. The family of determining sets is
/// upward closed, so the minimal elements generate it. The empty set is
/// admissible: it determines exactly the constant formulas.
inline std::vector<std::vector<std::string>> truth_determining_sets(const FormulaPtr& f,
                                                                    const StuckMap& stuck = {}) {
    detail::PropContext ctx = detail::prop_context(f);
    detail::check_stuck(ctx, stuck);
    int k = ctx.table.atom_count();
    std::vector<std::uint32_t> determining_sets;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << k); ++s)
        if (detail::determining(ctx, s, stuck)) determining_sets.push_back(s);
    std::vector<std::vector<std::string>> minimal;
    for (std::uint32_t s : determining_sets) {
        bool has_smaller = false;
        for (std::uint32_t t : determining_sets)
            if (t != s && (t & s) == t) { has_smaller = true; break; }
        if (has_smaller) continue;
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i)
            if ((s >> i) & 1) names.push_back(ctx.table.names[static_cast<std::size_t>(i)]);
        minimal.push_back(std::move(names));
    }
    return minimal;
}

/// Atoms excluded by some truth-determining set. By upward closure this is
/// exactly the atoms whose co-singleton determines.
inline std::vector<std::string> t_redundant_atoms(const FormulaPtr& f, const StuckMap& stuck = {}) {
    detail::PropContext ctx = detail::prop_context(f);
    detail::check_stuck(ctx, stuck);
    int k = ctx.table.atom_count();
    std::uint32_t full = (std::uint32_t{1} << k) - 1;
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i)
        if (detail::determining(ctx, full & ~(std::uint32_t{1} << i), stuck))
            out.push_back(ctx.table.names[static_cast<std::size_t>(i)]);
    return out;
}

/// True iff f has no truth-redundant atoms.
inline bool is_t_relevant_prop(const FormulaPtr& f, const StuckMap& stuck = {}) {
    return t_redundant_atoms(f, stuck).empty();
}

} // namespace trel
