#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trel/ast.hpp"
#include "trel/classical.hpp"
#include "trel/error.hpp"
#include "trel/model.hpp"
#include "trel/mono.hpp"
#include "trel/verdict.hpp"

namespace trel {

// ---------------------------------------------------------------------------
// Prenex semantics with quantifier prefixes of any length
// ---------------------------------------------------------------------------

/// Outer instantiations accumulated while peeling the prefix.
using Environment = std::vector<std::pair<std::string, std::string>>;

inline FormulaPtr apply_env(const FormulaPtr& matrix, const Environment& env) {
    FormulaPtr f = matrix;
    for (const auto& [var, constant] : env) f = substitute(f, var, constant);
    return f;
}

/// Splits the prefix at the maximal same-flavor suffix: the trailing
/// homogeneous block (governed by the block relevance rules) and everything
/// outside it (peeled one quantifier at a time, outermost first).
inline std::pair<std::vector<Quantifier>, std::vector<Quantifier>>
trailing_block(const std::vector<Quantifier>& prefix) {
    if (prefix.empty()) throw SemanticError("empty quantifier prefix");
    std::size_t start = prefix.size() - 1;
    while (start > 0 && prefix[start - 1].kind == prefix.back().kind) --start;
    return {std::vector<Quantifier>(prefix.begin(), prefix.begin() + start),
            std::vector<Quantifier>(prefix.begin() + start, prefix.end())};
}

namespace detail {

struct EvalContext {
    const Interpretation& m;
    RelevanceMode mode;
    mutable std::unordered_map<std::string, bool> mono_memo;
};

/// One-variable relevance base, memoized per instantiated matrix.
inline bool mono_base_relevant(const EvalContext& ctx, QuantKind flavor, const std::string& var,
                               const FormulaPtr& matrix, const Environment& env) {
    FormulaPtr inst = apply_env(matrix, env);
    std::string key = var + '\x1f' + print_formula(inst);
    auto it = ctx.mono_memo.find(key);
    if (it != ctx.mono_memo.end()) return it->second;
    bool result = mono_relevant(ctx.mode, flavor, inst, var, ctx.m);
    ctx.mono_memo.emplace(std::move(key), result);
    return result;
}

using PrefixView = std::span<const Quantifier>;

inline bool homogeneous(PrefixView prefix) {
    for (const Quantifier& q : prefix)
        if (q.kind != prefix.front().kind) return false;
    return true;
}

bool t_relevant_rec(const EvalContext& ctx, PrefixView prefix, const FormulaPtr& matrix,
                    const Environment& env);

/// Witness search for an all-universal block of length n >= 2: one tuple of
/// constants must make every coordinate's one-variable formula t-relevant
/// simultaneously. Returns the first witness in universe order.
inline std::optional<std::vector<std::string>>
block_witness(const EvalContext& ctx, PrefixView prefix, const FormulaPtr& matrix,
              const Environment& env) {
    const std::size_t n = prefix.size();
    const std::size_t u = ctx.m.universe.size();
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        bool all_relevant = true;
        for (std::size_t i = 0; i < n && all_relevant; ++i) {
            Environment coord_env = env;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) coord_env.emplace_back(prefix[j].var, ctx.m.universe[pick[j]]);
            all_relevant = mono_base_relevant(ctx, prefix[i].kind, prefix[i].var, matrix, coord_env);
        }
        if (all_relevant) {
            std::vector<std::string> witness;
            for (std::size_t j = 0; j < n; ++j) witness.push_back(ctx.m.universe[pick[j]]);
            return witness;
        }
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++pick[pos] < u) break;
            pick[pos] = 0;
            if (pos == 0) return std::nullopt;
        }
    }
}

inline std::vector<Quantifier> dual_prefix(PrefixView prefix) {
    std::vector<Quantifier> out;
    out.reserve(prefix.size());
    for (const Quantifier& q : prefix)
        out.push_back(Quantifier{q.kind == QuantKind::Universal ? QuantKind::Existential
                                                                : QuantKind::Universal,
                                 q.var});
    return out;
}

/// T-relevance of a prefix over a matrix under outer instantiations:
///   - one quantifier: the one-variable base;
///   - an all-universal block: a simultaneous witness tuple must exist;
///   - an all-existential block: t-relevant iff its universal dual over the
///     negated matrix is (a sentence shares t-relevance with its negation);
///   - otherwise the outermost quantifier is outside the trailing homogeneous
///     block: t-relevant iff at least one instantiation of it leaves a
///     t-relevant remainder, for either flavor.
inline bool t_relevant_rec(const EvalContext& ctx, PrefixView prefix, const FormulaPtr& matrix,
                           const Environment& env) {
    if (prefix.empty()) throw SemanticError("empty quantifier prefix");
    if (prefix.size() == 1)
        return mono_base_relevant(ctx, prefix[0].kind, prefix[0].var, matrix, env);
    if (homogeneous(prefix)) {
        if (prefix.front().kind == QuantKind::Universal)
            return block_witness(ctx, prefix, matrix, env).has_value();
        std::vector<Quantifier> dual = dual_prefix(prefix);
        return block_witness(ctx, PrefixView(dual), negated(matrix), env).has_value();
    }
    for (const auto& c : ctx.m.universe) {
        Environment inner = env;
        inner.emplace_back(prefix[0].var, c);
        if (t_relevant_rec(ctx, prefix.subspan(1), matrix, inner)) return true;
    }
    return false;
}

/// Instances of the outermost variable whose remainder formula is t-relevant,
/// in universe order. These are the assignments satisfaction quantifies over.
inline std::vector<std::string> instances_rec(const EvalContext& ctx, const std::string& var,
                                              PrefixView rest, const FormulaPtr& matrix,
                                              const Environment& env) {
    std::vector<std::string> out;
    for (const auto& c : ctx.m.universe) {
        Environment inner = env;
        inner.emplace_back(var, c);
        if (t_relevant_rec(ctx, rest, matrix, inner)) out.push_back(c);
    }
    return out;
}

/// Satisfaction:
///   - at most one quantifier left: classical, over all objects, unfiltered;
///   - universal outer quantifier: every t-relevant instance must be
///     satisfied, and there must be at least one ("all" means all of one
///     or more);
///   - existential outer quantifier: some t-relevant instance is satisfied.
inline bool satisfied_rec(const EvalContext& ctx, PrefixView prefix, const FormulaPtr& matrix,
                          const Environment& env) {
    if (prefix.size() <= 1) {
        FormulaPtr inst = apply_env(matrix, env);
        if (prefix.size() == 1)
            inst = mk_quant(prefix[0].kind == QuantKind::Universal ? FormulaKind::ForAll
                                                                   : FormulaKind::Exists,
                            prefix[0].var, inst);
        return eval_classical(inst, ctx.m);
    }
    std::vector<std::string> instances =
        instances_rec(ctx, prefix[0].var, prefix.subspan(1), matrix, env);
    if (prefix[0].kind == QuantKind::Universal) {
        if (instances.empty()) return false;
        for (const auto& c : instances) {
            Environment inner = env;
            inner.emplace_back(prefix[0].var, c);
            if (!satisfied_rec(ctx, prefix.subspan(1), matrix, inner)) return false;
        }
        return true;
    }
    for (const auto& c : instances) {
        Environment inner = env;
        inner.emplace_back(prefix[0].var, c);
        if (satisfied_rec(ctx, prefix.subspan(1), matrix, inner)) return true;
    }
    return false;
}

/// Truth: an all-universal sentence is true iff satisfied and t-relevant;
/// any other prefix is true iff satisfied.
inline bool true_rec(const EvalContext& ctx, const PrenexSentence& s) {
    bool sat = satisfied_rec(ctx, PrefixView(s.prefix), s.matrix, {});
    if (!all_universal(s.prefix)) return sat;
    return sat && t_relevant_rec(ctx, PrefixView(s.prefix), s.matrix, {});
}

inline void validate_sentence(const PrenexSentence& s, const Interpretation& m) {
    if (s.prefix.empty()) throw SemanticError("sentence has no quantifier prefix");
    for (std::size_t i = 0; i < s.prefix.size(); ++i) {
        for (std::size_t j = i + 1; j < s.prefix.size(); ++j)
            if (s.prefix[i].var == s.prefix[j].var)
                throw ParseError("duplicate quantifier variable '" + s.prefix[i].var + "'");
        if (m.has_constant(s.prefix[i].var))
            throw SemanticError("variable '" + s.prefix[i].var +
                                "' collides with a universe element name");
    }
    if (!is_quantifier_free(s.matrix))
        throw ParseError("matrix is not quantifier-free");
    for (const std::string& v : free_variables(s.matrix)) {
        bool bound = false;
        for (const Quantifier& q : s.prefix)
            if (q.var == v) { bound = true; break; }
        if (!bound) throw SemanticError("free variable '" + v + "' in matrix");
    }
    for (const FormulaPtr& atom : atoms_of(s.matrix)) {
        const Interpretation::Extension& ext = m.require(atom->pred);
        if (ext.arity != static_cast<int>(atom->args.size()))
            throw SemanticError("arity mismatch for predicate " + atom->pred);
        for (const Term& t : atom->args)
            if (t.kind == TermKind::Constant && !m.has_constant(t.name))
                throw SemanticError("unknown constant '" + t.name + "'");
    }
}

} // namespace detail

/// T-relevance of (prefix, matrix) under env and m.
inline bool is_t_relevant(const std::vector<Quantifier>& prefix, const FormulaPtr& matrix,
                          const Environment& env, const Interpretation& m,
                          RelevanceMode mode = RelevanceMode::Interpretation) {
    detail::EvalContext ctx{m, mode, {}};
    return detail::t_relevant_rec(ctx, detail::PrefixView(prefix), matrix, env);
}

inline bool is_t_relevant(const PrenexSentence& s, const Interpretation& m,
                          RelevanceMode mode = RelevanceMode::Interpretation) {
    detail::validate_sentence(s, m);
    return is_t_relevant(s.prefix, s.matrix, {}, m, mode);
}

/// Instances of `outer` whose remainder (rest_prefix over matrix) is
/// t-relevant, in universe order.
inline std::vector<std::string> t_relevant_instances(const Quantifier& outer,
                                                     const std::vector<Quantifier>& rest_prefix,
                                                     const FormulaPtr& matrix,
                                                     const Environment& env,
                                                     const Interpretation& m,
                                                     RelevanceMode mode = RelevanceMode::Interpretation) {
    detail::EvalContext ctx{m, mode, {}};
    return detail::instances_rec(ctx, outer.var, detail::PrefixView(rest_prefix), matrix, env);
}

inline bool is_satisfied(const std::vector<Quantifier>& prefix, const FormulaPtr& matrix,
                         const Environment& env, const Interpretation& m,
                         RelevanceMode mode = RelevanceMode::Interpretation) {
    detail::EvalContext ctx{m, mode, {}};
    return detail::satisfied_rec(ctx, detail::PrefixView(prefix), matrix, env);
}

// ---------------------------------------------------------------------------
// Evaluation with traces
// ---------------------------------------------------------------------------

/// One rule application. Rendered one per line as
///   <rule-id> <formula> [instances: ...] [witness: ...]
/// with children indented below their parent.
struct TraceNode {
    std::string rule;
    std::string formula;
    std::optional<std::vector<std::string>> instances;
    std::optional<std::vector<std::string>> witness;
    std::vector<TraceNode> children;
};

struct Evaluation {
    Verdict verdict = Verdict::Gap;
    std::vector<TraceNode> trace;
};

namespace detail {

inline std::string print_with_env(PrefixView prefix, const FormulaPtr& matrix,
                                  const Environment& env) {
    FormulaPtr f = apply_env(matrix, env);
    for (std::size_t i = prefix.size(); i-- > 0;)
        f = mk_quant(prefix[i].kind == QuantKind::Universal ? FormulaKind::ForAll
                                                            : FormulaKind::Exists,
                     prefix[i].var, f);
    return print_formula(f);
}

inline TraceNode relevance_trace(const EvalContext& ctx, PrefixView prefix,
                                 const FormulaPtr& matrix, const Environment& env) {
    TraceNode node;
    node.formula = print_with_env(prefix, matrix, env);
    if (prefix.size() == 1) {
        node.rule = "D2.1.3";
        return node;
    }
    if (homogeneous(prefix)) {
        if (prefix.front().kind == QuantKind::Universal) {
            node.rule = env.empty() ? "D3.1.1" : "D3.1.2";
            if (auto w = block_witness(ctx, prefix, matrix, env)) node.witness = *w;
            return node;
        }
        node.rule = env.empty() ? "D3.1.3" : "D3.1.4";
        std::vector<Quantifier> dual = dual_prefix(prefix);
        node.children.push_back(relevance_trace(ctx, PrefixView(dual), negated(matrix), env));
        return node;
    }
    node.rule = "D3.1.5";
    node.instances = instances_rec(ctx, prefix[0].var, prefix.subspan(1), matrix, env);
    for (const auto& c : *node.instances) {
        Environment inner = env;
        inner.emplace_back(prefix[0].var, c);
        node.children.push_back(relevance_trace(ctx, prefix.subspan(1), matrix, inner));
    }
    return node;
}

inline TraceNode satisfaction_trace(const EvalContext& ctx, PrefixView prefix,
                                    const FormulaPtr& matrix, const Environment& env) {
    TraceNode node;
    node.formula = print_with_env(prefix, matrix, env);
    if (prefix.size() <= 1) {
        node.rule = "D3.2.1";
        return node;
    }
    node.rule = prefix[0].kind == QuantKind::Universal ? "D3.2.2" : "D3.2.3";
    node.instances = instances_rec(ctx, prefix[0].var, prefix.subspan(1), matrix, env);
    for (const auto& c : *node.instances) {
        Environment inner = env;
        inner.emplace_back(prefix[0].var, c);
        node.children.push_back(satisfaction_trace(ctx, prefix.subspan(1), matrix, inner));
    }
    return node;
}

inline TraceNode truth_trace(const EvalContext& ctx, const PrenexSentence& s) {
    TraceNode node;
    node.formula = print_sentence(s);
    node.rule = all_universal(s.prefix) ? "D3.3.1" : "D3.3.2";
    node.children.push_back(satisfaction_trace(ctx, PrefixView(s.prefix), s.matrix, {}));
    if (all_universal(s.prefix))
        node.children.push_back(relevance_trace(ctx, PrefixView(s.prefix), s.matrix, {}));
    return node;
}

} // namespace detail

/// Evaluates a closed prenex sentence to TRUE, FALSE, or GAP:
/// TRUE by the truth rules, FALSE iff the prefix-dualized negation is TRUE,
/// GAP otherwise. The trace records the rule applications, instance sets and
/// witnesses for whichever branches were decisive.
inline Evaluation evaluate(const PrenexSentence& s, const Interpretation& m,
                           RelevanceMode mode = RelevanceMode::Interpretation,
                           bool with_trace = false) {
    detail::validate_sentence(s, m);
    detail::EvalContext ctx{m, mode, {}};
    Evaluation result;
    PrenexSentence neg = prenex_negate(s);
    if (detail::true_rec(ctx, s)) {
        result.verdict = Verdict::True;
        if (with_trace) result.trace.push_back(detail::truth_trace(ctx, s));
        return result;
    }
    if (detail::true_rec(ctx, neg)) {
        result.verdict = Verdict::False;
        if (with_trace) {
            TraceNode node;
            node.rule = "D3.3.3";
            node.formula = print_sentence(s);
            node.children.push_back(detail::truth_trace(ctx, neg));
            result.trace.push_back(std::move(node));
        }
        return result;
    }
    result.verdict = Verdict::Gap;
    if (with_trace) {
        result.trace.push_back(detail::truth_trace(ctx, s));
        TraceNode node;
        node.rule = "D3.3.3";
        node.formula = print_sentence(s);
        node.children.push_back(detail::truth_trace(ctx, neg));
        result.trace.push_back(std::move(node));
    }
    return result;
}

inline void render_trace_node(const TraceNode& node, int depth, std::ostringstream& out) {
    for (int i = 0; i < depth; ++i) out << "  ";
    out << node.rule << ' ' << node.formula;
    if (node.instances) {
        out << " [instances:";
        for (const auto& c : *node.instances) out << ' ' << c;
        out << ']';
    }
    if (node.witness) {
        out << " [witness: (";
        for (std::size_t i = 0; i < node.witness->size(); ++i) {
            if (i) out << ',';
            out << (*node.witness)[i];
        }
        out << ")]";
    }
    out << '\n';
    for (const TraceNode& child : node.children) render_trace_node(child, depth + 1, out);
}

inline std::string render_trace(const std::vector<TraceNode>& trace) {
    std::ostringstream out;
    for (const TraceNode& node : trace) render_trace_node(node, 0, out);
    return out.str();
}

// ---------------------------------------------------------------------------
// Relevance analysis for reporting
// ---------------------------------------------------------------------------

struct RelevanceAnalysis {
    bool relevant = false;
    std::vector<std::string> details;
};

/// Explains the top-level relevance outcome: the witness tuple for a
/// homogeneous block, a determining proper subset for a single quantifier,
/// or the per-position instance sets when the witness search fails.
inline RelevanceAnalysis analyze_relevance(const PrenexSentence& s, const Interpretation& m,
                                           RelevanceMode mode = RelevanceMode::Interpretation) {
    detail::validate_sentence(s, m);
    detail::EvalContext ctx{m, mode, {}};
    RelevanceAnalysis out;
    out.relevant = detail::t_relevant_rec(ctx, detail::PrefixView(s.prefix), s.matrix, {});

    if (s.prefix.size() == 1) {
        const Quantifier& q = s.prefix[0];
        detail::MonoTable t = detail::mono_table(s.matrix, q.var, mode == RelevanceMode::Any ? nullptr : &m);
        int k = t.table.atom_count();
        if (out.relevant) {
            std::string atoms;
            for (int i = 0; i < k; ++i) {
                if (i) atoms += ",";
                atoms += t.table.names[static_cast<std::size_t>(i)];
            }
            out.details.push_back("no determining proper subset of {" + atoms + "}");
        } else {
            for (int drop = 0; drop < k; ++drop) {
                std::set<int> members;
                for (int i = 0; i < k; ++i)
                    if (i != drop) members.insert(i);
                if (detail::mono_determining(t, members)) {
                    std::string names;
                    bool first = true;
                    for (int i : members) {
                        if (!first) names += ",";
                        first = false;
                        names += t.table.names[static_cast<std::size_t>(i)];
                    }
                    out.details.push_back("determining set: {" + names + "}");
                    break;
                }
            }
        }
        return out;
    }

    if (detail::homogeneous(detail::PrefixView(s.prefix))) {
        bool universal = s.prefix.front().kind == QuantKind::Universal;
        std::vector<Quantifier> search_prefix =
            universal ? s.prefix : detail::dual_prefix(detail::PrefixView(s.prefix));
        FormulaPtr search_matrix = universal ? s.matrix : negated(s.matrix);
        auto witness = detail::block_witness(ctx, detail::PrefixView(search_prefix), search_matrix, {});
        if (witness) {
            std::string w = "witness: (";
            for (std::size_t i = 0; i < witness->size(); ++i) {
                if (i) w += ",";
                w += (*witness)[i];
            }
            out.details.push_back(w + ")");
        } else {
            out.details.push_back("no witness tuple");
            if (s.prefix.size() == 2) {
                // Per-position candidate sets; for two variables the witness
                // search decomposes into a row side and a column side.
                for (std::size_t pos = 0; pos < 2; ++pos) {
                    std::size_t other = 1 - pos;
                    std::vector<std::string> hits;
                    for (const auto& c : m.universe) {
                        Environment env;
                        env.emplace_back(search_prefix[other].var, c);
                        if (detail::mono_base_relevant(ctx, search_prefix[pos].kind,
                                                       search_prefix[pos].var, search_matrix, env))
                            hits.push_back(c);
                    }
                    std::string line = "t-relevant instances for " + s.prefix[other].var + ": ";
                    if (hits.empty()) {
                        line += pos == 0 ? "none (no witness column)" : "none (no witness row)";
                    } else {
                        for (std::size_t i = 0; i < hits.size(); ++i) {
                            if (i) line += " ";
                            line += hits[i];
                        }
                    }
                    out.details.push_back(line);
                }
            }
        }
        return out;
    }

    std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
    std::vector<std::string> instances =
        detail::instances_rec(ctx, s.prefix[0].var, detail::PrefixView(rest), s.matrix, {});
    if (instances.empty()) {
        out.details.push_back("no t-relevant instance of " + s.prefix[0].var);
    } else {
        std::string line = "t-relevant instances of " + s.prefix[0].var + ":";
        for (const auto& c : instances) line += " " + c;
        out.details.push_back(line);
    }
    return out;
}

} // namespace trel
