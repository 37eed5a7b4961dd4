#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trel/classical.hpp"
#include "trel/error.hpp"
#include "trel/harness.hpp"
#include "trel/model.hpp"
#include "trel/mono.hpp"
#include "trel/poly.hpp"
#include "trel/prop.hpp"

namespace trel::cli {

// Exit statuses: 0 success (a GAP verdict is a result, not an error),
// 2 parse/format error, 3 semantic error, 4 property-suite failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSemantic = 3;
inline constexpr int kExitProperty = 4;

namespace detail {

inline Interpretation load_model(const std::string& spec) {
    if (spec.rfind("fixture:", 0) == 0) return fixture_model(spec.substr(8));
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot read model file '" + spec + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

inline StuckMap parse_stuck(const std::string& text) {
    StuckMap stuck;
    if (text.empty()) return stuck;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected ATOM=0 or ATOM=1 in --stuck, got '" + item + "'");
        std::string name = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (value != "0" && value != "1")
            throw ParseError("stuck value for '" + name + "' must be 0 or 1");
        stuck[name] = value == "1";
    }
    return stuck;
}

inline RelevanceMode parse_mode(const std::string& text) {
    if (text == "interp") return RelevanceMode::Interpretation;
    if (text == "any") return RelevanceMode::Any;
    throw ParseError("--mode must be 'interp' or 'any'");
}

inline std::vector<std::string> load_catalog(const std::string& spec, const Signature& sig) {
    if (spec == "builtin") return builtin_catalog(sig);
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot read catalog file '" + spec + "'");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(begin, end - begin + 1));
    }
    if (out.empty()) throw SemanticError("catalog file '" + spec + "' has no sentences");
    return out;
}

} // namespace detail

/// Runs one command; argv excludes the program name. Output goes to `out`,
/// diagnostics to `err`.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"truth-relevant three-valued semantics for prenex first-order logic"};
    app.require_subcommand(1);

    std::string model_spec, formula_text, mode_text = "interp", semantics = "s3";
    std::string stuck_text, signature_text, catalog_spec = "builtin", properties_text;
    int max_universe = 1, cap = kDefaultUniverseCap;
    bool with_trace = false;

    CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate a prenex sentence against a model");
    cmd_eval->add_option("--model", model_spec, "model file, or fixture:NAME")->required();
    cmd_eval->add_option("--formula", formula_text, "closed prenex sentence")->required();
    cmd_eval->add_option("--mode", mode_text, "relevance mode: interp|any");
    cmd_eval->add_option("--semantics", semantics,
                         "s3 = prefix rules, s2 = single-quantifier rule");
    cmd_eval->add_flag("--trace", with_trace, "print the rule applications");

    CLI::App* cmd_tdsets = app.add_subcommand("tdsets", "minimal truth-determining sets");
    cmd_tdsets->add_option("--formula", formula_text, "quantifier-free formula")->required();
    cmd_tdsets->add_option("--stuck", stuck_text, "stuck atoms, e.g. P=0,Q=1");

    CLI::App* cmd_relevant = app.add_subcommand("relevant", "t-relevance analysis of a sentence");
    cmd_relevant->add_option("--model", model_spec, "model file, or fixture:NAME")->required();
    cmd_relevant->add_option("--formula", formula_text, "closed prenex sentence")->required();
    cmd_relevant->add_option("--mode", mode_text, "relevance mode: interp|any");

    CLI::App* cmd_census = app.add_subcommand("census", "exhaustive small-model census");
    cmd_census->add_option("--signature", signature_text, "e.g. F/2,G/2")->required();
    cmd_census->add_option("--max-universe", max_universe, "largest universe size")->required();
    cmd_census->add_option("--catalog", catalog_spec, "builtin, or a file of sentences");
    cmd_census->add_option("--check-properties", properties_text,
                           "all, or a comma-separated list of property names");
    cmd_census->add_option("--cap", cap, "configured universe-size cap");

    CLI::App* cmd_classical = app.add_subcommand("classical", "classical two-valued verdict");
    cmd_classical->add_option("--model", model_spec, "model file, or fixture:NAME")->required();
    cmd_classical->add_option("--formula", formula_text, "closed formula (prenex not required)")
        ->required();

    std::vector<std::string> args = argv;
    std::vector<char*> raw;
    std::string prog = "trel";
    raw.push_back(prog.data());
    for (auto& a : args) raw.push_back(a.data());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (cmd_eval->parsed()) {
            Interpretation m = detail::load_model(model_spec);
            PrenexSentence s = to_prenex_sentence(parse_formula(formula_text));
            RelevanceMode mode = detail::parse_mode(mode_text);
            if (semantics == "s2") {
                out << to_string(evaluate_monadic(s, m, mode)) << '\n';
            } else if (semantics == "s3") {
                Evaluation result = evaluate(s, m, mode, with_trace);
                out << to_string(result.verdict) << '\n';
                if (with_trace) out << render_trace(result.trace);
            } else {
                throw ParseError("--semantics must be 's3' or 's2'");
            }
            return kExitOk;
        }

        if (cmd_tdsets->parsed()) {
            FormulaPtr f = parse_formula(formula_text);
            if (!is_quantifier_free(f))
                throw ParseError("tdsets expects a quantifier-free formula");
            StuckMap stuck = detail::parse_stuck(stuck_text);
            for (const auto& set : truth_determining_sets(f, stuck)) {
                out << '{';
                for (std::size_t i = 0; i < set.size(); ++i) {
                    if (i) out << ',';
                    out << set[i];
                }
                out << "}\n";
            }
            out << "redundant:";
            for (const auto& name : t_redundant_atoms(f, stuck)) out << ' ' << name;
            out << '\n';
            out << "t-relevant: " << (is_t_relevant_prop(f, stuck) ? "yes" : "no") << '\n';
            return kExitOk;
        }

        if (cmd_relevant->parsed()) {
            Interpretation m = detail::load_model(model_spec);
            PrenexSentence s = to_prenex_sentence(parse_formula(formula_text));
            RelevanceAnalysis analysis = analyze_relevance(s, m, detail::parse_mode(mode_text));
            out << (analysis.relevant ? "RELEVANT" : "IRRELEVANT") << '\n';
            for (const auto& line : analysis.details) out << line << '\n';
            return kExitOk;
        }

        if (cmd_census->parsed()) {
            if (max_universe < 1 || max_universe > cap)
                throw SemanticError("--max-universe " + std::to_string(max_universe) +
                                    " exceeds the configured cap " + std::to_string(cap));
            Signature sig = parse_signature(signature_text);
            std::vector<std::string> catalog = detail::load_catalog(catalog_spec, sig);
            for (int size = 1; size <= max_universe; ++size)
                out << render_census(census(catalog, sig, size, cap));
            bool any_failure = false;
            if (!properties_text.empty()) {
                std::vector<PropertyResult> results = check_properties(sig, max_universe, catalog, cap);
                if (properties_text != "all") {
                    std::set<std::string> wanted;
                    std::istringstream in(properties_text);
                    std::string name;
                    while (std::getline(in, name, ',')) wanted.insert(name);
                    std::vector<PropertyResult> filtered;
                    for (auto& r : results)
                        if (wanted.count(r.name)) filtered.push_back(std::move(r));
                    if (filtered.empty())
                        throw SemanticError("no such property: " + properties_text);
                    results = std::move(filtered);
                }
                out << render_properties(results);
                for (const auto& r : results)
                    if (r.status == PropertyStatus::Fail) any_failure = true;
            }
            return any_failure ? kExitProperty : kExitOk;
        }

        if (cmd_classical->parsed()) {
            Interpretation m = detail::load_model(model_spec);
            FormulaPtr f = parse_formula(formula_text);
            if (!free_variables(f).empty())
                throw SemanticError("formula is not closed");
            out << (eval_classical(f, m) ? "TRUE" : "FALSE") << '\n';
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << '\n';
        return kExitSemantic;
    }
    return kExitOk;
}

} // namespace trel::cli
