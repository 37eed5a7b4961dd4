#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trel/ast.hpp"
#include "trel/classical.hpp"
#include "trel/error.hpp"
#include "trel/model.hpp"
#include "trel/mono.hpp"
#include "trel/poly.hpp"
#include "trel/verdict.hpp"

namespace trel {

inline constexpr int kDefaultUniverseCap = 3;

// ---------------------------------------------------------------------------
// Fixture corpus
// ---------------------------------------------------------------------------

/// A structural fact the fixture's model must exhibit; asserted before the
/// verdict so a mis-built model fails loudly rather than silently matching.
struct FixtureCondition {
    std::string description;
    std::function<bool(const Interpretation&)> holds;
};

struct Fixture {
    std::string id;
    std::string model_name;
    std::string sentence;
    Verdict expected;
    std::string scenario;
    std::vector<FixtureCondition> conditions;
};

namespace detail {

inline PrenexSentence prenex(const std::string& text) {
    return to_prenex_sentence(parse_formula(text));
}

inline const std::map<std::string, std::string>& fixture_model_texts() {
    static const std::map<std::string, std::string> models = {
        {"U1",
         "universe: a b c\n"
         "pred F/1: a\n"
         "pred G/1: c\n"},
        {"E1",
         "universe: a b c\n"
         "pred F/1: a b\n"
         "pred G/1: b c\n"},
        {"U1B",
         "universe: a b\n"
         "pred F/1: a\n"
         "pred G/1:\n"},
        {"CHILDREN",
         "universe: a b c\n"
         "pred J/1:\n"
         "pred S/1: a b\n"},
        {"EX2",
         "universe: e1 e2 e3 e4\n"
         "pred F/2: (e1,e1) (e1,e2)\n"
         "pred G/2: (e1,e3) (e1,e4)\n"},
        {"EX3",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1)\n"
         "pred G/2: (e1,e1)\n"},
        {"EX4",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1)\n"
         "pred G/2: (e1,e2)\n"},
        {"EX4B",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1) (e2,e1)\n"
         "pred G/2: (e1,e1) (e2,e1)\n"},
        {"EX5",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1)\n"
         "pred G/2:\n"},
        {"EX6",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1) (e1,e2)\n"
         "pred G/2: (e1,e1) (e1,e2)\n"},
        {"EX6B",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1) (e1,e2)\n"
         "pred G/2: (e2,e1) (e1,e2)\n"},
        {"EX7",
         "universe: e1 e2\n"
         "pred F/2: (e1,e1)\n"
         "pred G/2: (e2,e2)\n"},
        // Ternary scenarios; argument order follows the sentences below.
        {"EX8",
         "universe: e1 e2\n"
         "pred F/3: (e1,e1,e1)\n"
         "pred G/3: (e1,e2,e1) (e2,e1,e1) (e1,e1,e2)\n"},
        {"EX9",
         "universe: e1 e2\n"
         "pred F/3: (e1,e1,e1) (e1,e1,e2) (e1,e2,e1) (e1,e2,e2)\n"
         "pred G/3: (e1,e1,e1) (e1,e1,e2) (e1,e2,e1) (e1,e2,e2)\n"},
        {"EX10",
         "universe: e1 e2\n"
         "pred F/3: (e1,e1,e1) (e2,e1,e1)\n"
         "pred G/3: (e1,e1,e1) (e1,e1,e2) (e1,e2,e1) (e2,e1,e2)\n"},
        {"EX11",
         "universe: e1 e2\n"
         "pred F/3: (e1,e1,e1)\n"
         "pred G/3: (e1,e1,e2) (e1,e2,e1)\n"},
        {"EX12",
         "universe: e1 e2\n"
         "pred F/3: (e1,e1,e1) (e2,e2,e1)\n"
         "pred G/3: (e1,e1,e2) (e2,e2,e2)\n"},
    };
    return models;
}

inline Status status_of(const Interpretation& m, const std::string& pred) {
    return view_status(m, mk_atom(pred, {Term::variable("w")}), "w");
}

} // namespace detail

inline std::vector<std::string> fixture_model_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : detail::fixture_model_texts()) names.push_back(name);
    return names;
}

inline std::string fixture_model_text(const std::string& name) {
    std::string key = name;
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    const auto& texts = detail::fixture_model_texts();
    auto it = texts.find(key);
    if (it == texts.end()) throw SemanticError("unknown fixture model '" + name + "'");
    return it->second;
}

inline Interpretation fixture_model(const std::string& name) {
    return parse_model(fixture_model_text(name));
}

/// The built-in verdict corpus. Each entry names its model, the sentence under
/// evaluation, the expected verdict, and the structural conditions the model
/// realizes.
inline std::vector<Fixture> fixtures() {
    using detail::prenex;
    using detail::status_of;
    std::vector<Fixture> out;

    auto add = [&out](std::string id, std::string model, std::string sentence, Verdict expected,
                      std::string scenario, std::vector<FixtureCondition> conditions = {}) {
        out.push_back(Fixture{std::move(id), std::move(model), std::move(sentence), expected,
                              std::move(scenario), std::move(conditions)});
    };

    FixtureCondition disjoint_mixed{
        "F and G are both mixed and classically disjoint",
        [](const Interpretation& m) {
            return detail::status_of(m, "F") == Status::Mixed &&
                   detail::status_of(m, "G") == Status::Mixed &&
                   !eval_classical(parse_formula("(Ex)(F(x) & G(x))"), m);
        }};

    add("U1.1", "U1", "(x)(F(x) -> ~G(x))", Verdict::True,
        "disjoint nonempty F and G with an object in neither", {disjoint_mixed});
    add("U1.2", "U1", "(x)~(F(x) & G(x))", Verdict::True,
        "disjoint nonempty F and G with an object in neither", {disjoint_mixed});
    add("U1.3", "U1", "(x)(~F(x) | ~G(x))", Verdict::True,
        "disjoint nonempty F and G with an object in neither", {disjoint_mixed});
    add("U1.4", "U1", "(Ex)(F(x) & G(x))", Verdict::False,
        "disjoint nonempty F and G with an object in neither", {disjoint_mixed});

    add("E1.1", "E1", "(Ex)(F(x) & G(x))", Verdict::True, "F and G overlap, both mixed",
        {{"F and G are mixed and overlap",
          [](const Interpretation& m) {
              return detail::status_of(m, "F") == Status::Mixed &&
                     detail::status_of(m, "G") == Status::Mixed &&
                     eval_classical(parse_formula("(Ex)(F(x) & G(x))"), m);
          }}});
    add("E1.2", "E1", "(x)(F(x) -> ~G(x))", Verdict::False, "F and G overlap, both mixed");

    FixtureCondition g_empty_f_mixed{
        "F is mixed and G is empty",
        [](const Interpretation& m) {
            return detail::status_of(m, "F") == Status::Mixed &&
                   detail::status_of(m, "G") == Status::Empty;
        }};
    add("U1B.1", "U1B", "(x)~(F(x) & G(x))", Verdict::Gap,
        "F nonempty but not universal, G empty", {g_empty_f_mixed});
    add("U1B.2", "U1B", "(Ex)(F(x) & G(x))", Verdict::Gap,
        "F nonempty but not universal, G empty", {g_empty_f_mixed});
    add("U1B.3", "U1B", "(Ex)(F(x) | G(x))", Verdict::True,
        "F nonempty but not universal, G empty", {g_empty_f_mixed});

    add("CHILDREN", "CHILDREN", "(x)(J(x) -> S(x))", Verdict::Gap,
        "J empty (stuck at 0), S mixed",
        {{"J is empty and S is mixed",
          [](const Interpretation& m) {
              return detail::status_of(m, "J") == Status::Empty &&
                     detail::status_of(m, "S") == Status::Mixed;
          }}});

    FixtureCondition ex2_shape{
        "some row is t-relevant but no column is",
        [](const Interpretation& m) {
            PrenexSentence s = prenex("(x)(y)(F(x,y) -> ~G(x,y))");
            std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
            bool some_row = !t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m).empty();
            bool some_col = false;
            for (const auto& c : m.universe) {
                Environment env{{"y", c}};
                if (is_t_relevant({Quantifier{QuantKind::Universal, "x"}}, s.matrix, env, m))
                    some_col = true;
            }
            return some_row && !some_col;
        }};
    add("EX2.1", "EX2", "(x)(y)(F(x,y) -> ~G(x,y))", Verdict::Gap,
        "overlap-free with a t-relevant row but no t-relevant column", {ex2_shape});
    add("EX2.2", "EX2", "(Ex)(Ey)(F(x,y) & G(x,y))", Verdict::Gap,
        "overlap-free with a t-relevant row but no t-relevant column");

    add("EX3.1", "EX3", "(Ex)(Ey)(F(x,y) & G(x,y))", Verdict::True, "a single overlap point",
        {{"F and G overlap",
          [](const Interpretation& m) {
              return eval_classical(parse_formula("(Ex)(Ey)(F(x,y) & G(x,y))"), m);
          }}});
    add("EX3.2", "EX3", "(x)(y)(F(x,y) -> ~G(x,y))", Verdict::False, "a single overlap point");

    add("EX4.1", "EX4", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::True,
        "one row carries both F and G without overlap",
        {{"some row is t-relevant and classically overlap-free",
          [](const Interpretation& m) {
              PrenexSentence s = prenex("(Ex)(y)(F(x,y) -> ~G(x,y))");
              std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
              for (const auto& c : t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m)) {
                  Environment env{{"x", c}};
                  if (eval_classical(mk_forall("y", apply_env(s.matrix, env)), m)) return true;
              }
              return false;
          }}});
    add("EX4.2", "EX4", "(x)(Ey)(F(x,y) & G(x,y))", Verdict::False,
        "one row carries both F and G without overlap");

    add("EX4B.1", "EX4B", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::False,
        "every row's F overlaps G",
        {{"every t-relevant row has an overlap",
          [](const Interpretation& m) {
              PrenexSentence s = prenex("(x)(Ey)(F(x,y) & G(x,y))");
              std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
              auto rows = t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m);
              if (rows.empty()) return false;
              for (const auto& c : rows) {
                  Environment env{{"x", c}};
                  if (!eval_classical(mk_exists("y", apply_env(s.matrix, env)), m)) return false;
              }
              return true;
          }}});
    add("EX4B.2", "EX4B", "(x)(Ey)(F(x,y) & G(x,y))", Verdict::True,
        "every row's F overlaps G");

    add("EX5.1", "EX5", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::Gap, "G is empty everywhere",
        {{"no row is t-relevant",
          [](const Interpretation& m) {
              PrenexSentence s = prenex("(Ex)(y)(F(x,y) -> ~G(x,y))");
              std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
              return t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m).empty();
          }}});

    add("EX6.1", "EX6", "(y)(Ex)(F(x,y) & G(x,y))", Verdict::True,
        "every column has an overlap",
        {{"every column is t-relevant and has an overlap",
          [](const Interpretation& m) {
              PrenexSentence s = prenex("(y)(Ex)(F(x,y) & G(x,y))");
              std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
              auto cols = t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m);
              if (cols.size() != m.universe.size()) return false;
              for (const auto& c : cols) {
                  Environment env{{"y", c}};
                  if (!eval_classical(mk_exists("x", apply_env(s.matrix, env)), m)) return false;
              }
              return true;
          }}});
    add("EX6.2", "EX6", "(Ey)(x)(F(x,y) -> ~G(x,y))", Verdict::False,
        "every column has an overlap");

    add("EX6B.1", "EX6B", "(y)(Ex)(F(x,y) & G(x,y))", Verdict::False,
        "some t-relevant column is overlap-free",
        {{"some t-relevant column is classically overlap-free",
          [](const Interpretation& m) {
              PrenexSentence s = prenex("(y)(Ex)(F(x,y) & G(x,y))");
              std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
              for (const auto& c : t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m)) {
                  Environment env{{"y", c}};
                  if (!eval_classical(mk_exists("x", apply_env(s.matrix, env)), m)) return true;
              }
              return false;
          }}});
    add("EX6B.2", "EX6B", "(Ey)(x)(F(x,y) -> ~G(x,y))", Verdict::True,
        "some t-relevant column is overlap-free");

    add("EX7.1", "EX7", "(y)(Ex)(F(x,y) & G(x,y))", Verdict::Gap,
        "no column carries both F and G",
        {{"no column is t-relevant",
          [](const Interpretation& m) {
              PrenexSentence s = prenex("(y)(Ex)(F(x,y) & G(x,y))");
              std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
              return t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m).empty();
          }}});
    add("EX7.2", "EX7", "(Ey)(x)(F(x,y) -> ~G(x,y))", Verdict::Gap,
        "no column carries both F and G");

    // --- ternary scenarios -------------------------------------------------

    {
        const std::string text = "(z)(x)(y)(F(x,y,z) -> ~G(x,y,z))";
        std::vector<FixtureCondition> conditions{
            {"some z-slice admits a simultaneous row and column witness",
             [text](const Interpretation& m) {
                 PrenexSentence s = detail::prenex(text);
                 std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
                 return !t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m).empty();
             }},
            {"every t-relevant z-slice is satisfied",
             [text](const Interpretation& m) {
                 PrenexSentence s = detail::prenex(text);
                 std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
                 auto slices = t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m);
                 if (slices.empty()) return false;
                 for (const auto& c : slices)
                     if (!is_satisfied(rest, s.matrix, {{s.prefix[0].var, c}}, m)) return false;
                 return true;
             }},
            {"one tuple is t-relevant in all three coordinate directions",
             [text](const Interpretation& m) {
                 PrenexSentence s = detail::prenex(text);
                 return is_t_relevant(s.prefix, s.matrix, {}, m);
             }}};
        add("EX8.1", "EX8", text, Verdict::True,
            "one z-slice witnesses rows, columns, and the z-direction", conditions);
        add("EX8.2", "EX8", "(Ez)(Ex)(Ey)(F(x,y,z) & G(x,y,z))", Verdict::False,
            "one z-slice witnesses rows, columns, and the z-direction");
    }

    {
        const std::string text = "(z)(y)(Ex)(F(x,y,z) & G(x,y,z))";
        std::vector<FixtureCondition> conditions{
            {"every (y,z) pair has a t-relevant, classically witnessed x-formula",
             [](const Interpretation& m) {
                 FormulaPtr matrix = detail::prenex("(z)(y)(Ex)(F(x,y,z) & G(x,y,z))").matrix;
                 std::vector<Quantifier> ex{Quantifier{QuantKind::Existential, "x"}};
                 for (const auto& b : m.universe) {
                     for (const auto& c : m.universe) {
                         Environment env{{"y", b}, {"z", c}};
                         if (!is_t_relevant(ex, matrix, env, m)) return false;
                         if (!eval_classical(mk_exists("x", apply_env(matrix, env)), m))
                             return false;
                     }
                 }
                 return true;
             }}};
        add("EX9.1", "EX9", text, Verdict::True,
            "for every y and z some x carries both F and G", conditions);
        add("EX9.2", "EX9", "(Ez)(Ey)(x)(F(x,y,z) -> ~G(x,y,z))", Verdict::False,
            "for every y and z some x carries both F and G");
    }

    {
        std::vector<FixtureCondition> conditions{
            {"the first z-slice is t-relevant and has an overlap",
             [](const Interpretation& m) {
                 FormulaPtr matrix = detail::prenex("(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))").matrix;
                 std::vector<Quantifier> block{Quantifier{QuantKind::Existential, "x"},
                                               Quantifier{QuantKind::Existential, "y"}};
                 Environment env{{"z", "e1"}};
                 return is_t_relevant(block, matrix, env, m) &&
                        eval_classical(parse_formula("(Ex)(Ey)(F(e1,x,y) & G(e1,x,y))"), m);
             }},
            {"the second z-slice is not t-relevant",
             [](const Interpretation& m) {
                 FormulaPtr matrix = detail::prenex("(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))").matrix;
                 std::vector<Quantifier> block{Quantifier{QuantKind::Existential, "x"},
                                               Quantifier{QuantKind::Existential, "y"}};
                 Environment env{{"z", "e2"}};
                 return !is_t_relevant(block, matrix, env, m);
             }},
            {"the second z-slice on its own is a gap",
             [](const Interpretation& m) {
                 PrenexSentence slice = detail::prenex("(Ex)(Ey)(F(e2,x,y) & G(e2,x,y))");
                 return evaluate(slice, m).verdict == Verdict::Gap;
             }}};
        add("EX10.1", "EX10", "(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))", Verdict::True,
            "one overlapping z-slice, one gap-shaped z-slice that does not count", conditions);
        add("EX10.2", "EX10", "(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))", Verdict::False,
            "one overlapping z-slice, one gap-shaped z-slice that does not count");
    }

    {
        std::vector<FixtureCondition> conditions{
            {"the first z-slice block is t-relevant and satisfied",
             [](const Interpretation& m) {
                 FormulaPtr matrix = detail::prenex("(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))").matrix;
                 std::vector<Quantifier> block{Quantifier{QuantKind::Universal, "x"},
                                               Quantifier{QuantKind::Universal, "y"}};
                 Environment env{{"z", "e1"}};
                 return is_t_relevant(block, matrix, env, m) &&
                        is_satisfied(block, matrix, env, m);
             }},
            {"only the first z-slice is t-relevant",
             [](const Interpretation& m) {
                 PrenexSentence s = detail::prenex("(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))");
                 std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
                 auto slices = t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m);
                 return slices == std::vector<std::string>{"e1"};
             }}};
        add("EX11.1", "EX11", "(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))", Verdict::True,
            "one z-slice is overlap-free with witnesses; the other is blank", conditions);
        add("EX11.2", "EX11", "(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))", Verdict::False,
            "one z-slice is overlap-free with witnesses; the other is blank");
    }

    {
        std::vector<FixtureCondition> conditions{
            {"every z-slice block is t-relevant and satisfied",
             [](const Interpretation& m) {
                 PrenexSentence s = detail::prenex("(z)(Ex)(y)(F(z,x,y) -> ~G(z,x,y))");
                 std::vector<Quantifier> rest(s.prefix.begin() + 1, s.prefix.end());
                 auto slices = t_relevant_instances(s.prefix[0], rest, s.matrix, {}, m);
                 if (slices.size() != m.universe.size()) return false;
                 for (const auto& c : slices)
                     if (!is_satisfied(rest, s.matrix, {{s.prefix[0].var, c}}, m)) return false;
                 return true;
             }},
            {"the witness row differs between the slices",
             [](const Interpretation& m) {
                 FormulaPtr matrix = detail::prenex("(z)(Ex)(y)(F(z,x,y) -> ~G(z,x,y))").matrix;
                 std::vector<Quantifier> forall_y{Quantifier{QuantKind::Universal, "y"}};
                 Quantifier ex_x{QuantKind::Existential, "x"};
                 auto first = t_relevant_instances(ex_x, forall_y, matrix, {{"z", "e1"}}, m);
                 auto second = t_relevant_instances(ex_x, forall_y, matrix, {{"z", "e2"}}, m);
                 return first == std::vector<std::string>{"e1"} &&
                        second == std::vector<std::string>{"e2"};
             }}};
        add("EX12.1", "EX12", "(z)(Ex)(y)(F(z,x,y) -> ~G(z,x,y))", Verdict::True,
            "each z-slice is satisfied through a different x", conditions);
        add("EX12.2", "EX12", "(Ez)(x)(Ey)(F(z,x,y) & G(z,x,y))", Verdict::False,
            "each z-slice is satisfied through a different x");
    }

    return out;
}

// ---------------------------------------------------------------------------
// Built-in catalogs
// ---------------------------------------------------------------------------

inline std::vector<std::string> builtin_catalog(const Signature& sig) {
    bool has_f = false, has_g = false;
    int arity = -1;
    for (const auto& [name, a] : sig.predicates) {
        if (name == "F") { has_f = true; arity = arity < 0 ? a : arity; }
        if (name == "G") has_g = true;
        if (arity >= 0 && a != arity && (name == "F" || name == "G"))
            throw SemanticError("builtin catalog needs F and G of equal arity");
    }
    if (!has_f || !has_g || arity < 1 || arity > 3)
        throw SemanticError("no builtin catalog for this signature (need F and G of arity 1-3)");
    switch (arity) {
    case 1:
        return {"(x)(F(x) -> ~G(x))", "(x)~(F(x) & G(x))", "(Ex)(F(x) & G(x))",
                "(Ex)(F(x) | G(x))", "(x)((F(x) & ~F(x)) -> G(x))", "(Ex)(F(x) & ~F(x))"};
    case 2:
        return {"(x)(y)(F(x,y) -> ~G(x,y))", "(Ex)(Ey)(F(x,y) & G(x,y))",
                "(Ex)(y)(F(x,y) -> ~G(x,y))", "(x)(Ey)(F(x,y) & G(x,y))",
                "(y)(Ex)(F(x,y) & G(x,y))", "(Ey)(x)(F(x,y) -> ~G(x,y))"};
    default:
        return {"(z)(x)(y)(F(x,y,z) -> ~G(x,y,z))", "(Ez)(Ex)(Ey)(F(x,y,z) & G(x,y,z))",
                "(z)(y)(Ex)(F(x,y,z) & G(x,y,z))", "(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))",
                "(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))", "(z)(Ex)(y)(F(z,x,y) -> ~G(z,x,y))"};
    }
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

struct CensusLine {
    std::string sentence;
    std::uint64_t models = 0;
    std::uint64_t verdict_true = 0;
    std::uint64_t verdict_false = 0;
    std::uint64_t verdict_gap = 0;
    std::uint64_t divergences = 0;
    std::uint64_t gap_classical_true = 0;
    std::uint64_t gap_classical_false = 0;
};

struct CensusDivergence {
    std::string sentence;
    std::uint64_t model_index = 0;
    Verdict monadic_rule = Verdict::Gap; // single-quantifier rule (satisfied and t-relevant)
    Verdict prefix_rule = Verdict::Gap;  // general prefix rules
    bool classical_value = false;
};

struct CensusReport {
    Signature sig;
    int universe_size = 0;
    std::vector<CensusLine> lines;
    std::vector<CensusDivergence> divergences;
};

/// Evaluates every catalog sentence on every interpretation of the signature
/// at the given universe size under the prefix rules, the single-quantifier
/// rule where applicable, and the classical oracle.
inline CensusReport census(const std::vector<std::string>& catalog, const Signature& sig,
                           int universe_size, int cap = kDefaultUniverseCap) {
    if (universe_size < 1 || universe_size > cap)
        throw SemanticError("universe size " + std::to_string(universe_size) +
                            " exceeds the configured cap " + std::to_string(cap));
    CensusReport report;
    report.sig = sig;
    report.universe_size = universe_size;
    ModelEnumerator models(sig, universe_size);
    for (const std::string& text : catalog) {
        PrenexSentence s = detail::prenex(text);
        CensusLine line;
        line.sentence = print_sentence(s);
        line.models = models.count();
        for (std::uint64_t i = 0; i < models.count(); ++i) {
            Interpretation m = models.at(i);
            Verdict v3 = evaluate(s, m).verdict;
            bool classical = eval_classical(formula_of(s), m);
            switch (v3) {
            case Verdict::True: ++line.verdict_true; break;
            case Verdict::False: ++line.verdict_false; break;
            default:
                ++line.verdict_gap;
                ++(classical ? line.gap_classical_true : line.gap_classical_false);
                break;
            }
            if (s.prefix.size() == 1) {
                Verdict v2 = evaluate_monadic(s, m);
                if (v2 != v3) {
                    ++line.divergences;
                    report.divergences.push_back(CensusDivergence{line.sentence, i, v2, v3, classical});
                }
            }
        }
        report.lines.push_back(std::move(line));
    }
    return report;
}

inline std::string render_census(const CensusReport& report) {
    std::ostringstream out;
    out << "# census";
    for (std::size_t i = 0; i < report.sig.predicates.size(); ++i) {
        out << (i ? "," : " signature=") << report.sig.predicates[i].first << '/'
            << report.sig.predicates[i].second;
    }
    out << " size=" << report.universe_size << '\n';
    out << "sentence\tmodels\ttrue\tfalse\tgap\tdivergences\n";
    for (const CensusLine& line : report.lines) {
        out << line.sentence << '\t' << line.models << '\t' << line.verdict_true << '\t'
            << line.verdict_false << '\t' << line.verdict_gap << '\t' << line.divergences << '\n';
    }
    for (const CensusLine& line : report.lines) {
        if (!line.verdict_gap) continue;
        out << "GAPSPLIT\t" << line.sentence << "\tclassical_true=" << line.gap_classical_true
            << "\tclassical_false=" << line.gap_classical_false << '\n';
    }
    for (const CensusDivergence& d : report.divergences) {
        out << "DIVERGENCE\t" << d.sentence << "\tmodel=" << d.model_index
            << "\tsingle-rule=" << to_string(d.monadic_rule)
            << "\tprefix-rule=" << to_string(d.prefix_rule)
            << "\tclassical=" << (d.classical_value ? "TRUE" : "FALSE") << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

enum class PropertyStatus { Pass, Fail, Divergence };

inline const char* to_string(PropertyStatus s) {
    switch (s) {
    case PropertyStatus::Pass: return "pass";
    case PropertyStatus::Fail: return "fail";
    default: return "divergence";
    }
}

/// `Divergence` marks a documented, expected gap between the semantics and a
/// stronger claim; it is flagged in reports but does not fail a run.
struct PropertyResult {
    std::string name;
    std::string domain;
    PropertyStatus status = PropertyStatus::Pass;
    std::uint64_t violations = 0;
    std::string counterexample;
};

namespace detail {

inline std::string describe_domain(const Signature& sig, int size) {
    std::ostringstream out;
    for (std::size_t i = 0; i < sig.predicates.size(); ++i)
        out << (i ? "," : "") << sig.predicates[i].first << '/' << sig.predicates[i].second;
    out << " sizes 1-" << size;
    return out.str();
}

template <typename Check>
inline PropertyResult sweep(const std::string& name, const Signature& sig, int size,
                            const std::vector<std::string>& catalog, bool documented,
                            Check&& check) {
    PropertyResult result;
    result.name = name;
    result.domain = describe_domain(sig, size);
    std::vector<PrenexSentence> sentences;
    for (const auto& text : catalog) sentences.push_back(prenex(text));
    for (int n = 1; n <= size; ++n) {
        ModelEnumerator models(sig, n);
        for (std::uint64_t i = 0; i < models.count(); ++i) {
            Interpretation m = models.at(i);
            for (std::size_t si = 0; si < sentences.size(); ++si) {
                std::string issue = check(sentences[si], m);
                if (issue.empty()) continue;
                ++result.violations;
                if (result.counterexample.empty()) {
                    std::ostringstream ce;
                    ce << catalog[si] << " size=" << n << " model=" << i << ": " << issue;
                    result.counterexample = ce.str();
                }
            }
        }
    }
    if (result.violations)
        result.status = documented ? PropertyStatus::Divergence : PropertyStatus::Fail;
    return result;
}

/// All prefixes reachable by permuting quantifiers inside each maximal
/// homogeneous block, the original included.
inline std::vector<std::vector<Quantifier>> block_permutations(const std::vector<Quantifier>& prefix) {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= prefix.size(); ++i) {
        if (i == prefix.size() || prefix[i].kind != prefix[begin].kind) {
            blocks.emplace_back(begin, i);
            begin = i;
        }
    }
    std::vector<std::vector<Quantifier>> result{{}};
    for (const auto& [b, e] : blocks) {
        std::vector<Quantifier> block(prefix.begin() + b, prefix.begin() + e);
        std::sort(block.begin(), block.end(),
                  [](const Quantifier& a, const Quantifier& c) { return a.var < c.var; });
        std::vector<std::vector<Quantifier>> perms;
        do {
            perms.push_back(block);
        } while (std::next_permutation(block.begin(), block.end(),
                                       [](const Quantifier& a, const Quantifier& c) {
                                           return a.var < c.var;
                                       }));
        std::vector<std::vector<Quantifier>> extended;
        for (const auto& head : result) {
            for (const auto& perm : perms) {
                std::vector<Quantifier> combined = head;
                combined.insert(combined.end(), perm.begin(), perm.end());
                extended.push_back(std::move(combined));
            }
        }
        result = std::move(extended);
    }
    return result;
}

inline FormulaPtr random_prop_formula(std::mt19937& rng, int depth) {
    static const std::vector<std::string> atom_pool = {"P", "Q", "R", "W"};
    std::uniform_int_distribution<int> shape(0, 5);
    int s = depth <= 0 ? 0 : shape(rng);
    if (s == 0) {
        std::uniform_int_distribution<int> a(0, static_cast<int>(atom_pool.size()) - 1);
        return mk_atom(atom_pool[static_cast<std::size_t>(a(rng))]);
    }
    FormulaPtr lhs = random_prop_formula(rng, depth - 1);
    if (s == 1) return mk_not(lhs);
    FormulaPtr rhs = random_prop_formula(rng, depth - 1);
    switch (s) {
    case 2: return mk_and(lhs, rhs);
    case 3: return mk_or(lhs, rhs);
    case 4: return mk_implies(lhs, rhs);
    default: return mk_iff(lhs, rhs);
    }
}

} // namespace detail

/// All prefixes reachable by permuting quantifiers inside each maximal
/// homogeneous block, the original included.
inline std::vector<std::vector<Quantifier>> block_permutations(const std::vector<Quantifier>& prefix) {
    return detail::block_permutations(prefix);
}

/// Runs the verdict-level property suites over the exhaustive model domain,
/// plus the determination monotonicity suites and the two documented
/// divergence checks. Results flagged `divergence` are expected and recorded;
/// `fail` results indicate a real defect.
inline std::vector<PropertyResult> check_properties(const Signature& sig, int size,
                                                    const std::vector<std::string>& catalog,
                                                    int cap = kDefaultUniverseCap) {
    if (size < 1 || size > cap)
        throw SemanticError("universe size " + std::to_string(size) +
                            " exceeds the configured cap " + std::to_string(cap));
    std::vector<PropertyResult> results;

    results.push_back(detail::sweep(
        "exclusivity", sig, size, catalog, false, [](const PrenexSentence& s, const Interpretation& m) {
            Verdict v = evaluate(s, m).verdict;
            Verdict vn = evaluate(prenex_negate(s), m).verdict;
            if (v == Verdict::True && vn == Verdict::True)
                return std::string("sentence and negation both TRUE");
            return std::string();
        }));

    results.push_back(detail::sweep(
        "mirror", sig, size, catalog, false, [](const PrenexSentence& s, const Interpretation& m) {
            Verdict v = evaluate(s, m).verdict;
            Verdict vn = evaluate(prenex_negate(s), m).verdict;
            if (vn != mirrored(v))
                return "verdict " + std::string(to_string(v)) + " but negation " + to_string(vn);
            return std::string();
        }));

    // The truth rules quantify universals over t-relevant instances only, so
    // a sentence can be TRUE while an instance that does not count is
    // classically false; see the gap-shaped-slice fixtures. Violations here
    // are recorded as a documented divergence from classical alignment.
    results.push_back(detail::sweep(
        "classical-soundness", sig, size, catalog, true,
        [](const PrenexSentence& s, const Interpretation& m) {
            Verdict v = evaluate(s, m).verdict;
            bool classical = eval_classical(formula_of(s), m);
            if (v == Verdict::True && !classical) return std::string("TRUE but classically false");
            if (v == Verdict::False && classical) return std::string("FALSE but classically true");
            return std::string();
        }));

    results.push_back(detail::sweep(
        "relevance-duality", sig, size, catalog, false,
        [](const PrenexSentence& s, const Interpretation& m) {
            if (is_t_relevant(s, m) != is_t_relevant(prenex_negate(s), m))
                return std::string("t-relevance differs from the negation's");
            return std::string();
        }));

    results.push_back(detail::sweep(
        "block-commutation", sig, size, catalog, false,
        [](const PrenexSentence& s, const Interpretation& m) {
            Verdict v = evaluate(s, m).verdict;
            for (const auto& prefix : detail::block_permutations(s.prefix)) {
                PrenexSentence permuted{prefix, s.matrix};
                Verdict pv = evaluate(permuted, m).verdict;
                if (pv != v)
                    return print_sentence(permuted) + " gives " + to_string(pv) + " not " +
                           to_string(v);
            }
            return std::string();
        }));

    {
        PropertyResult r;
        r.name = "prop-monotonicity";
        r.domain = "random quantifier-free formulas, up to 4 atoms";
        std::mt19937 rng(20140905);
        for (int round = 0; round < 80 && r.violations == 0; ++round) {
            FormulaPtr f = detail::random_prop_formula(rng, 4);
            std::vector<FormulaPtr> atoms = atoms_of(f);
            if (atoms.size() > 4) continue;
            std::vector<std::string> names;
            for (const auto& a : atoms) names.push_back(print_formula(a));
            StuckMap stuck;
            std::uniform_int_distribution<int> pick(0, 2);
            for (const auto& n : names) {
                int v = pick(rng);
                if (v < 2) stuck[n] = v == 1;
            }
            const std::size_t k = names.size();
            for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
                std::set<std::string> members;
                for (std::size_t i = 0; i < k; ++i)
                    if ((bits >> i) & 1) members.insert(names[i]);
                if (!is_truth_determining(f, members, stuck)) continue;
                for (std::size_t i = 0; i < k; ++i) {
                    if ((bits >> i) & 1) continue;
                    std::set<std::string> larger = members;
                    larger.insert(names[i]);
                    if (!is_truth_determining(f, larger, stuck)) {
                        ++r.violations;
                        r.counterexample = print_formula(f) + " adding " + names[i];
                        break;
                    }
                }
                if (r.violations) break;
            }
        }
        if (r.violations) r.status = PropertyStatus::Fail;
        results.push_back(std::move(r));
    }

    {
        PropertyResult r;
        r.name = "mono-monotonicity";
        r.domain = "F/1,G/1 sizes 1-2, fixed matrix family";
        const std::vector<std::string> family = {
            "(x)(F(x) -> ~G(x))", "(x)(F(x) & G(x))", "(x)(F(x) | G(x))",
            "(x)~(F(x) & G(x))",  "(x)(F(x) <-> G(x))", "(x)(F(x) & ~F(x))"};
        Signature fg = parse_signature("F/1,G/1");
        for (int n = 1; n <= 2 && r.violations == 0; ++n) {
            ModelEnumerator models(fg, n);
            for (std::uint64_t i = 0; i < models.count() && r.violations == 0; ++i) {
                Interpretation m = models.at(i);
                for (const auto& text : family) {
                    PrenexSentence s = detail::prenex(text);
                    std::vector<FormulaPtr> atoms = atoms_of(s.matrix);
                    std::vector<std::string> names;
                    for (const auto& a : atoms) names.push_back(print_formula(a));
                    const std::size_t k = names.size();
                    for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
                        std::set<std::string> members;
                        for (std::size_t j = 0; j < k; ++j)
                            if ((bits >> j) & 1) members.insert(names[j]);
                        if (!is_td_under_interpretation(s.prefix[0].kind, s.matrix,
                                                        s.prefix[0].var, members, m))
                            continue;
                        for (std::size_t j = 0; j < k; ++j) {
                            if ((bits >> j) & 1) continue;
                            std::set<std::string> larger = members;
                            larger.insert(names[j]);
                            if (!is_td_under_interpretation(s.prefix[0].kind, s.matrix,
                                                            s.prefix[0].var, larger, m)) {
                                ++r.violations;
                                r.counterexample = text + " size=" + std::to_string(n) +
                                                   " model=" + std::to_string(i);
                                break;
                            }
                        }
                        if (r.violations) break;
                    }
                    if (r.violations) break;
                }
            }
        }
        if (r.violations) r.status = PropertyStatus::Fail;
        results.push_back(std::move(r));
    }

    // Documented divergence: the claim that a satisfied existential sentence
    // is always t-relevant fails once a view is universal, e.g. F universal
    // makes {F} determining for (Ex)(F(x) | G(x)).
    {
        PropertyResult r;
        r.name = "exists-satisfied-implies-relevant";
        r.domain = "F/1,G/1 sizes 1-2, single-existential catalog";
        Signature fg = parse_signature("F/1,G/1");
        for (int n = 1; n <= 2; ++n) {
            ModelEnumerator models(fg, n);
            for (std::uint64_t i = 0; i < models.count(); ++i) {
                Interpretation m = models.at(i);
                for (const auto& text : builtin_catalog(fg)) {
                    PrenexSentence s = detail::prenex(text);
                    if (s.prefix.size() != 1 || s.prefix[0].kind != QuantKind::Existential)
                        continue;
                    bool satisfied = eval_classical(formula_of(s), m);
                    bool relevant = is_t_relevant_1var(s.prefix[0].kind, s.matrix,
                                                       s.prefix[0].var, m);
                    if (satisfied && !relevant) {
                        ++r.violations;
                        if (r.counterexample.empty())
                            r.counterexample = text + " size=" + std::to_string(n) +
                                               " model=" + std::to_string(i) +
                                               ": satisfied but not t-relevant";
                    }
                }
            }
        }
        if (r.violations) r.status = PropertyStatus::Divergence;
        results.push_back(std::move(r));
    }

    // Documented divergence: for one existential quantifier the
    // satisfied-and-t-relevant rule and the satisfied-only rule disagree.
    {
        PropertyResult r;
        r.name = "monadic-rule-agreement";
        r.domain = "F/1,G/1 sizes 1-2, single-quantifier catalog";
        Signature fg = parse_signature("F/1,G/1");
        for (int n = 1; n <= 2; ++n) {
            ModelEnumerator models(fg, n);
            for (std::uint64_t i = 0; i < models.count(); ++i) {
                Interpretation m = models.at(i);
                for (const auto& text : builtin_catalog(fg)) {
                    PrenexSentence s = detail::prenex(text);
                    if (s.prefix.size() != 1) continue;
                    Verdict v2 = evaluate_monadic(s, m);
                    Verdict v3 = evaluate(s, m).verdict;
                    if (v2 != v3) {
                        ++r.violations;
                        if (r.counterexample.empty())
                            r.counterexample = text + " size=" + std::to_string(n) + " model=" +
                                               std::to_string(i) + ": single-rule=" +
                                               to_string(v2) + " prefix-rule=" + to_string(v3);
                    }
                }
            }
        }
        if (r.violations) r.status = PropertyStatus::Divergence;
        results.push_back(std::move(r));
    }

    return results;
}

inline std::string render_properties(const std::vector<PropertyResult>& results) {
    std::ostringstream out;
    out << "property\tdomain\tresult\tcounterexample\n";
    for (const PropertyResult& r : results) {
        out << r.name << '\t' << r.domain << '\t' << to_string(r.status) << '\t';
        if (r.violations)
            out << r.violations << " violation(s); first: " << r.counterexample;
        else
            out << '-';
        out << '\n';
    }
    return out.str();
}

} // namespace trel
