#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gen.hpp"
#include "oracle.hpp"
#include "trel/prop.hpp"

using namespace trel;

TEST_CASE("truth_table enumerates rows lexicographically", "[prop]") {
    // A contradictory antecedent makes the implication constant.
    TruthTable t = truth_table(parse_formula("(J & ~J) -> S"));
    REQUIRE(t.names == std::vector<std::string>{"J", "S"});
    REQUIRE(t.values == std::vector<bool>{true, true, true, true});

    TruthTable u = truth_table(parse_formula("J -> S"));
    REQUIRE(u.values == std::vector<bool>{true, true, false, true});
    REQUIRE(u.bit(2, 0) == true);  // row (1,0): first atom high bit
    REQUIRE(u.bit(2, 1) == false);

    TruthTable v = truth_table(parse_formula("P & Q"));
    int trues = 0;
    for (bool b : v.values) trues += b;
    REQUIRE(trues == 1);
    REQUIRE(v.values[3] == true);
}

TEST_CASE("is_truth_determining on the stuck-input circuit", "[prop]") {
    FormulaPtr f = parse_formula("~P | Q");
    REQUIRE(is_truth_determining(parse_formula("P | ~P | Q"), {"P"}));
    REQUIRE(is_truth_determining(f, {"P"}, {{"P", false}}));
    REQUIRE_FALSE(is_truth_determining(f, {"P"}, {{"P", true}}));
    REQUIRE_FALSE(is_truth_determining(f, {"Q"}, {{"P", true}}));
}

TEST_CASE("truth_determining_sets returns the minimal family", "[prop]") {
    REQUIRE(truth_determining_sets(parse_formula("P -> (Q -> P)")) ==
            std::vector<std::vector<std::string>>{{}});
    REQUIRE(truth_determining_sets(parse_formula("P & Q")) ==
            std::vector<std::vector<std::string>>{{"P", "Q"}});
    REQUIRE(truth_determining_sets(parse_formula("~P | Q"), {{"P", false}}) ==
            std::vector<std::vector<std::string>>{{"P"}});
}

TEST_CASE("t_redundant_atoms", "[prop]") {
    REQUIRE(t_redundant_atoms(parse_formula("P -> (Q -> P)")) ==
            std::vector<std::string>{"P", "Q"});
    REQUIRE(t_redundant_atoms(parse_formula("P & Q")).empty());
    REQUIRE(t_redundant_atoms(parse_formula("~P | Q"), {{"P", false}}) ==
            std::vector<std::string>{"Q"});
}

TEST_CASE("is_t_relevant_prop", "[prop]") {
    REQUIRE(is_t_relevant_prop(parse_formula("P & Q")));
    REQUIRE_FALSE(is_t_relevant_prop(parse_formula("P -> (Q -> P)")));
    REQUIRE_FALSE(is_t_relevant_prop(parse_formula("P | ~P | Q")));
}

TEST_CASE("single-atom formulas are t-relevant iff non-constant", "[prop]") {
    REQUIRE(is_t_relevant_prop(parse_formula("P")));
    REQUIRE(is_t_relevant_prop(parse_formula("~P")));
    REQUIRE_FALSE(is_t_relevant_prop(parse_formula("P | ~P")));
    REQUIRE_FALSE(is_t_relevant_prop(parse_formula("P & ~P")));
}

TEST_CASE("stuck keys must occur in the formula", "[prop]") {
    REQUIRE_THROWS_AS(is_truth_determining(parse_formula("P & Q"), {"P"}, {{"Z", false}}),
                      SemanticError);
    REQUIRE_THROWS_AS(is_truth_determining(parse_formula("P & Q"), {"Z"}, {}), SemanticError);
}

TEST_CASE("determination is monotone under set growth", "[prop]") {
    std::mt19937 rng(101);
    for (int round = 0; round < 120; ++round) {
        FormulaPtr f = gen::random_prop(rng, 4);
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
                INFO(print_formula(f));
                REQUIRE(is_truth_determining(f, larger, stuck));
            }
        }
    }
}

TEST_CASE("the full atom set always determines without stuck inputs", "[prop]") {
    std::mt19937 rng(103);
    for (int round = 0; round < 200; ++round) {
        FormulaPtr f = gen::random_prop(rng, 4);
        std::vector<std::string> names;
        for (const auto& a : atoms_of(f)) names.push_back(print_formula(a));
        REQUIRE(is_truth_determining(f, {names.begin(), names.end()}, {}));
    }
}

TEST_CASE("the empty set determines exactly the constant formulas", "[prop]") {
    std::mt19937 rng(107);
    for (int round = 0; round < 200; ++round) {
        FormulaPtr f = gen::random_prop(rng, 4);
        TruthTable t = truth_table(f);
        bool constant = true;
        for (bool v : t.values)
            if (v != static_cast<bool>(t.values[0])) constant = false;
        REQUIRE(is_truth_determining(f, {}, {}) == constant);
    }
}

TEST_CASE("determination and relevance agree with the subset-enumeration oracle", "[prop][oracle]") {
    std::mt19937 rng(109);
    for (int round = 0; round < 80; ++round) {
        FormulaPtr f = gen::random_prop(rng, 4);
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
            INFO(print_formula(f));
            REQUIRE(is_truth_determining(f, members, stuck) ==
                    oracle::prop_determining(f, members, stuck));
        }
        REQUIRE(is_t_relevant_prop(f, stuck) == oracle::prop_relevant(f, stuck));
        std::vector<std::string> redundant_list = t_redundant_atoms(f, stuck);
        std::set<std::string> redundant(redundant_list.begin(), redundant_list.end());
        REQUIRE(redundant == oracle::prop_redundant(f, stuck));
    }
}

TEST_CASE("atom count guard", "[prop]") {
    std::string text = "P0";
    for (int i = 1; i <= 21; ++i) text += " & P" + std::to_string(i);
    REQUIRE_THROWS_AS(truth_table(parse_formula(text)), SemanticError);
}
