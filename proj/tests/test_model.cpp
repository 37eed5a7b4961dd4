#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "trel/model.hpp"

using namespace trel;

static const char* kChildren =
    "universe: a b c\n"
    "pred J/1:\n"
    "pred S/1: a b\n";

TEST_CASE("parse_model reads universes and closed-world extensions", "[model]") {
    Interpretation m = parse_model(kChildren);
    REQUIRE(m.universe == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(m.find("J")->tuples.empty());
    REQUIRE(m.find("S")->tuples.size() == 2);

    Interpretation r = parse_model("universe: a b c\npred F/2: (a,b) (b,c)\n");
    REQUIRE(r.find("F")->tuples ==
            std::set<std::vector<std::string>>{{"a", "b"}, {"b", "c"}});
}

TEST_CASE("parse_model rejects bad input", "[model]") {
    REQUIRE_THROWS_AS(parse_model("universe:\n"), SemanticError);
    REQUIRE_THROWS_AS(parse_model(""), SemanticError);
    REQUIRE_THROWS_AS(parse_model("universe: a\npred F/1: b\n"), SemanticError);
    REQUIRE_THROWS_AS(parse_model("universe: a b\npred F/2: a\n"), SemanticError);
    REQUIRE_THROWS_AS(parse_model("universe: a\npred F/1:\npred F/1:\n"), SemanticError);
    REQUIRE_THROWS_AS(parse_model("universe: a a\n"), SemanticError);
    REQUIRE_THROWS_AS(parse_model("universe: a\nnonsense\n"), ParseError);
    REQUIRE_THROWS_AS(parse_model("pred F/1: a\nuniverse: a\n"), ParseError);
}

TEST_CASE("model comments are ignored", "[model]") {
    Interpretation m = parse_model("# header\nuniverse: a b # trailing\npred F/1: a\n");
    REQUIRE(m.universe.size() == 2);
    REQUIRE(m.holds("F", {"a"}));
}

TEST_CASE("predicate_truth looks up ground atoms", "[model]") {
    Interpretation m = parse_model(kChildren);
    REQUIRE(predicate_truth(m, mk_atom("S", {Term::constant("a")})));
    REQUIRE_FALSE(predicate_truth(m, mk_atom("J", {Term::constant("a")})));
    REQUIRE_FALSE(predicate_truth(m, mk_atom("S", {Term::constant("c")})));
    REQUIRE_THROWS_AS(predicate_truth(m, mk_atom("K", {Term::constant("a")})), SemanticError);
    REQUIRE_THROWS_AS(predicate_truth(m, mk_atom("S", {Term::variable("x")})), SemanticError);
}

TEST_CASE("zero-ary predicates", "[model]") {
    Interpretation m = parse_model("universe: a\npred P/0: ()\npred Q/0:\n");
    REQUIRE(predicate_truth(m, mk_atom("P")));
    REQUIRE_FALSE(predicate_truth(m, mk_atom("Q")));
}

TEST_CASE("format_model round-trips", "[model]") {
    for (const char* text :
         {kChildren, "universe: a b c\npred F/2: (a,b) (b,c)\npred P/0: ()\n"}) {
        Interpretation m = parse_model(text);
        Interpretation back = parse_model(format_model(m));
        REQUIRE(format_model(back) == format_model(m));
        REQUIRE(back.universe == m.universe);
        REQUIRE(back.predicates.size() == m.predicates.size());
    }
}

TEST_CASE("enumerate_models yields the predicted counts", "[model]") {
    REQUIRE(ModelEnumerator(parse_signature("F/1"), 1).count() == 2);
    REQUIRE(ModelEnumerator(parse_signature("F/1,G/1"), 2).count() == 16);
    REQUIRE(ModelEnumerator(parse_signature("F/2,G/2"), 2).count() == 256);
}

TEST_CASE("enumerate_models yields no duplicates", "[model]") {
    for (const char* sig_text : {"F/1,G/1", "F/2,G/2"}) {
        for (int size = 1; size <= 2; ++size) {
            ModelEnumerator models(parse_signature(sig_text), size);
            std::set<std::string> seen;
            for (std::uint64_t i = 0; i < models.count(); ++i)
                seen.insert(format_model(models.at(i)));
            REQUIRE(seen.size() == models.count());
        }
    }
}

TEST_CASE("enumeration uses the canonical universe", "[model]") {
    ModelEnumerator models(parse_signature("F/1"), 3);
    Interpretation m = models.at(0);
    REQUIRE(m.universe == std::vector<std::string>{"e1", "e2", "e3"});
    REQUIRE(m.find("F")->tuples.empty());
    Interpretation last = models.at(models.count() - 1);
    REQUIRE(last.find("F")->tuples.size() == 3);
}

TEST_CASE("enumeration guards against blowup", "[model]") {
    REQUIRE_THROWS_AS(ModelEnumerator(parse_signature("F/3,G/3"), 4), SemanticError);
    REQUIRE_THROWS_AS(ModelEnumerator(parse_signature("F/1"), 0), SemanticError);
}
