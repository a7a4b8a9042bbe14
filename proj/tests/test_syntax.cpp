#include "doctest.h"

#include "dlite/model.hpp"
#include "dlite/syntax.hpp"
#include "testutil.hpp"

using namespace dlite;

TEST_CASE("parse a small KB") {
    auto kb = parse_kb("[tbox]\nA <= exists P-\n[abox]\nA(a)\nP(a,b)\n");
    REQUIRE(kb.tbox.concept_inclusions.size() == 1);
    CHECK(kb.tbox.concept_inclusions[0].str() == "A <= exists P-");
    REQUIRE(kb.abox.concept_assertions.size() == 1);
    REQUIRE(kb.abox.role_assertions.size() == 1);
    CHECK(kb.una);
}

TEST_CASE("parse the worked-example KB") {
    auto kb = parse_kb(
        "[tbox]\n"
        "A <= exists P-\n"
        "exists P- <= A\n"
        "A <= >=2 P\n"
        "top <= not >=2 P-\n"
        "exists P <= A\n"
        "[abox]\n"
        "A(a)\n"
        "P(a,ap)\n");
    CHECK(kb.tbox.concept_inclusions.size() == 5);
    CHECK(kb.abox.concept_assertions.size() + kb.abox.role_assertions.size() == 2);
}

TEST_CASE("una-conflict is a parse error") {
    CHECK_THROWS_AS(parse_kb("[tbox]\n[abox]\na = b\n[options]\nuna = true\n"), ParseError);
    CHECK_THROWS_AS(parse_kb("[tbox]\n[abox]\na = b\n"), ParseError);
    auto kb = parse_kb("[tbox]\n[abox]\na = b\n[options]\nuna = false\n");
    CHECK(!kb.una);
    CHECK(kb.abox.equalities.size() == 1);
}

TEST_CASE("role inclusions between bare names resolve by usage") {
    auto kb = parse_kb("[tbox]\nR1 <= R2\nA <= exists R1\n[abox]\n");
    CHECK(kb.tbox.role_inclusions.size() == 1);
    CHECK(kb.tbox.concept_inclusions.size() == 1);

    // No role evidence at all: a bare-name line is a concept inclusion.
    auto kb2 = parse_kb("[tbox]\nA <= B\n[abox]\n");
    CHECK(kb2.tbox.role_inclusions.empty());
    CHECK(kb2.tbox.concept_inclusions.size() == 1);

    // A dash forces the role reading.
    auto kb3 = parse_kb("[tbox]\nP- <= S\n[abox]\n");
    CHECK(kb3.tbox.role_inclusions.size() == 1);
}

TEST_CASE("all six role constraints parse and print") {
    std::string text =
        "[tbox]\n"
        "dis(P,S-)\n"
        "sym(P)\n"
        "asym(S)\n"
        "ref(P)\n"
        "irr(S)\n"
        "tra(P)\n"
        "[abox]\n";
    auto kb = parse_kb(text);
    CHECK(kb.tbox.role_constraints.size() == 6);
    auto kb2 = parse_kb(print_kb(kb));
    CHECK(kb2.tbox.role_constraints.size() == 6);
    CHECK(print_kb(kb2) == print_kb(kb));
}

TEST_CASE("qualified restrictions parse") {
    auto kb = parse_kb("[tbox]\nA <= >=2 R . (B & exists S)\n[abox]\n");
    REQUIRE(kb.tbox.concept_inclusions.size() == 1);
    const auto& rhs = kb.tbox.concept_inclusions[0].rhs;
    CHECK(rhs->kind() == Concept::Kind::AtLeastQ);
    CHECK(rhs->q() == 2);
}

TEST_CASE("parse errors carry spans inside the input") {
    std::string text = "[tbox]\nA <= <=\n[abox]\n";
    try {
        parse_kb(text);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.span().line_begin >= 1);
        CHECK(e.span().line_begin <= 3);
    }
}

TEST_CASE("query parsing") {
    auto q = parse_query("q(x) := exists y . P(x,y) & A(y)");
    CHECK(q.distinguished == std::vector<std::string>{"x"});
    CHECK(!q.ground());
    auto p = prenex(q);
    CHECK(p.bound == std::vector<std::string>{"y"});

    auto g = parse_query("q() := exists y . A(y)");
    CHECK(g.ground());

    CHECK_THROWS_AS(parse_query("q(x) := not A(x)"), ParseError);
    CHECK_THROWS_AS(parse_query("q(x) := P(x,y)"), ParseError);  // y free, not distinguished
}

TEST_CASE("query round-trip") {
    for (const char* text : {
             "q(x) := exists y . P(x,y) & A(y)",
             "q() := exists y . A(y)",
             "q(x,z) := A(x) & (B(z) | exists y . P(z,y))",
         }) {
        auto q = parse_query(text);
        auto q2 = parse_query(print_query(q));
        CHECK(print_query(q2) == print_query(q));
    }
}

TEST_CASE("empty KB round-trip") {
    auto kb = parse_kb("[tbox]\n[abox]\n");
    CHECK(print_kb(kb) == "[tbox]\n[abox]\n");
}

TEST_CASE("round-trip identity on random KBs") {
    int checked = 0;
    for (unsigned seed = 0; seed < 1000; ++seed) {
        testutil::GenOptions o;
        o.shape = static_cast<Shape>(seed % 4);
        o.max_q = 3;
        o.role_inclusions = seed % 2 == 0;
        o.role_constraints = seed % 3 == 0;
        o.una = seed % 5 != 0;
        o.equalities = !o.una;
        o.inequalities = !o.una;
        testutil::Gen gen(seed, o);
        KnowledgeBase kb = gen.kb();
        std::string once = print_kb(kb);
        KnowledgeBase kb2 = parse_kb(once);
        std::string twice = print_kb(kb2);
        CHECK(once == twice);
        // Structural identity of the generated and reparsed TBoxes.
        REQUIRE(kb2.tbox.concept_inclusions.size() == kb.tbox.concept_inclusions.size());
        for (size_t i = 0; i < kb.tbox.concept_inclusions.size(); ++i) {
            CHECK(equal(kb.tbox.concept_inclusions[i].lhs, kb2.tbox.concept_inclusions[i].lhs));
            CHECK(equal(kb.tbox.concept_inclusions[i].rhs, kb2.tbox.concept_inclusions[i].rhs));
        }
        checked++;
    }
    CHECK(checked == 1000);
}

TEST_CASE("interpretation round-trip") {
    Interpretation i;
    i.domain = {"d", "e"};
    i.concept_ext["A"] = {"d"};
    i.concept_ext["B"] = {};
    i.role_ext["P"] = {{"d", "e"}, {"e", "e"}};
    i.object_map["a"] = "d";
    auto i2 = parse_interpretation(print_interpretation(i, {"note"}));
    CHECK(i2.domain == i.domain);
    CHECK(i2.concept_ext == i.concept_ext);
    CHECK(i2.role_ext == i.role_ext);
    CHECK(i2.object_map == i.object_map);
}
