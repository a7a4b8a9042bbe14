#include "doctest.h"

#include "dlite/chase.hpp"
#include "dlite/gadgets.hpp"
#include "dlite/sat.hpp"
#include "dlite/syntax.hpp"
#include "testutil.hpp"

using namespace dlite;

TEST_CASE("restricted chase reuses existing successors") {
    auto kb = parse_kb("[tbox]\nA <= exists P\n>=2 P <= bot\n[abox]\nA(a)\nP(a,b)\n");
    auto r = chase(kb);
    CHECK(r.verdict == ChaseVerdict::Sat);
    CHECK(r.model.domain.size() == 2);  // no fresh element needed
    CHECK(check_model(r.model, kb).satisfied);
}

TEST_CASE("chase merges a null into a named object under functionality") {
    auto kb = parse_kb(
        "[tbox]\nPt <= P\n>=2 P <= bot\nA <= exists Pt\nexists Pt- <= B\n"
        "[abox]\nA(a)\nP(a,b)\n");
    auto r = chase(kb);
    REQUIRE(r.verdict == ChaseVerdict::Sat);
    CHECK(r.model.concept_ext.at("B").count("b") == 1);
    CHECK(check_model(r.model, kb).satisfied);
}

TEST_CASE("chase detects contradictions") {
    auto kb = parse_kb("[tbox]\nA <= B\n[abox]\nA(a)\nnot B(a)\n");
    CHECK(chase(kb).verdict == ChaseVerdict::Unsat);

    auto kb2 = parse_kb("[tbox]\nA & B <= bot\n[abox]\nA(a)\nB(a)\n");
    CHECK(chase(kb2).verdict == ChaseVerdict::Unsat);

    // Functionality forcing two named objects together is a UNA clash.
    auto kb3 = parse_kb("[tbox]\n>=2 P <= bot\n[abox]\nP(a,b)\nP(a,c)\n");
    CHECK(chase(kb3).verdict == ChaseVerdict::Unsat);
}

TEST_CASE("chase respects the bound") {
    auto kb = parse_kb("[tbox]\nA <= exists P\nexists P- <= A\n[abox]\nA(a)\n");
    auto r = chase(kb, 3);
    CHECK(r.verdict == ChaseVerdict::BoundExceeded);
}

TEST_CASE("chase saturates on conjunctive-lhs Horn input") {
    auto kb = parse_kb(
        "[tbox]\nA & B <= C\nC <= exists P\nexists P- <= D\n[abox]\nA(a)\nB(a)\n");
    auto r = chase(kb);
    REQUIRE(r.verdict == ChaseVerdict::Sat);
    CHECK(r.model.concept_ext.at("C").count("a") == 1);
    CHECK(check_model(r.model, kb).satisfied);
}

TEST_CASE("chase refuses what it cannot soundly do") {
    auto kb = parse_kb("[tbox]\nnot A <= B\n[abox]\nA(a)\n");
    CHECK(chase(kb).verdict == ChaseVerdict::Unsupported);

    auto kb2 = parse_kb("[tbox]\nA <= >=2 P\n>=2 P <= B\n[abox]\nA(a)\n");
    CHECK(chase(kb2).verdict == ChaseVerdict::Unsupported);

    auto kb3 = parse_kb("[tbox]\nsym(P)\n[abox]\nA(a)\n");
    CHECK(chase(kb3).verdict == ChaseVerdict::Unsupported);
}

TEST_CASE("chase entailment on the unit-clause gadget") {
    HornCnf phi;
    phi.nvars = 1;
    phi.units = {1};
    auto g = gen_horncnf_hf(phi);
    auto ans = chase_entails(g.kb, ConceptAssertion{true, "A", g.var_targets[0], {}});
    CHECK(ans == ChaseAnswer::Yes);
}

TEST_CASE("chase entailment derives the head of a fired implication") {
    // a1, a2, (a1 & a2 -> a3): the gadget must entail A at the a3 target.
    HornCnf phi;
    phi.nvars = 3;
    phi.units = {1, 2};
    phi.implications = {{1, 2, 3}};
    auto g = gen_horncnf_hf(phi);
    CHECK(chase_entails(g.kb, ConceptAssertion{true, "A", g.var_targets[2], {}}) ==
          ChaseAnswer::Yes);
    REQUIRE(horn_entails(phi, 3));
}

TEST_CASE("chase agrees with solve on admissible Horn inputs") {
    int compared = 0;
    for (unsigned seed = 0; seed < 150; ++seed) {
        testutil::GenOptions o;
        o.shape = Shape::Horn;
        o.max_q = 2;
        o.concepts = 3;
        o.roles = 2;
        o.objects = 4;
        o.role_inclusions = seed % 2 == 0;
        testutil::Gen gen(seed, o);
        auto kb = gen.admissible_kb();
        auto r = chase(kb);
        if (r.verdict == ChaseVerdict::Unsupported || r.verdict == ChaseVerdict::BoundExceeded)
            continue;
        auto s = solve(kb);
        if (s.verdict != Verdict::Sat && s.verdict != Verdict::Unsat) continue;
        CHECK((r.verdict == ChaseVerdict::Sat) == (s.verdict == Verdict::Sat));
        if (r.verdict == ChaseVerdict::Sat) CHECK(check_model(r.model, kb).satisfied);
        compared++;
    }
    CHECK(compared > 80);
}

TEST_CASE("chase soundness against bounded enumeration") {
    for (unsigned seed = 200; seed < 260; ++seed) {
        testutil::GenOptions o;
        o.shape = Shape::Horn;
        o.max_q = 2;
        o.concepts = 3;
        o.roles = 2;
        o.objects = 3;
        testutil::Gen gen(seed, o);
        auto kb = gen.admissible_kb();
        auto r = chase(kb);
        if (r.verdict != ChaseVerdict::Unsat) continue;
        // Unsat must mean no bounded model either.
        CHECK(!testutil::bounded_model(kb, 5).has_value());
    }
}
