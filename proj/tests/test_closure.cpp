#include "doctest.h"

#include "dlite/closure.hpp"
#include "dlite/syntax.hpp"
#include "testutil.hpp"

#include <random>

using namespace dlite;

TEST_CASE("role order closes under inversion and reflexivity") {
    auto kb = parse_kb("[tbox]\nR1 <= R2\nA <= exists R1\n[abox]\n");
    auto ord = role_order(kb);
    CHECK(ord.leq(Role{"R1", false}, Role{"R2", false}));
    CHECK(ord.leq(Role{"R1", true}, Role{"R2", true}));
    CHECK(ord.leq(Role{"R1", false}, Role{"R1", false}));
    CHECK(!ord.leq(Role{"R2", false}, Role{"R1", false}));
    CHECK(ord.has_proper_sub(Role{"R2", false}));
}

TEST_CASE("P- below P collapses the two directions into one class") {
    auto kb = parse_kb("[tbox]\nP- <= P\nA <= exists P\n[abox]\n");
    auto ord = role_order(kb);
    CHECK(ord.equiv(Role{"P", false}, Role{"P", true}));
    CHECK(ord.representative(Role{"P", true}) == Role{"P", false});
}

TEST_CASE("empty TBox gives the identity order") {
    auto kb = parse_kb("[tbox]\nA <= exists P\n[abox]\n");
    auto ord = role_order(kb);
    CHECK(ord.leq(Role{"P", false}, Role{"P", false}));
    CHECK(!ord.leq(Role{"P", false}, Role{"P", true}));
}

TEST_CASE("extended abox closure") {
    auto kb = parse_kb("[tbox]\nR1 <= R2\nA <= exists R1\n[abox]\nR1(a,b)\n");
    auto cl = extended_abox_closure(kb.tbox, kb.abox);
    CHECK(cl.count(RoleAtom{"R1", "a", "b"}));
    CHECK(cl.count(RoleAtom{"R2", "a", "b"}));
    CHECK(pairs_of(cl, Role{"R1", true}).count({"b", "a"}));
    CHECK(pairs_of(cl, Role{"R2", true}).count({"b", "a"}));

    auto kb2 = parse_kb("[tbox]\nA <= exists P\n[abox]\nP(a,b)\n");
    auto cl2 = extended_abox_closure(kb2.tbox, kb2.abox);
    CHECK(cl2.size() == 1);

    auto kb3 = parse_kb("[tbox]\nP- <= S\nA <= exists P\n[abox]\nP(a,b)\n");
    auto cl3 = extended_abox_closure(kb3.tbox, kb3.abox);
    CHECK(cl3.count(RoleAtom{"S", "b", "a"}));
}

TEST_CASE("Cl^e is a closure operator on random inputs") {
    std::mt19937 rng(11);
    for (int round = 0; round < 100; ++round) {
        testutil::GenOptions o;
        o.role_inclusions = true;
        o.roles = 3;
        o.objects = 4;
        testutil::Gen gen(1000 + round, o);
        auto kb = gen.kb();
        auto ord = role_order(kb);
        auto base = abox_role_atoms(kb.abox);
        auto once = extended_abox_closure(ord, base);
        auto twice = extended_abox_closure(ord, once);
        // Idempotent and extensive.
        CHECK(once == twice);
        for (const auto& at : base) CHECK(once.count(at) > 0);
        // Monotone: closing a subset stays inside.
        RoleAtomSet sub;
        for (const auto& at : base)
            if (rng() % 2) sub.insert(at);
        auto closed_sub = extended_abox_closure(ord, sub);
        for (const auto& at : closed_sub) CHECK(once.count(at) > 0);
    }
}

TEST_CASE("transitive closure of ABox atoms") {
    auto kb = parse_kb("[tbox]\ntra(P)\nA <= exists P\n[abox]\nP(a,b)\nP(b,c)\n");
    auto tr = transitive_abox_closure(kb.tbox, abox_role_atoms(kb.abox));
    CHECK(tr.count(RoleAtom{"P", "a", "c"}));

    auto kb2 = parse_kb("[tbox]\nA <= exists P\n[abox]\nP(a,b)\nP(b,c)\n");
    auto tr2 = transitive_abox_closure(kb2.tbox, abox_role_atoms(kb2.abox));
    CHECK(tr2 == abox_role_atoms(kb2.abox));
}

TEST_CASE("transitive closure of a 4-cycle has all sixteen pairs") {
    auto kb = parse_kb("[tbox]\ntra(P)\n[abox]\nP(a,b)\nP(b,c)\nP(c,d)\nP(d,a)\n");
    auto tr = transitive_abox_closure(kb.tbox, abox_role_atoms(kb.abox));
    int count = 0;
    for (const auto& at : tr)
        if (at.role == "P") count++;
    CHECK(count == 16);
    CHECK(tr.count(RoleAtom{"P", "a", "a"}));
}

TEST_CASE("Tra agrees with an independent fixed-point matrix closure") {
    std::mt19937 rng(21);
    for (int round = 0; round < 60; ++round) {
        int n = 2 + rng() % 6;
        KnowledgeBase kb;
        kb.tbox.role_constraints.push_back({RoleConstraint::Kind::Tra, {}, {}, "P", {}});
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng() % 4 == 0) {
                    adj[i][j] = true;
                    kb.abox.role_assertions.push_back({true, "P", "v" + std::to_string(i),
                                                       "v" + std::to_string(j), {}});
                }
        // Warshall on the boolean matrix.
        auto reach = adj;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
        auto tr = transitive_abox_closure(kb.tbox, abox_role_atoms(kb.abox));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool in_tr = tr.count(RoleAtom{"P", "v" + std::to_string(i),
                                               "v" + std::to_string(j)}) > 0;
                CHECK(in_tr == reach[i][j]);
            }
    }
}

TEST_CASE("number sets satisfy the padding condition") {
    auto kb = parse_kb("[tbox]\nR <= S\nA <= >=3 R\n[abox]\n");
    auto ord = role_order(kb);
    auto ns = number_sets(kb.tbox, ord);
    CHECK(ns.of(Role{"R", false}) == std::set<qint>{1, 3});
    CHECK(ns.of(Role{"S", false}) == std::set<qint>{1, 3});
    CHECK(ns.of(Role{"S", true}) == std::set<qint>{1});

    for (unsigned seed = 0; seed < 60; ++seed) {
        testutil::GenOptions o;
        o.role_inclusions = true;
        o.max_q = 4;
        o.roles = 3;
        testutil::Gen gen(seed, o);
        auto k = gen.kb();
        auto o2 = role_order(k);
        auto n2 = number_sets(k.tbox, o2);
        for (const auto& r : o2.roles)
            for (const auto& s : o2.roles)
                if (o2.leq(r, s))
                    for (qint q : n2.of(r)) CHECK(n2.of(s).count(q) > 0);
    }
}

TEST_CASE("ext adds the adjacent-number and monotonicity inclusions") {
    auto kb = parse_kb("[tbox]\nR <= S\nA <= >=3 R\n[abox]\n");
    auto ext = ext_tbox(kb.tbox);
    std::set<std::string> axioms;
    for (const auto& ci : ext.concept_inclusions) axioms.insert(ci.str());
    CHECK(axioms.count(">=3 R <= exists R"));
    CHECK(axioms.count(">=3 S <= exists S"));
    CHECK(axioms.count("exists R <= exists S"));
    CHECK(axioms.count(">=3 R <= >=3 S"));
    CHECK(axioms.count("exists R- <= exists S-"));
    CHECK(axioms.count(">=3 R- <= >=3 S-"));

    auto empty = parse_kb("[tbox]\n[abox]\n");
    auto ext2 = ext_tbox(empty.tbox);
    CHECK(ext2.concept_inclusions.empty());
}

TEST_CASE("ext on the worked example adds the delta chain") {
    auto kb = parse_kb(
        "[tbox]\nA <= exists P-\nexists P- <= A\nA <= >=2 P\ntop <= not >=2 P-\n"
        "exists P <= A\n[abox]\nA(a)\nP(a,ap)\n");
    auto ext = ext_tbox(kb.tbox);
    std::set<std::string> axioms;
    for (const auto& ci : ext.concept_inclusions) axioms.insert(ci.str());
    CHECK(axioms.count(">=2 P <= exists P"));
    CHECK(axioms.count(">=2 P- <= exists P-"));
}
