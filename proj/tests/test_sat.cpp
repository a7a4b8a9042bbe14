#include "doctest.h"

#include "dlite/fol.hpp"
#include "dlite/normalize.hpp"
#include "dlite/sat.hpp"
#include "dlite/syntax.hpp"
#include "testutil.hpp"

#include <random>

using namespace dlite;

namespace {

ClauseSet make_clauses(const std::vector<std::vector<int>>& clauses, int atoms) {
    ClauseSet cs;
    for (int i = 0; i < atoms; ++i) cs.intern("x" + std::to_string(i + 1));
    for (const auto& cl : clauses) cs.add_clause(cl);
    cs.compute_shape_hint();
    return cs;
}

} // namespace

TEST_CASE("horn_sat basics and least model") {
    auto cs = make_clauses({{1}, {-1}}, 1);
    CHECK(!horn_sat(cs).sat);

    auto cs2 = make_clauses({{1}, {-1, 2}}, 2);
    auto r = horn_sat(cs2);
    CHECK(r.sat);
    CHECK(r.true_atoms == std::set<int>{0, 1});

    auto cs3 = make_clauses({{-1, 2}, {-2, 3}}, 3);
    auto r3 = horn_sat(cs3);
    CHECK(r3.sat);
    CHECK(r3.true_atoms.empty());  // least model sets nothing

    CHECK_THROWS_AS(horn_sat(make_clauses({{1, 2}}, 2)), FragmentError);
}

TEST_CASE("two_sat basics") {
    auto forced = make_clauses({{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}, 2);
    CHECK(!two_sat(forced).sat);
    CHECK(two_sat(make_clauses({}, 0)).sat);
    CHECK(two_sat(make_clauses({{1, 2}, {-1, -2}}, 2)).sat);
    CHECK_THROWS_AS(two_sat(make_clauses({{1, 2, 3}}, 3)), FragmentError);
}

TEST_CASE("dpll basics") {
    CHECK(dpll(make_clauses({{1, 2}}, 2)).sat);
    CHECK(!dpll(make_clauses({{1}, {-1}}, 1)).sat);
    CHECK(!dpll(make_clauses({{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}, 2)).sat);
}

TEST_CASE("solvers agree pairwise on random clause sets") {
    std::mt19937 rng(5);
    for (int round = 0; round < 1000; ++round) {
        int atoms = 2 + rng() % 29;
        int clauses = 1 + rng() % 40;
        int mode = round % 3;  // 0: binary, 1: horn, 2: horn+binary
        std::vector<std::vector<int>> cls;
        for (int i = 0; i < clauses; ++i) {
            std::vector<int> cl;
            if (mode == 0 || (mode == 2 && rng() % 2)) {
                int len = 1 + rng() % 2;
                for (int j = 0; j < len; ++j) {
                    int v = 1 + static_cast<int>(rng() % atoms);
                    cl.push_back(rng() % 2 ? v : -v);
                }
                if (mode == 2) {
                    // keep it Horn as well: at most one positive
                    int pos = 0;
                    for (auto& l : cl)
                        if (l > 0 && ++pos > 1) l = -l;
                }
            } else {
                int len = 1 + rng() % 4;
                bool used_pos = rng() % 3 == 0;
                for (int j = 0; j < len; ++j) {
                    int v = 1 + static_cast<int>(rng() % atoms);
                    bool pos = !used_pos && rng() % 4 == 0;
                    if (pos) used_pos = true;
                    cl.push_back(pos ? v : -v);
                }
            }
            cls.push_back(cl);
        }
        auto cs = make_clauses(cls, atoms);
        bool d = dpll(cs).sat;
        if (cs.verify_shape(ClauseSet::ShapeHint::Horn)) CHECK(horn_sat(cs).sat == d);
        if (cs.verify_shape(ClauseSet::ShapeHint::Krom)) CHECK(two_sat(cs).sat == d);
    }
}

TEST_CASE("horn least model satisfies every grounded clause") {
    for (unsigned seed = 0; seed < 100; ++seed) {
        testutil::GenOptions o;
        o.shape = Shape::Horn;
        o.max_q = 2;
        o.role_inclusions = seed % 2 == 0;
        testutil::Gen gen(seed, o);
        auto kb = gen.admissible_kb();
        auto r = solve(kb);
        if (r.verdict != Verdict::Sat || !r.clauses) continue;
        if (!r.clauses->verify_shape(ClauseSet::ShapeHint::Horn)) continue;
        auto hr = horn_sat(*r.clauses);
        REQUIRE(hr.sat);
        for (const auto& cl : r.clauses->clauses) {
            bool holds = false;
            for (int l : cl) {
                bool v = hr.true_atoms.count(std::abs(l) - 1) > 0;
                if ((l > 0) == v) holds = true;
            }
            CHECK(holds);
        }
    }
}

TEST_CASE("solve on the worked example and simple contradictions") {
    auto kb = parse_kb(
        "[tbox]\nA <= exists P-\nexists P- <= A\nA <= >=2 P\ntop <= not >=2 P-\n"
        "exists P <= A\n[abox]\nA(a)\nP(a,ap)\n");
    CHECK(solve(kb).verdict == Verdict::Sat);

    auto kb2 = parse_kb("[tbox]\nA <= bot\n[abox]\nA(a)\n");
    CHECK(solve(kb2).verdict == Verdict::Unsat);
}

TEST_CASE("solve refuses the restricted-interaction pattern") {
    auto kb = parse_kb(
        "[tbox]\nS <= R\n>=2 R <= bot\nA <= exists S\n[abox]\nA(a)\n");
    auto r = solve(kb);
    CHECK(r.verdict == Verdict::FragmentUnsupported);

    auto kb2 = parse_kb(
        "[tbox]\nR1 <= R12\nR2 <= R12\n>=2 R12 <= bot\nA <= exists R1\n[abox]\nA(a)\n");
    CHECK(solve(kb2).verdict == Verdict::FragmentUnsupported);
}

TEST_CASE("solve handles a Bool shape via dpll") {
    auto kb = parse_kb("[tbox]\ntop <= A | B\nA <= bot\nB <= bot\n[abox]\nC(a)\n");
    auto r = solve(kb);
    CHECK(r.report.shape == Shape::Bool);
    CHECK(r.verdict == Verdict::Unsat);
}

TEST_CASE("solve is deterministic") {
    testutil::GenOptions o;
    o.shape = Shape::Bool;
    o.max_q = 2;
    o.role_inclusions = true;
    testutil::Gen gen(77, o);
    auto kb = gen.admissible_kb();
    auto r1 = solve(kb);
    auto r2 = solve(kb);
    CHECK(r1.verdict == r2.verdict);
    CHECK(r1.model_atoms == r2.model_atoms);
}

TEST_CASE("role constraints flow through the reduction") {
    // Sym adds the inverse inclusion.
    auto kb = parse_kb("[tbox]\nsym(P)\nA <= exists P\n[abox]\nA(a)\n");
    CHECK(solve(kb).verdict == Verdict::Sat);

    // Irr violated at the ABox level via the closure.
    auto kb2 = parse_kb("[tbox]\nirr(P)\nS <= P\n[abox]\nS(a,a)\n");
    CHECK(solve(kb2).verdict == Verdict::Unsat);

    // Asym violated by a symmetric pair.
    auto kb3 = parse_kb("[tbox]\nasym(P)\n[abox]\nP(a,b)\nP(b,a)\n");
    CHECK(solve(kb3).verdict == Verdict::Unsat);

    // Dis with a common sub-role forces emptiness.
    auto kb4 = parse_kb(
        "[tbox]\ndis(R1,R2)\nS <= R1\nS <= R2\nA <= exists S\n[abox]\nA(a)\n");
    CHECK(solve(kb4).verdict == Verdict::Unsat);

    // Ref satisfiable through the identity encoding.
    auto kb5 = parse_kb("[tbox]\nref(P)\nA <= >=2 P\n[abox]\nA(a)\n");
    CHECK(solve(kb5).verdict == Verdict::Sat);

    // Ref plus irreflexivity of the same role is unsatisfiable.
    auto kb6 = parse_kb("[tbox]\nref(P)\nirr(P)\n[abox]\nA(a)\n");
    CHECK(solve(kb6).verdict == Verdict::Unsat);
}

TEST_CASE("transitivity is eliminated before translation") {
    auto kb = parse_kb("[tbox]\ntra(P)\nexists P- <= B\n[abox]\nP(a,b)\nP(b,c)\nnot P(a,c)\n");
    CHECK(solve(kb).verdict == Verdict::Unsat);

    auto kb2 = parse_kb("[tbox]\ntra(P)\nexists P- <= B\n[abox]\nP(a,b)\nP(b,c)\n");
    CHECK(solve(kb2).verdict == Verdict::Sat);

    // Non-simple role under a counting restriction is refused.
    auto kb3 = parse_kb("[tbox]\ntra(P)\nA <= >=2 P\n[abox]\nA(a)\n");
    CHECK(solve(kb3).verdict == Verdict::FragmentUnsupported);
}

TEST_CASE("solve under no-UNA dispatches by number features") {
    // No numbers: inequalities are free, equalities merge.
    auto kb = parse_kb("[tbox]\nA <= exists P\n[abox]\nA(a)\nnot A(b)\na = b\n[options]\nuna = false\n");
    CHECK(solve(kb).verdict == Verdict::Unsat);

    auto kb2 = parse_kb("[tbox]\n[abox]\nA(a)\nnot A(b)\na != b\n[options]\nuna = false\n");
    CHECK(solve(kb2).verdict == Verdict::Sat);

    // Functionality merges b and c; B(b) and not B(c) then clash.
    auto kb3 = parse_kb(
        "[tbox]\n>=2 R <= bot\n[abox]\nR(a,b)\nR(a,c)\nB(b)\nnot B(c)\n[options]\nuna = false\n");
    CHECK(solve(kb3).verdict == Verdict::Unsat);

    // Same KB under UNA: two successors of a functional role.
    auto kb4 = parse_kb("[tbox]\n>=2 R <= bot\n[abox]\nR(a,b)\nR(a,c)\n");
    CHECK(solve(kb4).verdict == Verdict::Unsat);
    auto kb5 = parse_kb(
        "[tbox]\n>=2 R <= bot\n[abox]\nR(a,b)\nR(a,c)\n[options]\nuna = false\n");
    CHECK(solve(kb5).verdict == Verdict::Sat);
}
