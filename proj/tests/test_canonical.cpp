#include "doctest.h"

#include "dlite/canonical.hpp"
#include "dlite/fol.hpp"
#include "dlite/normalize.hpp"
#include "dlite/sat.hpp"
#include "dlite/syntax.hpp"
#include "testutil.hpp"

using namespace dlite;

namespace {

const char* kExample51 =
    "[tbox]\n"
    "A <= exists P-\n"
    "exists P- <= A\n"
    "A <= >=2 P\n"
    "top <= not >=2 P-\n"
    "exists P <= A\n"
    "[abox]\n"
    "A(a)\n"
    "P(a,ap)\n";

HNminusKB norm(const std::string& text) { return normalize_to_hn_minus(parse_kb(text)); }

} // namespace

TEST_CASE("minimal model of the worked example") {
    auto hnm = norm(kExample51);
    auto atoms = minimal_model(translate(hnm));
    auto has = [&](const char* pred_const) {
        for (const auto& [p, c] : atoms)
            if (p.str() + "(" + c.str() + ")" == pred_const) return true;
        return false;
    };
    CHECK(has("A(a)"));
    CHECK(has("E2 P(a)"));
    CHECK(has("E1 P-(ap)"));
    CHECK(has("A(ap)"));
    CHECK(has("A(dP-)"));
    CHECK(has("E2 P(dP-)"));
    CHECK(!has("E2 P-(a)"));
}

TEST_CASE("minimal model basics") {
    auto hnm = norm("[tbox]\n[abox]\nA(a)\n");
    auto atoms = minimal_model(translate(hnm));
    CHECK(atoms.size() == 1);

    auto hnm2 = norm("[tbox]\nA <= B\n[abox]\nA(a)\n");
    auto atoms2 = minimal_model(translate(hnm2));
    CHECK(atoms2.size() == 2);

    auto hnm3 = norm("[tbox]\nA <= bot\n[abox]\nA(a)\n");
    CHECK_THROWS_AS(minimal_model(translate(hnm3)), InconsistentKbError);
}

TEST_CASE("unravel cures exactly the four defects of the worked example") {
    auto hnm = norm(kExample51);
    auto atoms = minimal_model(translate(hnm));
    auto m = unravel(atoms, hnm, 1);
    CHECK(m.element_count() == 6);  // a, ap and four fresh elements
    int p_children_a = 0, p_children_ap = 0, p_parents_a = 0;
    for (int i = 0; i < m.element_count(); ++i) {
        if (m.depth[i] != 1) continue;
        if (m.parent_label[i] == Role{"P", false}) {
            if (m.names[m.parent[i]] == "a") p_children_a++;
            if (m.names[m.parent[i]] == "ap") p_children_ap++;
        }
        if (m.parent_label[i] == Role{"P", true} && m.names[m.parent[i]] == "a") p_parents_a++;
    }
    CHECK(p_children_a == 1);
    CHECK(p_children_ap == 2);
    CHECK(p_parents_a == 1);
}

TEST_CASE("unravel with an empty TBox is the ABox at every depth") {
    auto hnm = norm("[tbox]\n[abox]\nP(a,b)\nA(a)\n");
    auto atoms = minimal_model(translate(hnm));
    for (int d : {0, 1, 3}) {
        auto m = unravel(atoms, hnm, d);
        CHECK(m.element_count() == 2);
        CHECK(m.interpretation.role_ext.at("P").count({"a", "b"}) == 1);
    }
}

TEST_CASE("unravel creates three children for a rank-3 requirement") {
    auto hnm = norm("[tbox]\nA <= >=3 R\n[abox]\nA(a)\n");
    auto atoms = minimal_model(translate(hnm));
    auto m = unravel(atoms, hnm, 1);
    CHECK(m.element_count() == 4);
}

TEST_CASE("defect-free prefix property") {
    // After unravel(d), every element of depth < d has actual rank equal to
    // the required rank for roles without proper sub-roles.
    for (unsigned seed = 0; seed < 60; ++seed) {
        testutil::GenOptions o;
        o.shape = Shape::Horn;
        o.max_q = 3;
        o.concepts = 3;
        o.roles = 2;
        o.objects = 3;
        o.role_inclusions = seed % 2 == 0;
        testutil::Gen gen(seed, o);
        auto kb = gen.admissible_kb();
        auto sr = solve(kb);
        if (sr.verdict != Verdict::Sat) continue;
        auto hnm = normalize_to_hn_minus(kb);
        auto atoms = minimal_model(translate(hnm));
        int d = 3;
        auto m = unravel(atoms, hnm, d);
        for (int w = 0; w < m.element_count(); ++w) {
            if (m.depth[w] >= d) continue;
            for (const auto& r : hnm.order.roles) {
                if (hnm.order.has_proper_sub(r)) continue;
                qint required = 0;
                for (qint q : hnm.numbers.of(r))
                    if (atoms.count({UnaryPredicate::eq_pred(q, r), m.cp[w]}))
                        required = std::max(required, q);
                std::set<int> succ;
                auto it = m.edges.find(r.name);
                if (it != m.edges.end())
                    for (const auto& [x, y] : it->second) {
                        if (!r.inverted && x == w) succ.insert(y);
                        if (r.inverted && y == w) succ.insert(x);
                    }
                CHECK(static_cast<qint>(succ.size()) == required);
            }
        }
    }
}

TEST_CASE("truncation satisfies the evaluable axioms at shallow depths") {
    for (unsigned seed = 100; seed < 140; ++seed) {
        testutil::GenOptions o;
        o.shape = Shape::Horn;
        o.max_q = 2;
        o.concepts = 3;
        o.roles = 2;
        o.objects = 3;
        testutil::Gen gen(seed, o);
        auto kb = gen.admissible_kb();
        auto sr = solve(kb);
        if (sr.verdict != Verdict::Sat) continue;
        auto hnm = normalize_to_hn_minus(kb);
        auto atoms = minimal_model(translate(hnm));
        auto m = unravel(atoms, hnm, 3);
        // Concept inclusions that only need one step of successors hold on
        // elements with depth < 3.
        for (const auto& ci : hnm.kb.tbox.concept_inclusions) {
            auto lhs_ext = m.interpretation.eval(ci.lhs);
            auto rhs_ext = m.interpretation.eval(ci.rhs);
            for (int w = 0; w < m.element_count(); ++w) {
                if (m.depth[w] >= 3) continue;
                if (lhs_ext.count(m.names[w])) CHECK(rhs_ext.count(m.names[w]) > 0);
            }
        }
    }
}

TEST_CASE("equal copies generate isomorphic subtrees") {
    auto hnm = norm(
        "[tbox]\nA <= exists P\nexists P- <= exists S\nexists S- <= exists P\n"
        "[abox]\nA(a)\nA(b)\n");
    auto atoms = minimal_model(translate(hnm));
    auto m = unravel(atoms, hnm, 4);
    // Canonical subtree signature by (cp, sorted child signatures).
    std::function<std::string(int, int)> sig = [&](int w, int levels) -> std::string {
        if (levels == 0) return "*";
        std::vector<std::string> kids;
        for (int v = 0; v < m.element_count(); ++v)
            if (m.parent[v] == w)
                kids.push_back(m.parent_label[v].str() + ":" + sig(v, levels - 1));
        std::sort(kids.begin(), kids.end());
        std::string s = m.cp[w].str() + "(";
        for (const auto& k : kids) s += k + ",";
        return s + ")";
    };
    std::map<std::string, std::set<std::string>> by_cp;
    for (int w = 0; w < m.element_count(); ++w) {
        if (m.depth[w] != 1 && m.depth[w] != 2) continue;
        int levels = 2 - m.depth[w];
        by_cp[m.cp[w].str() + "#" + std::to_string(levels)].insert(sig(w, levels));
    }
    for (const auto& [cp, sigs] : by_cp) CHECK(sigs.size() == 1);
}

TEST_CASE("certain answer oracle on pinned examples") {
    auto kb = parse_kb("[tbox]\nA <= exists P\n[abox]\nA(a)\n");
    auto q = parse_query("q(x) := exists y . P(x,y)");
    auto ans = certain_answer_oracle(kb, q);
    CHECK(ans == std::set<std::vector<std::string>>{{"a"}});

    auto kb2 = parse_kb("[tbox]\n[abox]\nA(a)\n");
    auto q2 = parse_query("q(x) := A(x)");
    CHECK(certain_answer_oracle(kb2, q2) == std::set<std::vector<std::string>>{{"a"}});

    auto kb3 = parse_kb("[tbox]\nA <= exists P\nexists P- <= A\n[abox]\nA(a)\n");
    auto q3 = parse_query("q() := exists y,z . P(y,z) & A(z)");
    CHECK(certain_answer_oracle(kb3, q3).size() == 1);  // ground true

    auto q4 = parse_query("q(x) := exists y . P(x,y)");
    auto kb4 = parse_kb("[tbox]\nA <= exists P\n[abox]\nA(a)\nP(b,c)\n");
    CHECK(certain_answer_oracle(kb4, q4) ==
          std::set<std::vector<std::string>>{{"a"}, {"b"}});

    auto bad = parse_kb("[tbox]\nA <= bot\n[abox]\nA(a)\n");
    CHECK_THROWS_AS(certain_answer_oracle(bad, q4), InconsistentKbError);
}

TEST_CASE("oracle sees disjunction and inverse steps") {
    auto kb = parse_kb("[tbox]\nexists P- <= A\n[abox]\nP(a,b)\n");
    auto q = parse_query("q() := exists y . A(y)");
    CHECK(certain_answer_oracle(kb, q).size() == 1);

    auto q2 = parse_query("q(x) := A(x) | B(x)");
    auto kb2 = parse_kb("[tbox]\n[abox]\nA(a)\nB(b)\n");
    CHECK(certain_answer_oracle(kb2, q2) ==
          std::set<std::vector<std::string>>{{"a"}, {"b"}});
}
