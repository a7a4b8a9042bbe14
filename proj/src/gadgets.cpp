#include "dlite/gadgets.hpp"

#include <algorithm>
#include <sstream>

#include "dlite/normalize.hpp"

namespace dlite {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

int var_in_range(const std::string& tok, int nvars, int lineno) {
    int v = std::stoi(tok);
    if (v < 1 || v > nvars)
        throw ParseError("variable " + tok + " out of range", SourceSpan{lineno, 1, lineno, 1});
    return v;
}

} // namespace

TwoTwoCnf parse_2p2(const std::string& text) {
    TwoTwoCnf out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        lineno++;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "#") continue;
        if (toks[0] == "p") {
            if (toks.size() < 3 || toks[1] != "2p2")
                throw ParseError("expected 'p 2p2 <nvars>'", SourceSpan{lineno, 1, lineno, 1});
            out.nvars = std::stoi(toks[2]);
            header = true;
            continue;
        }
        if (!header) throw ParseError("missing 'p 2p2' header", SourceSpan{lineno, 1, lineno, 1});
        if (toks.size() != 4)
            throw ParseError("2+2 clause needs four variables", SourceSpan{lineno, 1, lineno, 1});
        std::array<int, 4> cl;
        for (int j = 0; j < 4; ++j) cl[j] = var_in_range(toks[j], out.nvars, lineno);
        out.clauses.push_back(cl);
    }
    return out;
}

HornCnf parse_horn(const std::string& text) {
    HornCnf out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        lineno++;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "#") continue;
        if (toks[0] == "p") {
            if (toks.size() < 3 || toks[1] != "horn")
                throw ParseError("expected 'p horn <nvars>'", SourceSpan{lineno, 1, lineno, 1});
            out.nvars = std::stoi(toks[2]);
            header = true;
            continue;
        }
        if (!header) throw ParseError("missing 'p horn' header", SourceSpan{lineno, 1, lineno, 1});
        if (toks[0] == "u" && toks.size() == 2) {
            out.units.push_back(var_in_range(toks[1], out.nvars, lineno));
        } else if (toks[0] == "c" && toks.size() == 4) {
            out.implications.push_back({var_in_range(toks[1], out.nvars, lineno),
                                        var_in_range(toks[2], out.nvars, lineno),
                                        var_in_range(toks[3], out.nvars, lineno)});
        } else {
            throw ParseError("expected 'u <i>' or 'c <i> <j> <k>'", SourceSpan{lineno, 1, lineno, 1});
        }
    }
    return out;
}

MonotoneCnf parse_oit(const std::string& text) {
    MonotoneCnf out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        lineno++;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "#") continue;
        if (toks[0] == "p") {
            if (toks.size() < 3 || toks[1] != "oit")
                throw ParseError("expected 'p oit <nvars>'", SourceSpan{lineno, 1, lineno, 1});
            out.nvars = std::stoi(toks[2]);
            header = true;
            continue;
        }
        if (!header) throw ParseError("missing 'p oit' header", SourceSpan{lineno, 1, lineno, 1});
        if (toks.size() != 3)
            throw ParseError("clause needs three variables", SourceSpan{lineno, 1, lineno, 1});
        out.clauses.push_back({var_in_range(toks[0], out.nvars, lineno),
                               var_in_range(toks[1], out.nvars, lineno),
                               var_in_range(toks[2], out.nvars, lineno)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lemma 5.9

ConjunctionSimulation simulate_conjunction(const ConceptPtr& c1, const ConceptPtr& c2,
                                           const ConceptPtr& c,
                                           std::set<std::string>& taken) {
    ConjunctionSimulation out;
    auto fresh_role = [&](const std::string& base) {
        std::string n = fresh_name(base, taken);
        taken.insert(n);
        out.fresh_roles.push_back(n);
        return Role{n, false};
    };
    Role r1 = fresh_role("_r1");
    Role r2 = fresh_role("_r2");
    Role r3 = fresh_role("_r3");
    Role r12 = fresh_role("_r12");
    Role r23 = fresh_role("_r23");

    out.concept_inclusions.push_back({c1, Concept::exists(r1), {}});
    out.concept_inclusions.push_back({c2, Concept::exists(r2), {}});
    out.role_inclusions.push_back({r1, r12, {}});
    out.role_inclusions.push_back({r2, r12, {}});
    out.concept_inclusions.push_back({Concept::at_least(2, r12), Concept::bottom(), {}});
    out.concept_inclusions.push_back({Concept::exists(inv(r1)), Concept::exists(inv(r3)), {}});
    out.concept_inclusions.push_back({Concept::exists(r3), c, {}});
    out.role_inclusions.push_back({r3, r23, {}});
    out.role_inclusions.push_back({r2, r23, {}});
    out.concept_inclusions.push_back({Concept::at_least(2, inv(r23)), Concept::bottom(), {}});
    return out;
}

namespace {

// Install an n-ary conjunctive-lhs axiom, either as-is or through iterated
// Lemma 5.9 expansions chained with fresh concept names.
void install_conjunctive_axiom(KnowledgeBase& kb, std::vector<ConceptPtr> conjuncts,
                               const ConceptPtr& rhs, bool expand,
                               std::set<std::string>& taken) {
    if (!expand) {
        ConceptPtr lhs = conjuncts[0];
        for (size_t i = 1; i < conjuncts.size(); ++i) lhs = Concept::conj(lhs, conjuncts[i]);
        kb.tbox.concept_inclusions.push_back({lhs, rhs, {}});
        return;
    }
    ConceptPtr acc = conjuncts[0];
    for (size_t i = 1; i < conjuncts.size(); ++i) {
        ConceptPtr target;
        if (i + 1 == conjuncts.size()) {
            target = rhs;
        } else {
            std::string g = fresh_name("_g", taken);
            taken.insert(g);
            target = Concept::atom(g);
        }
        auto sim = simulate_conjunction(acc, conjuncts[i], target, taken);
        for (const auto& ci : sim.concept_inclusions) kb.tbox.concept_inclusions.push_back(ci);
        for (const auto& ri : sim.role_inclusions) kb.tbox.role_inclusions.push_back(ri);
        acc = target;
    }
}

std::string var_obj(int i) { return "a" + std::to_string(i); }

void check_distinct3(int k, int a, int b, int c) {
    if (a == b || a == c || b == c)
        throw Error("clause " + std::to_string(k) +
                    ": the three variables must be pairwise distinct");
}

} // namespace

// ---------------------------------------------------------------------------
// Thm 6.5: 2+2CNF via Krom^(HF)

InstanceCheckGadget gen_2p2cnf(const TwoTwoCnf& phi, bool expand_conjunctions) {
    InstanceCheckGadget g;
    KnowledgeBase& kb = g.kb;
    std::set<std::string> taken{"f", "A", "D", "S", "Sf"};

    for (int j = 1; j <= 4; ++j) {
        std::string pj = "P" + std::to_string(j);
        Role p{pj, false}, pt{pj + "t", false}, pf{pj + "f", false};
        taken.insert({pj, pj + "t", pj + "f"});
        kb.tbox.concept_inclusions.push_back({Concept::at_least(2, p), Concept::bottom(), {}});
        kb.tbox.role_inclusions.push_back({pf, p, {}});
        kb.tbox.role_inclusions.push_back({pt, p, {}});
        kb.tbox.concept_inclusions.push_back(
            {Concept::negate(Concept::exists(pt)), Concept::exists(pf), {}});
        kb.tbox.concept_inclusions.push_back(
            {Concept::exists(inv(pf)), Concept::negate(Concept::atom("A")), {}});
        kb.tbox.concept_inclusions.push_back({Concept::exists(inv(pt)), Concept::atom("A"), {}});
    }
    Role s{"S", false}, sf{"Sf", false};
    install_conjunctive_axiom(
        kb,
        {Concept::exists(Role{"P1f", false}), Concept::exists(Role{"P2f", false}),
         Concept::exists(Role{"P3t", false}), Concept::exists(Role{"P4t", false})},
        Concept::exists(inv(sf)), expand_conjunctions, taken);
    kb.tbox.concept_inclusions.push_back({Concept::at_least(2, inv(s)), Concept::bottom(), {}});
    kb.tbox.role_inclusions.push_back({sf, s, {}});
    kb.tbox.concept_inclusions.push_back({Concept::exists(sf), Concept::atom("D"), {}});

    for (int i = 1; i <= phi.nvars; ++i) g.var_objects.push_back(var_obj(i));
    for (size_t k = 0; k < phi.clauses.size(); ++k) {
        std::string ck = "c" + std::to_string(k + 1);
        kb.abox.role_assertions.push_back({true, "S", "f", ck, {}});
        for (int j = 0; j < 4; ++j)
            kb.abox.role_assertions.push_back(
                {true, "P" + std::to_string(j + 1), ck, var_obj(phi.clauses[k][j]), {}});
    }
    g.target = ConceptAssertion{true, "D", "f", {}};
    return g;
}

// ---------------------------------------------------------------------------
// Thm 6.6: 2+2CNF via core^(HN)

InstanceCheckGadget gen_core_hn_2p2(const TwoTwoCnf& phi, bool expand_conjunctions) {
    InstanceCheckGadget g;
    KnowledgeBase& kb = g.kb;
    std::set<std::string> taken{"f", "A", "D", "S", "Sf"};

    for (int j = 1; j <= 4; ++j) {
        std::string pj = "P" + std::to_string(j);
        std::string tj = "T" + std::to_string(j);
        Role p{pj, false}, pt{pj + "t", false}, pf{pj + "f", false};
        Role t{tj, false}, t1{tj + "_1", false}, t2{tj + "_2", false}, t3{tj + "_3", false};
        taken.insert({pj, pj + "t", pj + "f", tj, tj + "_1", tj + "_2", tj + "_3"});
        kb.tbox.concept_inclusions.push_back({Concept::at_least(2, p), Concept::bottom(), {}});
        kb.tbox.role_inclusions.push_back({pf, p, {}});
        kb.tbox.role_inclusions.push_back({pt, p, {}});
        kb.tbox.concept_inclusions.push_back(
            {Concept::exists(inv(pf)), Concept::negate(Concept::atom("A")), {}});
        kb.tbox.concept_inclusions.push_back({Concept::exists(inv(pt)), Concept::atom("A"), {}});
        // (56)-(60)
        kb.tbox.role_inclusions.push_back({t1, t, {}});
        kb.tbox.role_inclusions.push_back({t2, t, {}});
        kb.tbox.role_inclusions.push_back({t3, t, {}});
        kb.tbox.concept_inclusions.push_back({Concept::at_least(2, inv(t)), Concept::bottom(), {}});
        kb.tbox.concept_inclusions.push_back({Concept::exists(p), Concept::exists(t1), {}});
        kb.tbox.concept_inclusions.push_back({Concept::exists(p), Concept::exists(t2), {}});
        install_conjunctive_axiom(kb, {Concept::exists(inv(t1)), Concept::exists(inv(t2))},
                                  Concept::exists(inv(t3)), expand_conjunctions, taken);
        kb.tbox.concept_inclusions.push_back({Concept::at_least(2, t), Concept::exists(pt), {}});
        kb.tbox.concept_inclusions.push_back({Concept::exists(t3), Concept::exists(pf), {}});
    }
    Role s{"S", false}, sf{"Sf", false};
    install_conjunctive_axiom(
        kb,
        {Concept::exists(Role{"P1f", false}), Concept::exists(Role{"P2f", false}),
         Concept::exists(Role{"P3t", false}), Concept::exists(Role{"P4t", false})},
        Concept::exists(inv(sf)), expand_conjunctions, taken);
    kb.tbox.concept_inclusions.push_back({Concept::at_least(2, inv(s)), Concept::bottom(), {}});
    kb.tbox.role_inclusions.push_back({sf, s, {}});
    kb.tbox.concept_inclusions.push_back({Concept::exists(sf), Concept::atom("D"), {}});

    for (int i = 1; i <= phi.nvars; ++i) g.var_objects.push_back(var_obj(i));
    for (size_t k = 0; k < phi.clauses.size(); ++k) {
        std::string ck = "c" + std::to_string(k + 1);
        kb.abox.role_assertions.push_back({true, "S", "f", ck, {}});
        for (int j = 0; j < 4; ++j)
            kb.abox.role_assertions.push_back(
                {true, "P" + std::to_string(j + 1), ck, var_obj(phi.clauses[k][j]), {}});
    }
    g.target = ConceptAssertion{true, "D", "f", {}};
    return g;
}

// ---------------------------------------------------------------------------
// Thm 6.7: Horn-CNF entailment via core^(HF)

namespace {

std::string vkji(int k, int j, int i) {
    return "v" + std::to_string(k) + "_" + std::to_string(j) + "_" + std::to_string(i);
}

} // namespace

HornEntailGadget gen_horncnf_hf(const HornCnf& phi, bool expand_conjunctions) {
    HornEntailGadget g;
    KnowledgeBase& kb = g.kb;
    std::set<std::string> taken{"A", "S", "St", "P1", "P2", "P3", "P1t", "P2t", "P3t"};

    Role s{"S", false}, st{"St", false};
    kb.tbox.role_inclusions.push_back({st, s, {}});                                        // (61)
    kb.tbox.concept_inclusions.push_back({Concept::at_least(2, s), Concept::bottom(), {}});  // (62)
    kb.tbox.concept_inclusions.push_back({Concept::atom("A"), Concept::exists(st), {}});     // (63)
    kb.tbox.concept_inclusions.push_back({Concept::exists(inv(st)), Concept::atom("A"), {}}); // (64)
    for (int j = 1; j <= 2; ++j) {
        Role p{"P" + std::to_string(j), false}, pt{"P" + std::to_string(j) + "t", false};
        kb.tbox.concept_inclusions.push_back({Concept::at_least(2, p), Concept::bottom(), {}}); // (65)
        kb.tbox.role_inclusions.push_back({pt, p, {}});                                         // (66)
        kb.tbox.concept_inclusions.push_back({Concept::atom("A"), Concept::exists(pt), {}});    // (67)
    }
    Role p3{"P3", false}, p3t{"P3t", false};
    kb.tbox.concept_inclusions.push_back({Concept::at_least(2, inv(p3)), Concept::bottom(), {}}); // (68)
    kb.tbox.role_inclusions.push_back({p3t, p3, {}});                                             // (69)
    install_conjunctive_axiom(kb,
                              {Concept::exists(inv(Role{"P1t", false})),
                               Concept::exists(inv(Role{"P2t", false}))},
                              Concept::exists(inv(p3t)), expand_conjunctions, taken);  // (70)
    kb.tbox.concept_inclusions.push_back({Concept::exists(p3t), Concept::atom("A"), {}});  // (71)

    int n = static_cast<int>(phi.implications.size());
    int m = phi.nvars;
    for (size_t k = 0; k < phi.implications.size(); ++k) {
        const auto& [a, b, c] = phi.implications[k];
        check_distinct3(static_cast<int>(k + 1), a, b, c);
    }

    if (n == 0) {
        std::set<int> units(phi.units.begin(), phi.units.end());
        for (int i = 1; i <= m; ++i) {
            g.var_targets.push_back(vkji(1, 1, i));
            if (units.count(i))
                kb.abox.concept_assertions.push_back({true, "A", vkji(1, 1, i), {}});
            else
                kb.abox.role_assertions.push_back({true, "S", vkji(1, 1, i), vkji(1, 1, i) + "_z", {}});
        }
        return g;
    }

    // S-cycle over all positions, for each variable.
    for (int i = 1; i <= m; ++i) {
        std::vector<std::string> cycle;
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= 3; ++j) cycle.push_back(vkji(k, j, i));
        for (size_t idx = 0; idx < cycle.size(); ++idx)
            kb.abox.role_assertions.push_back(
                {true, "S", cycle[idx], cycle[(idx + 1) % cycle.size()], {}});
    }
    for (int k = 1; k <= n; ++k) {
        const auto& cl = phi.implications[k - 1];
        std::string ck = "c" + std::to_string(k);
        for (int j = 1; j <= 3; ++j)
            kb.abox.role_assertions.push_back(
                {true, "P" + std::to_string(j), vkji(k, j, cl[j - 1]), ck, {}});
    }
    for (int u : phi.units) kb.abox.concept_assertions.push_back({true, "A", vkji(1, 1, u), {}});

    for (int i = 1; i <= m; ++i) g.var_targets.push_back(vkji(1, 1, i));
    return g;
}

// ---------------------------------------------------------------------------
// Thm 8.4: monotone one-in-three 3SAT via core^N without the UNA

namespace {

std::string aik(int i, int k) { return "a" + std::to_string(i) + "_" + std::to_string(k); }

} // namespace

OneInThreeGadget gen_one_in_three(const MonotoneCnf& phi) {
    OneInThreeGadget g;
    KnowledgeBase& kb = g.kb;
    kb.una = false;

    kb.tbox.concept_inclusions.push_back(
        {Concept::atom("A1"), Concept::negate(Concept::atom("A2")), {}});
    kb.tbox.concept_inclusions.push_back(
        {Concept::atom("A2"), Concept::negate(Concept::atom("A3")), {}});
    kb.tbox.concept_inclusions.push_back(
        {Concept::atom("A3"), Concept::negate(Concept::atom("A1")), {}});
    kb.tbox.concept_inclusions.push_back(
        {Concept::at_least(2, Role{"S", false}), Concept::bottom(), {}});
    kb.tbox.concept_inclusions.push_back(
        {Concept::at_least(4, Role{"P", false}), Concept::bottom(), {}});

    int n = static_cast<int>(phi.clauses.size());
    for (size_t k = 0; k < phi.clauses.size(); ++k)
        check_distinct3(static_cast<int>(k + 1), phi.clauses[k][0], phi.clauses[k][1],
                        phi.clauses[k][2]);
    if (n == 0) return g;

    auto tk = [](int k) { return "t" + std::to_string(k); };
    for (int i = 1; i <= phi.nvars; ++i)
        for (int k = 1; k <= n; ++k)
            kb.abox.role_assertions.push_back(
                {true, "S", aik(i, k), aik(i, k % n + 1), {}});
    for (int k = 1; k <= n; ++k)
        kb.abox.role_assertions.push_back({true, "S", tk(k), tk(k % n + 1), {}});
    for (int k = 1; k <= n; ++k) {
        kb.abox.role_assertions.push_back({true, "P", "c" + std::to_string(k), tk(k), {}});
        for (int j = 0; j < 3; ++j) {
            int v = phi.clauses[k - 1][j];
            kb.abox.role_assertions.push_back(
                {true, "P", "c" + std::to_string(k), aik(v, k), {}});
            kb.abox.concept_assertions.push_back(
                {true, "A" + std::to_string(j + 1), aik(v, k), {}});
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Thm 8.7: Horn-CNF entailment via core^F without the UNA

FunctionalHornGadget gen_horncnf_f_nouna(const HornCnf& phi) {
    FunctionalHornGadget g;
    KnowledgeBase& kb = g.kb;
    kb.una = false;

    for (const auto& rn : {"P", "Q", "S", "T"})
        kb.tbox.concept_inclusions.push_back(
            {Concept::at_least(2, Role{rn, false}), Concept::bottom(), {}});

    int n = static_cast<int>(phi.implications.size());
    int m = phi.nvars;
    for (size_t k = 0; k < phi.implications.size(); ++k) {
        const auto& cl = phi.implications[k];
        check_distinct3(static_cast<int>(k + 1), cl[0], cl[1], cl[2]);
    }

    auto aki = [](int i, int k) { return "a" + std::to_string(i) + "_" + std::to_string(k); };
    if (n > 0) {
        for (int i = 1; i <= m; ++i)
            for (int k = 1; k <= n; ++k)
                kb.abox.role_assertions.push_back(
                    {true, "S", aki(i, k), aki(i, k % n + 1), {}});
        for (int k = 1; k <= n; ++k) {
            const auto& cl = phi.implications[k - 1];
            std::string fk = "f" + std::to_string(k), gk = "g" + std::to_string(k);
            kb.abox.role_assertions.push_back({true, "P", aki(cl[0], k), fk, {}});
            kb.abox.role_assertions.push_back({true, "P", aki(cl[1], k), gk, {}});
            kb.abox.role_assertions.push_back({true, "Q", gk, aki(cl[2], k), {}});
            kb.abox.role_assertions.push_back({true, "Q", fk, aki(cl[0], k), {}});
        }
    }
    for (int u : phi.units)
        kb.abox.role_assertions.push_back({true, "T", "t", aki(u, 1), {}});

    for (int i = 1; i <= m; ++i) g.var_targets.push_back(aki(i, 1));
    return g;
}

// ---------------------------------------------------------------------------
// Oracles

bool sat_2p2(const TwoTwoCnf& phi) {
    for (unsigned mask = 0; mask < (1u << phi.nvars); ++mask) {
        bool ok = true;
        for (const auto& cl : phi.clauses) {
            bool v1 = mask >> (cl[0] - 1) & 1, v2 = mask >> (cl[1] - 1) & 1;
            bool v3 = mask >> (cl[2] - 1) & 1, v4 = mask >> (cl[3] - 1) & 1;
            if (!(v1 || v2 || !v3 || !v4)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return phi.clauses.empty();
}

bool horn_entails(const HornCnf& phi, int var) {
    std::vector<bool> truth(phi.nvars + 1, false);
    for (int u : phi.units) truth[u] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b, c] : phi.implications)
            if (truth[a] && truth[b] && !truth[c]) {
                truth[c] = true;
                changed = true;
            }
    }
    return truth[var];
}

bool one_in_three_sat(const MonotoneCnf& phi) {
    if (phi.clauses.empty()) return true;
    for (unsigned mask = 0; mask < (1u << phi.nvars); ++mask) {
        bool ok = true;
        for (const auto& cl : phi.clauses) {
            int cnt = (mask >> (cl[0] - 1) & 1) + (mask >> (cl[1] - 1) & 1) +
                      (mask >> (cl[2] - 1) & 1);
            if (cnt != 1) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

} // namespace dlite
