#ifndef DLITE_TESTUTIL_HPP
#define DLITE_TESTUTIL_HPP

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dlite/model.hpp"
#include "dlite/sat.hpp"
#include "dlite/syntax.hpp"

namespace dlite::testutil {

// ---------------------------------------------------------------------------
// Bounded model search: encode existence of a model with domain {0..n-1} as a
// propositional formula and run dpll. Independent of the grounding engine.

struct BoundedEncoder {
    const KnowledgeBase& kb;
    int n;
    ClauseSet cs;
    std::map<std::string, int> memo;  // defined subformula vars

    BoundedEncoder(const KnowledgeBase& k, int n) : kb(k), n(n) {}

    int var(const std::string& name) { return cs.intern(name) + 1; }
    int concept_var(const std::string& a, int d) {
        return var("C:" + a + "@" + std::to_string(d));
    }
    int role_var(const std::string& p, int d, int e) {
        return var("R:" + p + "@" + std::to_string(d) + "," + std::to_string(e));
    }
    int map_var(const std::string& obj, int d) {
        return var("M:" + obj + "@" + std::to_string(d));
    }

    int edge_lit(const Role& r, int d, int e) {
        return r.inverted ? role_var(r.name, e, d) : role_var(r.name, d, e);
    }

    // v <-> (a AND b): three clauses.
    void def_and(int v, int a, int b) {
        cs.add_clause({-v, a});
        cs.add_clause({-v, b});
        cs.add_clause({v, -a, -b});
    }
    // v <-> (a OR b)
    void def_or(int v, int a, int b) {
        cs.add_clause({v, -a});
        cs.add_clause({v, -b});
        cs.add_clause({-v, a, b});
    }

    // Threshold variable: at least q successors of d under r, among elements
    // whose membership may be restricted by a filler literal per element
    // (0 when unconditional).
    int at_least_var(const Role& r, int d, qint q, const std::vector<int>& member_lits,
                     const std::string& tag) {
        // DP over candidates: T[i][j] = at least j among the first i.
        std::vector<int> cand;
        for (int e = 0; e < n; ++e) {
            int lit = edge_lit(r, d, e);
            if (!member_lits.empty()) {
                int both = var("B:" + tag + ":" + std::to_string(d) + ":" + std::to_string(e));
                def_and(both, lit, member_lits[e]);
                lit = both;
            }
            cand.push_back(lit);
        }
        qint qq = std::min<qint>(q, n + 1);
        std::string key = "T:" + tag + ":" + r.str() + ":" + std::to_string(d) + ":" +
                          std::to_string(q);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        // T[0][0] = true; T[0][j>0] = false.
        std::vector<std::vector<int>> t(cand.size() + 1, std::vector<int>(qq + 1, 0));
        int truev = var("TRUE");
        cs.add_clause({truev});
        int falsev = var("FALSE");
        cs.add_clause({-falsev});
        for (qint j = 0; j <= qq; ++j) t[0][j] = j == 0 ? truev : falsev;
        for (size_t i = 1; i <= cand.size(); ++i) {
            for (qint j = 0; j <= qq; ++j) {
                if (j == 0) {
                    t[i][j] = truev;
                    continue;
                }
                int with = var(key + ":w" + std::to_string(i) + "," + std::to_string(j));
                def_and(with, t[i - 1][j - 1], cand[i - 1]);
                int node = var(key + ":n" + std::to_string(i) + "," + std::to_string(j));
                def_or(node, t[i - 1][j], with);
                t[i][j] = node;
            }
        }
        int result = q > n ? falsev : t[cand.size()][qq];
        memo[key] = result;
        return result;
    }

    // Literal equivalent to d in C.
    int concept_lit(const ConceptPtr& c, int d) {
        std::string key = "S:" + c->str() + "@" + std::to_string(d);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int result = 0;
        switch (c->kind()) {
            case Concept::Kind::Basic: {
                const auto& b = c->basic();
                if (b.kind == BasicConcept::Kind::Bottom) {
                    result = var("FALSE");
                    cs.add_clause({-result});
                } else if (b.kind == BasicConcept::Kind::Atom) {
                    result = concept_var(b.name, d);
                } else {
                    result = at_least_var(b.role, d, b.q, {}, "plain");
                }
                break;
            }
            case Concept::Kind::Not:
                result = -concept_lit(c->child(), d);
                break;
            case Concept::Kind::And: {
                int a = concept_lit(c->lhs(), d);
                int b = concept_lit(c->rhs(), d);
                result = var(key);
                def_and(result, a, b);
                break;
            }
            case Concept::Kind::AtLeastQ: {
                std::vector<int> members;
                for (int e = 0; e < n; ++e) members.push_back(concept_lit(c->filler(), e));
                result = at_least_var(c->role(), d, c->q(), members,
                                      "qual:" + c->filler()->str());
                break;
            }
        }
        memo[key] = result;
        return result;
    }

    void encode() {
        for (const auto& ci : kb.tbox.concept_inclusions)
            for (int d = 0; d < n; ++d)
                cs.add_clause({-concept_lit(ci.lhs, d), concept_lit(ci.rhs, d)});
        for (const auto& ri : kb.tbox.role_inclusions)
            for (int d = 0; d < n; ++d)
                for (int e = 0; e < n; ++e)
                    cs.add_clause({-edge_lit(ri.sub, d, e), edge_lit(ri.sup, d, e)});
        for (const auto& rc : kb.tbox.role_constraints) {
            for (int d = 0; d < n; ++d) {
                for (int e = 0; e < n; ++e) {
                    switch (rc.kind) {
                        case RoleConstraint::Kind::Dis:
                            cs.add_clause({-edge_lit(rc.r1, d, e), -edge_lit(rc.r2, d, e)});
                            break;
                        case RoleConstraint::Kind::Sym:
                            cs.add_clause(
                                {-role_var(rc.name, d, e), role_var(rc.name, e, d)});
                            break;
                        case RoleConstraint::Kind::Asym:
                            cs.add_clause(
                                {-role_var(rc.name, d, e), -role_var(rc.name, e, d)});
                            break;
                        case RoleConstraint::Kind::Tra:
                            for (int f = 0; f < n; ++f)
                                cs.add_clause({-role_var(rc.name, d, e),
                                               -role_var(rc.name, e, f),
                                               role_var(rc.name, d, f)});
                            break;
                        case RoleConstraint::Kind::Ref:
                        case RoleConstraint::Kind::Irr:
                            break;
                    }
                }
                if (rc.kind == RoleConstraint::Kind::Ref) cs.add_clause({role_var(rc.name, d, d)});
                if (rc.kind == RoleConstraint::Kind::Irr)
                    cs.add_clause({-role_var(rc.name, d, d)});
            }
        }

        std::vector<std::string> objects(kb.abox.objects().begin(), kb.abox.objects().end());
        // One-hot object interpretation; fixed injective map under the UNA.
        if (kb.una) {
            if (static_cast<int>(objects.size()) > n) {
                cs.add_clause({});
                return;
            }
            for (size_t i = 0; i < objects.size(); ++i)
                for (int d = 0; d < n; ++d)
                    cs.add_clause({static_cast<int>(i) == d ? map_var(objects[i], d)
                                                            : -map_var(objects[i], d)});
        } else {
            for (const auto& o : objects) {
                std::vector<int> one;
                for (int d = 0; d < n; ++d) one.push_back(map_var(o, d));
                cs.add_clause(one);
                for (int d = 0; d < n; ++d)
                    for (int e = d + 1; e < n; ++e)
                        cs.add_clause({-map_var(o, d), -map_var(o, e)});
            }
        }
        for (const auto& ca : kb.abox.concept_assertions) {
            for (int d = 0; d < n; ++d) {
                int cl = concept_var(ca.concept_name, d);
                cs.add_clause({-map_var(ca.object, d), ca.positive ? cl : -cl});
            }
        }
        for (const auto& ra : kb.abox.role_assertions) {
            for (int d = 0; d < n; ++d)
                for (int e = 0; e < n; ++e) {
                    int rl = role_var(ra.role_name, d, e);
                    cs.add_clause({-map_var(ra.subject, d), -map_var(ra.object, e),
                                   ra.positive ? rl : -rl});
                }
        }
        for (const auto& [a, b] : kb.abox.equalities)
            for (int d = 0; d < n; ++d) cs.add_clause({-map_var(a, d), map_var(b, d)});
        for (const auto& [a, b] : kb.abox.inequalities)
            for (int d = 0; d < n; ++d) cs.add_clause({-map_var(a, d), -map_var(b, d)});
    }

    std::optional<Interpretation> decode(const std::set<int>& true_atoms) {
        Interpretation i;
        for (int d = 0; d < n; ++d) i.domain.push_back("e" + std::to_string(d));
        KnowledgeBase probe = kb;
        for (const auto& cn : concept_names(probe)) {
            auto& ext = i.concept_ext[cn];
            for (int d = 0; d < n; ++d) {
                auto it = cs.atom_ids.find("C:" + cn + "@" + std::to_string(d));
                if (it != cs.atom_ids.end() && true_atoms.count(it->second))
                    ext.insert(i.domain[d]);
            }
        }
        for (const auto& rn : role_names(probe)) {
            auto& ext = i.role_ext[rn];
            for (int d = 0; d < n; ++d)
                for (int e = 0; e < n; ++e) {
                    auto it = cs.atom_ids.find("R:" + rn + "@" + std::to_string(d) + "," +
                                               std::to_string(e));
                    if (it != cs.atom_ids.end() && true_atoms.count(it->second))
                        ext.emplace(i.domain[d], i.domain[e]);
                }
        }
        for (const auto& o : kb.abox.objects()) {
            for (int d = 0; d < n; ++d) {
                auto it = cs.atom_ids.find("M:" + o + "@" + std::to_string(d));
                if (it != cs.atom_ids.end() && true_atoms.count(it->second)) {
                    i.object_map[o] = i.domain[d];
                    break;
                }
            }
        }
        return i;
    }
};

// Search for a model over domains of size 1..max_n. Returns the model when
// found; nullopt means "no model of bounded size" (not unsatisfiability).
inline std::optional<Interpretation> bounded_model(const KnowledgeBase& kb, int max_n) {
    int lo = kb.una ? std::max<int>(1, static_cast<int>(kb.abox.objects().size())) : 1;
    for (int n = lo; n <= max_n; ++n) {
        BoundedEncoder enc(kb, n);
        enc.encode();
        SatResult r = dpll(enc.cs);
        if (r.sat) {
            std::set<int> atoms;
            for (int id : r.true_atoms) atoms.insert(id);
            return enc.decode(atoms);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random generators

struct GenOptions {
    Shape shape = Shape::Horn;
    int concepts = 3;
    int roles = 2;
    int objects = 4;
    qint max_q = 1;
    int tbox_axioms = 4;
    int abox_assertions = 5;
    bool role_inclusions = false;
    bool role_constraints = false;
    bool negative_assertions = true;
    bool equalities = false;
    bool inequalities = false;
    bool una = true;
};

class Gen {
  public:
    Gen(unsigned seed, GenOptions o) : rng_(seed), opt_(o) {}

    std::mt19937& rng() { return rng_; }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(rng_) < p; }

    std::string concept_name() { return "A" + std::to_string(pick(opt_.concepts) + 1); }
    std::string role_name() { return "P" + std::to_string(pick(opt_.roles) + 1); }
    std::string object_name() { return "o" + std::to_string(pick(opt_.objects) + 1); }
    Role role() { return Role{role_name(), chance(0.4)}; }

    ConceptPtr basic() {
        if (chance(0.55)) return Concept::atom(concept_name());
        qint q = opt_.max_q > 1 && chance(0.35)
                     ? 2 + static_cast<qint>(pick(static_cast<int>(opt_.max_q) - 1))
                     : 1;
        return Concept::at_least(q, role());
    }

    ConceptPtr bool_concept(int depth) {
        if (depth == 0 || chance(0.4)) return basic();
        if (chance(0.3)) return Concept::negate(bool_concept(depth - 1));
        return Concept::conj(bool_concept(depth - 1), bool_concept(depth - 1));
    }

    ConceptInclusion inclusion() {
        switch (opt_.shape) {
            case Shape::Core:
                return {basic(), chance(0.3) ? Concept::negate(basic()) : basic(), {}};
            case Shape::Krom: {
                auto lhs = basic();
                auto rhs = basic();
                int form = pick(3);
                if (form == 0) return {lhs, rhs, {}};
                if (form == 1) return {lhs, Concept::negate(rhs), {}};
                return {Concept::negate(lhs), rhs, {}};
            }
            case Shape::Horn: {
                ConceptPtr lhs = basic();
                int extra = pick(3);
                for (int i = 0; i < extra; ++i) lhs = Concept::conj(lhs, basic());
                return {lhs, chance(0.15) ? Concept::bottom() : basic(), {}};
            }
            case Shape::Bool:
                return {bool_concept(2), bool_concept(2), {}};
        }
        return {Concept::top(), Concept::top(), {}};
    }

    KnowledgeBase kb() {
        KnowledgeBase k;
        k.una = opt_.una;
        for (int i = 0; i < opt_.tbox_axioms; ++i)
            k.tbox.concept_inclusions.push_back(inclusion());
        if (opt_.role_inclusions) {
            int m = 1 + pick(2);
            for (int i = 0; i < m; ++i)
                k.tbox.role_inclusions.push_back({role(), role(), {}});
        }
        if (opt_.role_constraints && chance(0.7)) {
            int kind = pick(5);
            RoleConstraint rc;
            rc.kind = static_cast<RoleConstraint::Kind>(kind);
            if (rc.kind == RoleConstraint::Kind::Dis) {
                rc.r1 = role();
                rc.r2 = role();
            } else {
                rc.name = role_name();
            }
            k.tbox.role_constraints.push_back(rc);
        }
        for (int i = 0; i < opt_.abox_assertions; ++i) {
            if (chance(0.5)) {
                bool pos = !opt_.negative_assertions || chance(0.85);
                k.abox.concept_assertions.push_back(
                    {pos, concept_name(), object_name(), {}});
            } else {
                bool pos = !opt_.negative_assertions || chance(0.9);
                k.abox.role_assertions.push_back(
                    {pos, role_name(), object_name(), object_name(), {}});
            }
        }
        if (opt_.equalities && chance(0.6))
            k.abox.equalities.emplace_back(object_name(), object_name());
        if (opt_.inequalities && chance(0.6))
            k.abox.inequalities.emplace_back(object_name(), object_name());
        return k;
    }

    // Keep sampling until the classifier accepts the KB for the grounding
    // engine (all generated features admissible).
    KnowledgeBase admissible_kb(int tries = 200) {
        for (int i = 0; i < tries; ++i) {
            KnowledgeBase k = kb();
            auto rep = classify(k);
            if (rep.admissible()) return k;
        }
        GenOptions fallback = opt_;
        fallback.role_inclusions = false;
        Gen g(rng_(), fallback);
        return g.kb();
    }

    Query query(int max_atoms, int max_bound, int max_distinguished) {
        Query q;
        q.name = "q";
        int nd = pick(max_distinguished + 1);
        for (int i = 0; i < nd; ++i) q.distinguished.push_back("x" + std::to_string(i + 1));
        int nb = std::max(0, pick(max_bound + 1));
        std::vector<std::string> bound;
        for (int i = 0; i < nb; ++i) bound.push_back("y" + std::to_string(i + 1));
        std::vector<std::string> terms = q.distinguished;
        terms.insert(terms.end(), bound.begin(), bound.end());
        auto term = [&]() {
            if (!terms.empty() && chance(0.85)) return QueryTerm{true, terms[pick(static_cast<int>(terms.size()))]};
            return QueryTerm{false, object_name()};
        };
        int na = 1 + pick(max_atoms);
        QueryFormulaPtr body;
        for (int i = 0; i < na; ++i) {
            QueryFormulaPtr atom;
            if (chance(0.45))
                atom = QueryFormula::concept_atom(concept_name(), term());
            else
                atom = QueryFormula::role_atom(role_name(), term(), term());
            if (!body)
                body = atom;
            else if (chance(0.75))
                body = QueryFormula::conj(body, atom);
            else
                body = QueryFormula::disj(body, atom);
        }
        // Make sure every distinguished variable occurs; pad with concept atoms.
        std::set<std::string> used;
        std::function<void(const QueryFormulaPtr&)> walk = [&](const QueryFormulaPtr& f) {
            for (const auto& t : f->terms)
                if (t.is_var) used.insert(t.name);
            if (f->lhs) walk(f->lhs);
            if (f->rhs) walk(f->rhs);
            if (f->sub) walk(f->sub);
        };
        walk(body);
        for (const auto& x : q.distinguished)
            if (!used.count(x))
                body = QueryFormula::conj(
                    body, QueryFormula::concept_atom(concept_name(), QueryTerm{true, x}));
        std::vector<std::string> used_bound;
        for (const auto& y : bound)
            if (used.count(y)) used_bound.push_back(y);
        q.body = used_bound.empty() ? body : QueryFormula::exists(used_bound, body);
        return q;
    }

  private:
    std::mt19937 rng_;
    GenOptions opt_;
};

} // namespace dlite::testutil

#endif
