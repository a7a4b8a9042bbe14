#include "dlite/chase.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "dlite/closure.hpp"

namespace dlite {

namespace {

struct BodyAtom {
    bool is_concept = true;
    std::string concept_name;
    qint q = 1;
    Role role;
};

struct HornRule {
    std::vector<BodyAtom> body;
    enum class HeadKind { Concept, AtLeast, Bottom } head_kind = HeadKind::Bottom;
    std::string head_concept;
    qint head_q = 1;
    Role head_role;
    std::string origin;
};

bool flatten_body(const ConceptPtr& c, std::vector<BodyAtom>& out) {
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            if (b.kind == BasicConcept::Kind::Bottom) return true;  // body never holds; drop later
            if (b.kind == BasicConcept::Kind::Atom) {
                out.push_back({true, b.name, 1, {}});
                return true;
            }
            out.push_back({false, {}, b.q, b.role});
            return true;
        }
        case Concept::Kind::Not:
            return c->is_top();  // top = empty conjunction
        case Concept::Kind::And:
            return flatten_body(c->lhs(), out) && flatten_body(c->rhs(), out);
        case Concept::Kind::AtLeastQ:
            return false;
    }
    return false;
}

struct ChaseState {
    std::vector<std::string> names;   // element id -> name
    std::vector<bool> named;          // ABox-born
    std::vector<int> parent_uf;
    std::vector<std::set<std::string>> labels;
    RoleAtomSet atoms;                // canonical ids encoded as names

    std::map<std::string, int> by_name;

    int find(int x) {
        while (parent_uf[x] != x) {
            parent_uf[x] = parent_uf[parent_uf[x]];
            x = parent_uf[x];
        }
        return x;
    }
    int add(const std::string& name, bool is_named) {
        int id = static_cast<int>(names.size());
        names.push_back(name);
        named.push_back(is_named);
        parent_uf.push_back(id);
        labels.push_back({});
        by_name[name] = id;
        return id;
    }
};

} // namespace

ChaseResult chase(const KnowledgeBase& k, long long max_steps) {
    ChaseResult res;
    if (!k.una) {
        res.verdict = ChaseVerdict::Unsupported;
        res.detail = "chase runs under the UNA; preprocess equalities first";
        return res;
    }
    if (!k.tbox.role_constraints.empty()) {
        res.verdict = ChaseVerdict::Unsupported;
        res.detail = "role constraints are not chased";
        return res;
    }

    // Compile the TBox into Horn rules; functionality becomes an EGD.
    std::vector<HornRule> rules;
    std::set<Role> functional;
    for (const auto& ci : k.tbox.concept_inclusions) {
        HornRule r;
        r.origin = ci.str();
        if (!flatten_body(ci.lhs, r.body)) {
            res.verdict = ChaseVerdict::Unsupported;
            res.detail = "non-Horn left-hand side: " + ci.str();
            return res;
        }
        ConceptPtr rhs = ci.rhs;
        std::vector<ConceptPtr> heads;
        std::function<bool(const ConceptPtr&)> split_rhs = [&](const ConceptPtr& c) {
            if (c->kind() == Concept::Kind::And)
                return split_rhs(c->lhs()) && split_rhs(c->rhs());
            heads.push_back(c);
            return true;
        };
        split_rhs(rhs);
        for (const auto& h : heads) {
            HornRule rr = r;
            if (h->kind() == Concept::Kind::Basic) {
                const auto& b = h->basic();
                if (b.kind == BasicConcept::Kind::Bottom) {
                    rr.head_kind = HornRule::HeadKind::Bottom;
                } else if (b.kind == BasicConcept::Kind::Atom) {
                    rr.head_kind = HornRule::HeadKind::Concept;
                    rr.head_concept = b.name;
                } else {
                    rr.head_kind = HornRule::HeadKind::AtLeast;
                    rr.head_q = b.q;
                    rr.head_role = b.role;
                }
            } else if (h->kind() == Concept::Kind::Not &&
                       h->child()->kind() == Concept::Kind::Basic) {
                // B1 <= not B2 as B1 & B2 <= bot.
                const auto& b = h->child()->basic();
                rr.head_kind = HornRule::HeadKind::Bottom;
                if (b.kind == BasicConcept::Kind::Atom)
                    rr.body.push_back({true, b.name, 1, {}});
                else if (b.kind == BasicConcept::Kind::AtLeast)
                    rr.body.push_back({false, {}, b.q, b.role});
            } else {
                res.verdict = ChaseVerdict::Unsupported;
                res.detail = "non-Horn right-hand side: " + ci.str();
                return res;
            }
            // Counting bodies are sound only as pure functionality EGDs: merges
            // can retract >=q premises with q >= 2 once fired.
            int counting = 0;
            for (const auto& ba : rr.body)
                if (!ba.is_concept && ba.q >= 2) counting++;
            if (counting > 0) {
                bool pure_functionality = rr.head_kind == HornRule::HeadKind::Bottom &&
                                          rr.body.size() == 1 && !rr.body[0].is_concept &&
                                          rr.body[0].q == 2;
                if (!pure_functionality) {
                    res.verdict = ChaseVerdict::Unsupported;
                    res.detail = "counting premise outside a functionality axiom: " + ci.str();
                    return res;
                }
                functional.insert(rr.body[0].role);
                continue;  // handled as an EGD
            }
            rules.push_back(rr);
        }
    }

    auto ord = role_order(k);

    ChaseState st;
    for (const auto& o : k.abox.objects()) st.add(o, true);
    RoleAtomSet raw;
    for (const auto& ra : k.abox.role_assertions)
        if (ra.positive) raw.insert(RoleAtom{ra.role_name, ra.subject, ra.object});
    std::vector<std::pair<std::string, std::string>> neg_roles;
    std::vector<std::pair<std::string, std::string>> neg_concepts;
    for (const auto& ra : k.abox.role_assertions)
        if (!ra.positive) neg_roles.emplace_back(ra.role_name, ra.subject + "," + ra.object);
    for (const auto& ca : k.abox.concept_assertions) {
        if (ca.positive)
            st.labels[st.by_name[ca.object]].insert(ca.concept_name);
        else
            neg_concepts.emplace_back(ca.concept_name, ca.object);
    }
    st.atoms = raw;

    long long bound = max_steps;
    if (bound < 0) {
        long long sz = static_cast<long long>(k.abox.concept_assertions.size() +
                                              k.abox.role_assertions.size()) +
                       static_cast<long long>(k.tbox.concept_inclusions.size() +
                                              k.tbox.role_inclusions.size()) +
                       1;
        bound = 10 * sz * sz;
    }

    int fresh = 0;
    auto canon_atoms = [&]() {
        RoleAtomSet next;
        for (const auto& at : st.atoms) {
            int s = st.find(st.by_name.at(at.subject));
            int o = st.find(st.by_name.at(at.object));
            next.insert(RoleAtom{at.role, st.names[s], st.names[o]});
        }
        st.atoms = std::move(next);
    };
    auto merge = [&](int a, int b) -> bool {  // false: named/named conflict
        a = st.find(a);
        b = st.find(b);
        if (a == b) return true;
        if (st.named[a] && st.named[b]) return false;
        if (!st.named[a] && st.named[b]) std::swap(a, b);
        if (!st.named[a] && !st.named[b] && st.names[b] < st.names[a]) std::swap(a, b);
        st.parent_uf[b] = a;
        st.labels[a].insert(st.labels[b].begin(), st.labels[b].end());
        canon_atoms();
        return true;
    };

    // Successors of x under the role hierarchy.
    auto successors = [&](int x, const Role& r) {
        std::set<int> out;
        for (const auto& at : st.atoms) {
            Role direct{at.role, false};
            int s = st.find(st.by_name.at(at.subject));
            int o = st.find(st.by_name.at(at.object));
            if (ord.leq(direct, r) && s == x) out.insert(o);
            if (ord.leq(inv(direct), r) && o == x) out.insert(s);
        }
        return out;
    };
    auto holds_body = [&](int x, const std::vector<BodyAtom>& body) {
        for (const auto& ba : body) {
            if (ba.is_concept) {
                if (!st.labels[x].count(ba.concept_name)) return false;
            } else {
                if (static_cast<qint>(successors(x, ba.role).size()) < ba.q) return false;
            }
        }
        return true;
    };

    auto live = [&]() {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(st.names.size()); ++i)
            if (st.find(i) == i) out.push_back(i);
        return out;
    };

    for (;;) {
        // Contradictions first.
        for (const auto& [cn, obj] : neg_concepts) {
            if (st.labels[st.find(st.by_name.at(obj))].count(cn)) {
                res.verdict = ChaseVerdict::Unsat;
                res.detail = "not " + cn + "(" + obj + ") contradicted";
                return res;
            }
        }
        for (const auto& [rn, pair] : neg_roles) {
            auto comma = pair.find(',');
            int s = st.find(st.by_name.at(pair.substr(0, comma)));
            int o = st.find(st.by_name.at(pair.substr(comma + 1)));
            if (successors(s, Role{rn, false}).count(o) > 0 &&
                [&] {  // the negative atom denies rn itself, not its supers
                    for (const auto& at : st.atoms) {
                        Role direct{at.role, false};
                        if (ord.leq(direct, Role{rn, false}) &&
                            st.find(st.by_name.at(at.subject)) == s &&
                            st.find(st.by_name.at(at.object)) == o)
                            return true;
                        if (ord.leq(inv(direct), Role{rn, false}) &&
                            st.find(st.by_name.at(at.object)) == s &&
                            st.find(st.by_name.at(at.subject)) == o)
                            return true;
                    }
                    return false;
                }()) {
                res.verdict = ChaseVerdict::Unsat;
                res.detail = "not " + rn + "(" + pair + ") contradicted";
                return res;
            }
        }
        for (const auto& r : rules) {
            if (r.head_kind != HornRule::HeadKind::Bottom) continue;
            for (int x : live())
                if (holds_body(x, r.body)) {
                    res.verdict = ChaseVerdict::Unsat;
                    res.detail = "derived bot at " + st.names[x] + " via " + r.origin;
                    return res;
                }
        }

        if (res.steps > bound) {
            res.verdict = ChaseVerdict::BoundExceeded;
            res.detail = "chase bound " + std::to_string(bound) + " exceeded";
            return res;
        }

        // EGDs before TGDs.
        bool applied = false;
        for (const auto& f : functional) {
            for (int x : live()) {
                auto succ = successors(x, f);
                if (succ.size() >= 2) {
                    auto it = succ.begin();
                    int a = *it++;
                    int b = *it;
                    if (!merge(a, b)) {
                        res.verdict = ChaseVerdict::Unsat;
                        res.detail = "functionality of " + f.str() + " merges named objects " +
                                     st.names[a] + " and " + st.names[b];
                        return res;
                    }
                    res.steps++;
                    applied = true;
                    break;
                }
            }
            if (applied) break;
        }
        if (applied) continue;

        // Oldest element, first rule: concept heads before witness creation.
        for (int x : live()) {
            for (const auto& r : rules) {
                if (r.head_kind == HornRule::HeadKind::Bottom) continue;
                if (!holds_body(x, r.body)) continue;
                if (r.head_kind == HornRule::HeadKind::Concept) {
                    if (!st.labels[x].count(r.head_concept)) {
                        st.labels[x].insert(r.head_concept);
                        res.steps++;
                        applied = true;
                        break;
                    }
                } else {
                    auto succ = successors(x, r.head_role);
                    qint deficit = r.head_q - static_cast<qint>(succ.size());
                    if (deficit > 0) {
                        for (qint i = 0; i < deficit; ++i) {
                            int n = st.add("_n" + std::to_string(++fresh), false);
                            if (r.head_role.inverted)
                                st.atoms.insert(
                                    RoleAtom{r.head_role.name, st.names[n], st.names[x]});
                            else
                                st.atoms.insert(
                                    RoleAtom{r.head_role.name, st.names[x], st.names[n]});
                        }
                        res.steps++;
                        applied = true;
                        break;
                    }
                }
            }
            if (applied) break;
        }
        if (applied) continue;
        break;  // saturated
    }

    // Saturated store as a model: extensions are hierarchy-lifted.
    res.verdict = ChaseVerdict::Sat;
    auto lifted = extended_abox_closure(ord, st.atoms);
    for (int x : live()) {
        res.model.domain.push_back(st.names[x]);
        for (const auto& l : st.labels[x]) res.model.concept_ext[l].insert(st.names[x]);
    }
    for (const auto& cn : concept_names(k)) res.model.concept_ext.emplace(cn, std::set<std::string>{});
    for (const auto& rn : role_names(k)) res.model.role_ext.emplace(rn, std::set<std::pair<std::string, std::string>>{});
    for (const auto& at : lifted) res.model.role_ext[at.role].emplace(at.subject, at.object);
    for (const auto& o : k.abox.objects()) res.model.object_map[o] = st.names[st.find(st.by_name.at(o))];

    for (int x : live()) {
        for (const auto& l : st.labels[x])
            res.saturated_abox.concept_assertions.push_back({true, l, st.names[x], {}});
    }
    for (const auto& at : st.atoms)
        res.saturated_abox.role_assertions.push_back({true, at.role, at.subject, at.object, {}});
    return res;
}

namespace {

ChaseAnswer entails_common(const KnowledgeBase& k, long long max_steps,
                           const std::function<bool(const ChaseResult&)>& contains) {
    ChaseResult r = chase(k, max_steps);
    if (r.verdict == ChaseVerdict::BoundExceeded) return ChaseAnswer::BoundExceeded;
    if (r.verdict == ChaseVerdict::Unsupported)
        throw FragmentError("chase_entails: " + r.detail);
    if (r.verdict == ChaseVerdict::Unsat) return ChaseAnswer::Yes;
    return contains(r) ? ChaseAnswer::Yes : ChaseAnswer::No;
}

} // namespace

ChaseAnswer chase_entails(const KnowledgeBase& k, const ConceptAssertion& goal,
                          long long max_steps) {
    return entails_common(k, max_steps, [&](const ChaseResult& r) {
        auto it = r.model.concept_ext.find(goal.concept_name);
        if (it == r.model.concept_ext.end()) return false;
        auto om = r.model.object_map.find(goal.object);
        return om != r.model.object_map.end() && it->second.count(om->second) > 0;
    });
}

ChaseAnswer chase_entails(const KnowledgeBase& k, const RoleAssertion& goal,
                          long long max_steps) {
    return entails_common(k, max_steps, [&](const ChaseResult& r) {
        auto it = r.model.role_ext.find(goal.role_name);
        if (it == r.model.role_ext.end()) return false;
        auto s = r.model.object_map.find(goal.subject);
        auto o = r.model.object_map.find(goal.object);
        return s != r.model.object_map.end() && o != r.model.object_map.end() &&
               it->second.count({s->second, o->second}) > 0;
    });
}

} // namespace dlite
