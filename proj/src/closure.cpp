#include "dlite/closure.hpp"

#include <algorithm>

namespace dlite {

std::vector<Role> RoleOrder::representatives() const {
    std::set<Role> seen;
    std::vector<Role> out;
    for (const auto& r : roles) {
        Role rr = representative(r);
        if (seen.insert(rr).second) out.push_back(rr);
    }
    return out;
}

RoleOrder role_order(const TBox& t, const std::set<std::string>& extra_role_names) {
    RoleOrder ord;
    std::set<std::string> names = extra_role_names;
    for (const auto& ri : t.role_inclusions) {
        names.insert(ri.sub.name);
        names.insert(ri.sup.name);
    }
    // Role names also live in concepts and constraints; the callers that care
    // pass them via extra_role_names (role_order(kb) below does).
    for (const auto& n : names) {
        ord.roles.insert(Role{n, false});
        ord.roles.insert(Role{n, true});
    }
    for (const auto& r : ord.roles) ord.sups[r].insert(r);
    for (const auto& ri : t.role_inclusions) {
        ord.sups[ri.sub].insert(ri.sup);
        ord.sups[inv(ri.sub)].insert(inv(ri.sup));
        for (const auto& r : {ri.sub, inv(ri.sub), ri.sup, inv(ri.sup)}) {
            ord.roles.insert(r);
            ord.sups[r].insert(r);
        }
    }
    // Transitive closure (Floyd-Warshall over the small role set).
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [r, ss] : ord.sups) {
            std::set<Role> add;
            for (const auto& s : ss) {
                for (const auto& s2 : ord.sups[s])
                    if (!ss.count(s2)) add.insert(s2);
            }
            if (!add.empty()) {
                ss.insert(add.begin(), add.end());
                changed = true;
            }
        }
    }
    // Representatives: lexicographically least member, direct before inverse.
    for (const auto& r : ord.roles) {
        Role best = r;
        for (const auto& s : ord.roles) {
            if (ord.leq(r, s) && ord.leq(s, r) && s < best) best = s;
        }
        ord.rep[r] = best;
    }
    return ord;
}

RoleOrder role_order(const KnowledgeBase& kb) {
    return role_order(kb.tbox, role_names(kb));
}

const std::set<qint>& NumberSets::of(const Role& r) const {
    static const std::set<qint> one = {1};
    auto it = q.find(r);
    return it == q.end() ? one : it->second;
}

qint NumberSets::max_at_most(const Role& r, qint bound) const {
    qint best = 0;
    for (qint v : of(r))
        if (v <= bound) best = std::max(best, v);
    return best;
}

namespace {

void collect_numbers(const ConceptPtr& c, std::map<Role, std::set<qint>>& q) {
    switch (c->kind()) {
        case Concept::Kind::Basic:
            if (c->basic().kind == BasicConcept::Kind::AtLeast)
                q[c->basic().role].insert(c->basic().q);
            break;
        case Concept::Kind::Not:
            collect_numbers(c->child(), q);
            break;
        case Concept::Kind::And:
            collect_numbers(c->lhs(), q);
            collect_numbers(c->rhs(), q);
            break;
        case Concept::Kind::AtLeastQ:
            q[c->role()].insert(c->q());
            collect_numbers(c->filler(), q);
            break;
    }
}

} // namespace

NumberSets number_sets(const TBox& t, const RoleOrder& ord) {
    NumberSets ns;
    for (const auto& r : ord.roles) ns.q[r].insert(1);
    for (const auto& ci : t.concept_inclusions) {
        collect_numbers(ci.lhs, ns.q);
        collect_numbers(ci.rhs, ns.q);
    }
    for (auto& [r, qs] : ns.q) qs.insert(1);
    // Condition (Q): pad super-role sets. One pass over the closed order.
    for (const auto& r : ord.roles) {
        for (const auto& s : ord.sups.at(r)) {
            if (!(s == r)) ns.q[s].insert(ns.q[r].begin(), ns.q[r].end());
        }
    }
    return ns;
}

RoleAtomSet abox_role_atoms(const ABox& a) {
    RoleAtomSet out;
    for (const auto& ra : a.role_assertions)
        if (ra.positive) out.insert(RoleAtom{ra.role_name, ra.subject, ra.object});
    return out;
}

RoleAtomSet extended_abox_closure(const RoleOrder& ord, const RoleAtomSet& atoms) {
    RoleAtomSet out;
    for (const auto& at : atoms) {
        Role r{at.role, false};
        auto it = ord.sups.find(r);
        if (it == ord.sups.end()) {
            out.insert(at);
            continue;
        }
        for (const auto& sup : it->second) {
            if (sup.inverted)
                out.insert(RoleAtom{sup.name, at.object, at.subject});
            else
                out.insert(RoleAtom{sup.name, at.subject, at.object});
        }
    }
    return out;
}

RoleAtomSet extended_abox_closure(const TBox& t, const ABox& a) {
    std::set<std::string> names;
    for (const auto& ra : a.role_assertions) names.insert(ra.role_name);
    return extended_abox_closure(role_order(t, names), abox_role_atoms(a));
}

std::set<std::pair<std::string, std::string>> pairs_of(const RoleAtomSet& atoms, const Role& r) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& at : atoms) {
        if (at.role != r.name) continue;
        if (r.inverted)
            out.emplace(at.object, at.subject);
        else
            out.emplace(at.subject, at.object);
    }
    return out;
}

RoleAtomSet transitive_abox_closure(const TBox& t, const RoleAtomSet& atoms) {
    RoleAtomSet out = atoms;
    for (const auto& rc : t.role_constraints) {
        if (rc.kind != RoleConstraint::Kind::Tra) continue;
        // Warshall on the atoms of this role.
        std::set<std::string> nodes;
        std::set<std::pair<std::string, std::string>> edges;
        for (const auto& at : out)
            if (at.role == rc.name) {
                nodes.insert(at.subject);
                nodes.insert(at.object);
                edges.emplace(at.subject, at.object);
            }
        bool changed = true;
        while (changed) {
            changed = false;
            std::set<std::pair<std::string, std::string>> add;
            for (const auto& [x, y] : edges)
                for (const auto& [y2, z] : edges)
                    if (y == y2 && !edges.count({x, z})) add.emplace(x, z);
            if (!add.empty()) {
                edges.insert(add.begin(), add.end());
                changed = true;
            }
        }
        for (const auto& [x, y] : edges) out.insert(RoleAtom{rc.name, x, y});
    }
    return out;
}

TBox ext_tbox(const TBox& t) {
    auto ord = role_order(t, [&t] {
        std::set<std::string> names;
        KnowledgeBase kb;
        kb.tbox = t;
        return role_names(kb);
    }());
    return ext_tbox(t, ord, number_sets(t, ord));
}

TBox ext_tbox(const TBox& t, const RoleOrder& ord, const NumberSets& ns) {
    TBox out = t;
    // >=q' R <= >=q R for adjacent q < q' in Q^R.
    for (const auto& r : ord.roles) {
        const auto& qs = ns.of(r);
        qint prev = 0;
        for (qint v : qs) {
            if (prev >= 1 && v > prev)
                out.concept_inclusions.push_back(
                    {Concept::at_least(v, r), Concept::at_least(prev, r), {}});
            prev = v;
        }
    }
    // >=q R <= >=q R' for R <= R' in T (or inv(R) <= inv(R') in T), q in Q^R.
    for (const auto& ri : t.role_inclusions) {
        for (int side = 0; side < 2; ++side) {
            Role sub = side == 0 ? ri.sub : inv(ri.sub);
            Role sup = side == 0 ? ri.sup : inv(ri.sup);
            for (qint v : ns.of(sub))
                out.concept_inclusions.push_back(
                    {Concept::at_least(v, sub), Concept::at_least(v, sup), {}});
        }
    }
    return out;
}

} // namespace dlite
