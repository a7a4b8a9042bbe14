#include "dlite/normalize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace dlite {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

namespace {

std::set<std::string> all_names(const KnowledgeBase& kb) {
    std::set<std::string> names = role_names(kb);
    for (const auto& n : concept_names(kb)) names.insert(n);
    for (const auto& o : kb.abox.objects()) names.insert(o);
    return names;
}

// ---------------------------------------------------------------------------
// Qualified restriction elimination

struct QualKey {
    Role role;
    std::string filler;
    auto operator<=>(const QualKey&) const = default;
};

void find_qualified(const ConceptPtr& c, bool positive, std::set<QualKey>& pos,
                    bool* negative_found) {
    switch (c->kind()) {
        case Concept::Kind::Basic: return;
        case Concept::Kind::Not:
            return find_qualified(c->child(), !positive, pos, negative_found);
        case Concept::Kind::And:
            find_qualified(c->lhs(), positive, pos, negative_found);
            find_qualified(c->rhs(), positive, pos, negative_found);
            return;
        case Concept::Kind::AtLeastQ:
            if (!positive) *negative_found = true;
            pos.insert(QualKey{c->role(), c->filler()->str()});
            find_qualified(c->filler(), positive, pos, negative_found);
            return;
    }
}

ConceptPtr replace_qualified(const ConceptPtr& c, const std::map<QualKey, Role>& repl,
                             std::map<QualKey, ConceptPtr>& fillers) {
    switch (c->kind()) {
        case Concept::Kind::Basic: return c;
        case Concept::Kind::Not: {
            auto inner = replace_qualified(c->child(), repl, fillers);
            return inner == c->child() ? c : Concept::negate(inner);
        }
        case Concept::Kind::And: {
            auto l = replace_qualified(c->lhs(), repl, fillers);
            auto r = replace_qualified(c->rhs(), repl, fillers);
            return (l == c->lhs() && r == c->rhs()) ? c : Concept::conj(l, r);
        }
        case Concept::Kind::AtLeastQ: {
            QualKey key{c->role(), c->filler()->str()};
            auto it = repl.find(key);
            if (it == repl.end()) return c;
            fillers.emplace(key, c->filler());
            return Concept::at_least(c->q(), it->second);
        }
    }
    return c;
}

} // namespace

TBox eliminate_qualified(const TBox& t) {
    KnowledgeBase probe;
    probe.tbox = t;
    std::set<std::string> taken = all_names(probe);

    TBox out = t;
    int counter = 0;
    for (;;) {
        std::set<QualKey> keys;
        bool negative = false;
        for (const auto& ci : out.concept_inclusions) {
            find_qualified(ci.lhs, false, keys, &negative);
            find_qualified(ci.rhs, true, keys, &negative);
        }
        if (negative)
            throw FragmentError("fragment-unsupported: negative qualified restriction");
        if (keys.empty()) break;

        std::map<QualKey, Role> repl;
        for (const auto& key : keys) {
            std::string name = fresh_name("_qf" + std::to_string(++counter), taken);
            taken.insert(name);
            repl[key] = Role{name, false};
        }
        std::map<QualKey, ConceptPtr> fillers;
        for (auto& ci : out.concept_inclusions) {
            ci.lhs = replace_qualified(ci.lhs, repl, fillers);
            ci.rhs = replace_qualified(ci.rhs, repl, fillers);
        }
        for (const auto& [key, rc] : repl) {
            auto itf = fillers.find(key);
            if (itf == fillers.end()) continue;  // did not actually occur (defensive)
            out.concept_inclusions.push_back(
                {Concept::exists(inv(rc)), itf->second, {}});
            out.role_inclusions.push_back({rc, key.role, {}});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// (HN) -> (HN)- (Lemma 5.17)

namespace {

// B^{S_P}: split a reflexive role P into Id and its irreflexive part S_P.
ConceptPtr split_reflexive(const ConceptPtr& c, const std::string& p, const Role& sp) {
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            if (b.kind != BasicConcept::Kind::AtLeast || b.role.name != p) return c;
            Role s = b.role.inverted ? inv(sp) : sp;
            if (b.q == 1) return Concept::top();
            return Concept::at_least(b.q - 1, s);
        }
        case Concept::Kind::Not:
            return Concept::negate(split_reflexive(c->child(), p, sp));
        case Concept::Kind::And:
            return Concept::conj(split_reflexive(c->lhs(), p, sp),
                                 split_reflexive(c->rhs(), p, sp));
        case Concept::Kind::AtLeastQ:
            throw FragmentError("qualified restriction survived elimination");
    }
    return c;
}

} // namespace

HNminusKB normalize_to_hn_minus(const KnowledgeBase& k) {
    for (const auto& rc : k.tbox.role_constraints)
        if (rc.kind == RoleConstraint::Kind::Tra)
            throw FragmentError("fragment-unsupported: eliminate transitivity first");

    FragmentReport rep = classify(k);
    if (!rep.a123_violations.empty())
        throw FragmentError("fragment-unsupported: " + rep.a123_violations.front());

    HNminusKB out;
    out.kb.una = k.una;
    out.kb.abox = k.abox;

    std::set<std::string> taken = all_names(k);

    TBox t0 = eliminate_qualified(k.tbox);

    // Track fresh roles born from qualified elimination.
    {
        KnowledgeBase probe;
        probe.tbox = t0;
        for (const auto& rn : role_names(probe))
            if (!taken.count(rn)) out.rename_map[rn] = "qualified-restriction role";
    }

    // Sym / Asym are plain rewrites.
    std::vector<std::pair<Role, Role>> dis_pairs;  // disjointness residue D
    std::vector<std::string> dis_origin;
    std::vector<std::string> ref_roles, irr_roles;
    for (const auto& rc : t0.role_constraints) {
        switch (rc.kind) {
            case RoleConstraint::Kind::Sym:
                t0.role_inclusions.push_back({Role{rc.name, true}, Role{rc.name, false}, rc.span});
                break;
            case RoleConstraint::Kind::Asym:
                dis_pairs.emplace_back(Role{rc.name, false}, Role{rc.name, true});
                dis_origin.push_back(rc.str());
                break;
            case RoleConstraint::Kind::Dis:
                dis_pairs.emplace_back(rc.r1, rc.r2);
                dis_origin.push_back(rc.str());
                break;
            case RoleConstraint::Kind::Ref:
                ref_roles.push_back(rc.name);
                break;
            case RoleConstraint::Kind::Irr:
                irr_roles.push_back(rc.name);
                break;
            case RoleConstraint::Kind::Tra:
                break;
        }
    }
    t0.role_constraints.clear();

    // Step 1: reflexivity via Id and the irreflexive split roles S_P.
    Role id_role;
    if (!ref_roles.empty()) {
        out.has_id = true;
        out.id_role = fresh_name("_id", taken);
        taken.insert(out.id_role);
        out.rename_map[out.id_role] = "identity role";
        id_role = Role{out.id_role, false};

        // Equivalence classes of the pre-split TBox decide which ABox atoms move.
        auto pre_order = role_order(t0, role_names(k));

        t0.concept_inclusions.push_back({Concept::top(), Concept::exists(id_role), {}});
        t0.role_inclusions.push_back({inv(id_role), id_role, {}});

        for (const auto& p : ref_roles) {
            Role pr{p, false};
            t0.role_inclusions.push_back({id_role, pr, {}});
            std::string spn = fresh_name("_s_" + p, taken);
            taken.insert(spn);
            out.rename_map[spn] = "irreflexive part of " + p;
            Role sp{spn, false};
            for (auto& ci : t0.concept_inclusions) {
                ci.lhs = split_reflexive(ci.lhs, p, sp);
                ci.rhs = split_reflexive(ci.rhs, p, sp);
            }
            t0.role_inclusions.push_back({sp, pr, {}});

            // Move off-diagonal ABox atoms of roles equivalent to P onto S_P.
            std::vector<RoleAssertion> next;
            for (const auto& ra : out.kb.abox.role_assertions) {
                if (!ra.positive || ra.subject == ra.object) {
                    next.push_back(ra);
                    continue;
                }
                Role direct{ra.role_name, false};
                bool moved = false;
                if (pre_order.equiv(direct, pr)) {
                    next.push_back({true, spn, ra.subject, ra.object, ra.span});
                    moved = true;
                }
                if (pre_order.equiv(inv(direct), pr)) {
                    next.push_back({true, spn, ra.object, ra.subject, ra.span});
                    moved = true;
                }
                if (!moved) next.push_back(ra);
            }
            out.kb.abox.role_assertions = std::move(next);
        }
        for (const auto& obj : out.kb.abox.objects())
            out.kb.abox.role_assertions.push_back({true, out.id_role, obj, obj, {}});
    }

    // Step 2: disjointness residue. Irr(P) becomes Dis(P, Id) when Id exists;
    // otherwise only the ABox-level obligation remains.
    for (const auto& p : irr_roles) {
        if (out.has_id) {
            dis_pairs.emplace_back(Role{p, false}, id_role);
            dis_origin.push_back("irr(" + p + ")");
        }
        out.cond44_checks.push_back({Role{p, false}, Role{p, false}, "irr(" + p + ")"});
    }

    auto ord1 = role_order(t0, role_names(k));
    std::set<Role> emptied;
    for (size_t i = 0; i < dis_pairs.size(); ++i) {
        const auto& [x, y] = dis_pairs[i];
        out.cond44_checks.push_back({x, y, dis_origin[i]});
        // Every common sub-role of a disjoint pair is empty; the tree edges of
        // the unraveling realize all super-roles of their label at once.
        for (const auto& r0 : ord1.roles) {
            if (ord1.leq(r0, x) && ord1.leq(r0, y)) {
                emptied.insert(r0);
                emptied.insert(inv(r0));
            }
        }
    }
    for (const auto& r0 : emptied)
        t0.concept_inclusions.push_back({Concept::exists(r0), Concept::bottom(), {}});

    // Split conjunctions on right-hand sides (syntactic sugar per the KB model).
    std::vector<ConceptInclusion> split;
    std::vector<ConceptInclusion> work = std::move(t0.concept_inclusions);
    while (!work.empty()) {
        ConceptInclusion ci = work.back();
        work.pop_back();
        if (ci.rhs->kind() == Concept::Kind::And) {
            work.push_back({ci.lhs, ci.rhs->lhs(), ci.span});
            work.push_back({ci.lhs, ci.rhs->rhs(), ci.span});
        } else {
            split.push_back(ci);
        }
    }
    std::reverse(split.begin(), split.end());
    t0.concept_inclusions = std::move(split);

    out.kb.tbox = t0;
    out.order = role_order(out.kb);
    out.numbers = number_sets(out.kb.tbox, out.order);
    return out;
}

std::vector<std::string> evaluate_cond44(const HNminusKB& k) {
    std::vector<std::string> violated;
    auto cl = extended_abox_closure(k.order, abox_role_atoms(k.kb.abox));
    for (const auto& chk : k.cond44_checks) {
        if (chk.r1 == chk.r2 && !chk.r1.inverted && chk.origin.substr(0, 3) == "irr") {
            for (const auto& [x, y] : pairs_of(cl, chk.r1))
                if (x == y) {
                    violated.push_back(chk.origin + " violated by " + chk.r1.str() + "(" + x +
                                       "," + x + ")");
                    break;
                }
            continue;
        }
        auto p1 = pairs_of(cl, chk.r1);
        auto p2 = pairs_of(cl, chk.r2);
        for (const auto& pr : p1)
            if (p2.count(pr)) {
                violated.push_back(chk.origin + " violated by the pair (" + pr.first + "," +
                                   pr.second + ")");
                break;
            }
    }
    return violated;
}

// ---------------------------------------------------------------------------
// Transitivity elimination (Lemma 5.18)

KnowledgeBase eliminate_transitivity(const KnowledgeBase& k) {
    FragmentReport rep = classify(k);
    if (!rep.non_simple_number_restrictions.empty())
        throw FragmentError("fragment-unsupported: " + rep.non_simple_number_restrictions.front());

    KnowledgeBase out = k;
    out.tbox.role_constraints.clear();
    for (const auto& rc : k.tbox.role_constraints)
        if (rc.kind != RoleConstraint::Kind::Tra) out.tbox.role_constraints.push_back(rc);

    auto ord = role_order(k);
    auto atoms = extended_abox_closure(ord, abox_role_atoms(k.abox));
    atoms = transitive_abox_closure(k.tbox, atoms);
    atoms = extended_abox_closure(ord, atoms);

    std::vector<RoleAssertion> ras;
    for (const auto& at : atoms) ras.push_back({true, at.role, at.subject, at.object, {}});
    for (const auto& ra : k.abox.role_assertions)
        if (!ra.positive) ras.push_back(ra);
    out.abox.role_assertions = std::move(ras);
    return out;
}

// ---------------------------------------------------------------------------
// Non-UNA preprocessing

namespace {

KnowledgeBase rename_objects(const KnowledgeBase& k, const MergePlan& plan) {
    KnowledgeBase out = k;
    for (auto& ca : out.abox.concept_assertions) ca.object = plan.rep(ca.object);
    for (auto& ra : out.abox.role_assertions) {
        ra.subject = plan.rep(ra.subject);
        ra.object = plan.rep(ra.object);
    }
    for (auto& [a, b] : out.abox.equalities) {
        a = plan.rep(a);
        b = plan.rep(b);
    }
    for (auto& [a, b] : out.abox.inequalities) {
        a = plan.rep(a);
        b = plan.rep(b);
    }
    return out;
}

} // namespace

std::pair<KnowledgeBase, MergePlan> merge_equalities(const KnowledgeBase& k) {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        std::string root = find(it->second);
        parent[x] = root;
        return root;
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);  // keep the minimal name as root
        parent[rb] = ra;
    };
    for (const auto& o : k.abox.objects()) parent.emplace(o, o);
    for (const auto& [a, b] : k.abox.equalities) unite(a, b);

    MergePlan plan;
    for (const auto& o : k.abox.objects()) plan.canonical[o] = find(o);

    KnowledgeBase out = rename_objects(k, plan);
    out.abox.equalities.clear();
    // Inequalities survive renamed; a != a records a contradiction for the
    // satisfiability engine.
    std::set<std::pair<std::string, std::string>> uniq(out.abox.inequalities.begin(),
                                                       out.abox.inequalities.end());
    out.abox.inequalities.assign(uniq.begin(), uniq.end());
    return {out, plan};
}

namespace {

// Functionality axioms in either written form: >=2 R <= bot or top <= not >=2 R.
std::set<Role> functional_roles(const TBox& t) {
    std::set<Role> out;
    for (const auto& ci : t.concept_inclusions) {
        if (ci.rhs->is_bottom() && ci.lhs->kind() == Concept::Kind::Basic &&
            ci.lhs->basic().kind == BasicConcept::Kind::AtLeast && ci.lhs->basic().q == 2)
            out.insert(ci.lhs->basic().role);
        if (ci.lhs->is_top() && ci.rhs->kind() == Concept::Kind::Not) {
            const auto& inner = ci.rhs->child();
            if (inner->kind() == Concept::Kind::Basic &&
                inner->basic().kind == BasicConcept::Kind::AtLeast && inner->basic().q == 2)
                out.insert(inner->basic().role);
        }
    }
    return out;
}

} // namespace

KnowledgeBase functional_merge(const KnowledgeBase& k) {
    FragmentReport rep = classify(k);
    if (rep.numbers == Numbers::N)
        throw FragmentError("fragment-unsupported: functional_merge needs at most functionality");

    auto [cur, plan] = merge_equalities(k);

    auto funs = functional_roles(cur.tbox);
    auto ord = role_order(cur);
    for (;;) {
        auto cl = extended_abox_closure(ord, abox_role_atoms(cur.abox));
        MergePlan step;
        bool merged = false;
        for (const auto& r : funs) {
            std::map<std::string, std::set<std::string>> succ;
            for (const auto& [x, y] : pairs_of(cl, r)) succ[x].insert(y);
            for (const auto& [x, ys] : succ) {
                if (ys.size() < 2) continue;
                const std::string& keep = *ys.begin();
                for (const auto& y : ys)
                    if (y != keep) {
                        step.canonical[y] = keep;
                        merged = true;
                    }
            }
            if (merged) break;
        }
        if (!merged) break;
        // Normalize the one-step plan through a proper union-find pass.
        KnowledgeBase tmp = cur;
        for (const auto& [from, to] : step.canonical)
            tmp.abox.equalities.emplace_back(from, to);
        cur = merge_equalities(tmp).first;
    }

    bool contradiction = false;
    for (const auto& [a, b] : cur.abox.inequalities)
        if (a == b) contradiction = true;
    if (contradiction) {
        std::string a0 = fresh_name("_neq", all_names(cur));
        std::string witness;
        for (const auto& [a, b] : cur.abox.inequalities)
            if (a == b) witness = a;
        cur.abox.concept_assertions.push_back({true, a0, witness, {}});
        cur.abox.concept_assertions.push_back({false, a0, witness, {}});
    }
    cur.abox.inequalities.clear();
    cur.una = true;
    return cur;
}

Verdict enumerate_identifications(const KnowledgeBase& k,
                                  const std::function<Verdict(const KnowledgeBase&)>& una_sat,
                                  long long partition_cap, long long* partitions_tried) {
    auto [base, plan0] = merge_equalities(k);
    base.una = true;

    // Roles whose successor counts feed a >=q restriction with q >= 2; only
    // merges of such cosuccessor pairs can turn an unsatisfiable quotient into
    // a satisfiable one (counts never drop otherwise).
    auto ord = role_order(base);
    auto ns = number_sets(base.tbox, ord);
    std::set<Role> counted;
    for (const auto& r : ord.roles)
        if (*ns.of(r).rbegin() >= 2) counted.insert(r);

    auto object_set = base.abox.objects();
    std::vector<std::string> objects(object_set.begin(), object_set.end());
    long long tried = 0;
    std::set<std::map<std::string, std::string>> visited;

    std::function<Verdict(const MergePlan&)> search = [&](const MergePlan& pi) -> Verdict {
        std::map<std::string, std::string> canon;
        for (const auto& o : objects) canon[o] = pi.rep(o);
        if (!visited.insert(canon).second) return Verdict::Unsat;
        if (++tried > partition_cap) throw BudgetError("partition cap exceeded");

        KnowledgeBase quot = rename_objects(base, pi);
        for (const auto& [a, b] : quot.abox.inequalities)
            if (a == b) return Verdict::Unsat;  // and for every coarsening
        quot.abox.inequalities.clear();
        quot.abox.equalities.clear();
        quot.una = true;

        Verdict v = una_sat(quot);
        if (v == Verdict::Sat) return Verdict::Sat;
        if (v != Verdict::Unsat) throw FragmentError("identification oracle: " +
                                                     std::string(to_string(v)));

        // Branch over cosuccessor pairs of counted roles in Cl^e(Tra(Cl^e)).
        auto atoms = extended_abox_closure(ord, abox_role_atoms(quot.abox));
        atoms = transitive_abox_closure(quot.tbox, atoms);
        atoms = extended_abox_closure(ord, atoms);
        std::set<std::pair<std::string, std::string>> candidates;
        for (const auto& r : counted) {
            std::map<std::string, std::set<std::string>> succ;
            for (const auto& [x, y] : pairs_of(atoms, r)) succ[x].insert(y);
            for (const auto& [x, ys] : succ) {
                for (auto it1 = ys.begin(); it1 != ys.end(); ++it1)
                    for (auto it2 = std::next(it1); it2 != ys.end(); ++it2)
                        candidates.emplace(*it1, *it2);
            }
        }
        for (const auto& [b, c] : candidates) {
            MergePlan next = pi;
            // Merge the two classes, keeping the minimal representative.
            std::string rb = pi.rep(b), rc = pi.rep(c);
            if (rb == rc) continue;
            if (rc < rb) std::swap(rb, rc);
            for (const auto& o : objects) {
                std::string r = pi.rep(o);
                next.canonical[o] = (r == rc) ? rb : r;
            }
            if (search(next) == Verdict::Sat) return Verdict::Sat;
        }
        return Verdict::Unsat;
    };

    MergePlan identity;
    for (const auto& o : objects) identity.canonical[o] = o;
    Verdict result;
    try {
        result = search(identity);
    } catch (const BudgetError&) {
        if (partitions_tried) *partitions_tried = tried;
        return Verdict::BudgetExceeded;
    }
    if (partitions_tried) *partitions_tried = tried;
    return result;
}

// ---------------------------------------------------------------------------
// Service reductions (section 3.1)

namespace {

// A possibly-negated-basic conjunct list of a concept, or nullopt.
std::optional<std::vector<ConceptPtr>> conjuncts_of(const ConceptPtr& c) {
    if (c->kind() == Concept::Kind::And) {
        auto l = conjuncts_of(c->lhs());
        auto r = conjuncts_of(c->rhs());
        if (!l || !r) return std::nullopt;
        l->insert(l->end(), r->begin(), r->end());
        return l;
    }
    if (c->kind() == Concept::Kind::Basic) return std::vector<ConceptPtr>{c};
    if (c->kind() == Concept::Kind::Not && c->child()->kind() == Concept::Kind::Basic)
        return std::vector<ConceptPtr>{c};
    return std::nullopt;
}

} // namespace

std::vector<KnowledgeBase> reduce_subsumption(const TBox& t, const ConceptPtr& c1,
                                              const ConceptPtr& c2) {
    KnowledgeBase probe;
    probe.tbox = t;
    auto taken = all_names(probe);
    std::string an = fresh_name("_chk", taken);
    std::string obj = fresh_name("_w", taken);

    std::vector<KnowledgeBase> out;
    auto make = [&](const ConceptPtr& piece) {
        KnowledgeBase kb;
        kb.tbox = t;
        kb.tbox.concept_inclusions.push_back({Concept::atom(an), c1, {}});
        // A <= not D written Horn-style as A & D <= bot.
        if (piece->kind() == Concept::Kind::Not)
            kb.tbox.concept_inclusions.push_back({Concept::atom(an), piece->child(), {}});
        else
            kb.tbox.concept_inclusions.push_back(
                {Concept::conj(Concept::atom(an), piece), Concept::bottom(), {}});
        kb.abox.concept_assertions.push_back({true, an, obj, {}});
        return kb;
    };
    if (auto cs = conjuncts_of(c2)) {
        for (const auto& piece : *cs) out.push_back(make(piece));
    } else {
        KnowledgeBase kb;
        kb.tbox = t;
        kb.tbox.concept_inclusions.push_back({Concept::atom(an), c1, {}});
        kb.tbox.concept_inclusions.push_back({Concept::atom(an), Concept::negate(c2), {}});
        kb.abox.concept_assertions.push_back({true, an, obj, {}});
        out.push_back(kb);
    }
    return out;
}

std::vector<KnowledgeBase> reduce_instance_check(const KnowledgeBase& k, const std::string& a,
                                                 const ConceptPtr& c) {
    auto taken = all_names(k);
    std::string an = fresh_name("_chk", taken);

    std::vector<KnowledgeBase> out;
    auto with_piece = [&](const ConceptPtr& piece) {
        KnowledgeBase kb = k;
        if (piece->kind() == Concept::Kind::Not)
            kb.tbox.concept_inclusions.push_back({Concept::atom(an), piece->child(), {}});
        else
            kb.tbox.concept_inclusions.push_back(
                {Concept::conj(Concept::atom(an), piece), Concept::bottom(), {}});
        kb.abox.concept_assertions.push_back({true, an, a, {}});
        return kb;
    };
    if (auto cs = conjuncts_of(c)) {
        for (const auto& piece : *cs) out.push_back(with_piece(piece));
    } else {
        KnowledgeBase kb = k;
        kb.tbox.concept_inclusions.push_back({Concept::atom(an), Concept::negate(c), {}});
        kb.abox.concept_assertions.push_back({true, an, a, {}});
        out.push_back(kb);
    }
    return out;
}

KnowledgeBase reduce_concept_sat(const TBox& t, const ConceptPtr& c) {
    KnowledgeBase probe;
    probe.tbox = t;
    auto taken = all_names(probe);
    std::string an = fresh_name("_chk", taken);
    std::string obj = fresh_name("_w", taken);

    KnowledgeBase kb;
    kb.tbox = t;
    kb.tbox.concept_inclusions.push_back({Concept::atom(an), c, {}});
    kb.abox.concept_assertions.push_back({true, an, obj, {}});
    return kb;
}

} // namespace dlite
