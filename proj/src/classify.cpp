#include <algorithm>
#include <optional>
#include <sstream>

#include "dlite/closure.hpp"
#include "dlite/model.hpp"

namespace dlite {

namespace {

// A literal of the clausal view of a concept inclusion: a (possibly negated)
// basic concept, or a qualified restriction treated as an opaque atom.
struct ShapeLit {
    bool positive = true;
    bool qualified = false;
    BasicConcept basic;   // when !qualified
    std::string qual_key; // when qualified
    bool operator==(const ShapeLit& o) const {
        return positive == o.positive && qualified == o.qualified && basic == o.basic &&
               qual_key == o.qual_key;
    }
};

struct NForm {
    enum class Kind { Lit, And, Or, True, False };
    Kind kind = Kind::True;
    ShapeLit lit;
    std::vector<NForm> children;
};

NForm nnf(const ConceptPtr& c, bool negated) {
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            if (b.kind == BasicConcept::Kind::Bottom)
                return NForm{negated ? NForm::Kind::True : NForm::Kind::False, {}, {}};
            NForm f{NForm::Kind::Lit, {}, {}};
            f.lit = ShapeLit{!negated, false, b, {}};
            return f;
        }
        case Concept::Kind::Not:
            return nnf(c->child(), !negated);
        case Concept::Kind::And: {
            NForm f{negated ? NForm::Kind::Or : NForm::Kind::And, {}, {}};
            f.children.push_back(nnf(c->lhs(), negated));
            f.children.push_back(nnf(c->rhs(), negated));
            return f;
        }
        case Concept::Kind::AtLeastQ: {
            NForm f{NForm::Kind::Lit, {}, {}};
            f.lit = ShapeLit{!negated, true, {}, c->str()};
            return f;
        }
    }
    return {};
}

using ShapeClause = std::vector<ShapeLit>;

// CNF by distribution; nullopt when the result would explode (treated as Bool).
std::optional<std::vector<ShapeClause>> to_cnf(const NForm& f) {
    constexpr size_t kCap = 512;
    switch (f.kind) {
        case NForm::Kind::True: return std::vector<ShapeClause>{};
        case NForm::Kind::False: return std::vector<ShapeClause>{{}};
        case NForm::Kind::Lit: return std::vector<ShapeClause>{{f.lit}};
        case NForm::Kind::And: {
            std::vector<ShapeClause> out;
            for (const auto& ch : f.children) {
                auto sub = to_cnf(ch);
                if (!sub) return std::nullopt;
                out.insert(out.end(), sub->begin(), sub->end());
                if (out.size() > kCap) return std::nullopt;
            }
            return out;
        }
        case NForm::Kind::Or: {
            std::vector<ShapeClause> acc{{}};
            for (const auto& ch : f.children) {
                auto sub = to_cnf(ch);
                if (!sub) return std::nullopt;
                if (sub->empty()) return std::vector<ShapeClause>{};  // true disjunct
                std::vector<ShapeClause> next;
                for (const auto& a : acc)
                    for (const auto& b : *sub) {
                        ShapeClause c = a;
                        c.insert(c.end(), b.begin(), b.end());
                        next.push_back(std::move(c));
                    }
                if (next.size() > kCap) return std::nullopt;
                acc = std::move(next);
            }
            return acc;
        }
    }
    return std::nullopt;
}

Shape join(Shape a, Shape b) {
    if (a == b) return a;
    if (a == Shape::Core) return b;
    if (b == Shape::Core) return a;
    return Shape::Bool;
}

Shape clause_shape(const ShapeClause& cl) {
    size_t pos = 0;
    for (const auto& l : cl)
        if (l.positive) pos++;
    if (cl.size() <= 2 && pos <= 1) return Shape::Core;
    if (cl.size() <= 2) return Shape::Krom;
    if (pos <= 1) return Shape::Horn;
    return Shape::Bool;
}

Shape inclusion_shape(const ConceptInclusion& ci) {
    NForm f{NForm::Kind::Or, {}, {}};
    f.children.push_back(nnf(ci.lhs, true));
    f.children.push_back(nnf(ci.rhs, false));
    auto cnf = to_cnf(f);
    if (!cnf) return Shape::Bool;
    Shape s = Shape::Core;
    for (const auto& cl : *cnf) s = join(s, clause_shape(cl));
    return s;
}

// Clausal view used for the functional-form test: an axiom is a functionality
// constraint for R iff its clauses are exactly { (not >=2 R) }.
bool is_functionality_form(const ConceptInclusion& ci, Role* out_role) {
    NForm f{NForm::Kind::Or, {}, {}};
    f.children.push_back(nnf(ci.lhs, true));
    f.children.push_back(nnf(ci.rhs, false));
    auto cnf = to_cnf(f);
    if (!cnf || cnf->size() != 1) return false;
    const auto& cl = (*cnf)[0];
    if (cl.size() != 1) return false;
    const auto& l = cl[0];
    if (l.positive || l.qualified) return false;
    if (l.basic.kind != BasicConcept::Kind::AtLeast || l.basic.q != 2) return false;
    if (out_role) *out_role = l.basic.role;
    return true;
}

struct Occurrence {
    BasicConcept basic;
    bool qualified = false;
    qint q = 0;
    Role role;
    bool positive = true;  // positive occurrence per the even/odd-negation rule
    std::string where;
};

void scan_occurrences(const ConceptPtr& c, bool positive, const std::string& where,
                      std::vector<Occurrence>& out) {
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            if (b.kind == BasicConcept::Kind::AtLeast)
                out.push_back({b, false, b.q, b.role, positive, where});
            break;
        }
        case Concept::Kind::Not:
            scan_occurrences(c->child(), !positive, where, out);
            break;
        case Concept::Kind::And:
            scan_occurrences(c->lhs(), positive, where, out);
            scan_occurrences(c->rhs(), positive, where, out);
            break;
        case Concept::Kind::AtLeastQ: {
            out.push_back({{}, true, c->q(), c->role(), positive, where});
            scan_occurrences(c->filler(), positive, where, out);
            break;
        }
    }
}

// A qualified filler must be a conjunction of right-hand-side admissible
// concepts: (possibly negated) basics or nested qualified restrictions.
bool filler_ok(const ConceptPtr& c) {
    switch (c->kind()) {
        case Concept::Kind::Basic: return true;
        case Concept::Kind::Not: return c->child()->kind() == Concept::Kind::Basic;
        case Concept::Kind::And: return filler_ok(c->lhs()) && filler_ok(c->rhs());
        case Concept::Kind::AtLeastQ: return filler_ok(c->filler());
    }
    return false;
}

void scan_bad_fillers(const ConceptPtr& c, const std::string& where,
                      std::vector<std::string>& violations) {
    switch (c->kind()) {
        case Concept::Kind::Basic: return;
        case Concept::Kind::Not: return scan_bad_fillers(c->child(), where, violations);
        case Concept::Kind::And:
            scan_bad_fillers(c->lhs(), where, violations);
            scan_bad_fillers(c->rhs(), where, violations);
            return;
        case Concept::Kind::AtLeastQ:
            if (!filler_ok(c->filler()))
                violations.push_back("(A1) filler not a conjunction of admissible concepts in " +
                                     where);
            scan_bad_fillers(c->filler(), where, violations);
            return;
    }
}

std::string family_label(const FragmentReport& r) {
    std::string sup;
    bool paren = r.has_role_constraints || r.has_qualified || r.has_transitivity;
    if (paren) {
        sup = r.numbers == Numbers::N ? "(HN)" : "(HF)";
        if (r.has_transitivity) sup += "+";
    } else if (r.has_role_inclusions && r.numbers != Numbers::None) {
        std::string hn = r.numbers == Numbers::N ? "HN" : "HF";
        sup = r.a123_violations.empty() ? "(" + hn + ")" : hn;
    } else if (r.has_role_inclusions) {
        sup = "H";
    } else if (r.numbers == Numbers::F) {
        sup = "F";
    } else if (r.numbers == Numbers::N) {
        sup = "N";
    }
    std::string label = "DL-Lite_" + std::string(to_string(r.shape));
    if (!sup.empty()) label += "^" + sup;
    return label;
}

} // namespace

FragmentReport classify(const KnowledgeBase& k) {
    FragmentReport rep;
    const TBox& t = k.tbox;
    auto ord = role_order(k);

    for (const auto& rc : t.role_constraints) {
        if (rc.kind == RoleConstraint::Kind::Tra)
            rep.has_transitivity = true;
        else
            rep.has_role_constraints = true;
    }
    rep.has_role_inclusions = !t.role_inclusions.empty();

    std::vector<Occurrence> occs;
    for (const auto& ci : t.concept_inclusions) {
        rep.shape = join(rep.shape, inclusion_shape(ci));
        scan_occurrences(ci.lhs, false, ci.str(), occs);
        scan_occurrences(ci.rhs, true, ci.str(), occs);
        scan_bad_fillers(ci.lhs, ci.str(), rep.a123_violations);
        scan_bad_fillers(ci.rhs, ci.str(), rep.a123_violations);
        if (ci.lhs->is_top() && ci.rhs->kind() != Concept::Kind::AtLeastQ)
            rep.notes.push_back("top on lhs treated as empty conjunction: " + ci.str());
    }

    // Numbers feature: none / functional-only / arbitrary.
    std::set<Role> functional_only;
    for (const auto& ci : t.concept_inclusions) {
        Role r;
        if (is_functionality_form(ci, &r)) functional_only.insert(r);
    }
    bool any_q2 = false, beyond_functional = false;
    for (const auto& o : occs) {
        if (o.q < 2) continue;
        any_q2 = true;
        if (o.qualified) {
            beyond_functional = true;
        } else if (!(o.q == 2 && !o.positive && functional_only.count(o.role))) {
            beyond_functional = true;
        }
    }
    rep.numbers = !any_q2 ? Numbers::None : (beyond_functional ? Numbers::N : Numbers::F);

    // (A1): qualified restrictions occur only positively.
    for (const auto& o : occs) {
        if (o.qualified) {
            rep.has_qualified = true;
            if (!o.positive)
                rep.a123_violations.push_back("(A1) negative qualified restriction in " + o.where);
        }
    }
    // (A2): a qualified >=q R.C bans negative >=q' R / >=q' inv(R), q' >= 2.
    std::set<std::string> qualified_roles;
    for (const auto& o : occs)
        if (o.qualified) qualified_roles.insert(o.role.name);
    for (const auto& o : occs) {
        if (!o.qualified && !o.positive && o.q >= 2 && qualified_roles.count(o.role.name))
            rep.a123_violations.push_back("(A2) negative >=q " + o.role.str() +
                                          " with qualified restriction on the role, in " + o.where);
    }
    // (A3): roles with a proper sub-role admit no negative >=q, q >= 2.
    for (const auto& o : occs) {
        if (o.qualified || o.positive || o.q < 2) continue;
        if (ord.has_proper_sub(o.role) || ord.has_proper_sub(inv(o.role)))
            rep.a123_violations.push_back("(A3) negative >=" + std::to_string(o.q) + " " +
                                          o.role.str() + " but the role has a proper sub-role, in " +
                                          o.where);
    }

    // Simple-role restriction: >=q R with q >= 2 needs R without transitive sub-roles.
    std::set<Role> transitive;
    for (const auto& rc : t.role_constraints)
        if (rc.kind == RoleConstraint::Kind::Tra) {
            transitive.insert(Role{rc.name, false});
            transitive.insert(Role{rc.name, true});
        }
    auto non_simple = [&](const Role& r) {
        for (const auto& s : transitive)
            if (ord.leq(s, r) || ord.leq(s, inv(r))) return true;
        return false;
    };
    for (const auto& o : occs) {
        if (o.q >= 2 && non_simple(o.role))
            rep.non_simple_number_restrictions.push_back(
                ">=" + std::to_string(o.q) + " " + o.role.str() + " on a non-simple role, in " +
                o.where);
    }

    rep.family_label = family_label(rep);
    return rep;
}

} // namespace dlite
