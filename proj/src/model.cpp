#include "dlite/model.hpp"

#include <algorithm>
#include <sstream>

namespace dlite {

std::string SourceSpan::str() const {
    std::ostringstream os;
    os << line_begin << ":" << col_begin;
    return os.str();
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "sat";
        case Verdict::Unsat: return "unsat";
        case Verdict::FragmentUnsupported: return "fragment-unsupported";
        case Verdict::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

const char* to_string(Shape s) {
    switch (s) {
        case Shape::Core: return "core";
        case Shape::Krom: return "krom";
        case Shape::Horn: return "horn";
        case Shape::Bool: return "bool";
    }
    return "?";
}

const char* to_string(Numbers n) {
    switch (n) {
        case Numbers::None: return "none";
        case Numbers::F: return "F";
        case Numbers::N: return "N";
    }
    return "?";
}

std::string BasicConcept::str() const {
    switch (kind) {
        case Kind::Bottom: return "bot";
        case Kind::Atom: return name;
        case Kind::AtLeast:
            if (q == 1) return "exists " + role.str();
            return ">=" + std::to_string(q) + " " + role.str();
    }
    return "?";
}

ConceptPtr Concept::basic(BasicConcept b) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = Kind::Basic;
    c->basic_ = std::move(b);
    return c;
}

ConceptPtr Concept::negate(ConceptPtr inner) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = Kind::Not;
    c->lhs_ = std::move(inner);
    return c;
}

ConceptPtr Concept::conj(ConceptPtr a, ConceptPtr b) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = Kind::And;
    c->lhs_ = std::move(a);
    c->rhs_ = std::move(b);
    return c;
}

ConceptPtr Concept::disj(ConceptPtr a, ConceptPtr b) {
    return negate(conj(negate(std::move(a)), negate(std::move(b))));
}

ConceptPtr Concept::at_most(qint q, Role r) {
    return negate(at_least(q + 1, std::move(r)));
}

ConceptPtr Concept::at_least_q(qint q, Role r, ConceptPtr filler) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = Kind::AtLeastQ;
    c->q_ = q;
    c->role_ = std::move(r);
    c->rhs_ = std::move(filler);
    return c;
}

std::string Concept::str() const {
    switch (kind_) {
        case Kind::Basic:
            if (is_bottom()) return "bot";
            return basic_.str();
        case Kind::Not:
            if (is_top()) return "top";
            return "not " + (lhs_->kind() == Kind::Basic ? lhs_->str() : "(" + lhs_->str() + ")");
        case Kind::And: {
            auto wrap = [](const ConceptPtr& c) {
                if (c->kind() == Kind::And) return "(" + c->str() + ")";
                return c->str();
            };
            return wrap(lhs_) + " & " + wrap(rhs_);
        }
        case Kind::AtLeastQ:
            return ">=" + std::to_string(q_) + " " + role_.str() + " . (" + rhs_->str() + ")";
    }
    return "?";
}

bool equal(const ConceptPtr& a, const ConceptPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind_ != b->kind_) return false;
    switch (a->kind_) {
        case Concept::Kind::Basic: return a->basic_ == b->basic_;
        case Concept::Kind::Not: return equal(a->lhs_, b->lhs_);
        case Concept::Kind::And: return equal(a->lhs_, b->lhs_) && equal(a->rhs_, b->rhs_);
        case Concept::Kind::AtLeastQ:
            return a->q_ == b->q_ && a->role_ == b->role_ && equal(a->rhs_, b->rhs_);
    }
    return false;
}

bool concept_less(const ConceptPtr& a, const ConceptPtr& b) {
    return a->str() < b->str();
}

std::string RoleConstraint::str() const {
    switch (kind) {
        case Kind::Dis: return "dis(" + r1.str() + "," + r2.str() + ")";
        case Kind::Sym: return "sym(" + name + ")";
        case Kind::Asym: return "asym(" + name + ")";
        case Kind::Ref: return "ref(" + name + ")";
        case Kind::Irr: return "irr(" + name + ")";
        case Kind::Tra: return "tra(" + name + ")";
    }
    return "?";
}

std::string ConceptInclusion::str() const { return lhs->str() + " <= " + rhs->str(); }

std::string ConceptAssertion::str() const {
    std::string s = concept_name + "(" + object + ")";
    return positive ? s : "not " + s;
}

std::string RoleAssertion::str() const {
    std::string s = role_name + "(" + subject + "," + object + ")";
    return positive ? s : "not " + s;
}

std::set<std::string> ABox::objects() const {
    std::set<std::string> obs;
    for (const auto& ca : concept_assertions) obs.insert(ca.object);
    for (const auto& ra : role_assertions) {
        obs.insert(ra.subject);
        obs.insert(ra.object);
    }
    for (const auto& [a, b] : equalities) {
        obs.insert(a);
        obs.insert(b);
    }
    for (const auto& [a, b] : inequalities) {
        obs.insert(a);
        obs.insert(b);
    }
    return obs;
}

namespace {

void collect_concept_symbols(const ConceptPtr& c, std::set<std::string>& roles,
                             std::set<std::string>& concepts) {
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            if (b.kind == BasicConcept::Kind::Atom) concepts.insert(b.name);
            if (b.kind == BasicConcept::Kind::AtLeast) roles.insert(b.role.name);
            break;
        }
        case Concept::Kind::Not:
            collect_concept_symbols(c->child(), roles, concepts);
            break;
        case Concept::Kind::And:
            collect_concept_symbols(c->lhs(), roles, concepts);
            collect_concept_symbols(c->rhs(), roles, concepts);
            break;
        case Concept::Kind::AtLeastQ:
            roles.insert(c->role().name);
            collect_concept_symbols(c->filler(), roles, concepts);
            break;
    }
}

} // namespace

std::set<std::string> role_names(const KnowledgeBase& kb) {
    std::set<std::string> roles, concepts;
    for (const auto& ci : kb.tbox.concept_inclusions) {
        collect_concept_symbols(ci.lhs, roles, concepts);
        collect_concept_symbols(ci.rhs, roles, concepts);
    }
    for (const auto& ri : kb.tbox.role_inclusions) {
        roles.insert(ri.sub.name);
        roles.insert(ri.sup.name);
    }
    for (const auto& rc : kb.tbox.role_constraints) {
        if (rc.kind == RoleConstraint::Kind::Dis) {
            roles.insert(rc.r1.name);
            roles.insert(rc.r2.name);
        } else {
            roles.insert(rc.name);
        }
    }
    for (const auto& ra : kb.abox.role_assertions) roles.insert(ra.role_name);
    return roles;
}

std::set<std::string> concept_names(const KnowledgeBase& kb) {
    std::set<std::string> roles, concepts;
    for (const auto& ci : kb.tbox.concept_inclusions) {
        collect_concept_symbols(ci.lhs, roles, concepts);
        collect_concept_symbols(ci.rhs, roles, concepts);
    }
    for (const auto& ca : kb.abox.concept_assertions) concepts.insert(ca.concept_name);
    return concepts;
}

std::vector<Role> signed_roles(const KnowledgeBase& kb) {
    std::vector<Role> out;
    for (const auto& n : role_names(kb)) {
        out.push_back(Role{n, false});
        out.push_back(Role{n, true});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interpretations

bool Interpretation::in_domain(const std::string& e) const {
    return std::find(domain.begin(), domain.end(), e) != domain.end();
}

std::set<std::pair<std::string, std::string>> Interpretation::role_pairs(const Role& r) const {
    auto it = role_ext.find(r.name);
    if (it == role_ext.end()) throw UnknownNameError("unknown role: " + r.name);
    if (!r.inverted) return it->second;
    std::set<std::pair<std::string, std::string>> flipped;
    for (const auto& [x, y] : it->second) flipped.emplace(y, x);
    return flipped;
}

std::set<std::string> Interpretation::eval(const ConceptPtr& c) const {
    std::set<std::string> all(domain.begin(), domain.end());
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            switch (b.kind) {
                case BasicConcept::Kind::Bottom: return {};
                case BasicConcept::Kind::Atom: {
                    auto it = concept_ext.find(b.name);
                    if (it == concept_ext.end())
                        throw UnknownNameError("unknown concept: " + b.name);
                    return it->second;
                }
                case BasicConcept::Kind::AtLeast: {
                    auto pairs = role_pairs(b.role);
                    std::map<std::string, qint> succ;
                    for (const auto& [x, y] : pairs) succ[x]++;
                    std::set<std::string> out;
                    for (const auto& [x, n] : succ)
                        if (n >= b.q) out.insert(x);
                    return out;
                }
            }
            return {};
        }
        case Concept::Kind::Not: {
            auto inner = eval(c->child());
            std::set<std::string> out;
            std::set_difference(all.begin(), all.end(), inner.begin(), inner.end(),
                                std::inserter(out, out.begin()));
            return out;
        }
        case Concept::Kind::And: {
            auto a = eval(c->lhs());
            auto b = eval(c->rhs());
            std::set<std::string> out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(out, out.begin()));
            return out;
        }
        case Concept::Kind::AtLeastQ: {
            auto pairs = role_pairs(c->role());
            auto filler = eval(c->filler());
            std::map<std::string, qint> succ;
            for (const auto& [x, y] : pairs)
                if (filler.count(y)) succ[x]++;
            std::set<std::string> out;
            for (const auto& [x, n] : succ)
                if (n >= c->q()) out.insert(x);
            return out;
        }
    }
    return {};
}

ModelCheckResult check_model(const Interpretation& i, const KnowledgeBase& k) {
    ModelCheckResult res;
    auto violated = [&](const std::string& what) {
        res.satisfied = false;
        res.violations.push_back(what);
    };
    auto elem = [&](const std::string& obj) -> const std::string& {
        auto it = i.object_map.find(obj);
        if (it == i.object_map.end()) throw UnknownNameError("object not mapped: " + obj);
        return it->second;
    };

    for (const auto& ci : k.tbox.concept_inclusions) {
        auto a = i.eval(ci.lhs);
        auto b = i.eval(ci.rhs);
        if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) violated(ci.str());
    }
    for (const auto& ri : k.tbox.role_inclusions) {
        auto a = i.role_pairs(ri.sub);
        auto b = i.role_pairs(ri.sup);
        if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) violated(ri.str());
    }
    for (const auto& rc : k.tbox.role_constraints) {
        switch (rc.kind) {
            case RoleConstraint::Kind::Dis: {
                auto a = i.role_pairs(rc.r1);
                auto b = i.role_pairs(rc.r2);
                std::set<std::pair<std::string, std::string>> both;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                      std::inserter(both, both.begin()));
                if (!both.empty()) violated(rc.str());
                break;
            }
            case RoleConstraint::Kind::Sym: {
                auto p = i.role_pairs(Role{rc.name, false});
                auto q = i.role_pairs(Role{rc.name, true});
                if (p != q) violated(rc.str());
                break;
            }
            case RoleConstraint::Kind::Asym: {
                auto p = i.role_pairs(Role{rc.name, false});
                bool bad = false;
                for (const auto& [x, y] : p)
                    if (p.count({y, x})) bad = true;
                if (bad) violated(rc.str());
                break;
            }
            case RoleConstraint::Kind::Ref: {
                auto p = i.role_pairs(Role{rc.name, false});
                for (const auto& d : i.domain)
                    if (!p.count({d, d})) {
                        violated(rc.str());
                        break;
                    }
                break;
            }
            case RoleConstraint::Kind::Irr: {
                auto p = i.role_pairs(Role{rc.name, false});
                for (const auto& d : i.domain)
                    if (p.count({d, d})) {
                        violated(rc.str());
                        break;
                    }
                break;
            }
            case RoleConstraint::Kind::Tra: {
                auto p = i.role_pairs(Role{rc.name, false});
                bool bad = false;
                for (const auto& [x, y] : p) {
                    for (const auto& [y2, z] : p)
                        if (y == y2 && !p.count({x, z})) bad = true;
                }
                if (bad) violated(rc.str());
                break;
            }
        }
    }
    for (const auto& ca : k.abox.concept_assertions) {
        auto it = i.concept_ext.find(ca.concept_name);
        if (it == i.concept_ext.end())
            throw UnknownNameError("unknown concept: " + ca.concept_name);
        bool holds = it->second.count(elem(ca.object)) > 0;
        if (holds != ca.positive) violated(ca.str());
    }
    for (const auto& ra : k.abox.role_assertions) {
        auto pairs = i.role_pairs(Role{ra.role_name, false});
        bool holds = pairs.count({elem(ra.subject), elem(ra.object)}) > 0;
        if (holds != ra.positive) violated(ra.str());
    }
    for (const auto& [a, b] : k.abox.equalities)
        if (elem(a) != elem(b)) violated(a + " = " + b);
    for (const auto& [a, b] : k.abox.inequalities)
        if (elem(a) == elem(b)) violated(a + " != " + b);

    if (k.una) {
        std::map<std::string, std::string> seen;
        for (const auto& obj : k.abox.objects()) {
            const auto& e = elem(obj);
            auto [it, fresh] = seen.emplace(e, obj);
            if (!fresh) violated("UNA: " + it->second + " and " + obj + " share an element");
        }
    }
    return res;
}

} // namespace dlite
