#include "dlite/fol.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dlite {

std::string UnaryPredicate::str() const {
    if (kind == Kind::ConceptPred) return name;
    return "E" + std::to_string(q) + " " + role.str();
}

std::string Constant::str() const {
    if (kind == Kind::Obj) return obj;
    return "d" + role.str();
}

QFormPtr QForm::atom(UnaryPredicate p, QTerm t) {
    auto f = std::make_shared<QForm>();
    f->kind = Kind::Atom;
    f->pred = std::move(p);
    f->term = std::move(t);
    return f;
}
QFormPtr QForm::truth() {
    auto f = std::make_shared<QForm>();
    f->kind = Kind::True;
    return f;
}
QFormPtr QForm::falsity() {
    auto f = std::make_shared<QForm>();
    f->kind = Kind::False;
    return f;
}
QFormPtr QForm::negate(QFormPtr inner) {
    auto f = std::make_shared<QForm>();
    f->kind = Kind::Not;
    f->lhs = std::move(inner);
    return f;
}
QFormPtr QForm::conj(QFormPtr a, QFormPtr b) {
    auto f = std::make_shared<QForm>();
    f->kind = Kind::And;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

std::string QForm::str() const {
    switch (kind) {
        case Kind::Atom: {
            std::string t = term.is_var ? "x" : term.constant.str();
            return pred.str() + "(" + t + ")";
        }
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Not: return "not " + (lhs->kind == Kind::Atom ? lhs->str() : "(" + lhs->str() + ")");
        case Kind::And: {
            auto wrap = [](const QFormPtr& f) {
                return f->kind == Kind::And ? "(" + f->str() + ")" : f->str();
            };
            return wrap(lhs) + " & " + wrap(rhs);
        }
    }
    return "?";
}

std::string GroundLiteral::str() const {
    std::string s = pred.str() + "(" + constant.str() + ")";
    return positive ? s : "not " + s;
}

std::vector<const QImplication*> QL1Sentence::universal() const {
    std::vector<const QImplication*> out;
    for (const auto& i : tstar) out.push_back(&i);
    for (const auto& i : trole) out.push_back(&i);
    for (const auto& i : eps) out.push_back(&i);
    for (const auto& i : delta) out.push_back(&i);
    return out;
}

std::vector<std::string> QL1Sentence::universal_strings() const {
    std::vector<std::string> out;
    for (const auto* i : universal()) out.push_back(i->str());
    return out;
}

namespace {

QFormPtr concept_star(const ConceptPtr& c) {
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            switch (b.kind) {
                case BasicConcept::Kind::Bottom: return QForm::falsity();
                case BasicConcept::Kind::Atom:
                    return QForm::atom(UnaryPredicate::concept_pred(b.name), QTerm::x());
                case BasicConcept::Kind::AtLeast:
                    return QForm::atom(UnaryPredicate::eq_pred(b.q, b.role), QTerm::x());
            }
            return QForm::falsity();
        }
        case Concept::Kind::Not:
            return QForm::negate(concept_star(c->child()));
        case Concept::Kind::And:
            return QForm::conj(concept_star(c->lhs()), concept_star(c->rhs()));
        case Concept::Kind::AtLeastQ:
            throw FragmentError("qualified restriction reached the translation");
    }
    return QForm::falsity();
}

} // namespace

QL1Sentence translate(const HNminusKB& k) {
    const KnowledgeBase& kb = k.kb;
    if (!kb.tbox.role_constraints.empty())
        throw FragmentError("role constraints reached the translation");

    QL1Sentence s;

    for (const auto& ci : kb.tbox.concept_inclusions)
        s.tstar.push_back({concept_star(ci.lhs), concept_star(ci.rhs)});

    // (42): one implication per stored inclusion and its inverse image.
    for (const auto& ri : kb.tbox.role_inclusions) {
        for (int side = 0; side < 2; ++side) {
            Role sub = side == 0 ? ri.sub : inv(ri.sub);
            Role sup = side == 0 ? ri.sup : inv(ri.sup);
            for (qint q : k.numbers.of(sub))
                s.trole.push_back({QForm::atom(UnaryPredicate::eq_pred(q, sub), QTerm::x()),
                                   QForm::atom(UnaryPredicate::eq_pred(q, sup), QTerm::x())});
        }
    }

    for (const auto& r : k.order.roles) {
        s.eps.push_back({QForm::atom(UnaryPredicate::eq_pred(1, r), QTerm::x()),
                         QForm::atom(UnaryPredicate::eq_pred(1, inv(r)),
                                     QTerm::c(Constant::dr(inv(r))))});
        const auto& qs = k.numbers.of(r);
        qint prev = 0;
        for (qint v : qs) {
            if (prev >= 1 && v > prev)
                s.delta.push_back({QForm::atom(UnaryPredicate::eq_pred(v, r), QTerm::x()),
                                   QForm::atom(UnaryPredicate::eq_pred(prev, r), QTerm::x())});
            prev = v;
        }
    }

    // A#1
    for (const auto& ca : kb.abox.concept_assertions)
        s.ground.push_back({ca.positive, UnaryPredicate::concept_pred(ca.concept_name),
                            Constant::object(ca.object)});

    // A#2 over Cl^e, with q^e_{R,a} counted under the UNA.
    auto cl = extended_abox_closure(k.order, abox_role_atoms(kb.abox));
    for (const auto& r : k.order.roles) {
        std::map<std::string, std::set<std::string>> succ;
        for (const auto& [x, y] : pairs_of(cl, r)) succ[x].insert(y);
        for (const auto& [a, ys] : succ) {
            if (ys.empty()) continue;
            qint qe = k.numbers.max_at_most(r, static_cast<qint>(ys.size()));
            if (qe >= 1)
                s.ground.push_back(
                    {true, UnaryPredicate::eq_pred(qe, r), Constant::object(a)});
        }
    }
    for (const auto& ra : kb.abox.role_assertions) {
        if (ra.positive) continue;
        if (pairs_of(cl, Role{ra.role_name, false}).count({ra.subject, ra.object}))
            s.contradiction = true;
    }

    for (const auto& o : kb.abox.objects()) s.constants.push_back(Constant::object(o));
    for (const auto& r : k.order.roles) s.constants.push_back(Constant::dr(r));
    return s;
}

// ---------------------------------------------------------------------------
// Grounding

namespace {

struct GroundCtx {
    ClauseSet* cs;
    std::map<std::string, int> defs;  // definitional atoms by structural key

    int atom_id(const UnaryPredicate& p, const Constant& c) {
        return cs->intern(p.str() + "(" + c.str() + ")");
    }
};

struct GFlat {
    // NNF over ground literals: either a literal, or an AND/OR list.
    enum class Kind { Lit, And, Or, True, False };
    Kind kind = Kind::True;
    int lit = 0;
    std::vector<GFlat> children;
};

GFlat nnf_ground(const QFormPtr& f, bool neg, const Constant& c, GroundCtx& ctx) {
    switch (f->kind) {
        case QForm::Kind::True:
            return GFlat{neg ? GFlat::Kind::False : GFlat::Kind::True, 0, {}};
        case QForm::Kind::False:
            return GFlat{neg ? GFlat::Kind::True : GFlat::Kind::False, 0, {}};
        case QForm::Kind::Atom: {
            const Constant& at = f->term.is_var ? c : f->term.constant;
            int id = ctx.atom_id(f->pred, at) + 1;
            return GFlat{GFlat::Kind::Lit, neg ? -id : id, {}};
        }
        case QForm::Kind::Not:
            return nnf_ground(f->lhs, !neg, c, ctx);
        case QForm::Kind::And: {
            GFlat g{neg ? GFlat::Kind::Or : GFlat::Kind::And, 0, {}};
            for (const auto& ch : {f->lhs, f->rhs}) {
                GFlat sub = nnf_ground(ch, neg, c, ctx);
                if (sub.kind == GFlat::Kind::True) {
                    if (g.kind == GFlat::Kind::Or) return sub;
                    continue;
                }
                if (sub.kind == GFlat::Kind::False) {
                    if (g.kind == GFlat::Kind::And) return sub;
                    continue;
                }
                if (sub.kind == g.kind) {
                    for (auto& s : sub.children) g.children.push_back(std::move(s));
                } else {
                    g.children.push_back(std::move(sub));
                }
            }
            if (g.children.empty())
                return GFlat{g.kind == GFlat::Kind::And ? GFlat::Kind::True : GFlat::Kind::False,
                             0,
                             {}};
            if (g.children.size() == 1) return g.children[0];
            return g;
        }
    }
    return {};
}

std::string gflat_key(const GFlat& g) {
    switch (g.kind) {
        case GFlat::Kind::Lit: return std::to_string(g.lit);
        case GFlat::Kind::True: return "T";
        case GFlat::Kind::False: return "F";
        case GFlat::Kind::And:
        case GFlat::Kind::Or: {
            std::string s = g.kind == GFlat::Kind::And ? "&(" : "|(";
            for (const auto& ch : g.children) s += gflat_key(ch) + ",";
            return s + ")";
        }
    }
    return "?";
}

// Definitional literal for a positively-occurring subformula.
int define(const GFlat& g, GroundCtx& ctx);

void emit_clause_of_or(const GFlat& g, std::vector<int> prefix, GroundCtx& ctx) {
    // g is an Or node (or literal); emit prefix + disjuncts as one clause.
    std::vector<int> clause = std::move(prefix);
    if (g.kind == GFlat::Kind::Lit) {
        clause.push_back(g.lit);
    } else if (g.kind == GFlat::Kind::True) {
        return;
    } else if (g.kind == GFlat::Kind::False) {
        // nothing to add
    } else if (g.kind == GFlat::Kind::Or) {
        for (const auto& ch : g.children) {
            switch (ch.kind) {
                case GFlat::Kind::Lit: clause.push_back(ch.lit); break;
                case GFlat::Kind::True: return;
                case GFlat::Kind::False: break;
                default: clause.push_back(define(ch, ctx)); break;
            }
        }
    } else {
        clause.push_back(define(g, ctx));
    }
    ctx.cs->add_clause(std::move(clause));
}

int define(const GFlat& g, GroundCtx& ctx) {
    std::string key = gflat_key(g);
    auto it = ctx.defs.find(key);
    if (it != ctx.defs.end()) return it->second + 1;
    int id = ctx.cs->intern("def{" + key + "}");
    ctx.defs[key] = id;
    int lit = id + 1;
    if (g.kind == GFlat::Kind::And) {
        for (const auto& ch : g.children) emit_clause_of_or(ch, {-lit}, ctx);
    } else if (g.kind == GFlat::Kind::Or) {
        emit_clause_of_or(g, {-lit}, ctx);
    }
    return lit;
}

} // namespace

int ClauseSet::intern(const std::string& name) {
    auto it = atom_ids.find(name);
    if (it != atom_ids.end()) return it->second;
    int id = static_cast<int>(atom_names.size());
    atom_names.push_back(name);
    atom_ids.emplace(name, id);
    return id;
}

void ClauseSet::add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i] == -lits[i + 1]) return;  // tautology
    clauses.push_back(std::move(lits));
}

void ClauseSet::compute_shape_hint() {
    if (verify_shape(ShapeHint::Horn))
        shape_hint = ShapeHint::Horn;
    else if (verify_shape(ShapeHint::Krom))
        shape_hint = ShapeHint::Krom;
    else
        shape_hint = ShapeHint::General;
}

bool ClauseSet::verify_shape(ShapeHint h) const {
    for (const auto& cl : clauses) {
        if (h == ShapeHint::Krom && cl.size() > 2) return false;
        if (h == ShapeHint::Horn) {
            int pos = 0;
            for (int l : cl)
                if (l > 0) pos++;
            if (pos > 1) return false;
        }
    }
    return true;
}

size_t ClauseSet::literal_count() const {
    size_t n = 0;
    for (const auto& cl : clauses) n += cl.size();
    return n;
}

std::string ClauseSet::dimacs() const {
    std::ostringstream os;
    for (size_t i = 0; i < atom_names.size(); ++i)
        os << "c " << (i + 1) << " " << atom_names[i] << "\n";
    os << "p cnf " << atom_names.size() << " " << clauses.size() << "\n";
    for (const auto& cl : clauses) {
        for (int l : cl) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

ClauseSet ground(const QL1Sentence& s) {
    ClauseSet cs;
    GroundCtx ctx{&cs, {}};

    std::vector<Constant> constants = s.constants;
    if (constants.empty()) constants.push_back(Constant::object("_c0"));

    if (s.contradiction) cs.add_clause({});

    for (const auto& g : s.ground) {
        int id = ctx.atom_id(g.pred, g.constant) + 1;
        cs.add_clause({g.positive ? id : -id});
    }

    for (const auto& c : constants) {
        for (const auto* impl : s.universal()) {
            GFlat lhs = nnf_ground(impl->lhs, true, c, ctx);   // negated premise
            GFlat rhs = nnf_ground(impl->rhs, false, c, ctx);
            GFlat disj{GFlat::Kind::Or, 0, {}};
            for (GFlat* side : {&lhs, &rhs}) {
                if (side->kind == GFlat::Kind::True) { disj.kind = GFlat::Kind::True; break; }
                if (side->kind == GFlat::Kind::False) continue;
                if (side->kind == GFlat::Kind::Or)
                    for (auto& ch : side->children) disj.children.push_back(std::move(ch));
                else
                    disj.children.push_back(std::move(*side));
            }
            if (disj.kind == GFlat::Kind::True) continue;
            emit_clause_of_or(disj, {}, ctx);
        }
    }
    cs.compute_shape_hint();
    return cs;
}

} // namespace dlite
