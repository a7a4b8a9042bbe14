#include "dlite/rewrite.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>

#include "dlite/fol.hpp"
#include "dlite/sat.hpp"

namespace dlite {

AboxStructure build_abox_structure(const ABox& a) {
    AboxStructure s;
    for (const auto& o : a.objects()) s.domain.push_back(o);
    std::sort(s.domain.begin(), s.domain.end());
    for (size_t i = 0; i < s.domain.size(); ++i) s.index[s.domain[i]] = static_cast<int>(i);
    for (const auto& ca : a.concept_assertions) {
        auto& m = ca.positive ? s.pos_concepts : s.neg_concepts;
        m[ca.concept_name].insert(s.index.at(ca.object));
    }
    for (const auto& ra : a.role_assertions) {
        auto& m = ra.positive ? s.pos_roles : s.neg_roles;
        m[ra.role_name].emplace(s.index.at(ra.subject), s.index.at(ra.object));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Formula factories

namespace {

FOPtr make(FOFormula::Kind k) {
    auto f = std::make_shared<FOFormula>();
    f->kind = k;
    return f;
}

} // namespace

FOPtr FOFormula::truth() { return make(Kind::True); }
FOPtr FOFormula::falsity() { return make(Kind::False); }

FOPtr FOFormula::concept_atom(std::string pred, FOTerm t, bool negated_rel) {
    auto f = std::make_shared<FOFormula>();
    f->kind = Kind::ConceptAtom;
    f->pred = std::move(pred);
    f->terms = {std::move(t)};
    f->negated_rel = negated_rel;
    return f;
}

FOPtr FOFormula::role_atom(std::string pred, FOTerm t1, FOTerm t2, bool negated_rel) {
    auto f = std::make_shared<FOFormula>();
    f->kind = Kind::RoleAtom;
    f->pred = std::move(pred);
    f->terms = {std::move(t1), std::move(t2)};
    f->negated_rel = negated_rel;
    return f;
}

FOPtr FOFormula::eq(FOTerm a, FOTerm b) {
    auto f = make(Kind::Eq);
    const_cast<FOFormula*>(f.get())->terms = {std::move(a), std::move(b)};
    return f;
}

FOPtr FOFormula::neq(FOTerm a, FOTerm b) {
    auto f = make(Kind::Neq);
    const_cast<FOFormula*>(f.get())->terms = {std::move(a), std::move(b)};
    return f;
}

FOPtr FOFormula::conj(std::vector<FOPtr> cs) {
    std::vector<FOPtr> kept;
    for (auto& c : cs) {
        if (c->kind == Kind::True) continue;
        if (c->kind == Kind::False) return falsity();
        kept.push_back(std::move(c));
    }
    if (kept.empty()) return truth();
    if (kept.size() == 1) return kept[0];
    auto f = make(Kind::And);
    const_cast<FOFormula*>(f.get())->children = std::move(kept);
    return f;
}

FOPtr FOFormula::disj(std::vector<FOPtr> cs) {
    std::vector<FOPtr> kept;
    for (auto& c : cs) {
        if (c->kind == Kind::False) continue;
        if (c->kind == Kind::True) return truth();
        kept.push_back(std::move(c));
    }
    if (kept.empty()) return falsity();
    if (kept.size() == 1) return kept[0];
    auto f = make(Kind::Or);
    const_cast<FOFormula*>(f.get())->children = std::move(kept);
    return f;
}

FOPtr FOFormula::negate(FOPtr inner) {
    if (inner->kind == Kind::True) return falsity();
    if (inner->kind == Kind::False) return truth();
    auto f = make(Kind::Not);
    const_cast<FOFormula*>(f.get())->children = {std::move(inner)};
    return f;
}

FOPtr FOFormula::exists(std::string var, FOPtr inner) {
    auto f = make(Kind::Exists);
    auto* m = const_cast<FOFormula*>(f.get());
    m->var = std::move(var);
    m->children = {std::move(inner)};
    return f;
}

FOPtr FOFormula::forall(std::string var, FOPtr inner) {
    auto f = make(Kind::Forall);
    auto* m = const_cast<FOFormula*>(f.get());
    m->var = std::move(var);
    m->children = {std::move(inner)};
    return f;
}

std::string FOFormula::str() const {
    auto term = [](const FOTerm& t) { return t.is_var ? "?" + t.name : t.name; };
    switch (kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::ConceptAtom:
            return (negated_rel ? "~" : "") + pred + "(" + term(terms[0]) + ")";
        case Kind::RoleAtom:
            return (negated_rel ? "~" : "") + pred + "(" + term(terms[0]) + "," +
                   term(terms[1]) + ")";
        case Kind::Eq: return term(terms[0]) + " = " + term(terms[1]);
        case Kind::Neq: return term(terms[0]) + " != " + term(terms[1]);
        case Kind::And: {
            std::string s = "(";
            for (size_t i = 0; i < children.size(); ++i)
                s += (i ? " & " : "") + children[i]->str();
            return s + ")";
        }
        case Kind::Or: {
            std::string s = "(";
            for (size_t i = 0; i < children.size(); ++i)
                s += (i ? " | " : "") + children[i]->str();
            return s + ")";
        }
        case Kind::Not: return "not " + children[0]->str();
        case Kind::Exists: return "exists ?" + var + " . " + children[0]->str();
        case Kind::Forall: return "forall ?" + var + " . " + children[0]->str();
        case Kind::TypeCase: return "[type-case]";
    }
    return "?";
}

std::string FOQuery::str() const {
    std::string s = "(";
    for (size_t i = 0; i < free_vars.size(); ++i) s += (i ? "," : "") + free_vars[i];
    return s + ") := " + formula->str();
}

// ---------------------------------------------------------------------------
// phi_T payload

struct SatTypeData {
    TBox norm_tbox;
    RoleOrder ord;
    NumberSets ns;
    std::vector<BasicConcept> bcon;
    std::map<std::string, int> bcon_index;
    std::vector<Role> roles;  // signed roles, fixed order
    std::vector<int> inv_pos;
    std::vector<int> exists_bit;  // bcon index of >=1 r_i

    struct TypeForm {
        enum class K { Bit, True, False, Not, And };
        K k = K::True;
        int bit = -1;
        std::vector<TypeForm> ch;
    };
    std::vector<std::pair<TypeForm, TypeForm>> inclusions;  // ext(T)

    std::string id_role;                          // "" when absent
    std::map<std::string, std::string> split_of;  // S_P -> P
    std::vector<Cond44Check> cond44;
    std::set<std::string> original_roles;
    long long budget = 1LL << 62;
};

namespace {

SatTypeData::TypeForm compile_typeform(const ConceptPtr& c,
                                       const std::map<std::string, int>& index) {
    using TF = SatTypeData::TypeForm;
    switch (c->kind()) {
        case Concept::Kind::Basic: {
            const auto& b = c->basic();
            if (b.kind == BasicConcept::Kind::Bottom) return TF{TF::K::False, -1, {}};
            TF f{TF::K::Bit, index.at(b.str()), {}};
            return f;
        }
        case Concept::Kind::Not: {
            TF f{TF::K::Not, -1, {compile_typeform(c->child(), index)}};
            return f;
        }
        case Concept::Kind::And: {
            TF f{TF::K::And, -1,
                 {compile_typeform(c->lhs(), index), compile_typeform(c->rhs(), index)}};
            return f;
        }
        case Concept::Kind::AtLeastQ:
            throw FragmentError("qualified restriction in normalized TBox");
    }
    return {};
}

bool eval_typeform(const SatTypeData::TypeForm& f, uint64_t type) {
    using TF = SatTypeData::TypeForm;
    switch (f.k) {
        case TF::K::Bit: return (type >> f.bit) & 1;
        case TF::K::True: return true;
        case TF::K::False: return false;
        case TF::K::Not: return !eval_typeform(f.ch[0], type);
        case TF::K::And: return eval_typeform(f.ch[0], type) && eval_typeform(f.ch[1], type);
    }
    return false;
}

bool type_consistent(const SatTypeData& d, uint64_t type) {
    for (const auto& [lhs, rhs] : d.inclusions)
        if (eval_typeform(lhs, type) && !eval_typeform(rhs, type)) return false;
    return true;
}

// Successors of element `a` under role r over the evaluation structure, with
// the Id / S_P substitution of Cor. 6.2 (Id: the diagonal; S_P: P minus it).
std::set<int> closure_successors(const SatTypeData& d, const AboxStructure& s, int a,
                                 const Role& r) {
    std::set<int> out;
    for (const auto& sub : d.ord.subs(r)) {
        if (!d.id_role.empty() && sub.name == d.id_role) {
            out.insert(a);
            continue;
        }
        auto split = d.split_of.find(sub.name);
        std::string base = split == d.split_of.end() ? sub.name : split->second;
        bool skip_diag = split != d.split_of.end();
        auto it = s.pos_roles.find(base);
        if (it == s.pos_roles.end()) continue;
        for (const auto& [x, y] : it->second) {
            if (!sub.inverted && x == a && (!skip_diag || y != a)) out.insert(y);
            if (sub.inverted && y == a && (!skip_diag || x != a)) out.insert(x);
        }
    }
    return out;
}

bool typecase_eval(const SatTypeData& d, const AboxStructure& s) {
    int nb = static_cast<int>(d.bcon.size());
    int k = static_cast<int>(d.roles.size());
    if (nb > 62) throw BudgetError("type budget exceeded: too many basic concepts");

    // Global conjunct of xi*(x): P^T(x,y) together with the negated assertion
    // P-bar(x,y) refutes every type choice.
    for (const auto& [rn, pairs] : s.neg_roles) {
        for (const auto& [x, y] : pairs) {
            if (closure_successors(d, s, x, Role{rn, false}).count(y)) return false;
        }
    }
    // gamma: the cond44 obligations, evaluated in the structure.
    for (const auto& chk : d.cond44) {
        if (chk.r1 == chk.r2) {
            for (int a = 0; a < static_cast<int>(s.domain.size()); ++a)
                if (closure_successors(d, s, a, chk.r1).count(a)) return false;
            continue;
        }
        for (int a = 0; a < static_cast<int>(s.domain.size()); ++a) {
            auto s1 = closure_successors(d, s, a, chk.r1);
            auto s2 = closure_successors(d, s, a, chk.r2);
            for (int b : s1)
                if (s2.count(b)) return false;
        }
    }

    // Consistent types and their exists-profiles.
    std::vector<uint64_t> consistent;
    uint64_t limit = nb >= 62 ? ~0ull : (1ull << nb);
    for (uint64_t t = 0; t < limit; ++t) {
        if (type_consistent(d, t)) consistent.push_back(t);
        if (t == limit - 1) break;
    }
    if (consistent.empty()) return false;

    auto profile_of = [&](uint64_t t) {
        uint64_t p = 0;
        for (int i = 0; i < k; ++i)
            if ((t >> d.exists_bit[i]) & 1) p |= 1ull << i;
        return p;
    };
    std::set<uint64_t> profiles;
    for (uint64_t t : consistent) profiles.insert(profile_of(t));

    // Per-element admissible types (xi*(x)) and their profile sets.
    int n = static_cast<int>(s.domain.size());
    std::vector<std::set<uint64_t>> elem_profiles;
    bool use_virtual = n == 0;
    int total = use_virtual ? 1 : n;
    for (int a = 0; a < total; ++a) {
        uint64_t req_true = 0, req_false = 0;
        if (!use_virtual) {
            for (const auto& [cn, where] : s.pos_concepts) {
                auto it = d.bcon_index.find(cn);
                if (it != d.bcon_index.end() && where.count(a)) req_true |= 1ull << it->second;
            }
            for (const auto& [cn, where] : s.neg_concepts) {
                auto it = d.bcon_index.find(cn);
                if (it != d.bcon_index.end() && where.count(a)) req_false |= 1ull << it->second;
            }
            for (int i = 0; i < k; ++i) {
                auto succ = closure_successors(d, s, a, d.roles[i]);
                qint cnt = static_cast<qint>(succ.size());
                for (qint q : d.ns.of(d.roles[i])) {
                    if (q <= cnt) {
                        auto it = d.bcon_index.find(BasicConcept::at_least(q, d.roles[i]).str());
                        if (it != d.bcon_index.end()) req_true |= 1ull << it->second;
                    }
                }
            }
        }
        std::set<uint64_t> ps;
        for (uint64_t t : consistent)
            if ((t & req_true) == req_true && (t & req_false) == 0) ps.insert(profile_of(t));
        if (ps.empty()) return false;
        elem_profiles.push_back(std::move(ps));
    }

    if (k == 0) return true;  // only the per-element (or virtual) check remains

    // Enumerate witness-type profiles positionally, tracking (union, diagonal).
    std::set<std::pair<uint64_t, uint64_t>> states{{0, 0}};
    for (int i = 0; i < k; ++i) {
        std::set<std::pair<uint64_t, uint64_t>> next;
        for (const auto& [u, diag] : states)
            for (uint64_t p : profiles)
                next.emplace(u | p, diag | (((p >> i) & 1ull) << i));
        states = std::move(next);
    }
    std::map<uint64_t, bool> g_ok;
    auto elements_ok = [&](uint64_t banned) {
        auto it = g_ok.find(banned);
        if (it != g_ok.end()) return it->second;
        bool ok = true;
        for (const auto& ps : elem_profiles) {
            bool found = false;
            for (uint64_t p : ps)
                if ((p & banned) == 0) {
                    found = true;
                    break;
                }
            if (!found) {
                ok = false;
                break;
            }
        }
        g_ok[banned] = ok;
        return ok;
    };
    for (const auto& [u, diag] : states) {
        bool internal = true;
        uint64_t banned = 0;
        for (int i = 0; i < k; ++i) {
            bool witness_ok = (diag >> d.inv_pos[i]) & 1;
            if (((u >> i) & 1) && !witness_ok) {
                internal = false;
                break;
            }
            if (!witness_ok) banned |= 1ull << i;
        }
        if (!internal) continue;
        if (elements_ok(banned)) return true;
    }
    return false;
}

} // namespace

SatRewriting build_sat_rewriting(const TBox& t, long long type_budget) {
    KnowledgeBase kb;
    kb.tbox = t;
    FragmentReport rep = classify(kb);
    if (rep.has_transitivity)
        throw FragmentError("satisfiability of transitive KBs is not FO-rewritable");
    if (!rep.a123_violations.empty())
        throw FragmentError("fragment-unsupported: " + rep.a123_violations.front());

    HNminusKB hnm = normalize_to_hn_minus(kb);

    auto d = std::make_shared<SatTypeData>();
    d->norm_tbox = hnm.kb.tbox;
    d->ord = hnm.order;
    d->ns = hnm.numbers;
    d->id_role = hnm.id_role;
    d->cond44 = hnm.cond44_checks;
    d->budget = type_budget;
    d->original_roles = role_names(kb);
    for (const auto& [fresh, origin] : hnm.rename_map) {
        if (origin.rfind("irreflexive part of ", 0) == 0)
            d->split_of[fresh] = origin.substr(std::string("irreflexive part of ").size());
    }

    std::set<std::string> cnames = concept_names(hnm.kb);
    for (const auto& cn : cnames) {
        d->bcon_index[cn] = static_cast<int>(d->bcon.size());
        d->bcon.push_back(BasicConcept::atom(cn));
    }
    for (const auto& r : d->ord.roles) d->roles.push_back(r);
    for (size_t i = 0; i < d->roles.size(); ++i) {
        for (size_t j = 0; j < d->roles.size(); ++j)
            if (d->roles[j] == inv(d->roles[i])) d->inv_pos.push_back(static_cast<int>(j));
        for (qint q : d->ns.of(d->roles[i])) {
            BasicConcept b = BasicConcept::at_least(q, d->roles[i]);
            if (!d->bcon_index.count(b.str())) {
                d->bcon_index[b.str()] = static_cast<int>(d->bcon.size());
                d->bcon.push_back(b);
            }
        }
    }
    for (size_t i = 0; i < d->roles.size(); ++i)
        d->exists_bit.push_back(d->bcon_index.at(BasicConcept::at_least(1, d->roles[i]).str()));

    long long nb = static_cast<long long>(d->bcon.size());
    long long kk = static_cast<long long>(d->roles.size());
    if (nb * (kk + 1) >= 62 || (1LL << (nb * (kk + 1))) > type_budget)
        throw BudgetError("type budget exceeded: 2^(" + std::to_string(nb) + "*" +
                          std::to_string(kk + 1) + ")");

    TBox ext = ext_tbox(d->norm_tbox, d->ord, d->ns);
    for (const auto& ci : ext.concept_inclusions)
        d->inclusions.emplace_back(compile_typeform(ci.lhs, d->bcon_index),
                                   compile_typeform(ci.rhs, d->bcon_index));

    SatRewriting out;
    out.data = d;
    auto node = make(FOFormula::Kind::TypeCase);
    const_cast<FOFormula*>(node.get())->typecase = d;
    out.query.formula = node;
    return out;
}

// ---------------------------------------------------------------------------
// Generic evaluation

namespace {

struct EvalCtx {
    const AboxStructure& s;
    std::map<const FOFormula*, std::vector<std::string>> freevars;
    std::map<std::pair<const FOFormula*, std::string>, bool> memo;

    const std::vector<std::string>& free_of(const FOFormula* f) {
        auto it = freevars.find(f);
        if (it != freevars.end()) return it->second;
        std::set<std::string> vs;
        std::function<void(const FOFormula*, std::set<std::string>&)> walk =
            [&](const FOFormula* g, std::set<std::string>& bound) {
                for (const auto& t : g->terms)
                    if (t.is_var && !bound.count(t.name)) vs.insert(t.name);
                if (g->kind == FOFormula::Kind::Exists || g->kind == FOFormula::Kind::Forall) {
                    bool added = bound.insert(g->var).second;
                    walk(g->children[0].get(), bound);
                    if (added) bound.erase(g->var);
                    return;
                }
                for (const auto& ch : g->children) walk(ch.get(), bound);
            };
        std::set<std::string> bound;
        walk(f, bound);
        return freevars.emplace(f, std::vector<std::string>(vs.begin(), vs.end()))
            .first->second;
    }
};

bool eval_node(EvalCtx& ctx, const FOFormula* f, std::map<std::string, int>& env);

bool eval_memo(EvalCtx& ctx, const FOFormula* f, std::map<std::string, int>& env) {
    const auto& fv = ctx.free_of(f);
    std::string key;
    for (const auto& v : fv) {
        auto it = env.find(v);
        key += std::to_string(it == env.end() ? -1 : it->second) + ",";
    }
    auto mit = ctx.memo.find({f, key});
    if (mit != ctx.memo.end()) return mit->second;
    bool r = eval_node(ctx, f, env);
    ctx.memo[{f, key}] = r;
    return r;
}

int resolve_term(const EvalCtx& ctx, const FOTerm& t, const std::map<std::string, int>& env) {
    if (t.is_var) {
        auto it = env.find(t.name);
        return it == env.end() ? -1 : it->second;
    }
    auto it = ctx.s.index.find(t.name);
    return it == ctx.s.index.end() ? -1 : it->second;
}

bool eval_node(EvalCtx& ctx, const FOFormula* f, std::map<std::string, int>& env) {
    switch (f->kind) {
        case FOFormula::Kind::True: return true;
        case FOFormula::Kind::False: return false;
        case FOFormula::Kind::ConceptAtom: {
            int e = resolve_term(ctx, f->terms[0], env);
            if (e < 0) return false;
            const auto& m = f->negated_rel ? ctx.s.neg_concepts : ctx.s.pos_concepts;
            auto it = m.find(f->pred);
            return it != m.end() && it->second.count(e) > 0;
        }
        case FOFormula::Kind::RoleAtom: {
            int a = resolve_term(ctx, f->terms[0], env);
            int b = resolve_term(ctx, f->terms[1], env);
            if (a < 0 || b < 0) return false;
            const auto& m = f->negated_rel ? ctx.s.neg_roles : ctx.s.pos_roles;
            auto it = m.find(f->pred);
            return it != m.end() && it->second.count({a, b}) > 0;
        }
        case FOFormula::Kind::Eq: {
            int a = resolve_term(ctx, f->terms[0], env);
            int b = resolve_term(ctx, f->terms[1], env);
            return a >= 0 && a == b;
        }
        case FOFormula::Kind::Neq: {
            int a = resolve_term(ctx, f->terms[0], env);
            int b = resolve_term(ctx, f->terms[1], env);
            return a >= 0 && b >= 0 && a != b;
        }
        case FOFormula::Kind::And:
            for (const auto& ch : f->children)
                if (!eval_memo(ctx, ch.get(), env)) return false;
            return true;
        case FOFormula::Kind::Or:
            for (const auto& ch : f->children)
                if (eval_memo(ctx, ch.get(), env)) return true;
            return false;
        case FOFormula::Kind::Not:
            return !eval_memo(ctx, f->children[0].get(), env);
        case FOFormula::Kind::Exists:
        case FOFormula::Kind::Forall: {
            auto prev = env.find(f->var);
            std::optional<int> saved;
            if (prev != env.end()) saved = prev->second;
            bool is_exists = f->kind == FOFormula::Kind::Exists;
            bool result = !is_exists;
            for (int e = 0; e < static_cast<int>(ctx.s.domain.size()); ++e) {
                env[f->var] = e;
                bool r = eval_memo(ctx, f->children[0].get(), env);
                if (is_exists && r) {
                    result = true;
                    break;
                }
                if (!is_exists && !r) {
                    result = false;
                    break;
                }
            }
            if (saved)
                env[f->var] = *saved;
            else
                env.erase(f->var);
            return result;
        }
        case FOFormula::Kind::TypeCase:
            return typecase_eval(*f->typecase, ctx.s);
    }
    return false;
}

} // namespace

std::set<std::vector<std::string>> eval_fo(const AboxStructure& s, const FOQuery& f) {
    EvalCtx ctx{s, {}, {}};
    std::set<std::vector<std::string>> out;
    std::map<std::string, int> env;
    std::function<void(size_t)> loop = [&](size_t i) {
        if (i == f.free_vars.size()) {
            if (eval_memo(ctx, f.formula.get(), env)) {
                std::vector<std::string> tuple;
                for (const auto& v : f.free_vars) tuple.push_back(s.domain[env.at(v)]);
                out.insert(tuple);
            }
            return;
        }
        for (int e = 0; e < static_cast<int>(s.domain.size()); ++e) {
            env[f.free_vars[i]] = e;
            loop(i + 1);
        }
        env.erase(f.free_vars[i]);
    };
    loop(0);
    return out;
}

bool eval_fo_sentence(const AboxStructure& s, const FOQuery& f) {
    if (!f.free_vars.empty()) throw Error("eval_fo_sentence: query has free variables");
    EvalCtx ctx{s, {}, {}};
    std::map<std::string, int> env;
    return eval_memo(ctx, f.formula.get(), env);
}

// ---------------------------------------------------------------------------
// Horn rewriter (section 7)

namespace {

struct HornTypeRule {
    std::vector<int> body;  // bcon indices
    int head;
};

} // namespace

EntailmentOracle HornRewriter::closure_oracle(const TBox& t) {
    // Entailment via the propositional Horn closure of ext(T) over the basic
    // concepts: T |= exists S <= B iff B lies in the closure of {exists S}
    // together with the top-rules (least-model reading of (73)).
    auto ord = std::make_shared<RoleOrder>(role_order(t, [&t] {
        KnowledgeBase kb;
        kb.tbox = t;
        return role_names(kb);
    }()));
    auto ns = std::make_shared<NumberSets>(number_sets(t, *ord));
    TBox ext = ext_tbox(t, *ord, *ns);

    auto bcon = std::make_shared<std::vector<BasicConcept>>();
    auto index = std::make_shared<std::map<std::string, int>>();
    auto add_bcon = [bcon, index](const BasicConcept& b) {
        auto it = index->find(b.str());
        if (it != index->end()) return it->second;
        int id = static_cast<int>(bcon->size());
        index->emplace(b.str(), id);
        bcon->push_back(b);
        return id;
    };
    KnowledgeBase probe;
    probe.tbox = t;
    for (const auto& cn : concept_names(probe)) add_bcon(BasicConcept::atom(cn));
    for (const auto& r : ord->roles)
        for (qint q : ns->of(r)) add_bcon(BasicConcept::at_least(q, r));

    auto rules = std::make_shared<std::vector<HornTypeRule>>();
    constexpr int kBottom = -1;
    for (const auto& ci : ext.concept_inclusions) {
        HornTypeRule r;
        bool ok = true;
        std::function<void(const ConceptPtr&)> body = [&](const ConceptPtr& c) {
            switch (c->kind()) {
                case Concept::Kind::Basic:
                    if (c->basic().kind == BasicConcept::Kind::Bottom)
                        ok = false;  // bottom body never fires
                    else
                        r.body.push_back(add_bcon(c->basic()));
                    return;
                case Concept::Kind::Not:
                    if (!c->is_top()) ok = false;
                    return;
                case Concept::Kind::And:
                    body(c->lhs());
                    body(c->rhs());
                    return;
                default: ok = false;
            }
        };
        body(ci.lhs);
        if (!ok) continue;
        if (ci.rhs->kind() == Concept::Kind::Basic) {
            r.head = ci.rhs->is_bottom() ? kBottom : add_bcon(ci.rhs->basic());
        } else if (ci.rhs->kind() == Concept::Kind::Not &&
                   ci.rhs->child()->kind() == Concept::Kind::Basic) {
            // body & B <= bot
            if (!ci.rhs->child()->is_bottom()) r.body.push_back(add_bcon(ci.rhs->child()->basic()));
            r.head = kBottom;
        } else {
            throw FragmentError("closure_oracle: non-Horn inclusion " + ci.str());
        }
        rules->push_back(r);
    }

    return [bcon, index, rules](const Role& s, const BasicConcept& b) -> bool {
        std::vector<bool> truth(bcon->size(), false);
        auto it = index->find(BasicConcept::at_least(1, s).str());
        if (it != index->end()) truth[it->second] = true;
        bool bottom = false;
        bool changed = true;
        while (changed && !bottom) {
            changed = false;
            for (const auto& r : *rules) {
                bool fire = true;
                for (int x : r.body)
                    if (!truth[x]) {
                        fire = false;
                        break;
                    }
                if (!fire) continue;
                if (r.head == -1) {
                    bottom = true;
                    break;
                }
                if (!truth[r.head]) {
                    truth[r.head] = true;
                    changed = true;
                }
            }
        }
        if (bottom) return true;  // exists S is unsatisfiable: everything entailed
        if (b.kind == BasicConcept::Kind::Bottom) return false;
        auto bi = index->find(b.str());
        return bi != index->end() && truth[bi->second];
    };
}

EntailmentOracle HornRewriter::ground_oracle(const TBox& t) {
    return [t](const Role& s, const BasicConcept& b) -> bool {
        KnowledgeBase kb = reduce_concept_sat(t, Concept::exists(s));
        const std::string witness = kb.abox.concept_assertions.back().object;
        HNminusKB hnm = normalize_to_hn_minus(kb);
        QL1Sentence sent = translate(hnm);
        ClauseSet cs = ground(sent);
        if (!cs.verify_shape(ClauseSet::ShapeHint::Horn))
            throw FragmentError("ground_oracle: Horn TBoxes only");
        SatResult sr = horn_sat(cs);
        if (!sr.sat) return true;
        if (b.kind == BasicConcept::Kind::Bottom) return false;
        UnaryPredicate p = b.kind == BasicConcept::Kind::Atom
                               ? UnaryPredicate::concept_pred(b.name)
                               : UnaryPredicate::eq_pred(b.q, b.role);
        auto it = cs.atom_ids.find(p.str() + "(" + witness + ")");
        return it != cs.atom_ids.end() && sr.true_atoms.count(it->second) > 0;
    };
}

HornRewriter::HornRewriter(const TBox& t, std::string id_role, long long sigma_cap)
    : HornRewriter(t, std::move(id_role), closure_oracle(t), sigma_cap) {}

HornRewriter::HornRewriter(const TBox& t, std::string id_role, EntailmentOracle oracle,
                           long long sigma_cap)
    : tbox_(t), oracle_(std::move(oracle)), sigma_cap_(sigma_cap), id_role_(std::move(id_role)) {
    KnowledgeBase probe;
    probe.tbox = t;
    ord_ = role_order(t, role_names(probe));
    ns_ = number_sets(t, ord_);
    build();
}

FOPtr HornRewriter::role_closure(const Role& r, const FOTerm& t1, const FOTerm& t2) const {
    std::vector<FOPtr> parts;
    for (const auto& sub : ord_.subs(r)) {
        if (!sub.inverted)
            parts.push_back(FOFormula::role_atom(sub.name, t1, t2));
        else
            parts.push_back(FOFormula::role_atom(sub.name, t2, t1));
    }
    return FOFormula::disj(std::move(parts));
}

FOPtr HornRewriter::eq_count(qint q, const Role& r, const FOTerm& t) const {
    if (q == 1) {
        std::string y = "_y1";
        return FOFormula::exists(y, role_closure(r, t, FOTerm::var(y)));
    }
    std::vector<std::string> ys;
    for (qint i = 0; i < q; ++i) ys.push_back("_y" + std::to_string(i + 1));
    std::vector<FOPtr> parts;
    for (size_t i = 0; i < ys.size(); ++i)
        for (size_t j = i + 1; j < ys.size(); ++j)
            parts.push_back(FOFormula::neq(FOTerm::var(ys[i]), FOTerm::var(ys[j])));
    for (const auto& y : ys) parts.push_back(role_closure(r, t, FOTerm::var(y)));
    FOPtr body = FOFormula::conj(std::move(parts));
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = FOFormula::exists(*it, body);
    return body;
}

void HornRewriter::build() {
    // Basic concepts of the TBox.
    KnowledgeBase probe;
    probe.tbox = tbox_;
    for (const auto& cn : concept_names(probe)) {
        bcon_index_[cn] = static_cast<int>(bcon_.size());
        bcon_.push_back(BasicConcept::atom(cn));
    }
    for (const auto& r : ord_.roles)
        for (qint q : ns_.of(r)) {
            BasicConcept b = BasicConcept::at_least(q, r);
            if (!bcon_index_.count(b.str())) {
                bcon_index_[b.str()] = static_cast<int>(bcon_.size());
                bcon_.push_back(b);
            }
        }

    // ext(T) Horn rules with Bcon heads.
    TBox ext = ext_tbox(tbox_, ord_, ns_);
    std::vector<HornTypeRule> rules;
    for (const auto& ci : ext.concept_inclusions) {
        if (ci.rhs->kind() != Concept::Kind::Basic || ci.rhs->is_bottom()) continue;
        HornTypeRule r;
        bool ok = true;
        std::function<void(const ConceptPtr&)> body = [&](const ConceptPtr& c) {
            switch (c->kind()) {
                case Concept::Kind::Basic:
                    if (c->basic().kind == BasicConcept::Kind::Bottom)
                        ok = false;
                    else
                        r.body.push_back(bcon_index_.at(c->basic().str()));
                    return;
                case Concept::Kind::Not:
                    if (!c->is_top()) ok = false;
                    return;
                case Concept::Kind::And:
                    body(c->lhs());
                    body(c->rhs());
                    return;
                default: ok = false;
            }
        };
        body(ci.lhs);
        if (!ok) continue;
        r.head = bcon_index_.at(ci.rhs->basic().str());
        rules.push_back(r);
    }

    // psi fixpoint: per bcon a growing list of disjuncts, at most N rounds.
    int nb = static_cast<int>(bcon_.size());
    FOTerm x = FOTerm::var("x");
    std::vector<std::vector<FOPtr>> disjuncts(nb);
    std::vector<std::set<std::string>> keys(nb);
    psi_.assign(nb, nullptr);
    for (int b = 0; b < nb; ++b) {
        FOPtr base = bcon_[b].kind == BasicConcept::Kind::Atom
                         ? FOFormula::concept_atom(bcon_[b].name, x)
                         : eq_count(bcon_[b].q, bcon_[b].role, x);
        disjuncts[b].push_back(base);
        keys[b].insert("base");
        psi_[b] = base;
    }
    auto rebuild = [&](int b) { psi_[b] = FOFormula::disj(disjuncts[b]); };
    for (int round = 0; round < nb; ++round) {
        bool changed = false;
        std::vector<std::pair<int, FOPtr>> additions;
        std::vector<std::pair<int, std::string>> addition_keys;
        for (size_t ri = 0; ri < rules.size(); ++ri) {
            const auto& r = rules[ri];
            std::string key = "r" + std::to_string(ri);
            std::vector<FOPtr> parts;
            for (int bb : r.body) {
                key += ":" + std::to_string(reinterpret_cast<uintptr_t>(psi_[bb].get()));
                parts.push_back(psi_[bb]);
            }
            if (keys[r.head].count(key)) continue;
            additions.emplace_back(r.head, FOFormula::conj(parts));
            addition_keys.emplace_back(r.head, key);
        }
        for (size_t i = 0; i < additions.size(); ++i) {
            disjuncts[additions[i].first].push_back(additions[i].second);
            keys[addition_keys[i].first].insert(addition_keys[i].second);
            changed = true;
        }
        std::set<int> touched;
        for (const auto& [b, f] : additions) touched.insert(b);
        for (int b : touched) rebuild(b);
        if (!changed) break;
    }

    // theta fixpoint over (bcon, dr). The epsilon rule only ever concludes
    // E_1 R at its own witness constant dR, so the rho base and rho^i
    // triggers live at (exists R, dR) exactly.
    int k = static_cast<int>(ord_.roles.size());
    std::vector<Role> roles(ord_.roles.begin(), ord_.roles.end());
    auto tkey = [&](int b, const Role& r) {
        return std::make_pair(bcon_[b].str(), r.str());
    };
    std::map<std::pair<std::string, std::string>, std::vector<FOPtr>> tdis;
    std::map<std::pair<std::string, std::string>, std::set<std::string>> tkeys;
    // Base: rho^0_{exists R, dR} = exists x psi_{exists inv(R)}(x).
    for (const auto& r : roles) {
        int b = bcon_index_.at(BasicConcept::at_least(1, r).str());
        FOPtr base = FOFormula::exists("x", psi_[bcon_index_.at(
                                                BasicConcept::at_least(1, inv(r)).str())]);
        tdis[tkey(b, r)].push_back(base);
        tkeys[tkey(b, r)].insert("base");
        theta_[tkey(b, r)] = base;
    }
    int rounds = k * nb + 1;
    for (int round = 0; round < rounds; ++round) {
        bool changed = false;
        std::vector<std::tuple<std::pair<std::string, std::string>, FOPtr, std::string>> adds;
        for (const auto& dr : roles) {
            // rho^i_{exists dr, d dr}: E_1 inv(dr) true at some witness constant.
            int b = bcon_index_.at(BasicConcept::at_least(1, dr).str());
            int binv = bcon_index_.at(BasicConcept::at_least(1, inv(dr)).str());
            for (const auto& ds : roles) {
                auto it = theta_.find(tkey(binv, ds));
                if (it == theta_.end()) continue;
                std::string key = "rho:" + ds.str() + ":" +
                                  std::to_string(reinterpret_cast<uintptr_t>(it->second.get()));
                if (tkeys[tkey(b, dr)].count(key)) continue;
                adds.emplace_back(tkey(b, dr), it->second, key);
            }
            // ext(T) rules lifted pointwise to the witness constant.
            for (size_t ri = 0; ri < rules.size(); ++ri) {
                const auto& r = rules[ri];
                std::string key = "r" + std::to_string(ri);
                std::vector<FOPtr> parts;
                bool have_all = true;
                for (int bb : r.body) {
                    auto it = theta_.find(tkey(bb, dr));
                    if (it == theta_.end()) {
                        have_all = false;
                        break;
                    }
                    key += ":" + std::to_string(reinterpret_cast<uintptr_t>(it->second.get()));
                    parts.push_back(it->second);
                }
                if (!have_all) continue;
                if (tkeys[tkey(r.head, dr)].count(key)) continue;
                adds.emplace_back(tkey(r.head, dr), FOFormula::conj(parts), key);
            }
        }
        std::set<std::pair<std::string, std::string>> touched;
        for (const auto& [key, f, skey] : adds) {
            tdis[key].push_back(f);
            tkeys[key].insert(skey);
            touched.insert(key);
            changed = true;
        }
        for (const auto& key : touched) theta_[key] = FOFormula::disj(tdis[key]);
        if (!changed) break;
    }

    // Path graph.
    for (const auto& rep : ord_.representatives()) {
        if (!id_role_.empty() && rep.name == id_role_) continue;
        if (oracle_(rep, BasicConcept::bottom())) continue;  // exists R unsatisfiable
        graph_.vertex_of[rep] = static_cast<int>(graph_.vertices.size());
        graph_.vertices.push_back(rep);
    }
    auto satisfies_path = [&](const Role& ri, const Role& rj) {
        for (qint q : ns_.of(rj)) {
            if (q == 1 && ord_.leq(inv(ri), rj)) continue;
            if (oracle_(inv(ri), BasicConcept::at_least(q, rj))) return true;
        }
        return false;
    };
    for (size_t i = 0; i < graph_.vertices.size(); ++i) {
        for (size_t j = 0; j < graph_.vertices.size(); ++j) {
            const Role& ri = graph_.vertices[i];
            const Role& rj = graph_.vertices[j];
            if (!satisfies_path(ri, rj)) continue;
            bool minimal = true;
            for (const auto& sub : ord_.roles) {
                if (!ord_.proper_sub(sub, rj)) continue;
                if (!id_role_.empty() && (sub.name == id_role_)) {
                    if (satisfies_path(ri, sub)) minimal = false;
                } else if (satisfies_path(ri, sub)) {
                    minimal = false;
                }
                if (!minimal) break;
            }
            if (minimal) graph_.edges.emplace(static_cast<int>(i), static_cast<int>(j));
        }
    }
}

FOPtr HornRewriter::psi(const BasicConcept& b) const {
    auto it = bcon_index_.find(b.str());
    if (it != bcon_index_.end()) return psi_[it->second];
    FOTerm x = FOTerm::var("x");
    if (b.kind == BasicConcept::Kind::Atom) return FOFormula::concept_atom(b.name, x);
    return eq_count(b.q, b.role, x);
}

FOPtr HornRewriter::theta(const BasicConcept& b, const Role& dr) const {
    auto it = theta_.find({b.str(), dr.str()});
    return it == theta_.end() ? FOFormula::falsity() : it->second;
}

namespace {

// Substitute the free variable "x" by a term, memoized over the DAG.
FOPtr substitute_x(const FOPtr& f, const FOTerm& t,
                   std::map<const FOFormula*, FOPtr>& memo) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    FOPtr out;
    auto subst_term = [&](const FOTerm& tt) {
        return (tt.is_var && tt.name == "x") ? t : tt;
    };
    switch (f->kind) {
        case FOFormula::Kind::True:
        case FOFormula::Kind::False:
        case FOFormula::Kind::TypeCase:
            out = f;
            break;
        case FOFormula::Kind::ConceptAtom:
            out = FOFormula::concept_atom(f->pred, subst_term(f->terms[0]), f->negated_rel);
            break;
        case FOFormula::Kind::RoleAtom:
            out = FOFormula::role_atom(f->pred, subst_term(f->terms[0]),
                                       subst_term(f->terms[1]), f->negated_rel);
            break;
        case FOFormula::Kind::Eq:
            out = FOFormula::eq(subst_term(f->terms[0]), subst_term(f->terms[1]));
            break;
        case FOFormula::Kind::Neq:
            out = FOFormula::neq(subst_term(f->terms[0]), subst_term(f->terms[1]));
            break;
        case FOFormula::Kind::And:
        case FOFormula::Kind::Or: {
            std::vector<FOPtr> ch;
            for (const auto& c : f->children) ch.push_back(substitute_x(c, t, memo));
            out = f->kind == FOFormula::Kind::And ? FOFormula::conj(std::move(ch))
                                                  : FOFormula::disj(std::move(ch));
            break;
        }
        case FOFormula::Kind::Not:
            out = FOFormula::negate(substitute_x(f->children[0], t, memo));
            break;
        case FOFormula::Kind::Exists:
        case FOFormula::Kind::Forall: {
            if (f->var == "x") {
                out = f;  // x is shadowed
            } else {
                auto sub = substitute_x(f->children[0], t, memo);
                out = f->kind == FOFormula::Kind::Exists ? FOFormula::exists(f->var, sub)
                                                         : FOFormula::forall(f->var, sub);
            }
            break;
        }
    }
    memo.emplace(f.get(), out);
    return out;
}

using Sigma = std::vector<int>;  // path as vertex indices

} // namespace

FOQuery HornRewriter::rewrite(const Query& q) const {
    PrenexQuery pq = prenex(q);
    int k = static_cast<int>(pq.bound.size());
    int m0 = k + static_cast<int>(ord_.roles.size());

    // All paths of length <= m0 in the graph, epsilon included.
    std::vector<Sigma> sigmas{{}};
    {
        std::vector<Sigma> frontier;
        for (size_t v = 0; v < graph_.vertices.size(); ++v)
            frontier.push_back({static_cast<int>(v)});
        for (int len = 1; len <= m0 && !frontier.empty(); ++len) {
            sigmas.insert(sigmas.end(), frontier.begin(), frontier.end());
            std::vector<Sigma> next;
            for (const auto& s : frontier)
                for (const auto& [a, b] : graph_.edges)
                    if (a == s.back()) {
                        Sigma n = s;
                        n.push_back(b);
                        next.push_back(std::move(n));
                    }
            frontier = std::move(next);
            if (static_cast<long long>(sigmas.size()) > sigma_cap_)
                throw BudgetError("sigma cap exceeded while enumerating paths");
        }
    }
    double tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= static_cast<double>(sigmas.size());
    if (tuples > static_cast<double>(sigma_cap_))
        throw BudgetError("sigma cap exceeded: " + std::to_string(sigmas.size()) + "^" +
                          std::to_string(k));

    std::map<std::string, int> bound_index;
    for (int i = 0; i < k; ++i) bound_index[pq.bound[i]] = i;

    // Transition sigma ->R sigma' (three displayed cases).
    auto transition = [&](const Sigma& s1, const Sigma& s2, const Role& r) {
        if (s1 == s2 && !id_role_.empty() && ord_.leq(Role{id_role_, false}, r)) return true;
        if (s2.size() == s1.size() + 1 &&
            std::equal(s1.begin(), s1.end(), s2.begin())) {
            const Role& lbl = graph_.vertices[s2.back()];
            if (ord_.leq(lbl, r)) return true;
        }
        if (s1.size() == s2.size() + 1 &&
            std::equal(s2.begin(), s2.end(), s1.begin())) {
            const Role& lbl = graph_.vertices[s1.back()];
            if (ord_.leq(inv(lbl), r)) return true;
        }
        return false;
    };

    // Atoms of the quantifier-free matrix.
    std::vector<const QueryFormula*> atoms;
    std::function<void(const QueryFormulaPtr&)> collect = [&](const QueryFormulaPtr& f) {
        switch (f->kind) {
            case QueryFormula::Kind::ConceptAtom:
            case QueryFormula::Kind::RoleAtom: atoms.push_back(f.get()); break;
            case QueryFormula::Kind::And:
            case QueryFormula::Kind::Or:
                collect(f->lhs);
                collect(f->rhs);
                break;
            case QueryFormula::Kind::Exists: collect(f->sub); break;
        }
    };
    collect(pq.matrix);

    auto term_of = [&](const QueryTerm& t) {
        return t.is_var ? FOTerm::var(t.name) : FOTerm::constant(t.name);
    };

    std::vector<FOPtr> big;
    std::function<void(int, std::vector<int>&)> enumerate = [&](int pos,
                                                                std::vector<int>& choice) {
        if (pos == k) {
            // sigma-vector fixed; rewrite each atom.
            auto sig_of = [&](const QueryTerm& t) -> const Sigma& {
                static const Sigma eps;
                if (!t.is_var) return eps;
                auto it = bound_index.find(t.name);
                if (it == bound_index.end()) return eps;
                return sigmas[choice[it->second]];
            };
            std::function<FOPtr(const QueryFormulaPtr&)> rewrite_f =
                [&](const QueryFormulaPtr& f) -> FOPtr {
                switch (f->kind) {
                    case QueryFormula::Kind::ConceptAtom: {
                        const Sigma& s = sig_of(f->terms[0]);
                        if (s.empty()) {
                            std::map<const FOFormula*, FOPtr> memo;
                            return substitute_x(psi(BasicConcept::atom(f->pred)),
                                                term_of(f->terms[0]), memo);
                        }
                        const Role& lbl = graph_.vertices[s.back()];
                        return theta(BasicConcept::atom(f->pred), inv(lbl));
                    }
                    case QueryFormula::Kind::RoleAtom: {
                        const Sigma& s1 = sig_of(f->terms[0]);
                        const Sigma& s2 = sig_of(f->terms[1]);
                        Role r{f->pred, false};
                        if (s1.empty() && s2.empty())
                            return role_closure(r, term_of(f->terms[0]), term_of(f->terms[1]));
                        if (transition(s1, s2, r))
                            return FOFormula::eq(term_of(f->terms[0]), term_of(f->terms[1]));
                        return FOFormula::falsity();
                    }
                    case QueryFormula::Kind::And:
                        return FOFormula::conj({rewrite_f(f->lhs), rewrite_f(f->rhs)});
                    case QueryFormula::Kind::Or:
                        return FOFormula::disj({rewrite_f(f->lhs), rewrite_f(f->rhs)});
                    case QueryFormula::Kind::Exists:
                        return rewrite_f(f->sub);
                }
                return FOFormula::falsity();
            };
            FOPtr body = rewrite_f(pq.matrix);
            if (body->kind == FOFormula::Kind::False) return;
            // eta guard for nonempty paths.
            std::vector<FOPtr> guard;
            for (int i = 0; i < k; ++i) {
                const Sigma& s = sigmas[choice[i]];
                if (s.empty()) continue;
                const Role& first = graph_.vertices[s.front()];
                FOTerm y = FOTerm::var(pq.bound[i]);
                std::vector<FOPtr> alts;
                for (qint qv : ns_.of(first)) {
                    std::map<const FOFormula*, FOPtr> memo;
                    FOPtr full = substitute_x(psi(BasicConcept::at_least(qv, first)), y, memo);
                    FOPtr base = eq_count(qv, first, y);
                    alts.push_back(
                        FOFormula::conj({FOFormula::negate(base), full}));
                }
                guard.push_back(FOFormula::disj(std::move(alts)));
            }
            guard.push_back(body);
            big.push_back(FOFormula::conj(std::move(guard)));
            return;
        }
        for (size_t c = 0; c < sigmas.size(); ++c) {
            choice[pos] = static_cast<int>(c);
            enumerate(pos + 1, choice);
        }
    };
    std::vector<int> choice(k, 0);
    enumerate(0, choice);

    FOPtr matrix = FOFormula::disj(std::move(big));
    for (auto it = pq.bound.rbegin(); it != pq.bound.rend(); ++it)
        matrix = FOFormula::exists(*it, matrix);

    FOQuery out;
    out.formula = matrix;
    out.free_vars = pq.distinguished;
    return out;
}

FOQuery rewrite_query(const TBox& t, const Query& q, long long sigma_cap) {
    KnowledgeBase probe;
    probe.tbox = t;
    HNminusKB hnm = normalize_to_hn_minus(probe);
    HornRewriter rw(hnm.kb.tbox, hnm.id_role, sigma_cap);
    return rw.rewrite(q);
}

std::set<std::vector<std::string>> certain_answers(const KnowledgeBase& k, const Query& q,
                                                   long long sigma_cap) {
    SolveResult sr = solve(k);
    if (sr.verdict == Verdict::FragmentUnsupported)
        throw FragmentError("certain_answers: " + sr.detail);
    if (sr.verdict == Verdict::BudgetExceeded)
        throw BudgetError("certain_answers: " + sr.detail);
    if (sr.verdict != Verdict::Sat)
        throw InconsistentKbError("certain_answers: inconsistent KB");
    if (sr.report.shape == Shape::Bool || sr.report.shape == Shape::Krom)
        throw FragmentError("certain_answers: Horn KBs only");
    if (sr.report.has_transitivity)
        throw FragmentError("certain_answers: transitivity is not FO-rewritable");

    KnowledgeBase cur = k;
    if (!cur.una) {
        if (sr.report.numbers != Numbers::None)
            throw FragmentError("certain_answers: no UNA with number restrictions");
        cur = merge_equalities(cur).first;
        cur.abox.inequalities.clear();
        cur.una = true;
    }
    HNminusKB hnm = normalize_to_hn_minus(cur);
    HornRewriter rw(hnm.kb.tbox, hnm.id_role, sigma_cap);
    FOQuery f = rw.rewrite(q);
    AboxStructure st = build_abox_structure(hnm.kb.abox);
    return eval_fo(st, f);
}

// ---------------------------------------------------------------------------
// SQL emission

namespace {

std::string sql_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        out += c;
        if (c == '\'') out += '\'';
    }
    return out;
}

struct SqlCtx {
    std::map<std::string, std::string> var_alias;
    int next_alias = 0;
};

std::string sql_term(const SqlCtx& ctx, const FOTerm& t) {
    if (t.is_var) return ctx.var_alias.at(t.name) + ".x";
    return "'" + sql_escape(t.name) + "'";
}

std::string sql_cond(SqlCtx& ctx, const FOFormula* f) {
    switch (f->kind) {
        case FOFormula::Kind::True: return "1 = 1";
        case FOFormula::Kind::False: return "1 = 0";
        case FOFormula::Kind::ConceptAtom: {
            std::string table = f->negated_rel ? "nca" : "ca";
            return "exists (select 1 from " + table + " where c = '" + sql_escape(f->pred) +
                   "' and obj = " + sql_term(ctx, f->terms[0]) + ")";
        }
        case FOFormula::Kind::RoleAtom: {
            std::string table = f->negated_rel ? "nra" : "ra";
            return "exists (select 1 from " + table + " where r = '" + sql_escape(f->pred) +
                   "' and s = " + sql_term(ctx, f->terms[0]) +
                   " and o = " + sql_term(ctx, f->terms[1]) + ")";
        }
        case FOFormula::Kind::Eq:
            return sql_term(ctx, f->terms[0]) + " = " + sql_term(ctx, f->terms[1]);
        case FOFormula::Kind::Neq:
            return sql_term(ctx, f->terms[0]) + " <> " + sql_term(ctx, f->terms[1]);
        case FOFormula::Kind::And: {
            std::string s = "(";
            for (size_t i = 0; i < f->children.size(); ++i)
                s += (i ? " and " : "") + sql_cond(ctx, f->children[i].get());
            return s + ")";
        }
        case FOFormula::Kind::Or: {
            std::string s = "(";
            for (size_t i = 0; i < f->children.size(); ++i)
                s += (i ? " or " : "") + sql_cond(ctx, f->children[i].get());
            return s + ")";
        }
        case FOFormula::Kind::Not:
            return "not (" + sql_cond(ctx, f->children[0].get()) + ")";
        case FOFormula::Kind::Exists: {
            std::string alias = "e" + std::to_string(ctx.next_alias++);
            auto saved = ctx.var_alias.find(f->var) != ctx.var_alias.end()
                             ? std::optional<std::string>(ctx.var_alias[f->var])
                             : std::nullopt;
            ctx.var_alias[f->var] = alias;
            std::string inner = sql_cond(ctx, f->children[0].get());
            if (saved)
                ctx.var_alias[f->var] = *saved;
            else
                ctx.var_alias.erase(f->var);
            return "exists (select 1 from dom " + alias + " where " + inner + ")";
        }
        case FOFormula::Kind::Forall: {
            std::string alias = "e" + std::to_string(ctx.next_alias++);
            auto saved = ctx.var_alias.find(f->var) != ctx.var_alias.end()
                             ? std::optional<std::string>(ctx.var_alias[f->var])
                             : std::nullopt;
            ctx.var_alias[f->var] = alias;
            std::string inner = sql_cond(ctx, f->children[0].get());
            if (saved)
                ctx.var_alias[f->var] = *saved;
            else
                ctx.var_alias.erase(f->var);
            return "not exists (select 1 from dom " + alias + " where not (" + inner + "))";
        }
        case FOFormula::Kind::TypeCase:
            throw Error("emit_sql: the type-case satisfiability node has no SQL form");
    }
    return "1 = 0";
}

} // namespace

std::string emit_sql(const FOQuery& f) {
    std::ostringstream os;
    os << "with dom(x) as (\n"
       << "  select obj from ca union select obj from nca\n"
       << "  union select s from ra union select o from ra\n"
       << "  union select s from nra union select o from nra\n"
       << ")\n";
    SqlCtx ctx;
    std::vector<std::string> aliases;
    for (size_t i = 0; i < f.free_vars.size(); ++i) {
        std::string alias = "d" + std::to_string(i);
        ctx.var_alias[f.free_vars[i]] = alias;
        aliases.push_back(alias);
    }
    std::string cond = sql_cond(ctx, f.formula.get());
    if (f.free_vars.empty()) {
        os << "select distinct 1 as t from (select 1) where " << cond << ";";
        return os.str();
    }
    os << "select distinct ";
    for (size_t i = 0; i < f.free_vars.size(); ++i)
        os << (i ? ", " : "") << aliases[i] << ".x as v" << i;
    os << "\nfrom ";
    for (size_t i = 0; i < aliases.size(); ++i) os << (i ? ", " : "") << "dom " << aliases[i];
    os << "\nwhere " << cond << "\norder by ";
    for (size_t i = 0; i < f.free_vars.size(); ++i) os << (i ? ", " : "") << "v" << i;
    os << ";";
    return os.str();
}

} // namespace dlite
