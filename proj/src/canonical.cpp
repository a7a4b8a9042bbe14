#include "dlite/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "dlite/sat.hpp"

namespace dlite {

namespace {

void collect_preds(const QFormPtr& f, std::set<UnaryPredicate>& out) {
    switch (f->kind) {
        case QForm::Kind::Atom: out.insert(f->pred); break;
        case QForm::Kind::Not: collect_preds(f->lhs, out); break;
        case QForm::Kind::And:
            collect_preds(f->lhs, out);
            collect_preds(f->rhs, out);
            break;
        default: break;
    }
}

std::set<UnaryPredicate> sentence_preds(const QL1Sentence& s) {
    std::set<UnaryPredicate> preds;
    for (const auto* i : s.universal()) {
        collect_preds(i->lhs, preds);
        collect_preds(i->rhs, preds);
    }
    for (const auto& g : s.ground) preds.insert(g.pred);
    return preds;
}

} // namespace

ModelAtomSet model_atoms_from(const QL1Sentence& s, const ClauseSet& cs,
                              const std::set<int>& true_atoms) {
    ModelAtomSet out;
    std::vector<Constant> constants = s.constants;
    for (const auto& p : sentence_preds(s)) {
        for (const auto& c : constants) {
            auto it = cs.atom_ids.find(p.str() + "(" + c.str() + ")");
            if (it != cs.atom_ids.end() && true_atoms.count(it->second)) out.emplace(p, c);
        }
    }
    return out;
}

ModelAtomSet minimal_model(const QL1Sentence& s) {
    ClauseSet cs = ground(s);
    if (!cs.verify_shape(ClauseSet::ShapeHint::Horn))
        throw FragmentError("minimal_model: grounded sentence is not Horn");
    SatResult sr = horn_sat(cs);
    if (!sr.sat) throw InconsistentKbError("minimal_model: unsatisfiable input");
    return model_atoms_from(s, cs, sr.true_atoms);
}

// ---------------------------------------------------------------------------
// Unraveling

namespace {

struct Builder {
    const ModelAtomSet& atoms;
    const HNminusKB& k;
    UntangledModel m;
    std::map<std::string, int> index;  // element name -> id
    std::set<std::string> concept_names_;

    bool holds(const UnaryPredicate& p, const Constant& c) const {
        return atoms.count({p, c}) > 0;
    }
    qint required_rank(const Role& r, const Constant& c) const {
        qint best = 0;
        for (qint q : k.numbers.of(r))
            if (holds(UnaryPredicate::eq_pred(q, r), c)) best = std::max(best, q);
        return best;
    }

    int add_element(const std::string& name, Constant cp, int depth, int parent,
                    Role parent_label) {
        int id = static_cast<int>(m.names.size());
        m.names.push_back(name);
        m.cp.push_back(std::move(cp));
        m.depth.push_back(depth);
        m.parent.push_back(parent);
        m.parent_label.push_back(parent_label);
        index[name] = id;
        // Concept memberships come from the model at the copied constant.
        for (const auto& cn : concept_names_)
            if (holds(UnaryPredicate::concept_pred(cn), m.cp[id]))
                m.interpretation.concept_ext[cn].insert(name);
        return id;
    }

    // Record (x, y) in S for every super-role S of r (direction-normalized).
    void add_edge_expanded(int x, int y, const Role& r) {
        for (const auto& s : k.order.sups.at(r)) {
            if (s.inverted)
                m.edges[s.name].emplace_back(y, x);
            else
                m.edges[s.name].emplace_back(x, y);
        }
    }

    qint actual_rank(const Role& r, int w) const {
        auto it = m.edges.find(r.name);
        if (it == m.edges.end()) return 0;
        std::set<int> succ;
        for (const auto& [x, y] : it->second) {
            if (!r.inverted && x == w) succ.insert(y);
            if (r.inverted && y == w) succ.insert(x);
        }
        return static_cast<qint>(succ.size());
    }
};

} // namespace

UntangledModel unravel(const ModelAtomSet& atoms, const HNminusKB& k, int depth) {
    Builder b{atoms, k, {}, {}, {}};
    for (const auto& cn : concept_names(k.kb)) b.concept_names_.insert(cn);
    for (const auto& at : atoms)
        if (at.first.kind == UnaryPredicate::Kind::ConceptPred)
            b.concept_names_.insert(at.first.name);

    // W_0: the ABox elements with the Cl^e relations.
    auto object_set = k.kb.abox.objects();
    std::vector<std::string> objects(object_set.begin(), object_set.end());
    for (const auto& o : objects) {
        int id = b.add_element(o, Constant::object(o), 0, -1, {});
        b.m.roots.push_back(id);
        b.m.interpretation.object_map[o] = o;
    }
    auto cl = extended_abox_closure(k.order, abox_role_atoms(k.kb.abox));
    for (const auto& at : cl)
        b.m.edges[at.role].emplace_back(b.index.at(at.subject), b.index.at(at.object));

    // Curing stages, class representatives only (Lemma 5.14).
    Role id_direct{k.id_role, false};
    int fresh = 0;
    for (int stage = 0; stage < depth; ++stage) {
        std::vector<int> layer;
        for (int w = 0; w < b.m.element_count(); ++w)
            if (b.m.depth[w] == stage) layer.push_back(w);
        for (int w : layer) {
            for (const auto& r : k.order.representatives()) {
                if (k.has_id && (r.name == k.id_role)) continue;
                qint need = b.required_rank(r, b.m.cp[w]);
                if (need == 0) continue;
                qint have = b.actual_rank(r, w);
                for (qint i = have; i < need; ++i) {
                    std::string name = "n" + std::to_string(++fresh);
                    int child = b.add_element(name, Constant::dr(inv(r)), stage + 1, w, r);
                    b.add_edge_expanded(w, child, r);
                    if (k.has_id) {
                        for (const auto& s : k.order.sups.at(id_direct)) {
                            if (s.inverted)
                                b.m.edges[s.name].emplace_back(child, child);
                            else
                                b.m.edges[s.name].emplace_back(child, child);
                        }
                    }
                }
            }
        }
    }

    // Finalize the Interpretation view.
    b.m.interpretation.domain = b.m.names;
    for (auto& [role, pairs] : b.m.edges) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        auto& ext = b.m.interpretation.role_ext[role];
        for (const auto& [x, y] : pairs) ext.emplace(b.m.names[x], b.m.names[y]);
    }
    for (const auto& cn : b.concept_names_)
        b.m.interpretation.concept_ext.emplace(cn, std::set<std::string>{});
    for (const auto& rn : role_names(k.kb))
        b.m.interpretation.role_ext.emplace(rn, std::set<std::pair<std::string, std::string>>{});
    return b.m;
}

std::vector<std::string> UntangledModel::annotations() const {
    std::vector<std::string> out;
    for (int i = 0; i < element_count(); ++i) {
        std::string s = names[i] + ": cp=" + cp[i].str() + " depth=" + std::to_string(depth[i]);
        if (parent[i] >= 0)
            s += " parent=" + names[parent[i]] + " label=" + parent_label[i].str();
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Query evaluation over the truncation

namespace {

struct Dnf {
    std::vector<std::vector<const QueryFormula*>> conjuncts;  // atoms per disjunct
};

void dnf(const QueryFormulaPtr& f, std::vector<std::vector<const QueryFormula*>>& acc) {
    switch (f->kind) {
        case QueryFormula::Kind::ConceptAtom:
        case QueryFormula::Kind::RoleAtom:
            for (auto& c : acc) c.push_back(f.get());
            return;
        case QueryFormula::Kind::And: {
            dnf(f->lhs, acc);
            dnf(f->rhs, acc);
            return;
        }
        case QueryFormula::Kind::Or: {
            auto left = acc;
            dnf(f->lhs, left);
            dnf(f->rhs, acc);
            acc.insert(acc.end(), left.begin(), left.end());
            return;
        }
        case QueryFormula::Kind::Exists:
            dnf(f->sub, acc);
            return;
    }
}

struct Eval {
    const UntangledModel& m;
    std::set<int> root_set;
    std::map<std::string, int> obj_elem;

    bool concept_holds(const std::string& name, int e) const {
        auto it = m.interpretation.concept_ext.find(name);
        return it != m.interpretation.concept_ext.end() &&
               it->second.count(m.names[e]) > 0;
    }
    const std::vector<std::pair<int, int>>& role_edges(const std::string& name) const {
        static const std::vector<std::pair<int, int>> empty;
        auto it = m.edges.find(name);
        return it == m.edges.end() ? empty : it->second;
    }
};

// Backtracking over the atoms of one conjunct. `env` maps variable -> element.
void join(const Eval& ev, const std::vector<const QueryFormula*>& atoms, size_t i,
          std::map<std::string, int>& env, const std::vector<std::string>& distinguished,
          std::set<std::vector<std::string>>& out) {
    if (i == atoms.size()) {
        // Unconstrained distinguished variables range over all roots.
        std::vector<std::string> missing;
        for (const auto& x : distinguished)
            if (!env.count(x)) missing.push_back(x);
        std::function<void(size_t)> fill = [&](size_t mi) {
            if (mi == missing.size()) {
                std::vector<std::string> tuple;
                for (const auto& x : distinguished) tuple.push_back(ev.m.names[env.at(x)]);
                out.insert(tuple);
                return;
            }
            for (int r : ev.root_set) {
                env[missing[mi]] = r;
                fill(mi + 1);
                env.erase(missing[mi]);
            }
        };
        fill(0);
        return;
    }
    const QueryFormula* a = atoms[i];
    bool dvar0 = false, dvar1 = false;
    auto is_distinguished = [&](const std::string& v) {
        return std::find(distinguished.begin(), distinguished.end(), v) != distinguished.end();
    };
    auto resolve = [&](const QueryTerm& t, int* e) {
        if (t.is_var) {
            auto it = env.find(t.name);
            if (it == env.end()) return false;
            *e = it->second;
            return true;
        }
        auto it = ev.obj_elem.find(t.name);
        *e = it == ev.obj_elem.end() ? -1 : it->second;
        return true;
    };
    if (a->kind == QueryFormula::Kind::ConceptAtom) {
        int e;
        if (resolve(a->terms[0], &e)) {
            if (e >= 0 && ev.concept_holds(a->pred, e)) join(ev, atoms, i + 1, env, distinguished, out);
            return;
        }
        dvar0 = is_distinguished(a->terms[0].name);
        for (int e2 = 0; e2 < ev.m.element_count(); ++e2) {
            if (dvar0 && !ev.root_set.count(e2)) continue;
            if (!ev.concept_holds(a->pred, e2)) continue;
            env[a->terms[0].name] = e2;
            join(ev, atoms, i + 1, env, distinguished, out);
            env.erase(a->terms[0].name);
        }
        return;
    }
    // Role atom.
    int e1 = -2, e2 = -2;
    bool b1 = resolve(a->terms[0], &e1);
    bool b2 = resolve(a->terms[1], &e2);
    if (b1 && e1 < 0) return;
    if (b2 && e2 < 0) return;
    dvar0 = a->terms[0].is_var && is_distinguished(a->terms[0].name);
    dvar1 = a->terms[1].is_var && is_distinguished(a->terms[1].name);
    for (const auto& [x, y] : ev.role_edges(a->pred)) {
        if (b1 && x != e1) continue;
        if (b2 && y != e2) continue;
        if (!b1 && dvar0 && !ev.root_set.count(x)) continue;
        if (!b2 && dvar1 && !ev.root_set.count(y)) continue;
        if (!b1 && !b2 && a->terms[0].is_var && a->terms[1].is_var &&
            a->terms[0].name == a->terms[1].name && x != y)
            continue;
        std::vector<std::string> added;
        bool ok = true;
        if (!b1 && a->terms[0].is_var) {
            env[a->terms[0].name] = x;
            added.push_back(a->terms[0].name);
        } else if (!b1) {
            ok = false;  // unknown object name
        }
        if (ok && !b2 && a->terms[1].is_var) {
            auto it = env.find(a->terms[1].name);
            if (it != env.end() && it->second != y)
                ok = false;
            else if (it == env.end()) {
                env[a->terms[1].name] = y;
                added.push_back(a->terms[1].name);
            }
        } else if (ok && !b2) {
            ok = false;
        }
        if (ok) join(ev, atoms, i + 1, env, distinguished, out);
        for (const auto& v : added) env.erase(v);
    }
}

} // namespace

std::set<std::vector<std::string>> evaluate_query(const UntangledModel& m, const Query& q) {
    Eval ev{m, {}, {}};
    for (int r : m.roots) {
        ev.root_set.insert(r);
        ev.obj_elem[m.names[r]] = r;
    }
    std::vector<std::vector<const QueryFormula*>> disjuncts{{}};
    dnf(q.body, disjuncts);
    std::set<std::vector<std::string>> out;
    for (auto& atoms : disjuncts) {
        std::map<std::string, int> env;
        join(ev, atoms, 0, env, q.distinguished, out);
    }
    return out;
}

std::set<std::vector<std::string>> certain_answer_oracle(const KnowledgeBase& k, const Query& q) {
    SolveResult sr = solve(k);
    if (sr.verdict == Verdict::FragmentUnsupported)
        throw FragmentError("certain_answer_oracle: " + sr.detail);
    if (sr.verdict != Verdict::Sat)
        throw InconsistentKbError("certain_answer_oracle: inconsistent KB");
    if (sr.report.shape == Shape::Bool || sr.report.shape == Shape::Krom)
        throw FragmentError("certain_answer_oracle: Horn KBs only");

    KnowledgeBase cur = k;
    if (!cur.una) {
        if (sr.report.numbers == Numbers::N)
            throw FragmentError("certain_answer_oracle: no UNA with number restrictions");
        if (sr.report.numbers == Numbers::F) {
            cur = functional_merge(cur);
        } else {
            cur = merge_equalities(cur).first;
            cur.abox.inequalities.clear();
            cur.una = true;
        }
    }
    if (classify(cur).has_transitivity) cur = eliminate_transitivity(cur);
    HNminusKB hnm = normalize_to_hn_minus(cur);
    QL1Sentence s = translate(hnm);
    ModelAtomSet atoms = minimal_model(s);

    PrenexQuery pq = prenex(q);
    int m0 = static_cast<int>(pq.bound.size()) +
             2 * static_cast<int>(role_names(hnm.kb).size());
    UntangledModel model = unravel(atoms, hnm, m0);
    return evaluate_query(model, q);
}

} // namespace dlite
