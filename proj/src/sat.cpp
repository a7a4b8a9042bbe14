#include "dlite/sat.hpp"

#include <algorithm>
#include <functional>

#include "dlite/fol.hpp"
#include "dlite/normalize.hpp"

namespace dlite {

SatResult horn_sat(const ClauseSet& c) {
    if (!c.verify_shape(ClauseSet::ShapeHint::Horn))
        throw FragmentError("horn_sat: clause set is not Horn");

    struct Rule {
        int head = 0;  // 0: none (goal clause)
        int remaining = 0;
    };
    std::vector<Rule> rules(c.clauses.size());
    std::vector<std::vector<int>> watch(c.atom_names.size());  // body atom -> rule idx
    std::vector<int> queue;
    std::vector<bool> truth(c.atom_names.size(), false);

    for (size_t i = 0; i < c.clauses.size(); ++i) {
        const auto& cl = c.clauses[i];
        Rule r;
        for (int l : cl) {
            if (l > 0)
                r.head = l;
            else {
                r.remaining++;
                watch[-l - 1].push_back(static_cast<int>(i));
            }
        }
        rules[i] = r;
        if (r.remaining == 0) {
            if (r.head == 0) return {false, {}};
            if (!truth[r.head - 1]) {
                truth[r.head - 1] = true;
                queue.push_back(r.head - 1);
            }
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int a = queue[qi];
        for (int ri : watch[a]) {
            Rule& r = rules[ri];
            if (--r.remaining > 0) continue;
            if (r.head == 0) return {false, {}};
            if (!truth[r.head - 1]) {
                truth[r.head - 1] = true;
                queue.push_back(r.head - 1);
            }
        }
    }
    SatResult res;
    res.sat = true;
    for (size_t i = 0; i < truth.size(); ++i)
        if (truth[i]) res.true_atoms.insert(static_cast<int>(i));
    return res;
}

namespace {

// Tarjan SCC on the implication graph, iterative.
struct Scc {
    int n;
    const std::vector<std::vector<int>>& adj;
    std::vector<int> comp, low, idx, stack;
    std::vector<bool> on_stack;
    int counter = 0, comps = 0;

    Scc(int n, const std::vector<std::vector<int>>& adj)
        : n(n), adj(adj), comp(n, -1), low(n, 0), idx(n, -1), on_stack(n, false) {}

    void run(int root) {
        struct Frame {
            int v;
            size_t ei;
        };
        std::vector<Frame> frames{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, ei] = frames.back();
            if (ei < adj[v].size()) {
                int w = adj[v][ei++];
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            } else {
                if (low[v] == idx[v]) {
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comps;
                        if (w == v) break;
                    }
                    comps++;
                }
                int vv = v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[vv]);
            }
        }
    }
};

} // namespace

SatResult two_sat(const ClauseSet& c) {
    if (!c.verify_shape(ClauseSet::ShapeHint::Krom))
        throw FragmentError("two_sat: clause set is not Krom");

    int n = static_cast<int>(c.atom_names.size());
    auto node = [&](int lit) {  // literal -> vertex
        int v = std::abs(lit) - 1;
        return 2 * v + (lit > 0 ? 0 : 1);
    };
    std::vector<std::vector<int>> adj(2 * n);
    for (const auto& cl : c.clauses) {
        if (cl.empty()) return {false, {}};
        if (cl.size() == 1) {
            adj[node(-cl[0])].push_back(node(cl[0]));
        } else {
            adj[node(-cl[0])].push_back(node(cl[1]));
            adj[node(-cl[1])].push_back(node(cl[0]));
        }
    }
    Scc scc(2 * n, adj);
    for (int v = 0; v < 2 * n; ++v)
        if (scc.idx[v] < 0) scc.run(v);
    SatResult res;
    res.sat = true;
    for (int v = 0; v < n; ++v) {
        int cp = scc.comp[2 * v], cn = scc.comp[2 * v + 1];
        if (cp == cn) return {false, {}};
        // Tarjan pops successors first, so smaller component ids are later in
        // topological order; a literal holds when its vertex comes after its
        // negation.
        if (cp < cn) res.true_atoms.insert(v);
    }
    return res;
}

namespace {

bool dpll_rec(std::vector<std::vector<int>> clauses, std::map<int, bool>& assignment) {
    // Unit propagation.
    for (;;) {
        bool changed = false;
        for (const auto& cl : clauses) {
            int unassigned = 0, ulit = 0;
            bool satd = false;
            for (int l : cl) {
                auto it = assignment.find(std::abs(l));
                if (it == assignment.end()) {
                    unassigned++;
                    ulit = l;
                } else if (it->second == (l > 0)) {
                    satd = true;
                    break;
                }
            }
            if (satd) continue;
            if (unassigned == 0) return false;
            if (unassigned == 1) {
                assignment[std::abs(ulit)] = ulit > 0;
                changed = true;
            }
        }
        if (!changed) break;
    }
    // Simplify.
    std::vector<std::vector<int>> next;
    std::map<int, int> polarity;  // var -> bitmask 1 pos / 2 neg
    for (const auto& cl : clauses) {
        bool satd = false;
        std::vector<int> rest;
        for (int l : cl) {
            auto it = assignment.find(std::abs(l));
            if (it == assignment.end())
                rest.push_back(l);
            else if (it->second == (l > 0)) {
                satd = true;
                break;
            }
        }
        if (satd) continue;
        if (rest.empty()) return false;
        for (int l : rest) polarity[std::abs(l)] |= l > 0 ? 1 : 2;
        next.push_back(std::move(rest));
    }
    if (next.empty()) return true;
    // Pure literals.
    bool pure = false;
    for (const auto& [v, mask] : polarity) {
        if (mask != 3) {
            assignment[v] = mask == 1;
            pure = true;
        }
    }
    if (pure) return dpll_rec(std::move(next), assignment);
    // Branch on the lowest unassigned atom, true first.
    int var = polarity.begin()->first;
    auto saved = assignment;
    assignment[var] = true;
    if (dpll_rec(next, assignment)) return true;
    assignment = saved;
    assignment[var] = false;
    return dpll_rec(std::move(next), assignment);
}

} // namespace

SatResult dpll(const ClauseSet& c) {
    std::map<int, bool> assignment;
    std::vector<std::vector<int>> clauses = c.clauses;
    if (!dpll_rec(std::move(clauses), assignment)) return {false, {}};
    SatResult res;
    res.sat = true;
    for (const auto& [v, b] : assignment)
        if (b) res.true_atoms.insert(v - 1);
    return res;
}

// ---------------------------------------------------------------------------
// Dispatcher

namespace {

SolveResult ground_pipeline(const KnowledgeBase& k, const FragmentReport& rep) {
    KnowledgeBase cur = k;
    if (rep.has_transitivity) cur = eliminate_transitivity(cur);
    HNminusKB hnm = normalize_to_hn_minus(cur);

    SolveResult res;
    res.report = rep;

    auto violated = evaluate_cond44(hnm);
    if (!violated.empty()) {
        res.verdict = Verdict::Unsat;
        res.detail = violated.front();
        return res;
    }

    QL1Sentence s = translate(hnm);
    ClauseSet cs = ground(s);

    SatResult sr;
    switch (rep.shape) {
        case Shape::Core:
        case Shape::Krom:
            sr = cs.verify_shape(ClauseSet::ShapeHint::Krom) ? two_sat(cs) : dpll(cs);
            break;
        case Shape::Horn:
            sr = cs.verify_shape(ClauseSet::ShapeHint::Horn) ? horn_sat(cs) : dpll(cs);
            break;
        case Shape::Bool:
            sr = dpll(cs);
            break;
    }
    res.verdict = sr.sat ? Verdict::Sat : Verdict::Unsat;
    res.model_atoms = std::move(sr.true_atoms);
    res.clauses = std::move(cs);
    return res;
}

} // namespace

SolveResult solve(const KnowledgeBase& k, const SolveOptions& opts) {
    SolveResult res;
    try {
        KnowledgeBase cur = k;
        if (cur.una) {
            // Equalities are rejected at parse time under the UNA; treat any
            // programmatic ones literally.
            for (const auto& [a, b] : cur.abox.equalities)
                if (a != b) {
                    res.report = classify(cur);
                    res.verdict = Verdict::Unsat;
                    res.detail = "equality between distinct names under UNA";
                    return res;
                }
            cur.abox.equalities.clear();
            for (const auto& [a, b] : cur.abox.inequalities)
                if (a == b) {
                    res.report = classify(cur);
                    res.verdict = Verdict::Unsat;
                    res.detail = a + " != " + a;
                    return res;
                }
            cur.abox.inequalities.clear();
            res.report = classify(cur);
            return ground_pipeline(cur, res.report);
        }

        // No UNA: merge equalities, then dispatch on the number features.
        auto [merged, plan] = merge_equalities(cur);
        res.report = classify(merged);
        if (res.report.numbers == Numbers::N) {
            auto oracle = [&opts](const KnowledgeBase& quotient) {
                return solve(quotient, opts).verdict;
            };
            long long tried = 0;
            res.verdict =
                enumerate_identifications(merged, oracle, opts.partition_cap, &tried);
            res.detail = "partitions_tried=" + std::to_string(tried);
            return res;
        }
        if (res.report.numbers == Numbers::F) {
            KnowledgeBase reduced = functional_merge(merged);
            return ground_pipeline(reduced, classify(reduced));
        }
        // No number restrictions: inequalities between distinct names are free.
        for (const auto& [a, b] : merged.abox.inequalities)
            if (a == b) {
                res.verdict = Verdict::Unsat;
                res.detail = a + " != " + a;
                return res;
            }
        merged.abox.inequalities.clear();
        merged.una = true;
        return ground_pipeline(merged, res.report);
    } catch (const FragmentError& e) {
        res.verdict = Verdict::FragmentUnsupported;
        res.detail = e.what();
        return res;
    } catch (const BudgetError& e) {
        res.verdict = Verdict::BudgetExceeded;
        res.detail = e.what();
        return res;
    }
}

} // namespace dlite
