#ifndef DLITE_SAT_HPP
#define DLITE_SAT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dlite/model.hpp"

namespace dlite {

// Propositional clause set with interned atoms. Positive literal = id + 1,
// negative literal = -(id + 1).
struct ClauseSet {
    enum class ShapeHint { Horn, Krom, General };

    std::vector<std::string> atom_names;          // id -> printable name
    std::map<std::string, int> atom_ids;
    std::vector<std::vector<int>> clauses;
    ShapeHint shape_hint = ShapeHint::General;

    int intern(const std::string& name);
    void add_clause(std::vector<int> lits);
    void compute_shape_hint();
    bool verify_shape(ShapeHint h) const;
    size_t literal_count() const;
    std::string dimacs() const;
};

struct SatResult {
    bool sat = false;
    std::set<int> true_atoms;  // least model for horn_sat; a model for dpll
};

// Unit propagation; when satisfiable the returned atom set is the least model.
SatResult horn_sat(const ClauseSet& c);
// Implication-graph / SCC decision for binary clause sets.
SatResult two_sat(const ClauseSet& c);
// Complete backtracking search, deterministic branching (lowest id, true first).
SatResult dpll(const ClauseSet& c);

struct SolveOptions {
    enum class Engine { Ground, FoRewrite, Chase };
    Engine engine = Engine::Ground;
    long long chase_bound = -1;         // -1: default 10*(|A|+|T|)^2
    long long partition_cap = 20000;    // no-UNA identification search
    long long type_budget = 1 << 22;    // 2^{|Bcon|*(k+1)} cap for fo-rewrite
    long long sigma_cap = 200000;       // |Sigma|^k cap for query rewriting
};

struct SolveResult {
    Verdict verdict = Verdict::Sat;
    FragmentReport report;
    std::string detail;                 // reason for refusal / budget info
    std::optional<ClauseSet> clauses;   // ground engine only
    std::set<int> model_atoms;          // ground engine, when sat
};

// Satisfiability dispatcher: classify, preprocess (non-UNA, transitivity),
// normalize, translate, ground, and run the shape-matched solver.
SolveResult solve(const KnowledgeBase& k, const SolveOptions& opts = {});

} // namespace dlite

#endif
