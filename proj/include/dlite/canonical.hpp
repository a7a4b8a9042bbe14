#ifndef DLITE_CANONICAL_HPP
#define DLITE_CANONICAL_HPP

#include <set>
#include <string>
#include <vector>

#include "dlite/fol.hpp"
#include "dlite/model.hpp"
#include "dlite/normalize.hpp"
#include "dlite/syntax.hpp"

namespace dlite {

using ModelAtom = std::pair<UnaryPredicate, Constant>;
using ModelAtomSet = std::set<ModelAtom>;

// Least Herbrand model of a satisfiable Horn sentence, as the set of entailed
// ground atoms over ob(A) and the dr constants. Throws on unsatisfiable input.
ModelAtomSet minimal_model(const QL1Sentence& s);

// Any model of the grounded sentence, from a solver's true-atom set.
ModelAtomSet model_atoms_from(const QL1Sentence& s, const ClauseSet& cs,
                              const std::set<int>& true_atoms);

// Forest-shaped interpretation produced by unraveling a model of K^(ddagger e).
struct UntangledModel {
    Interpretation interpretation;
    std::vector<std::string> names;     // element id -> printable name
    std::vector<Constant> cp;           // copy function
    std::vector<int> depth;
    std::vector<int> parent;            // -1 for roots
    std::vector<Role> parent_label;     // tree edge label (on non-roots)
    std::vector<int> roots;             // ids of the ABox elements

    // Adjacency per direct role name, both directions, for query evaluation.
    std::map<std::string, std::vector<std::pair<int, int>>> edges;

    int element_count() const { return static_cast<int>(names.size()); }
    std::vector<std::string> annotations() const;
};

// Unravel `atoms` (a model of the grounded sentence) into the induced
// untangled model, truncated at the given depth.
UntangledModel unravel(const ModelAtomSet& atoms, const HNminusKB& k, int depth);

// Certain answers of a positive existential query over a consistent Horn KB,
// evaluated on the depth-m0 truncation of the minimal untangled model.
std::set<std::vector<std::string>> certain_answer_oracle(const KnowledgeBase& k, const Query& q);

// Query evaluation over an untangled model (assignments range over all
// elements; distinguished variables over the ABox roots).
std::set<std::vector<std::string>> evaluate_query(const UntangledModel& m, const Query& q);

} // namespace dlite

#endif
