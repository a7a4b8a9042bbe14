#ifndef DLITE_NORMALIZE_HPP
#define DLITE_NORMALIZE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dlite/closure.hpp"
#include "dlite/model.hpp"

namespace dlite {

// ABox-level obligation left over by the reduction to (HN)-: no pair may be
// related by both roles in Cl^e (Irr becomes a disjointness with Id).
struct Cond44Check {
    Role r1;
    Role r2;
    std::string origin;
};

// A KB in the (HN)- sub-language: no qualified restrictions, no role
// constraints; reflexivity is encoded through the distinguished Id role.
struct HNminusKB {
    KnowledgeBase kb;
    RoleOrder order;
    NumberSets numbers;
    bool has_id = false;
    std::string id_role;
    std::vector<Cond44Check> cond44_checks;
    std::map<std::string, std::string> rename_map;  // fresh symbol -> origin
};

// Replace positive qualified restrictions >=q R.C by fresh roles R_C with
// exists R_C- <= C and R_C <= R, to a fixpoint (Lemma 5.17, first step).
TBox eliminate_qualified(const TBox& t);

// Full reduction of an (HN) KB (with role constraints) to (HN)-.
HNminusKB normalize_to_hn_minus(const KnowledgeBase& k);

// Evaluate the cond44 obligations over Cl^e of the normalized KB; returns the
// violated ones (each a witness message).
std::vector<std::string> evaluate_cond44(const HNminusKB& k);

// Drop Tra axioms; close the ABox as Cl^e(Tra(Cl^e(A))) (Lemma 5.18).
KnowledgeBase eliminate_transitivity(const KnowledgeBase& k);

struct MergePlan {
    std::map<std::string, std::string> canonical;  // object -> representative
    const std::string& rep(const std::string& o) const {
        auto it = canonical.find(o);
        return it == canonical.end() ? o : it->second;
    }
};

// Collapse the equality graph to minimal representatives (Lemma 8.1).
std::pair<KnowledgeBase, MergePlan> merge_equalities(const KnowledgeBase& k);

// Identify objects forced equal by functionality over Cl^e, then compile the
// remaining inequalities away (Lemma 8.6). Output is decidable under UNA.
KnowledgeBase functional_merge(const KnowledgeBase& k);

// Search over object identifications for KBs with number restrictions and no
// UNA (Thm 8.5). The oracle decides UNA-satisfiability of candidate quotients.
Verdict enumerate_identifications(const KnowledgeBase& k,
                                  const std::function<Verdict(const KnowledgeBase&)>& una_sat,
                                  long long partition_cap,
                                  long long* partitions_tried = nullptr);

// Service reductions (section 3.1). Subsumption / instance checking hold iff
// every returned KB is unsatisfiable; concept satisfiability iff the returned
// KB is satisfiable.
std::vector<KnowledgeBase> reduce_subsumption(const TBox& t, const ConceptPtr& c1,
                                              const ConceptPtr& c2);
std::vector<KnowledgeBase> reduce_instance_check(const KnowledgeBase& k, const std::string& a,
                                                 const ConceptPtr& c);
KnowledgeBase reduce_concept_sat(const TBox& t, const ConceptPtr& c);

// Fresh symbol not colliding with any name in `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

} // namespace dlite

#endif
