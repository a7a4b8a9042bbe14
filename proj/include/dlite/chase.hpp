#ifndef DLITE_CHASE_HPP
#define DLITE_CHASE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dlite/model.hpp"

namespace dlite {

enum class ChaseVerdict { Sat, Unsat, BoundExceeded, Unsupported };

struct ChaseResult {
    ChaseVerdict verdict = ChaseVerdict::Unsat;
    long long steps = 0;
    std::string detail;
    Interpretation model;  // saturated store, valid when Sat
    ABox saturated_abox;   // dumpable store
};

// Restricted chase for Horn KBs with role inclusions and functionality, a
// sound semi-decision procedure where the grounding route is inapplicable.
// TGDs create minimal fresh witnesses; EGDs (functionality over the role
// hierarchy) merge labeled nulls and run before TGDs. Bound in rule
// applications; max_steps < 0 picks the default 10*(|A|+|T|)^2.
ChaseResult chase(const KnowledgeBase& k, long long max_steps = -1);

enum class ChaseAnswer { Yes, No, BoundExceeded };

// Entailment of a ground assertion by saturation membership.
ChaseAnswer chase_entails(const KnowledgeBase& k, const ConceptAssertion& goal,
                          long long max_steps = -1);
ChaseAnswer chase_entails(const KnowledgeBase& k, const RoleAssertion& goal,
                          long long max_steps = -1);

} // namespace dlite

#endif
