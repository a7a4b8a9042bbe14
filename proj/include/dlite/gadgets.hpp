#ifndef DLITE_GADGETS_HPP
#define DLITE_GADGETS_HPP

#include <array>
#include <string>
#include <vector>

#include "dlite/model.hpp"

namespace dlite {

// 2+2 clauses: (a_{k,1} v a_{k,2} v -a_{k,3} v -a_{k,4}), variables 1..nvars.
struct TwoTwoCnf {
    int nvars = 0;
    std::vector<std::array<int, 4>> clauses;  // p1 p2 n1 n2
};

// Horn-CNF: implications (a & b -> c) plus unit clauses.
struct HornCnf {
    int nvars = 0;
    std::vector<std::array<int, 3>> implications;
    std::vector<int> units;
};

// Monotone 3-clauses for one-in-three 3SAT.
struct MonotoneCnf {
    int nvars = 0;
    std::vector<std::array<int, 3>> clauses;
};

TwoTwoCnf parse_2p2(const std::string& text);
HornCnf parse_horn(const std::string& text);
MonotoneCnf parse_oit(const std::string& text);

// ---------------------------------------------------------------------------
// Generators

struct InstanceCheckGadget {
    KnowledgeBase kb;
    ConceptAssertion target;           // entailed iff the formula is unsatisfiable
    std::vector<std::string> var_objects;
};

// Krom^(HF) reduction of 2+2CNF unsatisfiability (axioms 48-55). With
// expand_conjunctions the conjunctive-lhs axiom is compiled away via the
// role-functionality simulation; otherwise it is kept in Horn form.
InstanceCheckGadget gen_2p2cnf(const TwoTwoCnf& phi, bool expand_conjunctions = false);

// Core^(HN) variant: the covering axiom is replaced by number restrictions
// (axioms 56-60 in place of 50).
InstanceCheckGadget gen_core_hn_2p2(const TwoTwoCnf& phi, bool expand_conjunctions = false);

struct HornEntailGadget {
    KnowledgeBase kb;
    std::vector<std::string> var_targets;  // var i -> object with A(*) entailed iff phi |= a_i
    std::string target_concept = "A";
};

// Core^(HF) reduction of Horn-CNF entailment (axioms 61-71).
HornEntailGadget gen_horncnf_hf(const HornCnf& phi, bool expand_conjunctions = false);

struct OneInThreeGadget {
    KnowledgeBase kb;  // satisfiable without the UNA iff phi has a one-in-three model
};

OneInThreeGadget gen_one_in_three(const MonotoneCnf& phi);

struct FunctionalHornGadget {
    KnowledgeBase kb;
    std::string t_object = "t";
    std::string role = "T";
    std::vector<std::string> var_targets;  // var i -> object o with K |= T(t,o) iff phi |= a_i
};

// Core^F reduction of Horn-CNF entailment without the UNA (Thm 8.7 shape).
FunctionalHornGadget gen_horncnf_f_nouna(const HornCnf& phi);

// Lemma 5.9: replace C1 & C2 <= C by role-functionality axioms with five fresh
// roles. Returns the replacement axioms.
struct ConjunctionSimulation {
    std::vector<ConceptInclusion> concept_inclusions;
    std::vector<RoleInclusion> role_inclusions;
    std::vector<std::string> fresh_roles;
};

ConjunctionSimulation simulate_conjunction(const ConceptPtr& c1, const ConceptPtr& c2,
                                           const ConceptPtr& c,
                                           std::set<std::string>& taken_names);

// ---------------------------------------------------------------------------
// Independent propositional oracles

bool sat_2p2(const TwoTwoCnf& phi);
bool horn_entails(const HornCnf& phi, int var);
bool one_in_three_sat(const MonotoneCnf& phi);

} // namespace dlite

#endif
