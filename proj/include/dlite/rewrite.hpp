#ifndef DLITE_REWRITE_HPP
#define DLITE_REWRITE_HPP

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dlite/closure.hpp"
#include "dlite/model.hpp"
#include "dlite/normalize.hpp"
#include "dlite/syntax.hpp"

namespace dlite {

// ---------------------------------------------------------------------------
// The ABox as a first-order structure

struct AboxStructure {
    std::vector<std::string> domain;  // ob(A), sorted
    std::map<std::string, int> index;
    std::map<std::string, std::set<int>> pos_concepts, neg_concepts;
    std::map<std::string, std::set<std::pair<int, int>>> pos_roles, neg_roles;

    bool has_object(const std::string& o) const { return index.count(o) > 0; }
};

AboxStructure build_abox_structure(const ABox& a);

// ---------------------------------------------------------------------------
// First-order queries over the ABox signature

struct FOTerm {
    bool is_var = false;
    std::string name;
    static FOTerm var(std::string n) { return {true, std::move(n)}; }
    static FOTerm constant(std::string n) { return {false, std::move(n)}; }
    auto operator<=>(const FOTerm&) const = default;
};

struct SatTypeData;  // lazy phi_T payload

struct FOFormula;
using FOPtr = std::shared_ptr<const FOFormula>;

struct FOFormula {
    enum class Kind {
        True,
        False,
        ConceptAtom,  // pred(t), negated_rel selects the barred relation
        RoleAtom,     // pred(t1,t2)
        Eq,          // t1 = t2
        Neq,         // t1 != t2
        And,
        Or,
        Not,
        Exists,
        Forall,
        TypeCase,    // phi_T body; evaluated natively
    };
    Kind kind = Kind::True;
    bool negated_rel = false;
    std::string pred;
    std::vector<FOTerm> terms;
    std::vector<FOPtr> children;
    std::string var;
    std::shared_ptr<const SatTypeData> typecase;

    static FOPtr truth();
    static FOPtr falsity();
    static FOPtr concept_atom(std::string pred, FOTerm t, bool negated_rel = false);
    static FOPtr role_atom(std::string pred, FOTerm t1, FOTerm t2, bool negated_rel = false);
    static FOPtr eq(FOTerm a, FOTerm b);
    static FOPtr neq(FOTerm a, FOTerm b);
    static FOPtr conj(std::vector<FOPtr> cs);
    static FOPtr disj(std::vector<FOPtr> cs);
    static FOPtr negate(FOPtr f);
    static FOPtr exists(std::string var, FOPtr f);
    static FOPtr forall(std::string var, FOPtr f);

    std::string str() const;
};

struct FOQuery {
    FOPtr formula;
    std::vector<std::string> free_vars;  // answer variables, in order
    std::string str() const;
};

// Active-domain evaluation; tuples in lexicographic order (set ordering).
std::set<std::vector<std::string>> eval_fo(const AboxStructure& s, const FOQuery& f);
bool eval_fo_sentence(const AboxStructure& s, const FOQuery& f);

// ---------------------------------------------------------------------------
// Satisfiability rewriting (section 6.1)

// phi_T /\ gamma_T' for a TBox; evaluating it on the ABox structure decides
// satisfiability of (T, A) for every ABox A. The type-tuple disjunction is
// evaluated natively by eval_fo.
struct SatRewriting {
    FOQuery query;                 // sentence
    std::shared_ptr<const SatTypeData> data;
};

SatRewriting build_sat_rewriting(const TBox& t, long long type_budget = 1LL << 62);

// ---------------------------------------------------------------------------
// Query rewriting (section 7)

struct PathGraph {
    std::vector<Role> vertices;               // class representatives, [R] with exists R satisfiable
    std::set<std::pair<int, int>> edges;      // indices into vertices
    std::map<Role, int> vertex_of;            // representative -> index
};

// T |= exists S <= B; B = bottom decides emptiness of exists S.
using EntailmentOracle = std::function<bool(const Role& s, const BasicConcept& b)>;

// Rewriting machinery for a Horn (HN)- TBox. Holds the psi/theta fixpoints and
// the path graph; all outputs depend only on the TBox and the query.
class HornRewriter {
  public:
    // `id_role` marks the distinguished identity role when the TBox came out
    // of the (HN)- normalization; empty otherwise.
    explicit HornRewriter(const TBox& t, std::string id_role = "",
                          long long sigma_cap = 200000);
    HornRewriter(const TBox& t, std::string id_role, EntailmentOracle oracle,
                 long long sigma_cap);

    const RoleOrder& order() const { return ord_; }
    const NumberSets& numbers() const { return ns_; }

    FOPtr psi(const BasicConcept& b) const;
    FOPtr theta(const BasicConcept& b, const Role& dr) const;
    const PathGraph& graph() const { return graph_; }

    FOQuery rewrite(const Query& q) const;

    // Default oracle: Horn closure of ext(T) type atoms (a least-model read).
    static EntailmentOracle closure_oracle(const TBox& t);
    // Alternative oracle backed by the grounding engine's least model.
    static EntailmentOracle ground_oracle(const TBox& t);

  private:
    void build();
    FOPtr role_closure(const Role& r, const FOTerm& t1, const FOTerm& t2) const;  // (47)
    FOPtr eq_count(qint q, const Role& r, const FOTerm& t) const;                 // (46)

    TBox tbox_;
    RoleOrder ord_;
    NumberSets ns_;
    EntailmentOracle oracle_;
    long long sigma_cap_;
    std::vector<BasicConcept> bcon_;
    std::map<std::string, int> bcon_index_;
    std::vector<FOPtr> psi_;                       // per bcon
    std::map<std::pair<std::string, std::string>, FOPtr> theta_;  // (bcon, dr) keys
    PathGraph graph_;
    std::string id_role_;  // empty when absent

    friend FOQuery rewrite_query(const TBox& t, const Query& q, long long sigma_cap);
};

FOQuery rewrite_query(const TBox& t, const Query& q, long long sigma_cap = 200000);

// End-to-end certain answers for consistent Horn KBs.
std::set<std::vector<std::string>> certain_answers(const KnowledgeBase& k, const Query& q,
                                                   long long sigma_cap = 200000);

// ---------------------------------------------------------------------------
// SQL emission (schema: ca(c,obj), nca(c,obj), ra(r,s,o), nra(r,s,o))

std::string emit_sql(const FOQuery& f);

} // namespace dlite

#endif
