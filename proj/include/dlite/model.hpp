#ifndef DLITE_MODEL_HPP
#define DLITE_MODEL_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dlite/types.hpp"

namespace dlite {

// ---------------------------------------------------------------------------
// Roles

struct Role {
    std::string name;
    bool inverted = false;

    auto operator<=>(const Role&) const = default;
    std::string str() const { return inverted ? name + "-" : name; }
};

inline Role inv(const Role& r) { return Role{r.name, !r.inverted}; }

// ---------------------------------------------------------------------------
// Concepts

struct BasicConcept {
    enum class Kind { Bottom, Atom, AtLeast };
    Kind kind = Kind::Bottom;
    std::string name;   // Atom
    qint q = 0;         // AtLeast
    Role role;          // AtLeast

    static BasicConcept bottom() { return BasicConcept{}; }
    static BasicConcept atom(std::string n) {
        return BasicConcept{Kind::Atom, std::move(n), 0, {}};
    }
    static BasicConcept at_least(qint q, Role r) {
        return BasicConcept{Kind::AtLeast, {}, q, std::move(r)};
    }
    static BasicConcept exists(Role r) { return at_least(1, std::move(r)); }

    auto operator<=>(const BasicConcept&) const = default;
    std::string str() const;
};

class Concept;
using ConceptPtr = std::shared_ptr<const Concept>;

// Immutable concept tree. Top is represented as Not(Basic(Bottom)).
class Concept {
  public:
    enum class Kind { Basic, Not, And, AtLeastQ };

    Kind kind() const { return kind_; }
    const BasicConcept& basic() const { return basic_; }
    const ConceptPtr& child() const { return lhs_; }   // Not
    const ConceptPtr& lhs() const { return lhs_; }     // And
    const ConceptPtr& rhs() const { return rhs_; }     // And
    qint q() const { return q_; }                      // AtLeastQ
    const Role& role() const { return role_; }         // AtLeastQ
    const ConceptPtr& filler() const { return rhs_; }  // AtLeastQ

    static ConceptPtr basic(BasicConcept b);
    static ConceptPtr bottom() { return basic(BasicConcept::bottom()); }
    static ConceptPtr top() { return negate(bottom()); }
    static ConceptPtr atom(std::string name) { return basic(BasicConcept::atom(std::move(name))); }
    static ConceptPtr at_least(qint q, Role r) { return basic(BasicConcept::at_least(q, std::move(r))); }
    static ConceptPtr exists(Role r) { return at_least(1, std::move(r)); }
    static ConceptPtr negate(ConceptPtr c);
    static ConceptPtr conj(ConceptPtr a, ConceptPtr b);
    static ConceptPtr disj(ConceptPtr a, ConceptPtr b);  // derived: not(not a & not b)
    static ConceptPtr at_most(qint q, Role r);           // derived: not(>= q+1 R)
    static ConceptPtr at_least_q(qint q, Role r, ConceptPtr filler);

    bool is_bottom() const { return kind_ == Kind::Basic && basic_.kind == BasicConcept::Kind::Bottom; }
    bool is_top() const { return kind_ == Kind::Not && lhs_->is_bottom(); }
    std::string str() const;

    friend bool equal(const ConceptPtr& a, const ConceptPtr& b);
    friend bool concept_less(const ConceptPtr& a, const ConceptPtr& b);

  private:
    Concept() = default;
    Kind kind_ = Kind::Basic;
    BasicConcept basic_;
    ConceptPtr lhs_, rhs_;
    qint q_ = 0;
    Role role_;
};

bool equal(const ConceptPtr& a, const ConceptPtr& b);
bool concept_less(const ConceptPtr& a, const ConceptPtr& b);

// ---------------------------------------------------------------------------
// TBox / ABox / KB

struct RoleConstraint {
    enum class Kind { Dis, Sym, Asym, Ref, Irr, Tra };
    Kind kind = Kind::Dis;
    Role r1;  // Dis only; others use name
    Role r2;  // Dis only
    std::string name;
    SourceSpan span;

    std::string str() const;
};

struct ConceptInclusion {
    ConceptPtr lhs;
    ConceptPtr rhs;
    SourceSpan span;
    std::string str() const;
};

struct RoleInclusion {
    Role sub;
    Role sup;
    SourceSpan span;
    std::string str() const { return sub.str() + " <= " + sup.str(); }
};

struct TBox {
    std::vector<ConceptInclusion> concept_inclusions;
    std::vector<RoleInclusion> role_inclusions;
    std::vector<RoleConstraint> role_constraints;
};

struct ConceptAssertion {
    bool positive = true;
    std::string concept_name;
    std::string object;
    SourceSpan span;
    std::string str() const;
};

struct RoleAssertion {
    bool positive = true;
    std::string role_name;
    std::string subject;
    std::string object;
    SourceSpan span;
    std::string str() const;
};

struct ABox {
    std::vector<ConceptAssertion> concept_assertions;
    std::vector<RoleAssertion> role_assertions;
    std::vector<std::pair<std::string, std::string>> equalities;
    std::vector<std::pair<std::string, std::string>> inequalities;

    std::set<std::string> objects() const;  // ob(A)
};

struct KnowledgeBase {
    TBox tbox;
    ABox abox;
    bool una = true;
};

// All role names mentioned anywhere in the KB, as direct roles.
std::set<std::string> role_names(const KnowledgeBase& kb);
std::set<std::string> concept_names(const KnowledgeBase& kb);
// role^+-(K): every mentioned role name in both directions.
std::vector<Role> signed_roles(const KnowledgeBase& kb);

// ---------------------------------------------------------------------------
// Interpretations and model checking

struct Interpretation {
    std::vector<std::string> domain;
    std::map<std::string, std::set<std::string>> concept_ext;
    std::map<std::string, std::set<std::pair<std::string, std::string>>> role_ext;
    std::map<std::string, std::string> object_map;

    bool in_domain(const std::string& e) const;
    // Pairs of R with inverses resolved; throws UnknownNameError for missing roles.
    std::set<std::pair<std::string, std::string>> role_pairs(const Role& r) const;
    std::set<std::string> eval(const ConceptPtr& c) const;
};

struct ModelCheckResult {
    bool satisfied = true;
    std::vector<std::string> violations;  // printed axioms/assertions
};

ModelCheckResult check_model(const Interpretation& i, const KnowledgeBase& k);

// ---------------------------------------------------------------------------
// Fragment classification

enum class Shape { Core, Krom, Horn, Bool };
enum class Numbers { None, F, N };

const char* to_string(Shape s);
const char* to_string(Numbers n);

struct FragmentReport {
    Shape shape = Shape::Core;
    Numbers numbers = Numbers::None;
    bool has_role_inclusions = false;
    bool has_role_constraints = false;  // Dis/Sym/Asym/Ref/Irr
    bool has_transitivity = false;
    bool has_qualified = false;
    std::vector<std::string> a123_violations;
    std::vector<std::string> non_simple_number_restrictions;
    std::vector<std::string> notes;
    std::string family_label;

    bool admissible() const {
        return a123_violations.empty() && non_simple_number_restrictions.empty();
    }
};

FragmentReport classify(const KnowledgeBase& k);

} // namespace dlite

#endif
