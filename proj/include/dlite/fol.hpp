#ifndef DLITE_FOL_HPP
#define DLITE_FOL_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dlite/closure.hpp"
#include "dlite/model.hpp"
#include "dlite/normalize.hpp"
#include "dlite/sat.hpp"

namespace dlite {

// ---------------------------------------------------------------------------
// QL^1: the one-variable fragment image of a KB

struct UnaryPredicate {
    enum class Kind { ConceptPred, EqPred };
    Kind kind = Kind::ConceptPred;
    std::string name;  // ConceptPred
    qint q = 0;        // EqPred
    Role role;         // EqPred

    static UnaryPredicate concept_pred(std::string n) {
        return UnaryPredicate{Kind::ConceptPred, std::move(n), 0, {}};
    }
    static UnaryPredicate eq_pred(qint q, Role r) {
        return UnaryPredicate{Kind::EqPred, {}, q, std::move(r)};
    }
    auto operator<=>(const UnaryPredicate&) const = default;
    std::string str() const;
};

struct Constant {
    enum class Kind { Obj, Dr };
    Kind kind = Kind::Obj;
    std::string obj;
    Role role;

    static Constant object(std::string o) { return Constant{Kind::Obj, std::move(o), {}}; }
    static Constant dr(Role r) { return Constant{Kind::Dr, {}, std::move(r)}; }
    auto operator<=>(const Constant&) const = default;
    std::string str() const;
};

// Term of a universal-part atom: the variable x or a constant (the epsilon
// formulas conclude at a witness constant).
struct QTerm {
    bool is_var = true;
    Constant constant;
    static QTerm x() { return QTerm{true, {}}; }
    static QTerm c(Constant k) { return QTerm{false, std::move(k)}; }
};

// Boolean combination of unary-predicate atoms (negation and conjunction
// suffice for concept images).
struct QForm;
using QFormPtr = std::shared_ptr<const QForm>;
struct QForm {
    enum class Kind { Atom, True, False, Not, And };
    Kind kind = Kind::True;
    UnaryPredicate pred;  // Atom
    QTerm term;           // Atom
    QFormPtr lhs, rhs;

    static QFormPtr atom(UnaryPredicate p, QTerm t);
    static QFormPtr truth();
    static QFormPtr falsity();
    static QFormPtr negate(QFormPtr f);
    static QFormPtr conj(QFormPtr a, QFormPtr b);
    std::string str() const;
};

struct QImplication {
    QFormPtr lhs;
    QFormPtr rhs;
    std::string str() const { return lhs->str() + " -> " + rhs->str(); }
};

struct GroundLiteral {
    bool positive = true;
    UnaryPredicate pred;
    Constant constant;
    std::string str() const;
};

// K^(double-dagger e): universal one-variable part plus a ground part.
struct QL1Sentence {
    std::vector<QImplication> tstar;   // T*(x)
    std::vector<QImplication> trole;   // T^R(x), Eq. (42)
    std::vector<QImplication> eps;     // epsilon_R(x)
    std::vector<QImplication> delta;   // delta_R(x)
    std::vector<GroundLiteral> ground; // A#1 and A#2
    bool contradiction = false;        // a negated role assertion met Cl^e
    std::vector<Constant> constants;   // ob(A) then dr constants

    std::vector<const QImplication*> universal() const;
    std::vector<std::string> universal_strings() const;
};

// The ·‡e translation of an (HN)- KB (Cor. 5.16). With a trivial role order it
// specializes to ·‡ (Cor. 5.5).
QL1Sentence translate(const HNminusKB& k);

// Ground the one-variable sentence over its constants (Thm 5.8 proof).
// Non-clausal implications are clausified by deterministic definitional
// naming, preserving satisfiability.
ClauseSet ground(const QL1Sentence& s);

} // namespace dlite

#endif
