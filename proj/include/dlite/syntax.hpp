#ifndef DLITE_SYNTAX_HPP
#define DLITE_SYNTAX_HPP

#include <memory>
#include <string>
#include <vector>

#include "dlite/model.hpp"

namespace dlite {

// ---------------------------------------------------------------------------
// Positive existential queries

struct QueryTerm {
    bool is_var = false;
    std::string name;
    auto operator<=>(const QueryTerm&) const = default;
};

struct QueryFormula;
using QueryFormulaPtr = std::shared_ptr<const QueryFormula>;

struct QueryFormula {
    enum class Kind { ConceptAtom, RoleAtom, And, Or, Exists };
    Kind kind = Kind::ConceptAtom;
    std::string pred;                 // atoms
    std::vector<QueryTerm> terms;     // atoms
    QueryFormulaPtr lhs, rhs;         // And / Or
    std::vector<std::string> vars;    // Exists
    QueryFormulaPtr sub;              // Exists

    static QueryFormulaPtr concept_atom(std::string pred, QueryTerm t);
    static QueryFormulaPtr role_atom(std::string pred, QueryTerm t1, QueryTerm t2);
    static QueryFormulaPtr conj(QueryFormulaPtr a, QueryFormulaPtr b);
    static QueryFormulaPtr disj(QueryFormulaPtr a, QueryFormulaPtr b);
    static QueryFormulaPtr exists(std::vector<std::string> vars, QueryFormulaPtr sub);
    std::string str() const;
};

struct Query {
    std::string name;
    std::vector<std::string> distinguished;
    QueryFormulaPtr body;

    bool ground() const { return distinguished.empty(); }
    std::string str() const;
};

// Prenex form: all existential quantifiers pulled to the front.
struct PrenexQuery {
    std::vector<std::string> distinguished;
    std::vector<std::string> bound;
    QueryFormulaPtr matrix;  // quantifier-free
};

PrenexQuery prenex(const Query& q);

// ---------------------------------------------------------------------------
// Parsing / printing

KnowledgeBase parse_kb(const std::string& text);
ConceptPtr parse_concept(const std::string& text);
Query parse_query(const std::string& text);
Interpretation parse_interpretation(const std::string& text);

std::string print_kb(const KnowledgeBase& kb);
std::string print_query(const Query& q);
std::string print_interpretation(const Interpretation& i,
                                 const std::vector<std::string>& comments = {});

} // namespace dlite

#endif
