#ifndef DLITE_CLOSURE_HPP
#define DLITE_CLOSURE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dlite/model.hpp"

namespace dlite {

// Reflexive-transitive, inversion-closed sub-role relation over the signed
// roles of a KB, with a deterministic representative per equivalence class.
struct RoleOrder {
    std::set<Role> roles;                       // role^+-
    std::map<Role, std::set<Role>> sups;        // R -> { R' | R subsumed-by* R' }
    std::map<Role, Role> rep;                   // class representative

    bool leq(const Role& a, const Role& b) const {
        auto it = sups.find(a);
        return it != sups.end() && it->second.count(b) > 0;
    }
    bool equiv(const Role& a, const Role& b) const { return leq(a, b) && leq(b, a); }
    bool proper_sub(const Role& sub, const Role& sup) const {
        return leq(sub, sup) && !leq(sup, sub);
    }
    bool has_proper_sub(const Role& r) const {
        for (const auto& s : roles)
            if (proper_sub(s, r)) return true;
        return false;
    }
    std::set<Role> subs(const Role& r) const {
        std::set<Role> out;
        for (const auto& s : roles)
            if (leq(s, r)) out.insert(s);
        return out;
    }
    Role representative(const Role& r) const {
        auto it = rep.find(r);
        return it == rep.end() ? r : it->second;
    }
    std::vector<Role> representatives() const;
};

RoleOrder role_order(const TBox& t, const std::set<std::string>& extra_role_names = {});
RoleOrder role_order(const KnowledgeBase& kb);

// Q^R_T with padding (Q): Q^R subset-of Q^R' whenever R subsumed-by* R'.
struct NumberSets {
    std::map<Role, std::set<qint>> q;

    const std::set<qint>& of(const Role& r) const;
    qint max_at_most(const Role& r, qint bound) const;  // max q in Q^R with q <= bound, 0 if none
};

NumberSets number_sets(const TBox& t, const RoleOrder& ord);

// Direction-normalized role atom store: atoms are kept under the direct role
// name with (subject, object) order.
struct RoleAtom {
    std::string role;
    std::string subject;
    std::string object;
    auto operator<=>(const RoleAtom&) const = default;
};

using RoleAtomSet = std::set<RoleAtom>;

RoleAtomSet abox_role_atoms(const ABox& a);
// Cl^e_T(A): close under the role hierarchy; inverse atoms normalized.
RoleAtomSet extended_abox_closure(const RoleOrder& ord, const RoleAtomSet& atoms);
RoleAtomSet extended_abox_closure(const TBox& t, const ABox& a);
// Pairs (x,y) with R(x,y) in the closure, for direct or inverse R.
std::set<std::pair<std::string, std::string>> pairs_of(const RoleAtomSet& atoms, const Role& r);

// Tra_T(A): transitive closure of P-atoms for each Tra(P) in T.
RoleAtomSet transitive_abox_closure(const TBox& t, const RoleAtomSet& atoms);

// ext(T): T plus the adjacent-number and hierarchy-monotonicity inclusions.
TBox ext_tbox(const TBox& t);
TBox ext_tbox(const TBox& t, const RoleOrder& ord, const NumberSets& ns);

} // namespace dlite

#endif
