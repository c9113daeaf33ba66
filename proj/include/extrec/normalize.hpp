#ifndef EXTREC_NORMALIZE_HPP
#define EXTREC_NORMALIZE_HPP

#include <optional>
#include <vector>

#include "extrec/syntax.hpp"

namespace extrec {

/// One rewrite step at the leftmost-innermost redex, or nullopt when `t` is
/// in normal form. Never reorders operations.
std::optional<Type> reduce_once(const Type &t);

/// Every type reachable from `t` in exactly one rewrite step, at any
/// position. Used to exercise confluence with random reduction orders.
std::vector<Type> one_step_reducts(const Type &t);

/// Stable sort of every chain's operations by label, at every depth.
Type sort_chains(const Type &t);

/// Canonical form: rewrite to normal form, sort chains by label, and repeat
/// until stable.
Type normalize(const Type &t);
Kind normalize(const Kind &k);

bool is_normal(const Type &t);

/// t1 and t2 have the same canonical form.
bool equiv(const Type &t1, const Type &t2);
bool equiv(const Kind &k1, const Kind &k2);
bool fields_equiv(const FieldMap &a, const FieldMap &b);

/// Equality up to quantifier renaming, with bodies and kinds compared by
/// `equiv`.
bool poly_equiv(const PolyType &a, const PolyType &b);

/// S1(a) and S2(a) are equivalent for every a in dom(S1) u dom(S2).
bool subst_equal(const Substitution &s1, const Substitution &s2);

}  // namespace extrec

#endif  // EXTREC_NORMALIZE_HPP
