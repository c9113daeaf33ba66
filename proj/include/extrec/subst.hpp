#ifndef EXTREC_SUBST_HPP
#define EXTREC_SUBST_HPP

#include <optional>
#include <utility>
#include <vector>

#include "extrec/syntax.hpp"

namespace extrec {

/// Structural application; the result is not normalized. Throws
/// std::invalid_argument if a field-operation base is mapped to a
/// non-extensible type.
Type substitute(const Substitution &s, const Type &t);
Kind substitute(const Substitution &s, const Kind &k);
/// Bound variables that clash with dom(s) or the free variables of its range
/// are renamed first.
PolyType substitute(const Substitution &s, const PolyType &p);
TypeAssignment substitute(const Substitution &s, const TypeAssignment &g);
KindAssignment substitute(const Substitution &s, const KindAssignment &K);
Substitution substitute(const Substitution &s, const Substitution &inner);

Type image(const Substitution &s, const TyVar &v);

/// s2 after s1. Images are normalized.
Substitution compose(const Substitution &s2, const Substitution &s1);

/// (K1, s) respects K2.
bool respects(const KindAssignment &K1, const Substitution &s,
              const KindAssignment &K2);

/// Quantifier order for a set of variables: dependencies first, ties by id.
std::vector<TyVar> dependency_order(const KindAssignment &K, const VarSet &vs);

struct Closure {
  KindAssignment residual;
  PolyType poly;
};

/// Generalizes EFTV(K, t) minus EFTV(K, G). Variables outside that set whose
/// kinds depend on it are generalized too, so the residual assignment stays
/// well formed.
Closure closure(const KindAssignment &K, const TypeAssignment &G,
                const Type &t);

/// Witness of K |- s1 >= s2, if one is found. The witness maps the
/// quantified variables of s1 to types over K and the quantifiers of s2.
std::optional<Substitution> generic_instance_witness(const KindAssignment &K,
                                                     const PolyType &s1,
                                                     const PolyType &s2);
bool generic_instance(const KindAssignment &K, const PolyType &s1,
                      const PolyType &s2);

/// Checks a proposed witness against the definition directly.
bool verify_instance(const KindAssignment &K, const PolyType &s1,
                     const PolyType &s2, const Substitution &witness);

/// Process-wide supply of ids used when renaming bound variables. Kept far
/// above ids produced by parsing and inference.
TyVar fresh_rename_var(const std::string &hint);

/// Renames every quantifier of `p` to a fresh variable and records the map
/// in `r`.
PolyType rename_quantifiers(const PolyType &p, VarRenaming &r);

}  // namespace extrec

#endif  // EXTREC_SUBST_HPP
