#ifndef EXTREC_KINDING_HPP
#define EXTREC_KINDING_HPP

#include <optional>

#include "extrec/syntax.hpp"

namespace extrec {

/// Everything the kinding rules can say about an extensible type: fields
/// known present, fields known absent, and whether the type is rooted in a
/// record (in which case any other label is absent too, at any type).
struct FieldInfo {
  FieldMap present;
  FieldMap absent;
  bool closed = false;
};

/// Maximal record-kind information derivable for `t`, or nullopt when no
/// record kind is derivable (non-extensible type, universally kinded base,
/// or an operation the base does not support).
std::optional<FieldInfo> derivable_fields(const KindAssignment &K,
                                          const Type &t);

struct WfResult {
  bool ok = true;
  std::optional<TyVar> offending;
};

WfResult wf_kind_assignment(const KindAssignment &K);
bool wf_type(const KindAssignment &K, const Type &t);
bool wf_type(const KindAssignment &K, const PolyType &t);
bool wf_kind(const KindAssignment &K, const Kind &k);
bool wf_type_assignment(const KindAssignment &K, const TypeAssignment &g);

/// K |- t :: k.
bool has_kind(const KindAssignment &K, const Type &t, const Kind &k);

/// Variables reachable from themselves through kind dependencies.
std::optional<TyVar> kind_cycle(const KindAssignment &K);

}  // namespace extrec

#endif  // EXTREC_KINDING_HPP
