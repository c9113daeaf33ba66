#ifndef EXTREC_DERIVATION_HPP
#define EXTREC_DERIVATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "extrec/syntax.hpp"

namespace extrec {

/// A typing derivation K, G |- M : s. Rule names: Var, Const, Abs, App, Let,
/// Rec, Sel, Modif, Gen, Contr, Ext.
struct Derivation {
  std::string rule;
  KindAssignment kinds;
  TypeAssignment gamma;
  Term term;
  PolyType type;
  std::vector<Derivation> children;
  /// The kinding premise of Sel, Modif, Contr and Ext: the kind required of
  /// the first premise's type.
  std::optional<Kind> side_kind;
  /// Instantiation used by a Var node.
  std::optional<Substitution> witness;
};

/// Applies a kind-respecting substitution to every judgment and replaces the
/// kind assignment by `kinds`. Premises of Gen nodes keep the generalized
/// variables' kinds on top of `kinds`.
Derivation transport(const Derivation &d, const Substitution &s,
                     const KindAssignment &kinds);

std::size_t derivation_size(const Derivation &d);

}  // namespace extrec

#endif  // EXTREC_DERIVATION_HPP
