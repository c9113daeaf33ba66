#ifndef EXTREC_UNIFY_HPP
#define EXTREC_UNIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "extrec/syntax.hpp"

namespace extrec {

enum class FailureKind { Occurs, KindClash, ConstructorClash };

const char *failure_kind_name(FailureKind k);

struct UnifyFailure {
  FailureKind kind = FailureKind::ConstructorClash;
  std::string message;
};

struct Equation {
  Type lhs;
  Type rhs;
};

using EquationSet = std::vector<Equation>;

/// Field operations of an extensible type, by label. Callers pass a
/// normalized type.
FieldMap efields(const Type &t);
FieldMap cfields(const Type &t);

/// Union preferring `a` on shared labels.
FieldMap fmap_plus(const FieldMap &a, const FieldMap &b);
/// Restriction of `a` to labels not in `b`.
FieldMap fmap_minus(const FieldMap &a, const FieldMap &b);

struct UnifyResult {
  KindAssignment kinds;
  Substitution subst;
  /// Kinds of solved variables at the time they were solved.
  KindAssignment solved_kinds;
  /// Rule applied at each step ("i" .. "ix", plus "x" for an extensible type
  /// against a record).
  std::vector<std::string> trace;
};

struct UnifyOutcome {
  std::optional<UnifyResult> result;
  std::optional<UnifyFailure> failure;
  std::vector<std::string> trace;

  bool ok() const { return result.has_value(); }
};

/// Most general unifier of (K, E). Fresh variables (needed when two
/// extensible types share no labels) come from `fresh`, or from a private
/// supply above every id in the input when null.
UnifyOutcome unify(const KindAssignment &K, const EquationSet &E,
                   FreshSupply *fresh = nullptr);

/// S satisfies every equation of E up to equivalence.
bool satisfies(const Substitution &s, const EquationSet &E);

/// Solves E holding the variables in `rigid` fixed. The result covers every
/// other variable of K; ones left unconstrained are grounded to some type of
/// their kind. Callers still have to check the result, since the unifier is
/// only turned around where that is a simple inversion.
std::optional<Substitution> match_rigid(const KindAssignment &K,
                                        const EquationSet &E,
                                        const VarSet &rigid);

}  // namespace extrec

#endif  // EXTREC_UNIFY_HPP
