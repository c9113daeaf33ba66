#ifndef EXTREC_INFER_HPP
#define EXTREC_INFER_HPP

#include <optional>
#include <string>
#include <utility>

#include "extrec/derivation.hpp"
#include "extrec/syntax.hpp"

namespace extrec {

enum class InferFailure {
  UnboundVariable,
  Occurs,
  KindClash,
  ConstructorClash,
  ExtBaseOccurs,
};

const char *infer_failure_name(InferFailure f);

struct InferError {
  /// Rule of the failing case, named like the typing rules (Var, App, Sel...).
  std::string rule;
  InferFailure reason = InferFailure::ConstructorClash;
  std::string message;
  SourceSpan span;
};

struct InferResult {
  KindAssignment kinds;
  Substitution subst;
  /// In canonical form.
  Type type;
  /// Proves kinds, subst(G) |- M : type.
  Derivation derivation;
};

struct InferOutcome {
  std::optional<InferResult> result;
  std::optional<InferError> error;

  bool ok() const { return result.has_value(); }
};

InferOutcome infer(const KindAssignment &K, const TypeAssignment &G,
                   const Term &M, FreshSupply &fresh);
/// Uses a supply starting above every variable of K and G.
InferOutcome infer(const KindAssignment &K, const TypeAssignment &G,
                   const Term &M);

/// Instantiates the quantifiers of `s` with fresh variables.
std::pair<KindAssignment, Type> instantiate(const KindAssignment &K,
                                            const PolyType &s,
                                            FreshSupply &fresh,
                                            Substitution *renaming = nullptr);

/// Infers and then generalizes the result under subst(G).
struct PrincipalTyping {
  KindAssignment kinds;
  Substitution subst;
  Type type;
  PolyType poly;
};

std::optional<PrincipalTyping> principal(const KindAssignment &K,
                                         const TypeAssignment &G,
                                         const Term &M,
                                         InferError *error = nullptr);

}  // namespace extrec

#endif  // EXTREC_INFER_HPP
