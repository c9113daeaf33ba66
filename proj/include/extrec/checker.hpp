#ifndef EXTREC_CHECKER_HPP
#define EXTREC_CHECKER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "extrec/derivation.hpp"
#include "extrec/syntax.hpp"

namespace extrec {

struct ValidationError {
  /// Child indices from the root to the offending node.
  std::vector<std::size_t> path;
  std::string rule;
  std::string reason;
};

/// Checks every node of `d` against its typing rule. Returns the first
/// violation found, checking premises before conclusions.
std::optional<ValidationError> validate(const Derivation &d);

struct CheckResult {
  bool ok = false;
  std::string reason;
};

/// Decides K, G |- M : s by comparing s with the inferred principal typing.
CheckResult check(const KindAssignment &K, const TypeAssignment &G,
                  const Term &M, const PolyType &s);

}  // namespace extrec

#endif  // EXTREC_CHECKER_HPP
