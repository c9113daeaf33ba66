#ifndef EXTREC_GEN_HPP
#define EXTREC_GEN_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "extrec/syntax.hpp"

namespace extrec {

struct GenConfig {
  int max_depth = 6;
  std::vector<Label> labels{"l", "m", "n"};
  /// Longest field-operation chain.
  int max_chain = 8;
};

/// A type together with a kind assignment it is well formed under.
struct KindedType {
  KindAssignment kinds;
  Type type;
};

/// Random syntax. All output is deterministic in the seed.
class Generator {
 public:
  explicit Generator(std::uint64_t seed, GenConfig config = {})
      : rng_(seed), config_(std::move(config)) {}

  /// Closed term of depth at most max_depth.
  Term term();
  /// Term whose free variables are drawn from `free`.
  Term term(const std::vector<std::string> &free);
  /// Closed term built towards a random ground type, so it is usually well
  /// typed. Depth at most max_depth.
  Term typed_term();

  /// Monotype over the given variables (any shape, not necessarily well
  /// kinded).
  Type type(const std::vector<TyVar> &vars, int depth);
  Kind kind(const std::vector<TyVar> &vars, int depth);
  /// Quantifier kinds only mention earlier quantifiers and `free`.
  PolyType poly(const std::vector<TyVar> &free, std::uint64_t &next_id);

  /// Arbitrary chain over a variable or record base; may be ill kinded.
  Type chain(const std::vector<TyVar> &vars);
  /// Chain whose every operation is allowed by the kinding rules, with a
  /// kind assignment covering its variables.
  KindedType kinded_chain();

  /// Extensible type usable as the image of any variable.
  Type extensible(const std::vector<TyVar> &vars, int depth);
  /// Random substitution on `dom` into extensible types over `range`.
  Substitution substitution(const std::vector<TyVar> &dom,
                            const std::vector<TyVar> &range);

  std::mt19937_64 &rng() { return rng_; }
  int below(int n);
  bool chance(double p);

 private:
  std::mt19937_64 rng_;
  GenConfig config_;

  Term term(std::vector<std::string> &scope, int depth);
  Term leaf(const std::vector<std::string> &scope);
  const Label &label();
  Type field_type(const std::vector<TyVar> &vars);

  // A variable in scope; `selector` marks a let-bound \x. x.selector.
  struct Typed {
    std::string name;
    Type type;
    Label selector;
  };
  int fresh_name_ = 0;
  Type ground(int depth);
  Term typed(const Type &t, int depth, std::vector<Typed> &scope);
  Term canonical(const Type &t);
};

/// Longest root-to-leaf path, counting nodes.
int term_depth(const Term &t);

}  // namespace extrec

#endif  // EXTREC_GEN_HPP
