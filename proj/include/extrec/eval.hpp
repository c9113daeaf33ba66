#ifndef EXTREC_EVAL_HPP
#define EXTREC_EVAL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "extrec/syntax.hpp"

namespace extrec {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;
using Env = std::map<std::string, ValuePtr>;

struct ClosureValue {
  std::string param;
  Term body;
  Env env;
};

struct Value {
  std::variant<long long, bool, std::string, std::map<Label, ValuePtr>, ClosureValue> v;

  bool is_int() const { return v.index() == 0; }
  bool is_bool() const { return v.index() == 1; }
  bool is_string() const { return v.index() == 2; }
  bool is_record() const { return v.index() == 3; }
  bool is_closure() const { return v.index() == 4; }
  const std::map<Label, ValuePtr> &fields() const { return std::get<3>(v); }
};

struct EvalLimits {
  std::size_t max_steps = 10'000'000;
  std::size_t max_depth = 10'000;
};

struct EvalOutcome {
  ValuePtr value;
  std::optional<std::string> error;

  bool ok() const { return value != nullptr; }
};

/// Call-by-value, left to right. Runtime errors (and exhausted limits) are
/// reported in `error`.
EvalOutcome eval(const Term &M, const EvalLimits &limits = {});
EvalOutcome eval(const Term &M, const Env &env, const EvalLimits &limits = {});

/// Term syntax for first-order values; closures print as <closure>.
std::string show(const Value &v);

/// Shape check against a type: base types, record labels and closures for
/// arrows. Type variables and chains with a variable base accept anything.
bool value_matches(const Value &v, const Type &t);

}  // namespace extrec

#endif  // EXTREC_EVAL_HPP
