#ifndef EXTREC_PARSER_HPP
#define EXTREC_PARSER_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "extrec/syntax.hpp"
#include "extrec/unify.hpp"

namespace extrec {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &msg, SourceSpan span,
             std::vector<std::string> expected = {})
      : std::runtime_error(msg), span(span), expected(std::move(expected)) {}

  SourceSpan span;
  std::vector<std::string> expected;
};

/// Maps type-variable names to variables. Unknown names get the next id,
/// starting from 1, so one scope shared by several parses keeps names
/// consistent.
class TypeScope {
 public:
  TyVar lookup(const std::string &name);
  /// A variable for a binder; shadows any earlier one until `unbind`.
  TyVar bind(const std::string &name);
  void unbind(const std::string &name);
  std::uint64_t next_id() const { return next_; }

 private:
  TyVar make(const std::string &name) { return TyVar{next_++, name}; }

  std::uint64_t next_ = 1;
  std::map<std::string, std::vector<TyVar>> names_;
};

Term parse_term(std::string_view text);
PolyType parse_type(std::string_view text, TypeScope *scope = nullptr);
/// Rejects quantifiers.
Type parse_mono(std::string_view text, TypeScope *scope = nullptr);
Kind parse_kind(std::string_view text, TypeScope *scope = nullptr);

struct Environment {
  KindAssignment kinds;
  TypeAssignment gamma;
  TypeScope scope;
};

/// Lines of the form `'a :: KIND` or `x : POLYTYPE`; `#` starts a comment.
Environment parse_env(std::string_view text);
/// Adds the declarations of `text` to `env`.
void parse_env_into(std::string_view text, Environment &env);
/// Lines of the form `'a := TYPE`.
Substitution parse_substitution(std::string_view text, TypeScope *scope = nullptr);
/// `TYPE = TYPE` equations separated by newlines or `;`.
EquationSet parse_equations(std::string_view text, TypeScope *scope = nullptr);

/// Names type variables 'a, 'b, ... in order of first request.
class Namer {
 public:
  std::string operator()(const TyVar &v);

 private:
  std::map<TyVar, std::string> names_;
  std::size_t count_ = 0;
};

std::string pretty(const Term &t);
std::string pretty(const Type &t);
std::string pretty(const Type &t, Namer &n);
std::string pretty(const PolyType &t);
std::string pretty(const PolyType &t, Namer &n);
std::string pretty(const Kind &k);
std::string pretty(const Kind &k, Namer &n);
/// One `'a :: KIND` line per variable, in id order.
std::string pretty(const KindAssignment &K);
std::string pretty(const KindAssignment &K, Namer &n);
/// One `x : TYPE` line per name.
std::string pretty(const TypeAssignment &G, Namer &n);
/// One `'a := TYPE` line per binding, in id order.
std::string pretty(const Substitution &s);
std::string pretty(const Substitution &s, Namer &n);

}  // namespace extrec

#endif  // EXTREC_PARSER_HPP
