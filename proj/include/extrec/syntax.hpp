#ifndef EXTREC_SYNTAX_HPP
#define EXTREC_SYNTAX_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace extrec {

using Label = std::string;

/// Type variable. Identity is the integer id; the name only matters for
/// printing.
struct TyVar {
  std::uint64_t id = 0;
  std::string name;

  friend bool operator==(const TyVar &a, const TyVar &b) { return a.id == b.id; }
  friend std::strong_ordering operator<=>(const TyVar &a, const TyVar &b) {
    return a.id <=> b.id;
  }
};

using VarSet = std::set<TyVar>;

enum class BaseType { Int, Bool, String };

const char *base_type_name(BaseType b);

// ---------------------------------------------------------------------------
// Monotypes
// ---------------------------------------------------------------------------

enum class TypeTag { Base, Var, Record, Arrow, Ext, Contr };

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;
using FieldMap = std::map<Label, Type>;

/// Immutable monotype node.
///
/// Arrow uses `left`/`right` as domain/codomain. Ext and Contr use `left` as
/// the extensible operand, `label` and `right` as the operated field.
struct TypeNode {
  TypeTag tag = TypeTag::Base;
  BaseType base = BaseType::Int;
  TyVar var;
  FieldMap fields;
  Type left;
  Type right;
  Label label;
};

Type make_base(BaseType b);
Type make_var(TyVar v);
Type make_record(FieldMap fields);
Type make_arrow(Type dom, Type cod);
/// Throws std::invalid_argument unless `operand` is extensible.
Type make_ext(Type operand, Label label, Type field);
Type make_contr(Type operand, Label label, Type field);

inline Type int_type() { return make_base(BaseType::Int); }
inline Type bool_type() { return make_base(BaseType::Bool); }
inline Type string_type() { return make_base(BaseType::String); }

/// Variables, records and field-operation chains.
bool is_extensible(const Type &t);
bool is_chain(const Type &t);

/// One `+{l:t}` or `-{l:t}` step of an extensible type.
struct FieldOp {
  bool extend = true;
  Label label;
  Type type;
};

/// An extensible type split into its base and operations, bottom first.
struct Chain {
  Type base;
  std::vector<FieldOp> ops;
};

Chain decompose(const Type &t);
Type rebuild(const Chain &c);

/// Bottom of the field-operation chain. Throws std::invalid_argument for
/// arrow and base types.
Type base_of(const Type &t);

bool type_equal(const Type &a, const Type &b);
bool fields_equal(const FieldMap &a, const FieldMap &b);

// ---------------------------------------------------------------------------
// Kinds and polytypes
// ---------------------------------------------------------------------------

/// Either the universal kind or a record kind <<lefts || rights>>: fields
/// that must be present, and fields that must be absent.
struct Kind {
  bool universal = true;
  FieldMap lefts;
  FieldMap rights;

  static Kind U() { return Kind{}; }
  static Kind record(FieldMap lefts = {}, FieldMap rights = {}) {
    return Kind{false, std::move(lefts), std::move(rights)};
  }
};

bool kind_equal(const Kind &a, const Kind &b);

using VarRenaming = std::map<TyVar, TyVar>;
Type rename_vars(const Type &t, const VarRenaming &r);
Kind rename_vars(const Kind &k, const VarRenaming &r);

struct Quantifier {
  TyVar var;
  Kind kind;
};

/// Prenex kinded polytype. A monotype is a polytype with no quantifiers.
struct PolyType {
  std::vector<Quantifier> quantifiers;
  Type body;

  PolyType() = default;
  PolyType(Type mono) : body(std::move(mono)) {}  // NOLINT: implicit by intent
  PolyType(std::vector<Quantifier> qs, Type mono)
      : quantifiers(std::move(qs)), body(std::move(mono)) {}

  bool is_mono() const { return quantifiers.empty(); }
};

/// Structural equality up to renaming of quantified variables. Quantifiers
/// are matched positionally.
bool poly_equal(const PolyType &a, const PolyType &b);

using KindAssignment = std::map<TyVar, Kind>;
using TypeAssignment = std::map<std::string, PolyType>;
/// Finite map; identity outside its domain.
using Substitution = std::map<TyVar, Type>;

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

VarSet ftv(const Type &t);
VarSet ftv(const Kind &k);
VarSet ftv(const PolyType &p);
VarSet ftv(const TypeAssignment &g);
void collect_ftv(const Type &t, VarSet &out);
void collect_ftv(const Kind &k, VarSet &out);

/// Closes `seeds` under kind dependencies: a kinded variable drags in the
/// free variables of its kind. Variables outside dom(K) are kept as-is.
VarSet eftv_closure(const KindAssignment &K, VarSet seeds);

/// Essentially-free type variables. Throws std::invalid_argument if `t` is
/// not well formed under `K`.
VarSet eftv(const KindAssignment &K, const PolyType &t);
VarSet eftv(const KindAssignment &K, const TypeAssignment &g);

std::uint64_t max_var_id(const Type &t);
std::uint64_t max_var_id(const Kind &k);
std::uint64_t max_var_id(const PolyType &p);
std::uint64_t max_var_id(const KindAssignment &K);
std::uint64_t max_var_id(const TypeAssignment &g);

/// Source of fresh type variables. Ids only grow.
class FreshSupply {
 public:
  explicit FreshSupply(std::uint64_t next = 1) : next_(next) {}

  TyVar fresh() { return TyVar{next_++, {}}; }
  /// Ensures future ids are strictly above `id`.
  void reserve_above(std::uint64_t id) {
    if (next_ <= id) next_ = id + 1;
  }
  std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_;
};

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;
};

struct Literal {
  BaseType type = BaseType::Int;
  std::variant<long long, bool, std::string> value;
};

enum class TermTag {
  Var,
  Const,
  Abs,
  App,
  Let,
  Record,
  Select,
  Modify,
  Remove,
  Extend
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Immutable term node. Field use per tag:
///   Var: name            Const: literal          Abs: name, first
///   App: first, second   Let: name, first, second
///   Record: fields (source order)
///   Select/Remove: first, label
///   Modify/Extend: first, label, second
struct TermNode {
  TermTag tag = TermTag::Var;
  std::string name;
  Literal literal;
  std::vector<std::pair<Label, Term>> fields;
  Term first;
  Term second;
  Label label;
  SourceSpan span;
};

Term make_tvar(std::string name, SourceSpan span = {});
Term make_const(Literal lit, SourceSpan span = {});
Term make_int(long long v, SourceSpan span = {});
Term make_bool(bool v, SourceSpan span = {});
Term make_string(std::string v, SourceSpan span = {});
Term make_abs(std::string param, Term body, SourceSpan span = {});
Term make_app(Term fun, Term arg, SourceSpan span = {});
Term make_let(std::string name, Term bound, Term body, SourceSpan span = {});
/// Throws std::invalid_argument on duplicate labels.
Term make_record_lit(std::vector<std::pair<Label, Term>> fields,
                     SourceSpan span = {});
Term make_select(Term target, Label label, SourceSpan span = {});
Term make_modify(Term target, Label label, Term value, SourceSpan span = {});
Term make_remove(Term target, Label label, SourceSpan span = {});
Term make_extend(Term target, Label label, Term value, SourceSpan span = {});

/// Structural equality, ignoring spans.
bool term_equal(const Term &a, const Term &b);

const char *term_tag_name(TermTag tag);

}  // namespace extrec

#endif  // EXTREC_SYNTAX_HPP
