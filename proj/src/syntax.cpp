#include "extrec/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace extrec {

const char *base_type_name(BaseType b) {
  switch (b) {
    case BaseType::Int:
      return "Int";
    case BaseType::Bool:
      return "Bool";
    case BaseType::String:
      return "String";
  }
  return "?";
}

Type make_base(BaseType b) {
  auto n = std::make_shared<TypeNode>();
  n->tag = TypeTag::Base;
  n->base = b;
  return n;
}

Type make_var(TyVar v) {
  auto n = std::make_shared<TypeNode>();
  n->tag = TypeTag::Var;
  n->var = std::move(v);
  return n;
}

Type make_record(FieldMap fields) {
  auto n = std::make_shared<TypeNode>();
  n->tag = TypeTag::Record;
  n->fields = std::move(fields);
  return n;
}

Type make_arrow(Type dom, Type cod) {
  auto n = std::make_shared<TypeNode>();
  n->tag = TypeTag::Arrow;
  n->left = std::move(dom);
  n->right = std::move(cod);
  return n;
}

namespace {

Type make_field_op(TypeTag tag, Type operand, Label label, Type field) {
  if (!is_extensible(operand)) {
    throw std::invalid_argument("field operation on a non-extensible type");
  }
  auto n = std::make_shared<TypeNode>();
  n->tag = tag;
  n->left = std::move(operand);
  n->label = std::move(label);
  n->right = std::move(field);
  return n;
}

}  // namespace

Type make_ext(Type operand, Label label, Type field) {
  return make_field_op(TypeTag::Ext, std::move(operand), std::move(label),
                       std::move(field));
}

Type make_contr(Type operand, Label label, Type field) {
  return make_field_op(TypeTag::Contr, std::move(operand), std::move(label),
                       std::move(field));
}

bool is_extensible(const Type &t) {
  return t && t->tag != TypeTag::Base && t->tag != TypeTag::Arrow;
}

bool is_chain(const Type &t) {
  return t && (t->tag == TypeTag::Ext || t->tag == TypeTag::Contr);
}

Chain decompose(const Type &t) {
  Chain c;
  Type cur = t;
  while (is_chain(cur)) {
    c.ops.push_back(FieldOp{cur->tag == TypeTag::Ext, cur->label, cur->right});
    cur = cur->left;
  }
  std::reverse(c.ops.begin(), c.ops.end());
  c.base = cur;
  return c;
}

Type rebuild(const Chain &c) {
  Type t = c.base;
  for (const auto &op : c.ops) {
    t = op.extend ? make_ext(t, op.label, op.type)
                  : make_contr(t, op.label, op.type);
  }
  return t;
}

Type base_of(const Type &t) {
  if (!is_extensible(t)) {
    throw std::invalid_argument("base_of: not an extensible type");
  }
  Type cur = t;
  while (is_chain(cur)) cur = cur->left;
  return cur;
}

bool fields_equal(const FieldMap &a, const FieldMap &b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !type_equal(ia->second, ib->second)) {
      return false;
    }
  }
  return true;
}

bool type_equal(const Type &a, const Type &b) {
  if (a == b) return true;
  if (!a || !b || a->tag != b->tag) return false;
  switch (a->tag) {
    case TypeTag::Base:
      return a->base == b->base;
    case TypeTag::Var:
      return a->var == b->var;
    case TypeTag::Record:
      return fields_equal(a->fields, b->fields);
    case TypeTag::Arrow:
      return type_equal(a->left, b->left) && type_equal(a->right, b->right);
    case TypeTag::Ext:
    case TypeTag::Contr:
      return a->label == b->label && type_equal(a->left, b->left) &&
             type_equal(a->right, b->right);
  }
  return false;
}

bool kind_equal(const Kind &a, const Kind &b) {
  if (a.universal || b.universal) return a.universal == b.universal;
  return fields_equal(a.lefts, b.lefts) && fields_equal(a.rights, b.rights);
}

Type rename_vars(const Type &t, const VarRenaming &r) {
  switch (t->tag) {
    case TypeTag::Base:
      return t;
    case TypeTag::Var: {
      auto it = r.find(t->var);
      return it == r.end() ? t : make_var(it->second);
    }
    case TypeTag::Record: {
      FieldMap f;
      for (const auto &[l, ft] : t->fields) f.emplace(l, rename_vars(ft, r));
      return make_record(std::move(f));
    }
    case TypeTag::Arrow:
      return make_arrow(rename_vars(t->left, r), rename_vars(t->right, r));
    case TypeTag::Ext:
      return make_ext(rename_vars(t->left, r), t->label,
                      rename_vars(t->right, r));
    case TypeTag::Contr:
      return make_contr(rename_vars(t->left, r), t->label,
                        rename_vars(t->right, r));
  }
  return t;
}

Kind rename_vars(const Kind &k, const VarRenaming &r) {
  if (k.universal) return k;
  Kind out = Kind::record();
  for (const auto &[l, ft] : k.lefts) out.lefts.emplace(l, rename_vars(ft, r));
  for (const auto &[l, ft] : k.rights) out.rights.emplace(l, rename_vars(ft, r));
  return out;
}

bool poly_equal(const PolyType &a, const PolyType &b) {
  if (a.quantifiers.size() != b.quantifiers.size()) return false;
  // Map b's binders onto a's; kinds see only the binders to their left.
  VarRenaming r;
  for (std::size_t i = 0; i < a.quantifiers.size(); ++i) {
    if (!kind_equal(a.quantifiers[i].kind,
                    rename_vars(b.quantifiers[i].kind, r))) {
      return false;
    }
    r[b.quantifiers[i].var] = a.quantifiers[i].var;
  }
  return type_equal(a.body, rename_vars(b.body, r));
}

void collect_ftv(const Type &t, VarSet &out) {
  switch (t->tag) {
    case TypeTag::Base:
      return;
    case TypeTag::Var:
      out.insert(t->var);
      return;
    case TypeTag::Record:
      for (const auto &[_, ft] : t->fields) collect_ftv(ft, out);
      return;
    case TypeTag::Arrow:
    case TypeTag::Ext:
    case TypeTag::Contr:
      collect_ftv(t->left, out);
      collect_ftv(t->right, out);
      return;
  }
}

void collect_ftv(const Kind &k, VarSet &out) {
  if (k.universal) return;
  for (const auto &[_, ft] : k.lefts) collect_ftv(ft, out);
  for (const auto &[_, ft] : k.rights) collect_ftv(ft, out);
}

VarSet ftv(const Type &t) {
  VarSet out;
  collect_ftv(t, out);
  return out;
}

VarSet ftv(const Kind &k) {
  VarSet out;
  collect_ftv(k, out);
  return out;
}

VarSet ftv(const PolyType &p) {
  VarSet body = ftv(p.body);
  VarSet out;
  // Innermost quantifier first: FTV(forall a::k. s) = FTV(k) u (FTV(s) \ {a}).
  for (auto it = p.quantifiers.rbegin(); it != p.quantifiers.rend(); ++it) {
    body.erase(it->var);
    collect_ftv(it->kind, body);
  }
  out = std::move(body);
  return out;
}

VarSet ftv(const TypeAssignment &g) {
  VarSet out;
  for (const auto &[_, s] : g) {
    VarSet f = ftv(s);
    out.insert(f.begin(), f.end());
  }
  return out;
}

VarSet eftv_closure(const KindAssignment &K, VarSet seeds) {
  std::vector<TyVar> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    TyVar v = work.back();
    work.pop_back();
    auto it = K.find(v);
    if (it == K.end()) continue;
    for (const TyVar &w : ftv(it->second)) {
      if (seeds.insert(w).second) work.push_back(w);
    }
  }
  return seeds;
}

namespace {

void require_well_formed(const KindAssignment &K, const VarSet &vars) {
  for (const TyVar &v : vars) {
    if (!K.count(v)) {
      throw std::invalid_argument("type variable outside the kind assignment");
    }
  }
}

}  // namespace

VarSet eftv(const KindAssignment &K, const PolyType &t) {
  VarSet seeds = ftv(t);
  require_well_formed(K, seeds);
  return eftv_closure(K, std::move(seeds));
}

VarSet eftv(const KindAssignment &K, const TypeAssignment &g) {
  VarSet seeds = ftv(g);
  require_well_formed(K, seeds);
  return eftv_closure(K, std::move(seeds));
}

std::uint64_t max_var_id(const Type &t) {
  std::uint64_t m = 0;
  for (const TyVar &v : ftv(t)) m = std::max(m, v.id);
  return m;
}

std::uint64_t max_var_id(const Kind &k) {
  std::uint64_t m = 0;
  for (const TyVar &v : ftv(k)) m = std::max(m, v.id);
  return m;
}

std::uint64_t max_var_id(const PolyType &p) {
  std::uint64_t m = max_var_id(p.body);
  for (const auto &q : p.quantifiers) {
    m = std::max({m, q.var.id, max_var_id(q.kind)});
  }
  return m;
}

std::uint64_t max_var_id(const KindAssignment &K) {
  std::uint64_t m = 0;
  for (const auto &[v, k] : K) m = std::max({m, v.id, max_var_id(k)});
  return m;
}

std::uint64_t max_var_id(const TypeAssignment &g) {
  std::uint64_t m = 0;
  for (const auto &[_, s] : g) m = std::max(m, max_var_id(s));
  return m;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<TermNode> node(TermTag tag, SourceSpan span) {
  auto n = std::make_shared<TermNode>();
  n->tag = tag;
  n->span = span;
  return n;
}

}  // namespace

Term make_tvar(std::string name, SourceSpan span) {
  auto n = node(TermTag::Var, span);
  n->name = std::move(name);
  return n;
}

Term make_const(Literal lit, SourceSpan span) {
  auto n = node(TermTag::Const, span);
  n->literal = std::move(lit);
  return n;
}

Term make_int(long long v, SourceSpan span) {
  return make_const(Literal{BaseType::Int, v}, span);
}

Term make_bool(bool v, SourceSpan span) {
  return make_const(Literal{BaseType::Bool, v}, span);
}

Term make_string(std::string v, SourceSpan span) {
  return make_const(Literal{BaseType::String, std::move(v)}, span);
}

Term make_abs(std::string param, Term body, SourceSpan span) {
  auto n = node(TermTag::Abs, span);
  n->name = std::move(param);
  n->first = std::move(body);
  return n;
}

Term make_app(Term fun, Term arg, SourceSpan span) {
  auto n = node(TermTag::App, span);
  n->first = std::move(fun);
  n->second = std::move(arg);
  return n;
}

Term make_let(std::string name, Term bound, Term body, SourceSpan span) {
  auto n = node(TermTag::Let, span);
  n->name = std::move(name);
  n->first = std::move(bound);
  n->second = std::move(body);
  return n;
}

Term make_record_lit(std::vector<std::pair<Label, Term>> fields,
                     SourceSpan span) {
  std::set<Label> seen;
  for (const auto &[l, _] : fields) {
    if (!seen.insert(l).second) {
      throw std::invalid_argument("duplicate label '" + l + "' in record");
    }
  }
  auto n = node(TermTag::Record, span);
  n->fields = std::move(fields);
  return n;
}

Term make_select(Term target, Label label, SourceSpan span) {
  auto n = node(TermTag::Select, span);
  n->first = std::move(target);
  n->label = std::move(label);
  return n;
}

Term make_modify(Term target, Label label, Term value, SourceSpan span) {
  auto n = node(TermTag::Modify, span);
  n->first = std::move(target);
  n->label = std::move(label);
  n->second = std::move(value);
  return n;
}

Term make_remove(Term target, Label label, SourceSpan span) {
  auto n = node(TermTag::Remove, span);
  n->first = std::move(target);
  n->label = std::move(label);
  return n;
}

Term make_extend(Term target, Label label, Term value, SourceSpan span) {
  auto n = node(TermTag::Extend, span);
  n->first = std::move(target);
  n->label = std::move(label);
  n->second = std::move(value);
  return n;
}

bool term_equal(const Term &a, const Term &b) {
  if (a == b) return true;
  if (!a || !b || a->tag != b->tag) return false;
  switch (a->tag) {
    case TermTag::Var:
      return a->name == b->name;
    case TermTag::Const:
      return a->literal.type == b->literal.type &&
             a->literal.value == b->literal.value;
    case TermTag::Abs:
      return a->name == b->name && term_equal(a->first, b->first);
    case TermTag::App:
      return term_equal(a->first, b->first) && term_equal(a->second, b->second);
    case TermTag::Let:
      return a->name == b->name && term_equal(a->first, b->first) &&
             term_equal(a->second, b->second);
    case TermTag::Record:
      if (a->fields.size() != b->fields.size()) return false;
      for (std::size_t i = 0; i < a->fields.size(); ++i) {
        if (a->fields[i].first != b->fields[i].first ||
            !term_equal(a->fields[i].second, b->fields[i].second)) {
          return false;
        }
      }
      return true;
    case TermTag::Select:
    case TermTag::Remove:
      return a->label == b->label && term_equal(a->first, b->first);
    case TermTag::Modify:
    case TermTag::Extend:
      return a->label == b->label && term_equal(a->first, b->first) &&
             term_equal(a->second, b->second);
  }
  return false;
}

const char *term_tag_name(TermTag tag) {
  switch (tag) {
    case TermTag::Var:
      return "Var";
    case TermTag::Const:
      return "Const";
    case TermTag::Abs:
      return "Abs";
    case TermTag::App:
      return "App";
    case TermTag::Let:
      return "Let";
    case TermTag::Record:
      return "Rec";
    case TermTag::Select:
      return "Sel";
    case TermTag::Modify:
      return "Modif";
    case TermTag::Remove:
      return "Contr";
    case TermTag::Extend:
      return "Ext";
  }
  return "?";
}

}  // namespace extrec
