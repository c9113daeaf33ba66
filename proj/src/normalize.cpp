#include "extrec/normalize.hpp"

#include <algorithm>

namespace extrec {

namespace {

bool op_cancels(const FieldOp &a, const FieldOp &b) {
  return a.label == b.label && a.extend != b.extend && equiv(a.type, b.type);
}

// Record-base rules: the bottom operation is absorbed into the record.
bool absorb_bottom(Chain &c) {
  if (c.base->tag != TypeTag::Record || c.ops.empty()) return false;
  const FieldOp &op = c.ops.front();
  FieldMap fields = c.base->fields;
  auto it = fields.find(op.label);
  if (op.extend) {
    if (it != fields.end()) return false;
    fields.emplace(op.label, op.type);
  } else {
    if (it == fields.end() || !equiv(it->second, op.type)) return false;
    fields.erase(it);
  }
  c.base = make_record(std::move(fields));
  c.ops.erase(c.ops.begin());
  return true;
}

// Position of the next operation after i with the same label, or npos.
std::size_t next_same_label(const Chain &c, std::size_t i) {
  for (std::size_t j = i + 1; j < c.ops.size(); ++j) {
    if (c.ops[j].label == c.ops[i].label) return j;
  }
  return std::string::npos;
}

void erase_pair(Chain &c, std::size_t i, std::size_t j) {
  c.ops.erase(c.ops.begin() + static_cast<std::ptrdiff_t>(j));
  c.ops.erase(c.ops.begin() + static_cast<std::ptrdiff_t>(i));
}

bool cancel_first_pair(Chain &c) {
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    std::size_t j = next_same_label(c, i);
    if (j != std::string::npos && op_cancels(c.ops[i], c.ops[j])) {
      erase_pair(c, i, j);
      return true;
    }
  }
  return false;
}

bool chain_step(Chain &c) { return absorb_bottom(c) || cancel_first_pair(c); }

Type finish(const Chain &c) { return c.ops.empty() ? c.base : rebuild(c); }

void sort_ops(Chain &c) {
  std::stable_sort(c.ops.begin(), c.ops.end(),
                   [](const FieldOp &a, const FieldOp &b) {
                     return a.label < b.label;
                   });
}

template <typename F>
Type map_children(const Type &t, F &&f) {
  switch (t->tag) {
    case TypeTag::Base:
    case TypeTag::Var:
      return t;
    case TypeTag::Record: {
      FieldMap out;
      for (const auto &[l, ft] : t->fields) out.emplace(l, f(ft));
      return make_record(std::move(out));
    }
    case TypeTag::Arrow:
      return make_arrow(f(t->left), f(t->right));
    case TypeTag::Ext:
    case TypeTag::Contr: {
      Chain c = decompose(t);
      c.base = f(c.base);
      for (auto &op : c.ops) op.type = f(op.type);
      return rebuild(c);
    }
  }
  return t;
}

}  // namespace

std::optional<Type> reduce_once(const Type &t) {
  switch (t->tag) {
    case TypeTag::Base:
    case TypeTag::Var:
      return std::nullopt;
    case TypeTag::Record: {
      for (const auto &[l, ft] : t->fields) {
        if (auto r = reduce_once(ft)) {
          FieldMap f = t->fields;
          f[l] = *r;
          return make_record(std::move(f));
        }
      }
      return std::nullopt;
    }
    case TypeTag::Arrow:
      if (auto r = reduce_once(t->left)) return make_arrow(*r, t->right);
      if (auto r = reduce_once(t->right)) return make_arrow(t->left, *r);
      return std::nullopt;
    case TypeTag::Ext:
    case TypeTag::Contr: {
      Chain c = decompose(t);
      if (auto r = reduce_once(c.base)) {
        c.base = *r;
        return rebuild(c);
      }
      for (auto &op : c.ops) {
        if (auto r = reduce_once(op.type)) {
          op.type = *r;
          return rebuild(c);
        }
      }
      if (chain_step(c)) return finish(c);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<Type> one_step_reducts(const Type &t) {
  std::vector<Type> out;
  switch (t->tag) {
    case TypeTag::Base:
    case TypeTag::Var:
      break;
    case TypeTag::Record:
      for (const auto &[l, ft] : t->fields) {
        for (Type &r : one_step_reducts(ft)) {
          FieldMap f = t->fields;
          f[l] = r;
          out.push_back(make_record(std::move(f)));
        }
      }
      break;
    case TypeTag::Arrow:
      for (Type &r : one_step_reducts(t->left)) {
        out.push_back(make_arrow(r, t->right));
      }
      for (Type &r : one_step_reducts(t->right)) {
        out.push_back(make_arrow(t->left, r));
      }
      break;
    case TypeTag::Ext:
    case TypeTag::Contr: {
      const Chain c = decompose(t);
      for (Type &r : one_step_reducts(c.base)) {
        Chain d = c;
        d.base = r;
        out.push_back(rebuild(d));
      }
      for (std::size_t i = 0; i < c.ops.size(); ++i) {
        for (Type &r : one_step_reducts(c.ops[i].type)) {
          Chain d = c;
          d.ops[i].type = r;
          out.push_back(rebuild(d));
        }
      }
      Chain d = c;
      if (absorb_bottom(d)) out.push_back(finish(d));
      for (std::size_t i = 0; i < c.ops.size(); ++i) {
        std::size_t j = next_same_label(c, i);
        if (j != std::string::npos && op_cancels(c.ops[i], c.ops[j])) {
          Chain e = c;
          erase_pair(e, i, j);
          out.push_back(finish(e));
        }
      }
      break;
    }
  }
  return out;
}

Type sort_chains(const Type &t) {
  Type inner = map_children(t, [](const Type &x) { return sort_chains(x); });
  if (!is_chain(inner)) return inner;
  Chain c = decompose(inner);
  sort_ops(c);
  return rebuild(c);
}

Type normalize(const Type &t) {
  if (!is_chain(t)) {
    return map_children(t, [](const Type &x) { return normalize(x); });
  }
  Chain c = decompose(t);
  c.base = normalize(c.base);
  for (auto &op : c.ops) op.type = normalize(op.type);
  // Sorting can expose a record-base redex that was blocked by an operation
  // on a different label, so alternate until neither makes progress.
  for (;;) {
    while (chain_step(c)) {
    }
    sort_ops(c);
    Chain probe = c;
    if (!chain_step(probe)) break;
    c = std::move(probe);
  }
  return finish(c);
}

Kind normalize(const Kind &k) {
  if (k.universal) return k;
  Kind out = Kind::record();
  for (const auto &[l, t] : k.lefts) out.lefts.emplace(l, normalize(t));
  for (const auto &[l, t] : k.rights) out.rights.emplace(l, normalize(t));
  return out;
}

bool is_normal(const Type &t) { return !reduce_once(t).has_value(); }

bool equiv(const Type &t1, const Type &t2) {
  return type_equal(t1, t2) || type_equal(normalize(t1), normalize(t2));
}

bool fields_equiv(const FieldMap &a, const FieldMap &b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !equiv(ia->second, ib->second)) return false;
  }
  return true;
}

bool equiv(const Kind &k1, const Kind &k2) {
  if (k1.universal || k2.universal) return k1.universal == k2.universal;
  return fields_equiv(k1.lefts, k2.lefts) && fields_equiv(k1.rights, k2.rights);
}

bool poly_equiv(const PolyType &a, const PolyType &b) {
  if (a.quantifiers.size() != b.quantifiers.size()) return false;
  VarRenaming r;
  for (std::size_t i = 0; i < a.quantifiers.size(); ++i) {
    if (!equiv(a.quantifiers[i].kind, rename_vars(b.quantifiers[i].kind, r))) {
      return false;
    }
    r[b.quantifiers[i].var] = a.quantifiers[i].var;
  }
  return equiv(a.body, rename_vars(b.body, r));
}

bool subst_equal(const Substitution &s1, const Substitution &s2) {
  auto image = [](const Substitution &s, const TyVar &v) {
    auto it = s.find(v);
    return it == s.end() ? make_var(v) : it->second;
  };
  for (const auto &[v, _] : s1) {
    if (!equiv(image(s1, v), image(s2, v))) return false;
  }
  for (const auto &[v, _] : s2) {
    if (!s1.count(v) && !equiv(image(s1, v), image(s2, v))) return false;
  }
  return true;
}

}  // namespace extrec
