#ifndef EXTREC_TESTS_SUPPORT_HPP
#define EXTREC_TESTS_SUPPORT_HPP

#include <map>
#include <string>

#include "extrec/normalize.hpp"
#include "extrec/parser.hpp"
#include "extrec/syntax.hpp"

namespace testing_support {

using namespace extrec;

// Structural equality up to a consistent bijective renaming of variables.
class Alpha {
 public:
  bool type(const Type &a, const Type &b) {
    if (a->tag != b->tag) return false;
    switch (a->tag) {
      case TypeTag::Base:
        return a->base == b->base;
      case TypeTag::Var:
        return link(a->var, b->var);
      case TypeTag::Record:
        return fields(a->fields, b->fields);
      case TypeTag::Arrow:
        return type(a->left, b->left) && type(a->right, b->right);
      case TypeTag::Ext:
      case TypeTag::Contr:
        return a->label == b->label && type(a->left, b->left) &&
               type(a->right, b->right);
    }
    return false;
  }

  bool kind(const Kind &a, const Kind &b) {
    if (a.universal || b.universal) return a.universal == b.universal;
    return fields(a.lefts, b.lefts) && fields(a.rights, b.rights);
  }

  bool poly(const PolyType &a, const PolyType &b) {
    if (a.quantifiers.size() != b.quantifiers.size()) return false;
    for (std::size_t i = 0; i < a.quantifiers.size(); ++i) {
      if (!link(a.quantifiers[i].var, b.quantifiers[i].var)) return false;
      if (!kind(a.quantifiers[i].kind, b.quantifiers[i].kind)) return false;
    }
    return type(a.body, b.body);
  }

 private:
  std::map<TyVar, TyVar> fwd_, back_;

  bool link(const TyVar &a, const TyVar &b) {
    auto f = fwd_.find(a);
    auto g = back_.find(b);
    if (f == fwd_.end() && g == back_.end()) {
      fwd_[a] = b;
      back_[b] = a;
      return true;
    }
    return f != fwd_.end() && g != back_.end() && f->second == b && g->second == a;
  }

  bool fields(const FieldMap &a, const FieldMap &b) {
    if (a.size() != b.size()) return false;
    for (auto i = a.begin(), j = b.begin(); i != a.end(); ++i, ++j) {
      if (i->first != j->first || !type(i->second, j->second)) return false;
    }
    return true;
  }
};

inline bool kinds_same(const KindAssignment &a, const KindAssignment &b) {
  if (a.size() != b.size()) return false;
  for (const auto &[v, k] : a) {
    auto it = b.find(v);
    if (it == b.end() || !equiv(k, it->second)) return false;
  }
  return true;
}

inline bool gamma_same(const TypeAssignment &a, const TypeAssignment &b) {
  if (a.size() != b.size()) return false;
  for (const auto &[x, s] : a) {
    auto it = b.find(x);
    if (it == b.end() || !poly_equiv(s, it->second)) return false;
  }
  return true;
}

inline TyVar var(std::uint64_t id) { return TyVar{id, {}}; }
inline Type tv(std::uint64_t id) { return make_var(var(id)); }

}  // namespace testing_support

#endif  // EXTREC_TESTS_SUPPORT_HPP
