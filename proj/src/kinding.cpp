#include "extrec/kinding.hpp"

#include <functional>

#include "extrec/normalize.hpp"

namespace extrec {

namespace {

bool vars_in(const KindAssignment &K, const VarSet &vs) {
  for (const TyVar &v : vs) {
    if (!K.count(v)) return false;
  }
  return true;
}

bool may_be_absent(const FieldInfo &info, const Label &l, const Type &t) {
  auto it = info.absent.find(l);
  if (it != info.absent.end()) return equiv(it->second, t);
  return info.closed && !info.present.count(l);
}

}  // namespace

std::optional<FieldInfo> derivable_fields(const KindAssignment &K,
                                          const Type &t) {
  switch (t->tag) {
    case TypeTag::Base:
    case TypeTag::Arrow:
      return std::nullopt;
    case TypeTag::Record:
      if (!wf_type(K, t)) return std::nullopt;
      return FieldInfo{t->fields, {}, true};
    case TypeTag::Var: {
      auto it = K.find(t->var);
      if (it == K.end() || it->second.universal) return std::nullopt;
      return FieldInfo{it->second.lefts, it->second.rights, false};
    }
    case TypeTag::Ext:
    case TypeTag::Contr: {
      auto info = derivable_fields(K, t->left);
      if (!info || !wf_type(K, t->right)) return std::nullopt;
      const Label &l = t->label;
      if (t->tag == TypeTag::Ext) {
        if (!may_be_absent(*info, l, t->right)) return std::nullopt;
        info->absent.erase(l);
        info->present[l] = t->right;
      } else {
        auto it = info->present.find(l);
        if (it == info->present.end() || !equiv(it->second, t->right)) {
          return std::nullopt;
        }
        info->present.erase(it);
        info->absent[l] = t->right;
      }
      return info;
    }
  }
  return std::nullopt;
}

WfResult wf_kind_assignment(const KindAssignment &K) {
  for (const auto &[v, k] : K) {
    for (const TyVar &w : ftv(k)) {
      if (!K.count(w)) return WfResult{false, v};
    }
  }
  return {};
}

bool wf_type(const KindAssignment &K, const Type &t) {
  return vars_in(K, ftv(t));
}

bool wf_type(const KindAssignment &K, const PolyType &t) {
  return vars_in(K, ftv(t));
}

bool wf_kind(const KindAssignment &K, const Kind &k) {
  if (k.universal) return true;
  for (const auto &[l, _] : k.lefts) {
    if (k.rights.count(l)) return false;
  }
  return vars_in(K, ftv(k));
}

bool wf_type_assignment(const KindAssignment &K, const TypeAssignment &g) {
  for (const auto &[_, s] : g) {
    if (!wf_type(K, s)) return false;
  }
  return true;
}

bool has_kind(const KindAssignment &K, const Type &t, const Kind &k) {
  if (!wf_type(K, t)) return false;
  if (k.universal) return true;
  if (!wf_kind(K, k)) return false;
  auto info = derivable_fields(K, t);
  if (!info) return false;
  for (const auto &[l, ft] : k.lefts) {
    auto it = info->present.find(l);
    if (it == info->present.end() || !equiv(it->second, ft)) return false;
  }
  for (const auto &[l, ft] : k.rights) {
    if (!may_be_absent(*info, l, ft)) return false;
  }
  return true;
}

std::optional<TyVar> kind_cycle(const KindAssignment &K) {
  enum class Mark { None, Active, Done };
  std::map<TyVar, Mark> mark;
  std::optional<TyVar> found;
  std::function<bool(const TyVar &)> visit = [&](const TyVar &v) {
    Mark &m = mark[v];
    if (m == Mark::Active) {
      found = v;
      return true;
    }
    if (m == Mark::Done) return false;
    m = Mark::Active;
    auto it = K.find(v);
    if (it != K.end()) {
      for (const TyVar &w : ftv(it->second)) {
        if (visit(w)) return true;
      }
    }
    mark[v] = Mark::Done;
    return false;
  };
  for (const auto &[v, _] : K) {
    if (visit(v)) return found;
  }
  return std::nullopt;
}

}  // namespace extrec
