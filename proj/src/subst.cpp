#include "extrec/subst.hpp"

#include <atomic>
#include <stdexcept>

#include "extrec/kinding.hpp"
#include "extrec/normalize.hpp"
#include "extrec/unify.hpp"

namespace extrec {

TyVar fresh_rename_var(const std::string &hint) {
  static std::atomic<std::uint64_t> next{std::uint64_t{1} << 40};
  return TyVar{next++, hint};
}

Type image(const Substitution &s, const TyVar &v) {
  auto it = s.find(v);
  return it == s.end() ? make_var(v) : it->second;
}

Type substitute(const Substitution &s, const Type &t) {
  if (s.empty()) return t;
  switch (t->tag) {
    case TypeTag::Base:
      return t;
    case TypeTag::Var: {
      auto it = s.find(t->var);
      return it == s.end() ? t : it->second;
    }
    case TypeTag::Record: {
      FieldMap f;
      for (const auto &[l, ft] : t->fields) f.emplace(l, substitute(s, ft));
      return make_record(std::move(f));
    }
    case TypeTag::Arrow:
      return make_arrow(substitute(s, t->left), substitute(s, t->right));
    case TypeTag::Ext:
      return make_ext(substitute(s, t->left), t->label, substitute(s, t->right));
    case TypeTag::Contr:
      return make_contr(substitute(s, t->left), t->label, substitute(s, t->right));
  }
  return t;
}

Kind substitute(const Substitution &s, const Kind &k) {
  if (k.universal || s.empty()) return k;
  Kind out = Kind::record();
  for (const auto &[l, t] : k.lefts) out.lefts.emplace(l, substitute(s, t));
  for (const auto &[l, t] : k.rights) out.rights.emplace(l, substitute(s, t));
  return out;
}

PolyType substitute(const Substitution &s, const PolyType &p) {
  if (p.is_mono()) return PolyType(substitute(s, p.body));
  Substitution inner = s;
  for (const auto &q : p.quantifiers) inner.erase(q.var);
  VarSet clash;
  for (const auto &[v, t] : inner) {
    clash.insert(v);
    collect_ftv(t, clash);
  }
  VarRenaming r;
  for (const auto &q : p.quantifiers) {
    if (clash.count(q.var)) r[q.var] = fresh_rename_var(q.var.name);
  }
  std::vector<Quantifier> qs;
  for (const auto &q : p.quantifiers) {
    TyVar v = r.count(q.var) ? r[q.var] : q.var;
    qs.push_back(Quantifier{v, substitute(inner, rename_vars(q.kind, r))});
  }
  return PolyType(std::move(qs), substitute(inner, rename_vars(p.body, r)));
}

TypeAssignment substitute(const Substitution &s, const TypeAssignment &g) {
  TypeAssignment out;
  for (const auto &[x, t] : g) out.emplace(x, substitute(s, t));
  return out;
}

KindAssignment substitute(const Substitution &s, const KindAssignment &K) {
  KindAssignment out;
  for (const auto &[v, k] : K) out.emplace(v, substitute(s, k));
  return out;
}

Substitution substitute(const Substitution &s, const Substitution &inner) {
  Substitution out;
  for (const auto &[v, t] : inner) out.emplace(v, substitute(s, t));
  return out;
}

Substitution compose(const Substitution &s2, const Substitution &s1) {
  Substitution out;
  for (const auto &[v, t] : s1) {
    Type img = normalize(substitute(s2, t));
    if (!(img->tag == TypeTag::Var && img->var == v)) out.emplace(v, img);
  }
  for (const auto &[v, t] : s2) {
    if (s1.count(v)) continue;
    Type img = normalize(t);
    if (!(img->tag == TypeTag::Var && img->var == v)) out.emplace(v, img);
  }
  return out;
}

bool respects(const KindAssignment &K1, const Substitution &s,
              const KindAssignment &K2) {
  try {
    for (const auto &[v, k] : K2) {
      if (!has_kind(K1, image(s, v), substitute(s, k))) return false;
    }
  } catch (const std::invalid_argument &) {
    return false;
  }
  return true;
}

std::vector<TyVar> dependency_order(const KindAssignment &K, const VarSet &vs) {
  std::vector<TyVar> order;
  VarSet placed;
  VarSet pending = vs;
  while (!pending.empty()) {
    bool progressed = false;
    for (const TyVar &v : pending) {
      bool ready = true;
      auto it = K.find(v);
      if (it != K.end()) {
        for (const TyVar &w : ftv(it->second)) {
          if (w != v && vs.count(w) && !placed.count(w)) {
            ready = false;
            break;
          }
        }
      }
      if (ready) {
        order.push_back(v);
        placed.insert(v);
        pending.erase(v);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      // Cyclic kinds; fall back to id order for what is left.
      order.insert(order.end(), pending.begin(), pending.end());
      break;
    }
  }
  return order;
}

Closure closure(const KindAssignment &K, const TypeAssignment &G,
                const Type &t) {
  VarSet env = eftv_closure(K, ftv(G));
  VarSet gen;
  for (const TyVar &v : eftv_closure(K, ftv(t))) {
    if (!env.count(v) && K.count(v)) gen.insert(v);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto &[v, k] : K) {
      if (gen.count(v) || env.count(v)) continue;
      for (const TyVar &w : ftv(k)) {
        if (gen.count(w)) {
          gen.insert(v);
          grew = true;
          break;
        }
      }
    }
  }
  Closure out;
  for (const auto &[v, k] : K) {
    if (!gen.count(v)) out.residual.emplace(v, k);
  }
  std::vector<Quantifier> qs;
  for (const TyVar &v : dependency_order(K, gen)) {
    qs.push_back(Quantifier{v, K.at(v)});
  }
  out.poly = PolyType(std::move(qs), t);
  return out;
}

PolyType rename_quantifiers(const PolyType &p, VarRenaming &r) {
  for (const auto &q : p.quantifiers) r[q.var] = fresh_rename_var(q.var.name);
  std::vector<Quantifier> qs;
  for (const auto &q : p.quantifiers) {
    qs.push_back(Quantifier{r.at(q.var), rename_vars(q.kind, r)});
  }
  return PolyType(std::move(qs), rename_vars(p.body, r));
}

namespace {

KindAssignment extend(KindAssignment K, const PolyType &p) {
  for (const auto &q : p.quantifiers) K[q.var] = q.kind;
  return K;
}

}  // namespace

bool verify_instance(const KindAssignment &K, const PolyType &s1,
                     const PolyType &s2, const Substitution &witness) {
  VarRenaming r1, r2;
  PolyType a = rename_quantifiers(s1, r1);
  PolyType b = rename_quantifiers(s2, r2);
  Substitution w;
  for (const auto &q : s1.quantifiers) {
    auto it = witness.find(q.var);
    if (it == witness.end()) return false;
    w[r1.at(q.var)] = rename_vars(it->second, r2);
  }
  if (w.size() != witness.size()) return false;
  try {
    if (!respects(extend(K, b), w, extend(K, a))) return false;
    return equiv(substitute(w, a.body), b.body);
  } catch (const std::invalid_argument &) {
    return false;
  }
}

std::optional<Substitution> generic_instance_witness(const KindAssignment &K,
                                                     const PolyType &s1,
                                                     const PolyType &s2) {
  if (!wf_type(K, s1)) return std::nullopt;
  VarRenaming r1, r2;
  PolyType a = rename_quantifiers(s1, r1);
  PolyType b = rename_quantifiers(s2, r2);
  KindAssignment all = extend(extend(K, a), b);

  VarSet rigid;
  for (const auto &[v, _] : K) rigid.insert(v);
  for (const auto &q : b.quantifiers) rigid.insert(q.var);

  std::optional<Substitution> w =
      match_rigid(all, {Equation{a.body, b.body}}, rigid);
  if (!w) return std::nullopt;

  // Express the witness over the caller's variables.
  VarRenaming back2;
  for (const auto &[orig, renamed] : r2) back2[renamed] = orig;
  Substitution out;
  for (const auto &q : s1.quantifiers) {
    out[q.var] = rename_vars(w->at(r1.at(q.var)), back2);
  }
  if (!verify_instance(K, s1, s2, out)) return std::nullopt;
  return out;
}

bool generic_instance(const KindAssignment &K, const PolyType &s1,
                      const PolyType &s2) {
  return generic_instance_witness(K, s1, s2).has_value();
}

}  // namespace extrec
