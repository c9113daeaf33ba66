#include "extrec/infer.hpp"

#include "extrec/normalize.hpp"
#include "extrec/subst.hpp"
#include "extrec/unify.hpp"

namespace extrec {

const char *infer_failure_name(InferFailure f) {
  switch (f) {
    case InferFailure::UnboundVariable:
      return "unbound-variable";
    case InferFailure::Occurs:
      return "occurs";
    case InferFailure::KindClash:
      return "kind-clash";
    case InferFailure::ConstructorClash:
      return "constructor-clash";
    case InferFailure::ExtBaseOccurs:
      return "ext-base-occurs";
  }
  return "?";
}

std::pair<KindAssignment, Type> instantiate(const KindAssignment &K,
                                            const PolyType &s,
                                            FreshSupply &fresh,
                                            Substitution *renaming) {
  Substitution ren;
  for (const auto &q : s.quantifiers) ren[q.var] = make_var(fresh.fresh());
  KindAssignment out = K;
  for (const auto &q : s.quantifiers) {
    out[ren.at(q.var)->var] = substitute(ren, q.kind);
  }
  if (renaming) *renaming = ren;
  return {std::move(out), normalize(substitute(ren, s.body))};
}

Derivation transport(const Derivation &d, const Substitution &s,
                     const KindAssignment &kinds) {
  Derivation out;
  out.rule = d.rule;
  out.kinds = kinds;
  out.term = d.term;
  out.gamma = substitute(s, d.gamma);
  Substitution inner = s;
  for (const auto &q : d.type.quantifiers) inner.erase(q.var);
  std::vector<Quantifier> qs;
  for (const auto &q : d.type.quantifiers) {
    qs.push_back(Quantifier{q.var, normalize(substitute(inner, q.kind))});
  }
  out.type = PolyType(qs, normalize(substitute(inner, d.type.body)));
  if (d.side_kind) out.side_kind = normalize(substitute(s, *d.side_kind));
  if (d.witness) {
    Substitution w;
    for (const auto &[v, t] : *d.witness) w[v] = normalize(substitute(s, t));
    out.witness = std::move(w);
  }
  if (d.rule == "Gen") {
    KindAssignment premise = kinds;
    for (const auto &q : qs) premise[q.var] = q.kind;
    for (const auto &c : d.children) {
      out.children.push_back(transport(c, inner, premise));
    }
  } else {
    for (const auto &c : d.children) {
      out.children.push_back(transport(c, s, kinds));
    }
  }
  return out;
}

std::size_t derivation_size(const Derivation &d) {
  std::size_t n = 1;
  for (const auto &c : d.children) n += derivation_size(c);
  return n;
}

namespace {

struct Abort {
  InferError error;
};

struct Step {
  KindAssignment kinds;
  Substitution subst;
  Type type;
  Derivation derivation;
};

InferFailure from_unify(FailureKind k) {
  switch (k) {
    case FailureKind::Occurs:
      return InferFailure::Occurs;
    case FailureKind::KindClash:
      return InferFailure::KindClash;
    case FailureKind::ConstructorClash:
      return InferFailure::ConstructorClash;
  }
  return InferFailure::ConstructorClash;
}

Derivation node(const char *rule, const KindAssignment &K,
                const TypeAssignment &G, const Term &M, Type t) {
  Derivation d;
  d.rule = rule;
  d.kinds = K;
  d.gamma = G;
  d.term = M;
  d.type = PolyType(std::move(t));
  return d;
}

class Inferrer {
 public:
  explicit Inferrer(FreshSupply &fresh) : fresh_(fresh) {}

  Step go(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    switch (M->tag) {
      case TermTag::Var:
        return var(K, G, M);
      case TermTag::Const: {
        Type t = make_base(M->literal.type);
        return Step{K, {}, t, node("Const", K, G, M, t)};
      }
      case TermTag::Abs:
        return abs(K, G, M);
      case TermTag::App:
        return app(K, G, M);
      case TermTag::Let:
        return let(K, G, M);
      case TermTag::Record:
        return record(K, G, M);
      case TermTag::Select:
        return select(K, G, M);
      case TermTag::Modify:
        return modify(K, G, M);
      case TermTag::Remove:
        return remove(K, G, M);
      case TermTag::Extend:
        return extend(K, G, M);
    }
    throw std::logic_error("unknown term");
  }

 private:
  FreshSupply &fresh_;

  TyVar fresh() { return fresh_.fresh(); }

  std::pair<KindAssignment, Substitution> solve(const KindAssignment &K,
                                                const EquationSet &E,
                                                const Term &M) {
    UnifyOutcome u = unify(K, E, &fresh_);
    if (!u.ok()) {
      throw Abort{InferError{term_tag_name(M->tag), from_unify(u.failure->kind),
                             u.failure->message, M->span}};
    }
    return {std::move(u.result->kinds), std::move(u.result->subst)};
  }

  Step var(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    auto it = G.find(M->name);
    if (it == G.end()) {
      throw Abort{InferError{"Var", InferFailure::UnboundVariable,
                             "unbound variable '" + M->name + "'", M->span}};
    }
    Substitution ren;
    auto [K1, t] = instantiate(K, it->second, fresh_, &ren);
    Derivation d = node("Var", K1, G, M, t);
    d.witness = ren;
    return Step{K1, {}, t, std::move(d)};
  }

  Step abs(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    TyVar a = fresh();
    KindAssignment K1 = K;
    K1[a] = Kind::U();
    TypeAssignment G1 = G;
    G1[M->name] = PolyType(make_var(a));
    Step r = go(K1, G1, M->first);
    Type t = make_arrow(normalize(substitute(r.subst, make_var(a))), r.type);
    Derivation d = node("Abs", r.kinds, substitute(r.subst, G), M, t);
    d.children.push_back(std::move(r.derivation));
    return Step{std::move(r.kinds), std::move(r.subst), t, std::move(d)};
  }

  Step app(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    Step r1 = go(K, G, M->first);
    Step r2 = go(r1.kinds, substitute(r1.subst, G), M->second);
    TyVar a = fresh();
    KindAssignment K2 = r2.kinds;
    K2[a] = Kind::U();
    auto [K3, S3] = solve(
        K2, {Equation{substitute(r2.subst, r1.type), make_arrow(r2.type, make_var(a))}},
        M);
    Substitution S = compose(S3, compose(r2.subst, r1.subst));
    Type t = normalize(substitute(S3, make_var(a)));
    Derivation d = node("App", K3, substitute(S, G), M, t);
    d.children.push_back(transport(r1.derivation, compose(S3, r2.subst), K3));
    d.children.push_back(transport(r2.derivation, S3, K3));
    return Step{K3, S, t, std::move(d)};
  }

  Step let(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    Step r1 = go(K, G, M->first);
    TypeAssignment G1 = substitute(r1.subst, G);
    Closure cl = closure(r1.kinds, G1, r1.type);
    TypeAssignment G2 = G1;
    G2[M->name] = cl.poly;
    Step r2 = go(cl.residual, G2, M->second);
    Substitution S = compose(r2.subst, r1.subst);
    Derivation gen;
    gen.rule = "Gen";
    gen.kinds = cl.residual;
    gen.gamma = G1;
    gen.term = M->first;
    gen.type = cl.poly;
    gen.children.push_back(std::move(r1.derivation));
    Derivation d = node("Let", r2.kinds, substitute(S, G), M, r2.type);
    d.children.push_back(transport(gen, r2.subst, r2.kinds));
    d.children.push_back(std::move(r2.derivation));
    return Step{std::move(r2.kinds), S, r2.type, std::move(d)};
  }

  Step record(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    const std::size_t n = M->fields.size();
    std::vector<Step> steps;
    KindAssignment Kc = K;
    Substitution Sc;
    for (const auto &[l, sub] : M->fields) {
      steps.push_back(go(Kc, substitute(Sc, G), sub));
      Kc = steps.back().kinds;
      Sc = compose(steps.back().subst, Sc);
    }
    // after[i] = S_n o ... o S_{i+1}
    std::vector<Substitution> after(n);
    for (std::size_t i = n; i-- > 1;) {
      after[i - 1] = compose(after[i], steps[i].subst);
    }
    FieldMap fields;
    std::vector<Derivation> kids;
    for (std::size_t i = 0; i < n; ++i) {
      fields.emplace(M->fields[i].first,
                     normalize(substitute(after[i], steps[i].type)));
      kids.push_back(transport(steps[i].derivation, after[i], Kc));
    }
    Type t = make_record(std::move(fields));
    Derivation d = node("Rec", Kc, substitute(Sc, G), M, t);
    d.children = std::move(kids);
    return Step{Kc, Sc, t, std::move(d)};
  }

  // Fresh (a1 :: U, a2 :: k(a1)) pair used by the record operations.
  std::pair<TyVar, TyVar> field_vars(KindAssignment &K, const Label &l,
                                     bool present) {
    TyVar a1 = fresh();
    TyVar a2 = fresh();
    K[a1] = Kind::U();
    FieldMap f{{l, make_var(a1)}};
    K[a2] = present ? Kind::record(f, {}) : Kind::record({}, f);
    return {a1, a2};
  }

  static Kind side(const Label &l, const Type &t, bool present) {
    FieldMap f{{l, t}};
    return present ? Kind::record(f, {}) : Kind::record({}, f);
  }

  Step select(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    Step r = go(K, G, M->first);
    KindAssignment K1 = r.kinds;
    auto [a1, a2] = field_vars(K1, M->label, true);
    auto [K2, S2] = solve(K1, {Equation{make_var(a2), r.type}}, M);
    Substitution S = compose(S2, r.subst);
    Type t = normalize(substitute(S2, make_var(a1)));
    Derivation d = node("Sel", K2, substitute(S, G), M, t);
    d.children.push_back(transport(r.derivation, S2, K2));
    d.side_kind = side(M->label, t, true);
    return Step{K2, S, t, std::move(d)};
  }

  Step modify(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    Step r1 = go(K, G, M->first);
    Step r2 = go(r1.kinds, substitute(r1.subst, G), M->second);
    KindAssignment K2 = r2.kinds;
    auto [a1, a2] = field_vars(K2, M->label, true);
    auto [K3, S3] = solve(K2,
                          {Equation{make_var(a1), r2.type},
                           Equation{make_var(a2), substitute(r2.subst, r1.type)}},
                          M);
    Substitution S = compose(S3, compose(r2.subst, r1.subst));
    Type t = normalize(substitute(S3, make_var(a2)));
    Derivation d = node("Modif", K3, substitute(S, G), M, t);
    d.children.push_back(transport(r1.derivation, compose(S3, r2.subst), K3));
    d.children.push_back(transport(r2.derivation, S3, K3));
    d.side_kind = side(M->label, normalize(substitute(S3, make_var(a1))), true);
    return Step{K3, S, t, std::move(d)};
  }

  Step remove(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    Step r = go(K, G, M->first);
    KindAssignment K1 = r.kinds;
    auto [a1, a2] = field_vars(K1, M->label, true);
    auto [K2, S2] = solve(K1, {Equation{make_var(a2), r.type}}, M);
    Substitution S = compose(S2, r.subst);
    Type t = normalize(
        substitute(S2, make_contr(make_var(a2), M->label, make_var(a1))));
    Derivation d = node("Contr", K2, substitute(S, G), M, t);
    d.children.push_back(transport(r.derivation, S2, K2));
    d.side_kind = side(M->label, normalize(substitute(S2, make_var(a1))), true);
    return Step{K2, S, t, std::move(d)};
  }

  Step extend(const KindAssignment &K, const TypeAssignment &G, const Term &M) {
    Step r1 = go(K, G, M->first);
    Step r2 = go(r1.kinds, substitute(r1.subst, G), M->second);
    Type t1 = normalize(substitute(r2.subst, r1.type));
    if (is_extensible(t1)) {
      Type base = base_of(t1);
      if (base->tag == TypeTag::Var && ftv(r2.type).count(base->var)) {
        throw Abort{InferError{"Ext", InferFailure::ExtBaseOccurs,
                               "the extended record's base occurs in the new field",
                               M->span}};
      }
    }
    KindAssignment K2 = r2.kinds;
    auto [a1, a2] = field_vars(K2, M->label, false);
    auto [K3, S3] = solve(K2,
                          {Equation{make_var(a1), r2.type},
                           Equation{make_var(a2), substitute(r2.subst, r1.type)}},
                          M);
    Substitution S = compose(S3, compose(r2.subst, r1.subst));
    Type t = normalize(
        substitute(S3, make_ext(make_var(a2), M->label, make_var(a1))));
    Derivation d = node("Ext", K3, substitute(S, G), M, t);
    d.children.push_back(transport(r1.derivation, compose(S3, r2.subst), K3));
    d.children.push_back(transport(r2.derivation, S3, K3));
    d.side_kind = side(M->label, normalize(substitute(S3, make_var(a1))), false);
    return Step{K3, S, t, std::move(d)};
  }
};

}  // namespace

InferOutcome infer(const KindAssignment &K, const TypeAssignment &G,
                   const Term &M, FreshSupply &fresh) {
  fresh.reserve_above(std::max(max_var_id(K), max_var_id(G)));
  InferOutcome out;
  try {
    Inferrer inf(fresh);
    Step s = inf.go(K, G, M);
    out.result = InferResult{std::move(s.kinds), std::move(s.subst), s.type,
                             std::move(s.derivation)};
  } catch (const Abort &a) {
    out.error = a.error;
  }
  return out;
}

InferOutcome infer(const KindAssignment &K, const TypeAssignment &G,
                   const Term &M) {
  FreshSupply fresh(std::max(max_var_id(K), max_var_id(G)) + 1);
  return infer(K, G, M, fresh);
}

std::optional<PrincipalTyping> principal(const KindAssignment &K,
                                         const TypeAssignment &G,
                                         const Term &M, InferError *error) {
  InferOutcome o = infer(K, G, M);
  if (!o.ok()) {
    if (error) *error = *o.error;
    return std::nullopt;
  }
  Closure cl = closure(o.result->kinds, substitute(o.result->subst, G), o.result->type);
  return PrincipalTyping{std::move(cl.residual), o.result->subst,
                         o.result->type, std::move(cl.poly)};
}

}  // namespace extrec
