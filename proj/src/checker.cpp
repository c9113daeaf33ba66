#include "extrec/checker.hpp"

#include <stdexcept>

#include "extrec/infer.hpp"
#include "extrec/kinding.hpp"
#include "extrec/normalize.hpp"
#include "extrec/subst.hpp"
#include "extrec/unify.hpp"

namespace extrec {

namespace {

struct Reject {
  std::string reason;
};

void require(bool cond, const std::string &reason) {
  if (!cond) throw Reject{reason};
}

bool kinds_same(const KindAssignment &a, const KindAssignment &b) {
  if (a.size() != b.size()) return false;
  for (const auto &[v, k] : a) {
    auto it = b.find(v);
    if (it == b.end() || !equiv(k, it->second)) return false;
  }
  return true;
}

bool gamma_same(const TypeAssignment &a, const TypeAssignment &b) {
  if (a.size() != b.size()) return false;
  for (const auto &[x, s] : a) {
    auto it = b.find(x);
    if (it == b.end() || !poly_equiv(s, it->second)) return false;
  }
  return true;
}

const char *rule_for(TermTag tag) {
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

std::size_t arity(const Derivation &d) {
  const Term &M = d.term;
  switch (M->tag) {
    case TermTag::Var:
    case TermTag::Const:
      return 0;
    case TermTag::Abs:
    case TermTag::Select:
    case TermTag::Remove:
      return 1;
    case TermTag::App:
    case TermTag::Let:
    case TermTag::Modify:
    case TermTag::Extend:
      return 2;
    case TermTag::Record:
      return M->fields.size();
  }
  return 0;
}

const Type &mono(const Derivation &d, const char *what) {
  require(d.type.is_mono(), std::string(what) + " must have a monotype");
  return d.type.body;
}

void check_side(const Derivation &d, const Kind &expected, const Type &target) {
  if (d.side_kind) {
    require(equiv(*d.side_kind, expected), "kinding premise has the wrong kind");
  }
  require(has_kind(d.kinds, target, expected), "kinding premise does not hold");
}

void check_gen(const Derivation &d) {
  require(d.children.size() == 1, "Gen takes one premise");
  const Derivation &c = d.children[0];
  require(term_equal(c.term, d.term), "premise is about a different term");
  require(gamma_same(c.gamma, d.gamma), "premise has a different type assignment");
  require(d.type.quantifiers.size() >= c.type.quantifiers.size(),
          "conclusion has fewer quantifiers than the premise");
  std::size_t n = d.type.quantifiers.size() - c.type.quantifiers.size();
  std::vector<Quantifier> added(d.type.quantifiers.begin(),
                                d.type.quantifiers.begin() + n);
  std::vector<Quantifier> rest(d.type.quantifiers.begin() + n,
                               d.type.quantifiers.end());
  require(poly_equiv(PolyType(rest, d.type.body), c.type),
          "conclusion is not a generalization of the premise");

  VarSet q;
  for (const auto &x : added) {
    require(q.insert(x.var).second, "variable quantified twice");
    auto it = c.kinds.find(x.var);
    require(it != c.kinds.end(), "quantified variable missing from premise");
    require(equiv(it->second, x.kind), "quantified kind differs from premise");
  }
  KindAssignment outer;
  for (const auto &[v, k] : c.kinds) {
    if (!q.count(v)) outer.emplace(v, k);
  }
  require(kinds_same(outer, d.kinds),
          "kind assignment is not the premise's minus the quantified variables");
  require(wf_kind_assignment(d.kinds).ok, "kind assignment is ill formed");
  for (const TyVar &v : eftv_closure(c.kinds, ftv(d.gamma))) {
    require(!q.count(v), "quantified variable occurs in the type assignment");
  }
  VarSet seen;
  for (const auto &x : added) {
    for (const TyVar &w : ftv(x.kind)) {
      require(!q.count(w) || seen.count(w),
              "quantifier kind refers to a later quantifier");
    }
    seen.insert(x.var);
  }
}

void check_node(const Derivation &d) {
  require(wf_kind_assignment(d.kinds).ok, "kind assignment is ill formed");
  require(wf_type_assignment(d.kinds, d.gamma), "type assignment is ill formed");
  require(wf_type(d.kinds, d.type), "type is ill formed");
  if (d.rule == "Gen") {
    check_gen(d);
    return;
  }
  const Term &M = d.term;
  require(d.rule == rule_for(M->tag), "rule does not match the term");
  require(d.children.size() == arity(d), "wrong number of premises");
  const Type &t = mono(d, "conclusion");

  // Premises share K, and G except where a binder extends it.
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    const Derivation &c = d.children[i];
    require(kinds_same(c.kinds, d.kinds), "premise has a different kind assignment");
    bool binds = (M->tag == TermTag::Abs) || (M->tag == TermTag::Let && i == 1);
    if (!binds) {
      require(gamma_same(c.gamma, d.gamma), "premise has a different type assignment");
    }
    Term sub;
    switch (M->tag) {
      case TermTag::Record:
        sub = M->fields[i].second;
        break;
      case TermTag::Abs:
        sub = M->first;
        break;
      default:
        sub = i == 0 ? M->first : M->second;
    }
    require(term_equal(c.term, sub), "premise is about a different term");
  }

  switch (M->tag) {
    case TermTag::Var: {
      auto it = d.gamma.find(M->name);
      require(it != d.gamma.end(), "variable is not in the type assignment");
      bool inst = d.witness ? verify_instance(d.kinds, it->second, t, *d.witness)
                            : generic_instance(d.kinds, it->second, t);
      require(inst, "type is not a generic instance of the assumption");
      break;
    }
    case TermTag::Const:
      require(t->tag == TypeTag::Base && t->base == M->literal.type,
              "constant has the wrong base type");
      break;
    case TermTag::Abs: {
      require(t->tag == TypeTag::Arrow, "abstraction must have an arrow type");
      TypeAssignment g = d.gamma;
      g[M->name] = PolyType(t->left);
      require(gamma_same(d.children[0].gamma, g),
              "premise does not bind the parameter to the domain");
      require(equiv(mono(d.children[0], "body"), t->right),
              "body type differs from the codomain");
      break;
    }
    case TermTag::App: {
      const Type &f = mono(d.children[0], "function");
      const Type &a = mono(d.children[1], "argument");
      require(equiv(f, make_arrow(a, t)), "function type does not match");
      break;
    }
    case TermTag::Let: {
      TypeAssignment g = d.gamma;
      g[M->name] = d.children[0].type;
      require(gamma_same(d.children[1].gamma, g),
              "body does not bind the name to the bound term's type");
      require(equiv(mono(d.children[1], "body"), t), "body type differs");
      break;
    }
    case TermTag::Record: {
      require(t->tag == TypeTag::Record && t->fields.size() == M->fields.size(),
              "record must have a record type with the same labels");
      for (std::size_t i = 0; i < M->fields.size(); ++i) {
        auto it = t->fields.find(M->fields[i].first);
        require(it != t->fields.end(), "record type lacks a field");
        require(equiv(mono(d.children[i], "field"), it->second),
                "field type differs");
      }
      break;
    }
    case TermTag::Select: {
      const Type &r = mono(d.children[0], "record");
      check_side(d, Kind::record({{M->label, t}}, {}), r);
      break;
    }
    case TermTag::Modify: {
      const Type &r = mono(d.children[0], "record");
      const Type &v = mono(d.children[1], "value");
      check_side(d, Kind::record({{M->label, v}}, {}), r);
      require(equiv(r, t), "modification changes the record type");
      break;
    }
    case TermTag::Remove: {
      const Type &r = mono(d.children[0], "record");
      require(d.side_kind.has_value() && !d.side_kind->universal &&
                  d.side_kind->lefts.count(M->label),
              "contraction needs the removed field's type");
      const Type &f = d.side_kind->lefts.at(M->label);
      check_side(d, Kind::record({{M->label, f}}, {}), r);
      require(is_extensible(r), "contraction of a non-record");
      require(equiv(make_contr(r, M->label, f), t), "result type differs");
      break;
    }
    case TermTag::Extend: {
      const Type &r = mono(d.children[0], "record");
      const Type &v = mono(d.children[1], "value");
      check_side(d, Kind::record({}, {{M->label, v}}), r);
      require(is_extensible(r), "extension of a non-record");
      Type b = base_of(normalize(r));
      require(b->tag != TypeTag::Var || !ftv(v).count(b->var),
              "record base occurs in the new field");
      require(equiv(make_ext(r, M->label, v), t), "result type differs");
      break;
    }
  }
}

bool walk(const Derivation &d, std::vector<std::size_t> &path,
          ValidationError &err) {
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    path.push_back(i);
    if (!walk(d.children[i], path, err)) return false;
    path.pop_back();
  }
  try {
    check_node(d);
  } catch (const Reject &r) {
    err = ValidationError{path, d.rule, r.reason};
    return false;
  } catch (const std::invalid_argument &e) {
    err = ValidationError{path, d.rule, e.what()};
    return false;
  }
  return true;
}

}  // namespace

std::optional<ValidationError> validate(const Derivation &d) {
  std::vector<std::size_t> path;
  ValidationError err;
  if (walk(d, path, err)) return std::nullopt;
  return err;
}

CheckResult check(const KindAssignment &K, const TypeAssignment &G,
                  const Term &M, const PolyType &s) {
  if (!wf_kind_assignment(K).ok) return {false, "kind assignment is ill formed"};
  if (!wf_type_assignment(K, G)) return {false, "type assignment is ill formed"};
  if (!wf_type(K, s)) return {false, "type is ill formed"};
  InferOutcome o = infer(K, G, M);
  if (!o.ok()) {
    return {false, "term has no type: " + o.error->message};
  }
  const InferResult &r = *o.result;

  VarRenaming ren;
  PolyType target = rename_quantifiers(s, ren);

  VarSet rigid;
  KindAssignment all = r.kinds;
  for (const auto &[v, k] : K) {
    rigid.insert(v);
    all[v] = k;
  }
  for (const auto &q : target.quantifiers) {
    rigid.insert(q.var);
    all[q.var] = q.kind;
  }
  VarSet env = eftv_closure(K, ftv(G));
  EquationSet eqs{Equation{r.type, target.body}};
  for (const TyVar &v : env) {
    auto it = r.subst.find(v);
    if (it != r.subst.end()) eqs.push_back(Equation{it->second, make_var(v)});
  }

  std::optional<Substitution> w = match_rigid(all, eqs, rigid);
  if (!w) return {false, "type is not an instance of the principal type"};
  try {
    for (const TyVar &v : env) {
      if (!equiv(substitute(*w, image(r.subst, v)), make_var(v))) {
        return {false, "typing would specialize the type assignment"};
      }
    }
    if (!equiv(substitute(*w, r.type), target.body)) {
      return {false, "type is not an instance of the principal type"};
    }
    KindAssignment kt = K;
    for (const auto &q : target.quantifiers) kt[q.var] = q.kind;
    if (!respects(kt, *w, r.kinds)) {
      return {false, "instance does not respect the inferred kinds"};
    }
  } catch (const std::invalid_argument &e) {
    return {false, e.what()};
  }
  return {true, {}};
}

}  // namespace extrec
