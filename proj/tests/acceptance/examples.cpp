// Worked examples: inference, unification, equality, kinding, derivations
// and the negative suite.

#include <algorithm>
#include <sstream>

#include "../support.hpp"
#include "criteria.hpp"
#include "extrec/checker.hpp"
#include "extrec/infer.hpp"
#include "extrec/kinding.hpp"
#include "extrec/subst.hpp"
#include "extrec/unify.hpp"

using namespace extrec;
using namespace testing_support;

namespace acceptance {

namespace {

const char *kExampleEnv =
    "'a1 :: << || l: 'a2>>\n"
    "'a2 :: U\n"
    "x : 'a1\n"
    "y : 'a2\n";

Substitution rename_subst(const Substitution &s, const VarRenaming &r) {
  Substitution out;
  for (const auto &[v, t] : s) {
    auto it = r.find(v);
    out[it == r.end() ? v : it->second] = rename_vars(t, r);
  }
  return out;
}

// True when some bijection from the variables of `s` outside `keep` onto
// `targets` turns `s` into `expected`.
bool equal_up_to_fresh(const Substitution &s, const Substitution &expected,
                       const VarSet &keep, std::vector<TyVar> targets) {
  VarSet fresh;
  for (const auto &[v, t] : s) {
    if (!keep.count(v)) fresh.insert(v);
    for (const auto &w : ftv(t)) {
      if (!keep.count(w)) fresh.insert(w);
    }
  }
  std::vector<TyVar> from(fresh.begin(), fresh.end());
  if (from.size() > targets.size()) return false;
  std::sort(targets.begin(), targets.end());
  do {
    VarRenaming r;
    for (std::size_t i = 0; i < from.size(); ++i) r[from[i]] = targets[i];
    if (subst_equal(rename_subst(s, r), expected)) return true;
  } while (std::next_permutation(targets.begin(), targets.end()));
  return false;
}

std::string fail_at(const std::string &what, const std::string &text) {
  return what + ": " + text;
}

}  // namespace

Outcome inference_example() {
  Environment env = parse_env(kExampleEnv);
  const VarSet keep{var(1), var(2)};
  const Type a1 = tv(1), a2 = tv(2);
  const Type ext = make_ext(a1, "l", a2);

  struct Line {
    const char *source;
    Substitution subst;
    Type type;
  };
  const Line lines[] = {
      {"extend(x, l, y).l",
       {{var(3), a2}, {var(4), a1}, {var(5), a2}, {var(6), ext}},
       a2},
      {"extend(x, l, y)", {{var(3), a2}, {var(4), a1}}, ext},
      {"x", {}, a1},
      {"y", {}, a2},
  };

  for (const auto &line : lines) {
    InferOutcome o = infer(env.kinds, env.gamma, parse_term(line.source));
    if (!o.ok()) return {false, fail_at(line.source, o.error->message)};
    const InferResult &r = *o.result;
    if (!kinds_same(r.kinds, env.kinds)) {
      return {false, fail_at(line.source, "kind assignment " + pretty(r.kinds))};
    }
    if (!equiv(r.type, line.type)) {
      return {false, fail_at(line.source, "type " + pretty(r.type))};
    }
    if (!equal_up_to_fresh(r.subst, line.subst, keep,
                           {var(3), var(4), var(5), var(6)})) {
      return {false, fail_at(line.source, "substitution\n" + pretty(r.subst))};
    }
  }
  return {true, {}};
}

Outcome unification_example() {
  Environment env = parse_env(
      "'a :: << || l: 'c>>\n"
      "'c :: U\n"
      "'b :: <<l: 'c || >>\n");
  EquationSet eqs =
      parse_equations("('a + {l: 'c}) - {l: 'c} = 'b - {l: 'c}", &env.scope);
  const TyVar a = var(1), c = var(2), b = var(3);

  UnifyOutcome u = unify(env.kinds, eqs);
  if (!u.ok()) return {false, "unification failed: " + u.failure->message};
  const UnifyResult &r = *u.result;
  if (r.trace.empty() || r.trace.front() != "viii") {
    return {false, "first rule " + (r.trace.empty() ? "none" : r.trace.front())};
  }
  if (std::find(r.trace.begin(), r.trace.end(), "ix") != r.trace.end()) {
    return {false, "rule ix applied"};
  }
  Substitution want{{b, make_ext(make_var(a), "l", make_var(c))}};
  if (r.subst.size() != 1 || !subst_equal(r.subst, want)) {
    return {false, "substitution\n" + pretty(r.subst)};
  }
  KindAssignment kinds{{a, Kind::record({}, {{"l", make_var(c)}})}, {c, Kind::U()}};
  if (!kinds_same(r.kinds, kinds)) return {false, "kinds\n" + pretty(r.kinds)};
  return {true, {}};
}

Outcome equality_example() {
  struct Case {
    const char *lhs;
    const char *rhs;
    bool equal;
  };
  const Case cases[] = {
      {"('a + {l1: Int}) - {l2: Bool}", "('a - {l2: Bool}) + {l1: Int}", true},
      {"(('a + {l1: Int}) - {l2: Bool}) - {l1: Int}",
       "(('a + {l1: Int}) - {l1: Int}) - {l2: Bool}", true},
      {"('a1 + {l1: Int}) - {l2: Bool}", "('a2 - {l1: Int}) + {l2: Bool}", false},
      {"(('a1 - {l1: Int}) + {l2: Bool}) + {l1: Int}",
       "(('a2 + {l1: Int}) - {l1: Int}) + {l2: Bool}", false},
  };
  int n = 0;
  for (const auto &c : cases) {
    ++n;
    TypeScope scope;
    Type l = parse_mono(c.lhs, &scope);
    Type r = parse_mono(c.rhs, &scope);
    if (equiv(l, r) != c.equal) {
      return {false, "case (" + std::to_string(n) + ") gave " +
                         (c.equal ? "unequal" : "equal")};
    }
  }
  return {true, {}};
}

Outcome kinding_example() {
  struct Judgment {
    const char *type;
    const char *kind;
  };
  const Judgment judgments[] = {
      {"{l1: Int}", "<< || >>"},
      {"{l1: Int}", "<<l1: Int || >>"},
      {"{l1: Int} + {l2: Bool}", "<<l2: Bool || >>"},
      {"{l1: Int} + {l2: Bool}", "<< || l3: String>>"},
      {"({l1: Int} + {l2: Bool}) - {l1: Int}", "<<l2: Bool || l1: Int>>"},
  };
  for (const auto &j : judgments) {
    if (!has_kind({}, parse_mono(j.type), parse_kind(j.kind))) {
      return {false, std::string("rejected ") + j.type + " :: " + j.kind};
    }
  }

  // Every record kind over l1..l3 with l1 present.
  const Type contracted = parse_mono("({l1: Int} + {l2: Bool}) - {l1: Int}");
  const std::vector<Type> types{int_type(), bool_type(), string_type(),
                                make_record({})};
  int tried = 0;
  for (const auto &t1 : types) {
    for (int s2 = 0; s2 < 7; ++s2) {
      for (int s3 = 0; s3 < 7; ++s3) {
        Kind k = Kind::record({{"l1", t1}}, {});
        auto place = [&](const Label &l, int s) {
          if (s == 0) return;
          Type t = types[(s - 1) % 3];
          (s <= 3 ? k.lefts : k.rights)[l] = t;
        };
        place("l2", s2);
        place("l3", s3);
        ++tried;
        if (has_kind({}, contracted, k)) {
          return {false, "accepted kind " + pretty(k)};
        }
      }
    }
  }
  return {true, std::to_string(tried) + " kinds rejected"};
}

namespace {

Derivation node(std::string rule, const Environment &env, Term term, Type type,
                std::vector<Derivation> children = {},
                std::optional<Kind> side = std::nullopt) {
  Derivation d;
  d.rule = std::move(rule);
  d.kinds = env.kinds;
  d.gamma = env.gamma;
  d.term = std::move(term);
  d.type = PolyType(std::move(type));
  d.children = std::move(children);
  d.side_kind = std::move(side);
  if (d.rule == "Var") d.witness = Substitution{};
  return d;
}

Derivation &at(Derivation &d, const std::vector<std::size_t> &path) {
  Derivation *p = &d;
  for (auto i : path) p = &p->children[i];
  return *p;
}

std::string path_text(const std::vector<std::size_t> &path) {
  std::string s = "root";
  for (auto i : path) s += "." + std::to_string(i);
  return s;
}

}  // namespace

Outcome derivation_example() {
  Environment env = parse_env(kExampleEnv);
  const Type a1 = tv(1), a2 = tv(2);
  const Type ext = make_ext(a1, "l", a2);
  Term sel = parse_term("extend(x, l, y).l");
  Term extend = sel->first;

  Derivation tree = node(
      "Sel", env, sel, a2,
      {node("Ext", env, extend, ext,
            {node("Var", env, extend->first, a1), node("Var", env, extend->second, a2)},
            Kind::record({}, {{"l", a2}}))},
      Kind::record({{"l", a2}}, {}));

  if (auto err = validate(tree)) {
    return {false, "tree rejected at " + path_text(err->path) + ": " + err->reason};
  }

  const std::vector<std::vector<std::size_t>> paths{{}, {0}, {0, 0}, {0, 1}};
  const std::vector<std::string> rules{"Var", "Const", "Abs",   "App",   "Let", "Rec",
                                       "Sel", "Modif", "Gen",   "Contr", "Ext"};
  const std::vector<Type> retypes{int_type(), a1,  a2, ext, make_contr(a1, "l", a2),
                                  make_record({})};
  int mutants = 0;
  auto rejected = [&](const Derivation &d, const std::string &what) -> std::string {
    ++mutants;
    return validate(d) ? std::string{} : what;
  };

  for (const auto &p : paths) {
    const Derivation &orig = at(tree, p);
    for (const auto &r : rules) {
      if (r == orig.rule) continue;
      Derivation d = tree;
      at(d, p).rule = r;
      if (auto e = rejected(d, "rule " + r + " at " + path_text(p)); !e.empty()) {
        return {false, "accepted " + e};
      }
    }
    for (const auto &t : retypes) {
      if (equiv(t, orig.type.body)) continue;
      Derivation d = tree;
      at(d, p).type = PolyType(t);
      if (auto e = rejected(d, "type " + pretty(t) + " at " + path_text(p));
          !e.empty()) {
        return {false, "accepted " + e};
      }
    }
    if (orig.side_kind) {
      const Kind &k = *orig.side_kind;
      const std::vector<Kind> sides{Kind::record(k.rights, k.lefts),
                                    Kind::record({{"l", int_type()}}, {}),
                                    Kind::record({}, {{"l", int_type()}}), Kind::U()};
      for (const auto &s : sides) {
        if (equiv(s, k)) continue;
        Derivation d = tree;
        at(d, p).side_kind = s;
        if (auto e = rejected(d, "side kind " + pretty(s) + " at " + path_text(p));
            !e.empty()) {
          return {false, "accepted " + e};
        }
      }
    }
    if (orig.rule == "Var") {
      Derivation d = tree;
      at(d, p).witness = Substitution{{var(1), int_type()}};
      if (auto e = rejected(d, "witness at " + path_text(p)); !e.empty()) {
        return {false, "accepted " + e};
      }
    }
  }

  // The Ext conclusion retyped as a contraction is caught at the Ext node.
  Derivation d = tree;
  at(d, {0}).type = PolyType(make_contr(a1, "l", a2));
  auto err = validate(d);
  if (!err || err->path != std::vector<std::size_t>{0} || err->rule != "Ext") {
    return {false, "contraction retype not reported at the Ext node"};
  }
  return {true, std::to_string(mutants) + " mutants rejected"};
}

Outcome negative_suite() {
  struct Case {
    const char *source;
    const char *rule;
    InferFailure reason;
  };
  const Case cases[] = {
      {"extend({l = 1}, l, 2)", "Ext", InferFailure::KindClash},
      {"remove({}, l)", "Contr", InferFailure::KindClash},
      {"{l = 1}.m", "Sel", InferFailure::KindClash},
      {"\\x. x x", "App", InferFailure::Occurs},
  };
  for (const auto &c : cases) {
    InferOutcome o = infer({}, {}, parse_term(c.source));
    if (o.ok()) return {false, std::string(c.source) + " was typed"};
    if (o.error->rule != c.rule || o.error->reason != c.reason) {
      return {false, std::string(c.source) + " failed in " + o.error->rule + " (" +
                         infer_failure_name(o.error->reason) + ")"};
    }
  }
  return {true, {}};
}

}  // namespace acceptance
