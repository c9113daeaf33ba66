#include "extrec/gen.hpp"

#include <algorithm>
#include <functional>

#include "extrec/kinding.hpp"

namespace extrec {

int Generator::below(int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

const Label &Generator::label() {
  return config_.labels[below(static_cast<int>(config_.labels.size()))];
}

Term Generator::term() {
  std::vector<std::string> scope;
  return term(scope, config_.max_depth);
}

Term Generator::term(const std::vector<std::string> &free) {
  std::vector<std::string> scope = free;
  return term(scope, config_.max_depth);
}

Term Generator::leaf(const std::vector<std::string> &scope) {
  if (!scope.empty() && chance(0.6)) {
    return make_tvar(scope[below(static_cast<int>(scope.size()))]);
  }
  switch (below(4)) {
    case 0:
      return make_int(below(10));
    case 1:
      return make_bool(chance(0.5));
    case 2:
      return make_string("s" + std::to_string(below(3)));
    default:
      return make_record_lit({});
  }
}

Term Generator::term(std::vector<std::string> &scope, int depth) {
  if (depth <= 1 || chance(0.2)) return leaf(scope);
  static const char *const kNames[] = {"x", "y", "z", "f"};
  auto sub = [&] { return term(scope, depth - 1); };
  switch (below(9)) {
    case 0: {
      std::string x = kNames[below(4)];
      scope.push_back(x);
      Term body = sub();
      scope.pop_back();
      return make_abs(x, body);
    }
    case 1: {
      Term f = sub();
      return make_app(f, sub());
    }
    case 2: {
      std::string x = kNames[below(4)];
      Term bound = sub();
      scope.push_back(x);
      Term body = sub();
      scope.pop_back();
      return make_let(x, bound, body);
    }
    case 3: {
      std::vector<Label> ls = config_.labels;
      std::shuffle(ls.begin(), ls.end(), rng_);
      ls.resize(below(static_cast<int>(ls.size()) + 1));
      std::vector<std::pair<Label, Term>> fields;
      for (const auto &l : ls) fields.emplace_back(l, sub());
      return make_record_lit(std::move(fields));
    }
    case 4:
      return make_select(sub(), label());
    case 5: {
      Term r = sub();
      const Label &l = label();
      return make_modify(r, l, sub());
    }
    case 6:
      return make_remove(sub(), label());
    case 7: {
      Term r = sub();
      const Label &l = label();
      return make_extend(r, l, sub());
    }
    default:
      return leaf(scope);
  }
}

Type Generator::type(const std::vector<TyVar> &vars, int depth) {
  auto base = [&] {
    switch (below(3)) {
      case 0:
        return int_type();
      case 1:
        return bool_type();
      default:
        return string_type();
    }
  };
  auto var = [&] {
    if (vars.empty()) return base();
    return make_var(vars[below(static_cast<int>(vars.size()))]);
  };
  if (depth <= 0) return chance(0.5) ? base() : var();
  switch (below(5)) {
    case 0:
      return base();
    case 1:
      return var();
    case 2: {
      FieldMap f;
      int n = below(4);
      for (int i = 0; i < n; ++i) f.emplace(label(), type(vars, depth - 1));
      return make_record(std::move(f));
    }
    case 3: {
      Type a = type(vars, depth - 1);
      return make_arrow(a, type(vars, depth - 1));
    }
    default: {
      Type t = vars.empty() || chance(0.3) ? make_record({}) : var();
      int n = 1 + below(3);
      for (int i = 0; i < n; ++i) {
        const Label &l = label();
        Type f = type(vars, depth - 1);
        t = chance(0.5) ? make_ext(t, l, f) : make_contr(t, l, f);
      }
      return t;
    }
  }
}

Kind Generator::kind(const std::vector<TyVar> &vars, int depth) {
  if (chance(0.3)) return Kind::U();
  Kind k = Kind::record();
  for (const auto &l : config_.labels) {
    switch (below(3)) {
      case 0:
        k.lefts.emplace(l, type(vars, depth));
        break;
      case 1:
        k.rights.emplace(l, type(vars, depth));
        break;
      default:
        break;
    }
  }
  return k;
}

PolyType Generator::poly(const std::vector<TyVar> &free, std::uint64_t &next_id) {
  std::vector<TyVar> vars = free;
  std::vector<Quantifier> qs;
  int n = below(3);
  for (int i = 0; i < n; ++i) {
    Kind k = kind(vars, 1);
    TyVar v{next_id++, {}};
    qs.push_back(Quantifier{v, std::move(k)});
    vars.push_back(v);
  }
  return PolyType(std::move(qs), type(vars, 3));
}

Type Generator::chain(const std::vector<TyVar> &vars) {
  Type t = vars.empty() || chance(0.3)
               ? make_record({})
               : make_var(vars[below(static_cast<int>(vars.size()))]);
  if (t->tag == TypeTag::Record && chance(0.5)) {
    FieldMap f;
    for (const auto &l : config_.labels) {
      if (chance(0.4)) f.emplace(l, field_type(vars));
    }
    t = make_record(std::move(f));
  }
  int n = 1 + below(config_.max_chain);
  for (int i = 0; i < n; ++i) {
    const Label &l = label();
    Type f = field_type(vars);
    t = chance(0.5) ? make_ext(t, l, f) : make_contr(t, l, f);
  }
  return t;
}

Type Generator::field_type(const std::vector<TyVar> &vars) {
  switch (below(4)) {
    case 0:
      return int_type();
    case 1:
      return bool_type();
    case 2:
      if (!vars.empty()) return make_var(vars[below(static_cast<int>(vars.size()))]);
      return int_type();
    default:
      return make_record({{label(), int_type()}});
  }
}

KindedType Generator::kinded_chain() {
  KindedType out;
  TyVar b1{1, {}}, b2{2, {}}, a{3, {}};
  out.kinds[b1] = Kind::U();
  out.kinds[b2] = Kind::U();
  std::vector<TyVar> fvars{b1, b2};

  Type cur;
  if (chance(0.5)) {
    Kind k = Kind::record();
    for (const auto &l : config_.labels) {
      switch (below(3)) {
        case 0:
          k.lefts.emplace(l, field_type(fvars));
          break;
        case 1:
          k.rights.emplace(l, field_type(fvars));
          break;
        default:
          break;
      }
    }
    out.kinds[a] = std::move(k);
    cur = make_var(a);
  } else {
    FieldMap f;
    for (const auto &l : config_.labels) {
      if (chance(0.5)) f.emplace(l, field_type(fvars));
    }
    cur = make_record(std::move(f));
  }

  int n = 1 + below(config_.max_chain);
  for (int i = 0; i < n; ++i) {
    auto info = derivable_fields(out.kinds, cur);
    if (!info) break;
    std::vector<std::pair<bool, std::pair<Label, Type>>> moves;
    for (const auto &l : config_.labels) {
      if (auto p = info->present.find(l); p != info->present.end()) {
        moves.push_back({false, {l, p->second}});
      } else if (auto q = info->absent.find(l); q != info->absent.end()) {
        moves.push_back({true, {l, q->second}});
      } else if (info->closed) {
        moves.push_back({true, {l, field_type(fvars)}});
      }
    }
    if (moves.empty()) break;
    const auto &[ext, field] = moves[below(static_cast<int>(moves.size()))];
    cur = ext ? make_ext(cur, field.first, field.second)
              : make_contr(cur, field.first, field.second);
  }
  out.type = cur;
  return out;
}

Type Generator::extensible(const std::vector<TyVar> &vars, int depth) {
  if (vars.empty() || chance(0.5)) {
    FieldMap f;
    for (const auto &l : config_.labels) {
      if (chance(0.4)) f.emplace(l, type(vars, depth - 1));
    }
    return make_record(std::move(f));
  }
  Type t = make_var(vars[below(static_cast<int>(vars.size()))]);
  int n = below(3);
  for (int i = 0; i < n; ++i) {
    const Label &l = label();
    Type f = field_type(vars);
    t = chance(0.5) ? make_ext(t, l, f) : make_contr(t, l, f);
  }
  return t;
}

Substitution Generator::substitution(const std::vector<TyVar> &dom,
                                     const std::vector<TyVar> &range) {
  Substitution s;
  for (const TyVar &v : dom) {
    if (chance(0.7)) s[v] = extensible(range, 2);
  }
  return s;
}

int term_depth(const Term &t) {
  int d = 0;
  auto sub = [&](const Term &x) {
    if (x) d = std::max(d, term_depth(x));
  };
  sub(t->first);
  sub(t->second);
  for (const auto &f : t->fields) sub(f.second);
  return d + 1;
}

Type Generator::ground(int depth) {
  if (depth <= 0 || chance(0.5)) {
    switch (below(3)) {
      case 0:
        return int_type();
      case 1:
        return bool_type();
      default:
        return string_type();
    }
  }
  if (chance(0.75)) {
    FieldMap f;
    for (const auto &l : config_.labels) {
      if (chance(0.5)) f.emplace(l, ground(depth - 1));
    }
    return make_record(std::move(f));
  }
  Type a = ground(depth - 1);
  return make_arrow(a, ground(depth - 1));
}

Term Generator::canonical(const Type &t) {
  switch (t->tag) {
    case TypeTag::Base:
      switch (t->base) {
        case BaseType::Int:
          return make_int(below(10));
        case BaseType::Bool:
          return make_bool(chance(0.5));
        case BaseType::String:
          return make_string("s" + std::to_string(below(3)));
      }
      break;
    case TypeTag::Record: {
      std::vector<std::pair<Label, Term>> fields;
      for (const auto &[l, ft] : t->fields) fields.emplace_back(l, canonical(ft));
      return make_record_lit(std::move(fields));
    }
    case TypeTag::Arrow:
      return make_abs("v" + std::to_string(fresh_name_++), canonical(t->right));
    default:
      break;
  }
  return make_int(0);
}

namespace {

// Depth of the term `canonical` builds for t.
int canonical_depth(const Type &t) {
  switch (t->tag) {
    case TypeTag::Record: {
      int d = 0;
      for (const auto &[_, ft] : t->fields) d = std::max(d, canonical_depth(ft));
      return d + 1;
    }
    case TypeTag::Arrow:
      return canonical_depth(t->right) + 1;
    default:
      return 1;
  }
}

}  // namespace

// Every call has canonical_depth(t) <= depth, so the result fits in depth.
Term Generator::typed(const Type &t, int depth, std::vector<Typed> &scope) {
  std::vector<const Typed *> vars;
  for (const auto &v : scope) {
    if (v.selector.empty() && type_equal(v.type, t)) vars.push_back(&v);
  }
  auto pick_var = [&]() -> Term {
    return make_tvar(vars[below(static_cast<int>(vars.size()))]->name);
  };
  if (depth <= 1) return vars.empty() ? canonical(t) : pick_var();

  auto fits = [&](const Type &u) { return canonical_depth(u) <= depth - 1; };
  auto sub = [&](const Type &u) { return typed(u, depth - 1, scope); };
  auto record_with = [&](const Label &l) {
    FieldMap f;
    for (const auto &m : config_.labels) {
      if (m != l && chance(0.4)) f.emplace(m, ground(1));
    }
    f.emplace(l, t);
    return make_record(std::move(f));
  };

  // Options return nullptr when their subterms would not fit.
  std::vector<std::function<Term()>> options;
  if (!vars.empty()) {
    options.push_back(pick_var);
    options.push_back(pick_var);
  }
  if (t->tag == TypeTag::Base) options.push_back([&] { return canonical(t); });
  if (t->tag == TypeTag::Record) {
    options.push_back([&]() -> Term {
      std::vector<std::pair<Label, Term>> fields;
      for (const auto &[l, ft] : t->fields) fields.emplace_back(l, sub(ft));
      return make_record_lit(std::move(fields));
    });
    for (const auto &[l, ft] : t->fields) {
      options.push_back([&, l = l, ft = ft]() -> Term {
        FieldMap rest = t->fields;
        rest.erase(l);
        Type r0 = make_record(std::move(rest));
        if (!fits(r0)) return nullptr;
        Term r = sub(r0);
        return make_extend(r, l, sub(ft));
      });
      options.push_back([&, l = l, ft = ft]() -> Term {
        if (!fits(t)) return nullptr;
        Term r = sub(t);
        return make_modify(r, l, sub(ft));
      });
    }
    for (const auto &l : config_.labels) {
      if (t->fields.count(l)) continue;
      options.push_back([&, l = l]() -> Term {
        FieldMap more = t->fields;
        more.emplace(l, ground(1));
        Type r = make_record(std::move(more));
        if (!fits(r)) return nullptr;
        return make_remove(sub(r), l);
      });
    }
  }
  if (t->tag == TypeTag::Arrow) {
    options.push_back([&]() -> Term {
      std::string x = "x" + std::to_string(fresh_name_++);
      scope.push_back(Typed{x, t->left, {}});
      Term body = sub(t->right);
      scope.pop_back();
      return make_abs(x, body);
    });
  }
  options.push_back([&]() -> Term {
    const Label &l = label();
    Type r = record_with(l);
    if (!fits(r)) return nullptr;
    return make_select(sub(r), l);
  });
  options.push_back([&]() -> Term {
    Type a = ground(1);
    Type f = make_arrow(a, t);
    if (!fits(f) || !fits(a)) return nullptr;
    Term ft = sub(f);
    return make_app(ft, sub(a));
  });
  options.push_back([&]() -> Term {
    Type a = ground(1);
    if (!fits(a) || !fits(t)) return nullptr;
    std::string x = "y" + std::to_string(fresh_name_++);
    Term bound = sub(a);
    scope.push_back(Typed{x, a, {}});
    Term body = sub(t);
    scope.pop_back();
    return make_let(x, bound, body);
  });
  // A let-bound selector used at whatever record type is handy.
  if (depth >= 4) {
    options.push_back([&]() -> Term {
      if (!fits(t)) return nullptr;
      const Label &l = label();
      std::string f = "f" + std::to_string(fresh_name_++);
      std::string x = "x" + std::to_string(fresh_name_++);
      Term sel = make_abs(x, make_select(make_tvar(x), l));
      scope.push_back(Typed{f, nullptr, l});
      Term body = sub(t);
      scope.pop_back();
      return make_let(f, sel, body);
    });
  }
  for (const auto &v : scope) {
    if (v.selector.empty()) continue;
    options.push_back([&, name = v.name, l = v.selector]() -> Term {
      Type r = record_with(l);
      if (!fits(r)) return nullptr;
      return make_app(make_tvar(name), sub(r));
    });
  }
  for (int tries = 0; tries < 4; ++tries) {
    if (Term out = options[below(static_cast<int>(options.size()))]()) return out;
  }
  return canonical(t);
}

Term Generator::typed_term() {
  fresh_name_ = 0;
  std::vector<Typed> scope;
  Type t = ground(2);
  while (canonical_depth(t) > config_.max_depth) t = ground(2);
  return typed(t, config_.max_depth, scope);
}

}  // namespace extrec
