#include "extrec/unify.hpp"

#include <deque>
#include <stdexcept>

#include "extrec/kinding.hpp"
#include "extrec/normalize.hpp"
#include "extrec/subst.hpp"

namespace extrec {

const char *failure_kind_name(FailureKind k) {
  switch (k) {
    case FailureKind::Occurs:
      return "occurs";
    case FailureKind::KindClash:
      return "kind-clash";
    case FailureKind::ConstructorClash:
      return "constructor-clash";
  }
  return "?";
}

FieldMap efields(const Type &t) {
  if (!is_extensible(t)) throw std::invalid_argument("efields: not extensible");
  FieldMap out;
  for (const auto &op : decompose(t).ops) {
    if (op.extend) out[op.label] = op.type;
  }
  return out;
}

FieldMap cfields(const Type &t) {
  if (!is_extensible(t)) throw std::invalid_argument("cfields: not extensible");
  FieldMap out;
  for (const auto &op : decompose(t).ops) {
    if (!op.extend) out[op.label] = op.type;
  }
  return out;
}

FieldMap fmap_plus(const FieldMap &a, const FieldMap &b) {
  FieldMap out = a;
  for (const auto &[l, t] : b) out.emplace(l, t);
  return out;
}

FieldMap fmap_minus(const FieldMap &a, const FieldMap &b) {
  FieldMap out;
  for (const auto &[l, t] : a) {
    if (!b.count(l)) out.emplace(l, t);
  }
  return out;
}

bool satisfies(const Substitution &s, const EquationSet &E) {
  try {
    for (const auto &e : E) {
      if (!equiv(substitute(s, e.lhs), substitute(s, e.rhs))) return false;
    }
  } catch (const std::invalid_argument &) {
    return false;
  }
  return true;
}

namespace {

struct Failure {
  FailureKind kind;
  std::string message;
};

[[noreturn]] void fail(FailureKind k, std::string msg) {
  throw Failure{k, std::move(msg)};
}

constexpr std::size_t kStepLimit = 200000;

bool is_var(const Type &t) { return t->tag == TypeTag::Var; }

bool record_based_chain(const Type &t) {
  return is_chain(t) && base_of(t)->tag == TypeTag::Record;
}

class Solver {
 public:
  Solver(const KindAssignment &K, const EquationSet &E, FreshSupply *fresh)
      : K_(K), fresh_(fresh) {
    for (const auto &e : E) eqs_.push_back(e);
    if (!fresh_) {
      std::uint64_t top = max_var_id(K);
      for (const auto &e : E) {
        top = std::max({top, max_var_id(e.lhs), max_var_id(e.rhs)});
      }
      own_fresh_ = FreshSupply(top + 1);
      fresh_ = &own_fresh_;
    }
  }

  UnifyResult run() {
    std::size_t steps = 0;
    while (!eqs_.empty()) {
      if (++steps > kStepLimit) {
        throw std::runtime_error("unify: step limit exceeded");
      }
      Equation e = eqs_.front();
      eqs_.pop_front();
      step(e.lhs, e.rhs);
      if (auto v = kind_cycle(K_)) {
        fail(FailureKind::Occurs, "type variable occurs in its own kind");
      }
    }
    return UnifyResult{K_, S_, SK_, trace_};
  }

  const std::vector<std::string> &trace() const { return trace_; }

 private:
  KindAssignment K_;
  Substitution S_;
  KindAssignment SK_;
  std::deque<Equation> eqs_;
  std::vector<std::string> trace_;
  FreshSupply *fresh_;
  FreshSupply own_fresh_;

  Kind kind_of(const TyVar &v) const {
    auto it = K_.find(v);
    return it == K_.end() ? Kind::U() : it->second;
  }

  bool universal(const Type &t) const {
    return is_var(t) && kind_of(t->var).universal;
  }

  // Chain bases must range over records; a universal base is tightened to
  // the empty record kind.
  Kind base_kind(const TyVar &v) {
    Kind k = kind_of(v);
    if (k.universal) {
      k = Kind::record();
      K_[v] = k;
    }
    return k;
  }

  void push(Type a, Type b) { eqs_.push_back(Equation{std::move(a), std::move(b)}); }

  void bind(const TyVar &v, const Type &t) {
    SK_[v] = kind_of(v);
    K_.erase(v);
    Substitution one{{v, t}};
    try {
      for (auto &e : eqs_) {
        e.lhs = substitute(one, e.lhs);
        e.rhs = substitute(one, e.rhs);
      }
      K_ = substitute(one, K_);
      S_ = substitute(one, S_);
      SK_ = substitute(one, SK_);
    } catch (const std::invalid_argument &) {
      fail(FailureKind::KindClash,
           "a non-extensible type would become the base of a field operation");
    }
    S_[v] = t;
  }

  void merge_fields(FieldMap &into, const FieldMap &from) {
    for (const auto &[l, t] : from) {
      auto [it, fresh] = into.emplace(l, t);
      if (!fresh) push(it->second, t);
    }
  }

  // Combines two record kinds, emitting equations for shared labels.
  Kind merge(const Kind &a, const Kind &b) {
    for (const auto &[l, _] : a.lefts) {
      if (b.rights.count(l)) {
        fail(FailureKind::KindClash, "label '" + l + "' required both present and absent");
      }
    }
    for (const auto &[l, _] : a.rights) {
      if (b.lefts.count(l)) {
        fail(FailureKind::KindClash, "label '" + l + "' required both present and absent");
      }
    }
    Kind out = a;
    merge_fields(out.lefts, b.lefts);
    merge_fields(out.rights, b.rights);
    return out;
  }

  // What a base must satisfy so that `base ops` has kind k and is itself
  // well kinded. `ops` carries each label at most once.
  Kind pull_back(const Kind &k, const std::vector<FieldOp> &ops) {
    std::map<Label, const FieldOp *> by_label;
    for (const auto &op : ops) by_label[op.label] = &op;
    Kind need = Kind::record();
    for (const auto &op : ops) {
      (op.extend ? need.rights : need.lefts)[op.label] = op.type;
    }
    if (k.universal) return need;
    for (const auto &[l, t] : k.lefts) {
      auto it = by_label.find(l);
      if (it == by_label.end()) {
        merge_fields(need.lefts, FieldMap{{l, t}});
      } else if (it->second->extend) {
        push(t, it->second->type);
      } else {
        fail(FailureKind::KindClash, "label '" + l + "' required present but removed");
      }
    }
    for (const auto &[l, t] : k.rights) {
      auto it = by_label.find(l);
      if (it == by_label.end()) {
        merge_fields(need.rights, FieldMap{{l, t}});
      } else if (!it->second->extend) {
        push(t, it->second->type);
      } else {
        fail(FailureKind::KindClash, "label '" + l + "' required absent but added");
      }
    }
    return need;
  }

  void occurs_fail(const TyVar &v) {
    std::string name = v.name.empty() ? "t" + std::to_string(v.id) : v.name;
    fail(FailureKind::Occurs,
         "type variable '" + name + " occurs in the type it is unified with");
  }

  void step(const Type &lhs, const Type &rhs) {
    if (equiv(lhs, rhs)) {
      trace_.push_back("i");
      return;
    }
    Type a = record_based_chain(lhs) ? normalize(lhs) : lhs;
    Type b = record_based_chain(rhs) ? normalize(rhs) : rhs;
    if (record_based_chain(a) || record_based_chain(b)) {
      fail(FailureKind::KindClash, "field operation unsupported by its record");
    }
    if (a->tag == TypeTag::Record && b->tag == TypeTag::Record) {
      rule_v(a, b);
    } else if (a->tag == TypeTag::Arrow && b->tag == TypeTag::Arrow) {
      trace_.push_back("vi");
      push(a->left, b->left);
      push(a->right, b->right);
    } else if (universal(a) || universal(b)) {
      rule_ii(a, b);
    } else if (is_var(a) && is_var(b)) {
      rule_iii(a->var, b->var);
    } else if (is_var(a) && b->tag == TypeTag::Record) {
      rule_iv(a->var, b);
    } else if (is_var(b) && a->tag == TypeTag::Record) {
      rule_iv(b->var, a);
    } else if (is_var(a) && is_chain(b)) {
      rule_vii(a->var, b);
    } else if (is_var(b) && is_chain(a)) {
      rule_vii(b->var, a);
    } else if (is_chain(a) && is_chain(b)) {
      chain_chain(a, b);
    } else if (is_chain(a) && b->tag == TypeTag::Record) {
      rule_x(a, b);
    } else if (is_chain(b) && a->tag == TypeTag::Record) {
      rule_x(b, a);
    } else if (is_var(a) || is_var(b)) {
      fail(FailureKind::KindClash, "record-kinded variable against a non-record type");
    } else {
      fail(FailureKind::ConstructorClash, "type constructors differ");
    }
  }

  void rule_v(const Type &a, const Type &b) {
    if (a->fields.size() != b->fields.size()) {
      fail(FailureKind::ConstructorClash, "record types with different labels");
    }
    for (auto ia = a->fields.begin(), ib = b->fields.begin();
         ia != a->fields.end(); ++ia, ++ib) {
      if (ia->first != ib->first) {
        fail(FailureKind::ConstructorClash, "record types with different labels");
      }
    }
    trace_.push_back("v");
    for (const auto &[l, t] : a->fields) push(t, b->fields.at(l));
  }

  void rule_ii(const Type &a, const Type &b) {
    TyVar v;
    Type t;
    if (universal(a) && universal(b)) {
      // Keep the older variable.
      bool a_newer = a->var.id > b->var.id;
      v = a_newer ? a->var : b->var;
      t = a_newer ? b : a;
    } else if (universal(a)) {
      v = a->var;
      t = b;
    } else {
      v = b->var;
      t = a;
    }
    if (ftv(t).count(v)) {
      t = normalize(t);
      if (ftv(t).count(v)) occurs_fail(v);
    }
    trace_.push_back("ii");
    bind(v, t);
  }

  void rule_iii(const TyVar &p, const TyVar &q) {
    const TyVar &gone = p.id > q.id ? p : q;
    const TyVar &kept = p.id > q.id ? q : p;
    Kind merged = merge(kind_of(kept), kind_of(gone));
    trace_.push_back("iii");
    bind(gone, make_var(kept));
    K_[kept] = substitute(Substitution{{gone, make_var(kept)}}, merged);
  }

  void rule_iv(const TyVar &v, const Type &rec) {
    const Kind k = kind_of(v);
    for (const auto &[l, t] : k.lefts) {
      auto it = rec->fields.find(l);
      if (it == rec->fields.end()) {
        fail(FailureKind::KindClash, "record lacks required label '" + l + "'");
      }
    }
    for (const auto &[l, _] : k.rights) {
      if (rec->fields.count(l)) {
        fail(FailureKind::KindClash, "record has forbidden label '" + l + "'");
      }
    }
    if (ftv(rec).count(v)) occurs_fail(v);
    trace_.push_back("iv");
    for (const auto &[l, t] : k.lefts) push(t, rec->fields.at(l));
    bind(v, rec);
  }

  void rule_vii(const TyVar &v, const Type &chain) {
    Type chi = normalize(chain);
    if (!is_chain(chi)) {
      eqs_.push_front(Equation{make_var(v), chi});
      return;
    }
    if (ftv(chi).count(v)) occurs_fail(v);
    Chain c = decompose(chi);
    const TyVar beta = c.base->var;
    Kind need = pull_back(kind_of(v), c.ops);
    Kind merged = merge(base_kind(beta), need);
    trace_.push_back("vii");
    bind(v, chi);
    K_[beta] = substitute(Substitution{{v, chi}}, merged);
  }

  static std::map<Label, std::size_t> last_ops(const Chain &c) {
    std::map<Label, std::size_t> out;
    for (std::size_t i = 0; i < c.ops.size(); ++i) out[c.ops[i].label] = i;
    return out;
  }

  void chain_chain(const Type &a, const Type &b) {
    Chain ca = decompose(a);
    Chain cb = decompose(b);
    auto la = last_ops(ca);
    auto lb = last_ops(cb);
    for (const auto &[l, i] : la) {
      auto j = lb.find(l);
      if (j != lb.end() && ca.ops[i].extend != cb.ops[j->second].extend) {
        fail(FailureKind::KindClash,
             "label '" + l + "' added on one side and removed on the other");
      }
    }
    for (std::size_t k = ca.ops.size(); k-- > 0;) {
      const Label &l = ca.ops[k].label;
      if (la.at(l) != k) continue;
      auto j = lb.find(l);
      if (j == lb.end()) continue;
      trace_.push_back("viii");
      Type ta = ca.ops[k].type;
      Type tb = cb.ops[j->second].type;
      ca.ops.erase(ca.ops.begin() + static_cast<std::ptrdiff_t>(k));
      cb.ops.erase(cb.ops.begin() + static_cast<std::ptrdiff_t>(j->second));
      push(ta, tb);
      push(rebuild(ca), rebuild(cb));
      return;
    }
    Type na = normalize(a);
    Type nb = normalize(b);
    if (!is_chain(na) || !is_chain(nb)) {
      eqs_.push_front(Equation{na, nb});
      return;
    }
    rule_ix(na, nb);
  }

  void rule_ix(const Type &a, const Type &b) {
    Chain ca = decompose(a);
    Chain cb = decompose(b);
    const TyVar alpha = ca.base->var;
    const TyVar beta = cb.base->var;
    if (alpha == beta) {
      fail(FailureKind::KindClash,
           "the same base is given different field operations");
    }
    if (ftv(b).count(alpha)) occurs_fail(alpha);
    if (ftv(a).count(beta)) occurs_fail(beta);
    const Kind ka = base_kind(alpha);
    const Kind kb = base_kind(beta);
    // alpha := gamma (ops of b), beta := gamma (ops of a).
    Kind need = merge(pull_back(ka, cb.ops), pull_back(kb, ca.ops));
    TyVar gamma = fresh_->fresh();
    Chain ga{make_var(gamma), cb.ops};
    Chain gb{make_var(gamma), ca.ops};
    trace_.push_back("ix");
    K_[gamma] = Kind::U();
    bind(alpha, rebuild(ga));
    Type beta_img = substitute(Substitution{{alpha, S_.at(alpha)}}, rebuild(gb));
    bind(beta, beta_img);
    K_[gamma] = substitute(S_, need);
  }

  void rule_x(const Type &chain, const Type &rec) {
    Type chi = normalize(chain);
    if (!is_chain(chi)) {
      eqs_.push_front(Equation{chi, rec});
      return;
    }
    Chain c = decompose(chi);
    FieldMap base = rec->fields;
    std::vector<Equation> fields;
    for (const auto &op : c.ops) {
      auto it = base.find(op.label);
      if (op.extend) {
        if (it == base.end()) {
          fail(FailureKind::KindClash, "record lacks added label '" + op.label + "'");
        }
        fields.push_back(Equation{op.type, it->second});
        base.erase(it);
      } else {
        if (it != base.end()) {
          fail(FailureKind::KindClash, "record has removed label '" + op.label + "'");
        }
        base.emplace(op.label, op.type);
      }
    }
    trace_.push_back("x");
    for (auto &e : fields) push(e.lhs, e.rhs);
    push(c.base, make_record(std::move(base)));
  }
};

}  // namespace

UnifyOutcome unify(const KindAssignment &K, const EquationSet &E,
                   FreshSupply *fresh) {
  Solver solver(K, E, fresh);
  UnifyOutcome out;
  try {
    out.result = solver.run();
    out.trace = out.result->trace;
  } catch (const Failure &f) {
    out.failure = UnifyFailure{f.kind, f.message};
    out.trace = solver.trace();
  }
  return out;
}

namespace {

// Inverse of `v op1 ... opn` read as an equation solved for v.
Type invert_chain(const TyVar &rigid, const Chain &c) {
  Chain inv;
  inv.base = make_var(rigid);
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
    inv.ops.push_back(FieldOp{!it->extend, it->label, it->type});
  }
  return rebuild(inv);
}

Type ground_of(const Kind &k) {
  if (k.universal) return int_type();
  return make_record(k.lefts);
}

}  // namespace

std::optional<Substitution> match_rigid(const KindAssignment &K,
                                        const EquationSet &E,
                                        const VarSet &rigid) {
  FreshSupply fresh(max_var_id(K) + 1);
  for (const auto &e : E) {
    fresh.reserve_above(std::max(max_var_id(e.lhs), max_var_id(e.rhs)));
  }
  UnifyOutcome u = unify(K, E, &fresh);
  if (!u.ok()) return std::nullopt;
  const UnifyResult &m = *u.result;

  // A rigid variable bound to a flexible one (or to a chain over one) is
  // solved for the flexible side instead.
  Substitution undo;
  for (const auto &[v, t] : m.subst) {
    if (!rigid.count(v)) continue;
    Type img = normalize(t);
    if (img->tag == TypeTag::Var && !rigid.count(img->var)) {
      undo[img->var] = make_var(v);
    } else if (is_chain(img) && base_of(img)->tag == TypeTag::Var &&
               !rigid.count(base_of(img)->var)) {
      Chain c = decompose(img);
      undo[c.base->var] = invert_chain(v, c);
    } else {
      return std::nullopt;
    }
  }

  Substitution w;
  try {
    for (const auto &[v, _] : K) {
      if (!rigid.count(v)) w[v] = normalize(substitute(undo, image(m.subst, v)));
    }
    VarSet loose;
    for (const auto &[_, t] : w) {
      for (const TyVar &v : ftv(t)) {
        if (!rigid.count(v)) loose.insert(v);
      }
    }
    KindAssignment loose_kinds;
    std::vector<TyVar> work(loose.begin(), loose.end());
    while (!work.empty()) {
      TyVar v = work.back();
      work.pop_back();
      auto it = m.kinds.find(v);
      Kind k = it == m.kinds.end() ? Kind::U() : substitute(undo, it->second);
      for (const TyVar &x : ftv(k)) {
        if (!rigid.count(x) && loose.insert(x).second) work.push_back(x);
      }
      loose_kinds[v] = std::move(k);
    }
    Substitution ground;
    for (const TyVar &v : dependency_order(loose_kinds, loose)) {
      ground[v] = ground_of(normalize(substitute(ground, loose_kinds.at(v))));
    }
    for (auto &[_, t] : w) t = normalize(substitute(ground, t));
  } catch (const std::invalid_argument &) {
    return std::nullopt;
  }
  return w;
}

}  // namespace extrec
