#include "extrec/eval.hpp"

#include "extrec/normalize.hpp"
#include "extrec/parser.hpp"

namespace extrec {

namespace {

struct RuntimeError {
  std::string message;
};

ValuePtr make(decltype(Value::v) v) {
  return std::make_shared<const Value>(Value{std::move(v)});
}

class Machine {
 public:
  explicit Machine(const EvalLimits &limits) : limits_(limits) {}

  ValuePtr run(const Term &M, const Env &env) {
    if (++steps_ > limits_.max_steps) throw RuntimeError{"step limit exceeded"};
    if (depth_ >= limits_.max_depth) throw RuntimeError{"recursion limit exceeded"};
    ++depth_;
    ValuePtr v = step(M, env);
    --depth_;
    return v;
  }

 private:
  const EvalLimits &limits_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;

  std::map<Label, ValuePtr> record(const Term &M, const Env &env) {
    ValuePtr r = run(M, env);
    if (!r->is_record()) throw RuntimeError{"record operation on a non-record"};
    return r->fields();
  }

  ValuePtr step(const Term &M, const Env &env) {
    switch (M->tag) {
      case TermTag::Var: {
        auto it = env.find(M->name);
        if (it == env.end()) throw RuntimeError{"unbound variable '" + M->name + "'"};
        return it->second;
      }
      case TermTag::Const:
        return std::visit([](const auto &x) { return make(x); }, M->literal.value);
      case TermTag::Abs:
        return make(ClosureValue{M->name, M->first, env});
      case TermTag::App: {
        ValuePtr f = run(M->first, env);
        ValuePtr a = run(M->second, env);
        if (!f->is_closure()) throw RuntimeError{"application of a non-function"};
        const ClosureValue &c = std::get<ClosureValue>(f->v);
        Env inner = c.env;
        inner[c.param] = a;
        return run(c.body, inner);
      }
      case TermTag::Let: {
        ValuePtr b = run(M->first, env);
        Env inner = env;
        inner[M->name] = b;
        return run(M->second, inner);
      }
      case TermTag::Record: {
        std::map<Label, ValuePtr> f;
        for (const auto &[l, sub] : M->fields) f[l] = run(sub, env);
        return make(std::move(f));
      }
      case TermTag::Select: {
        auto f = record(M->first, env);
        auto it = f.find(M->label);
        if (it == f.end()) throw RuntimeError{"no field '" + M->label + "' to select"};
        return it->second;
      }
      case TermTag::Modify: {
        auto f = record(M->first, env);
        ValuePtr v = run(M->second, env);
        auto it = f.find(M->label);
        if (it == f.end()) throw RuntimeError{"no field '" + M->label + "' to modify"};
        it->second = v;
        return make(std::move(f));
      }
      case TermTag::Remove: {
        auto f = record(M->first, env);
        if (!f.erase(M->label)) {
          throw RuntimeError{"no field '" + M->label + "' to remove"};
        }
        return make(std::move(f));
      }
      case TermTag::Extend: {
        auto f = record(M->first, env);
        ValuePtr v = run(M->second, env);
        if (!f.emplace(M->label, v).second) {
          throw RuntimeError{"field '" + M->label + "' already present"};
        }
        return make(std::move(f));
      }
    }
    throw RuntimeError{"unknown term"};
  }
};

}  // namespace

EvalOutcome eval(const Term &M, const Env &env, const EvalLimits &limits) {
  EvalOutcome out;
  try {
    Machine m(limits);
    out.value = m.run(M, env);
  } catch (const RuntimeError &e) {
    out.error = e.message;
  }
  return out;
}

EvalOutcome eval(const Term &M, const EvalLimits &limits) {
  return eval(M, Env{}, limits);
}

std::string show(const Value &v) {
  if (v.is_int()) return std::to_string(std::get<long long>(v.v));
  if (v.is_bool()) return std::get<bool>(v.v) ? "true" : "false";
  if (v.is_string()) return pretty(make_string(std::get<std::string>(v.v)));
  if (v.is_closure()) return "<closure>";
  std::string out = "{";
  for (const auto &[l, f] : v.fields()) {
    if (out.size() > 1) out += ", ";
    out += l + " = " + show(*f);
  }
  return out + "}";
}

bool value_matches(const Value &v, const Type &t) {
  Type n = normalize(t);
  switch (n->tag) {
    case TypeTag::Var:
      return true;
    case TypeTag::Base:
      switch (n->base) {
        case BaseType::Int:
          return v.is_int();
        case BaseType::Bool:
          return v.is_bool();
        case BaseType::String:
          return v.is_string();
      }
      return false;
    case TypeTag::Arrow:
      return v.is_closure();
    case TypeTag::Record: {
      if (!v.is_record() || v.fields().size() != n->fields.size()) return false;
      for (const auto &[l, ft] : n->fields) {
        auto it = v.fields().find(l);
        if (it == v.fields().end() || !value_matches(*it->second, ft)) return false;
      }
      return true;
    }
    case TypeTag::Ext:
    case TypeTag::Contr: {
      if (!v.is_record()) return false;
      // Fields the chain pins down must be there (or gone) with the right shape.
      Chain c = decompose(n);
      for (const auto &op : c.ops) {
        auto it = v.fields().find(op.label);
        if (op.extend) {
          if (it == v.fields().end() || !value_matches(*it->second, op.type)) {
            return false;
          }
        } else if (it != v.fields().end()) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace extrec
