// Python bindings. Types, kinds and terms cross the boundary as source text;
// results come back as printed text in plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "extrec/checker.hpp"
#include "extrec/eval.hpp"
#include "extrec/gen.hpp"
#include "extrec/infer.hpp"
#include "extrec/kinding.hpp"
#include "extrec/normalize.hpp"
#include "extrec/parser.hpp"
#include "extrec/subst.hpp"
#include "extrec/unify.hpp"

namespace py = pybind11;
using namespace extrec;

namespace {

Environment env_of(const std::string &text) { return parse_env(text); }

py::dict kinds_dict(const KindAssignment &K, Namer &n) {
  py::dict d;
  for (const auto &[v, k] : K) {
    std::string name = "'" + n(v);
    d[py::str(name)] = pretty(k, n);
  }
  return d;
}

py::dict subst_dict(const Substitution &s, Namer &n) {
  py::dict d;
  for (const auto &[v, t] : s) {
    std::string name = "'" + n(v);
    d[py::str(name)] = pretty(t, n);
  }
  return d;
}

py::dict derivation_dict(const Derivation &d, Namer &n) {
  py::dict out;
  out["rule"] = d.rule;
  out["term"] = pretty(d.term);
  out["type"] = pretty(d.type, n);
  out["side_kind"] = d.side_kind ? py::object(py::str(pretty(*d.side_kind, n)))
                                 : py::object(py::none());
  py::list children;
  for (const auto &c : d.children) children.append(derivation_dict(c, n));
  out["children"] = children;
  return out;
}

py::dict infer_error(const InferError &e) {
  py::dict d;
  d["rule"] = e.rule;
  d["reason"] = infer_failure_name(e.reason);
  d["message"] = e.message;
  d["line"] = e.span.line;
  d["column"] = e.span.column;
  return d;
}

py::dict do_infer(const std::string &term, const std::string &env_text,
                  bool derivation) {
  Environment env = env_of(env_text);
  InferOutcome o = infer(env.kinds, env.gamma, parse_term(term));
  py::dict out;
  if (!o.ok()) {
    out["error"] = infer_error(*o.error);
    return out;
  }
  const InferResult &r = *o.result;
  Closure cl = closure(r.kinds, substitute(r.subst, env.gamma), r.type);
  Namer n;
  std::string poly = pretty(cl.poly, n);
  out["type"] = pretty(r.type, n);
  out["poly_type"] = poly;
  out["kind_assignment"] = kinds_dict(r.kinds, n);
  out["substitution"] = subst_dict(r.subst, n);
  out["valid"] = !validate(r.derivation).has_value();
  if (derivation) out["derivation"] = derivation_dict(r.derivation, n);
  return out;
}

py::dict do_unify(const std::string &equations, const std::string &env_text) {
  Environment env = env_of(env_text);
  EquationSet eqs = parse_equations(equations, &env.scope);
  FreshSupply fresh(env.scope.next_id());
  UnifyOutcome u = unify(env.kinds, eqs, &fresh);
  py::dict out;
  out["trace"] = u.trace;
  if (!u.ok()) {
    py::dict e;
    e["kind"] = failure_kind_name(u.failure->kind);
    e["message"] = u.failure->message;
    out["error"] = e;
    return out;
  }
  Namer n;
  out["kind_assignment"] = kinds_dict(u.result->kinds, n);
  out["substitution"] = subst_dict(u.result->subst, n);
  return out;
}

py::tuple do_check(const std::string &term, const std::string &type,
                   const std::string &env_text) {
  Environment env = env_of(env_text);
  Term M = parse_term(term);
  PolyType s = parse_type(type, &env.scope);
  CheckResult r = check(env.kinds, env.gamma, M, s);
  return py::make_tuple(r.ok, r.reason);
}

py::object to_python(const Value &v) {
  if (v.is_int()) return py::int_(std::get<long long>(v.v));
  if (v.is_bool()) return py::bool_(std::get<bool>(v.v));
  if (v.is_string()) return py::str(std::get<std::string>(v.v));
  if (v.is_closure()) return py::module_::import("extrec").attr("Closure")();
  py::dict d;
  for (const auto &[l, f] : v.fields()) d[py::str(l)] = to_python(*f);
  return d;
}

py::dict do_eval(const std::string &term, std::size_t max_steps) {
  EvalLimits limits;
  limits.max_steps = max_steps;
  EvalOutcome o = eval(parse_term(term), limits);
  py::dict out;
  if (!o.ok()) {
    out["error"] = *o.error;
    return out;
  }
  out["value"] = to_python(*o.value);
  out["shown"] = show(*o.value);
  return out;
}

py::dict do_fuzz(std::uint64_t seed, int count) {
  Generator gen(seed);
  int typed = 0;
  py::list violations;
  for (int i = 0; i < count; ++i) {
    Term M = i % 2 ? gen.term() : gen.typed_term();
    InferOutcome o = infer({}, {}, M);
    if (!o.ok()) continue;
    ++typed;
    std::string problem;
    if (auto err = validate(o.result->derivation)) {
      problem = "derivation rejected at " + err->rule + ": " + err->reason;
    } else {
      EvalOutcome v = eval(M);
      if (!v.ok()) {
        problem = "runtime error: " + *v.error;
      } else if (!value_matches(*v.value, o.result->type)) {
        problem = "value does not match the type";
      }
    }
    if (!problem.empty()) violations.append(py::make_tuple(pretty(M), problem));
  }
  py::dict out;
  out["count"] = count;
  out["typed"] = typed;
  out["violations"] = violations;
  return out;
}

}  // namespace

PYBIND11_MODULE(_extrec, m) {
  m.doc() = "Type inference for a record calculus with extensible records";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("parse_term", [](const std::string &s) { return pretty(parse_term(s)); },
        py::arg("source"));
  m.def("parse_type", [](const std::string &s) { return pretty(parse_type(s)); },
        py::arg("source"));
  m.def("parse_kind", [](const std::string &s) { return pretty(parse_kind(s)); },
        py::arg("source"));
  m.def("normalize", [](const std::string &s) { return pretty(normalize(parse_mono(s))); },
        py::arg("type"));
  m.def(
      "equiv",
      [](const std::string &a, const std::string &b, const std::string &env) {
        Environment e = env_of(env);
        Type ta = parse_mono(a, &e.scope);
        return equiv(ta, parse_mono(b, &e.scope));
      },
      py::arg("a"), py::arg("b"), py::arg("env") = "");
  m.def(
      "has_kind",
      [](const std::string &t, const std::string &k, const std::string &env) {
        Environment e = env_of(env);
        Type ty = parse_mono(t, &e.scope);
        return has_kind(e.kinds, ty, parse_kind(k, &e.scope));
      },
      py::arg("type"), py::arg("kind"), py::arg("env") = "");
  m.def("_infer", &do_infer, py::arg("term"), py::arg("env") = "",
        py::arg("derivation") = false);
  m.def("_unify", &do_unify, py::arg("equations"), py::arg("env") = "");
  m.def("_check", &do_check, py::arg("term"), py::arg("type"), py::arg("env") = "");
  m.def("_eval", &do_eval, py::arg("term"), py::arg("max_steps") = 10'000'000);
  m.def("fuzz", &do_fuzz, py::arg("seed") = 1, py::arg("count") = 100);
}
