// extrec: command line front end for the record calculus.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "extrec/checker.hpp"
#include "extrec/eval.hpp"
#include "extrec/gen.hpp"
#include "extrec/infer.hpp"
#include "extrec/normalize.hpp"
#include "extrec/parser.hpp"
#include "extrec/subst.hpp"
#include "extrec/unify.hpp"

using namespace extrec;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Input {
  std::string file;
  std::string expr;
  std::string env;
  bool json = false;
};

struct UsageError {
  std::string message;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string source(const Input &in) {
  if (in.file.empty() == in.expr.empty()) {
    throw UsageError{"give exactly one of FILE or -e"};
  }
  return in.expr.empty() ? slurp(in.file) : in.expr;
}

Environment load_env(const Input &in) {
  Environment env;
  if (!in.env.empty()) parse_env_into(slurp(in.env), env);
  return env;
}

void add_input(CLI::App *cmd, Input &in, const char *what) {
  cmd->add_option("file", in.file, std::string("File holding the ") + what);
  cmd->add_option("-e,--expr", in.expr, std::string("The ") + what + " as text");
}

void print_derivation(const Derivation &d, Namer &n, int indent) {
  std::cout << std::string(indent * 2, ' ') << d.rule << ": " << pretty(d.term)
            << " : " << pretty(d.type, n);
  if (d.side_kind) std::cout << "  [" << pretty(*d.side_kind, n) << "]";
  std::cout << "\n";
  for (const auto &c : d.children) print_derivation(c, n, indent + 1);
}

ordered_json named_kinds(const KindAssignment &K, Namer &n) {
  ordered_json j = ordered_json::object();
  for (const auto &[v, k] : K) {
    std::string name = "'" + n(v);
    j[name] = pretty(k, n);
  }
  return j;
}

ordered_json named_subst(const Substitution &s, Namer &n) {
  ordered_json j = ordered_json::object();
  for (const auto &[v, t] : s) {
    std::string name = "'" + n(v);
    j[name] = pretty(t, n);
  }
  return j;
}

int cmd_parse(const Input &in, bool as_type, bool as_kind) {
  std::string text = source(in);
  if (as_type) {
    std::cout << pretty(parse_type(text)) << "\n";
  } else if (as_kind) {
    std::cout << pretty(parse_kind(text)) << "\n";
  } else {
    std::cout << pretty(parse_term(text)) << "\n";
  }
  return kOk;
}

int cmd_infer(const Input &in, bool derivation) {
  Environment env = load_env(in);
  Term M = parse_term(source(in));
  InferOutcome o = infer(env.kinds, env.gamma, M);
  if (!o.ok()) {
    const InferError &e = *o.error;
    std::cerr << "type error in " << e.rule << " (" << infer_failure_name(e.reason)
              << ") at " << e.span.line << ":" << e.span.column << ": "
              << e.message << "\n";
    return kFail;
  }
  const InferResult &r = *o.result;
  Closure cl = closure(r.kinds, substitute(r.subst, env.gamma), r.type);
  Namer n;
  if (in.json) {
    ordered_json j;
    std::string poly = pretty(cl.poly, n);
    std::string type = pretty(r.type, n);
    j["kind_assignment"] = named_kinds(r.kinds, n);
    j["substitution"] = named_subst(r.subst, n);
    j["type"] = type;
    j["poly_type"] = poly;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << pretty(cl.poly, n) << "\n";
  }
  if (derivation) print_derivation(r.derivation, n, 0);
  return kOk;
}

int cmd_check(const Input &in, const std::string &type) {
  Environment env = load_env(in);
  Term M = parse_term(source(in));
  PolyType s = parse_type(type, &env.scope);
  CheckResult r = check(env.kinds, env.gamma, M, s);
  if (in.json) {
    ordered_json j;
    j["ok"] = r.ok;
    if (!r.ok) j["reason"] = r.reason;
    std::cout << j.dump(2) << "\n";
  } else if (r.ok) {
    std::cout << "OK\n";
  } else {
    std::cout << "FAIL: " << r.reason << "\n";
  }
  return r.ok ? kOk : kFail;
}

int cmd_unify(const Input &in, bool trace) {
  Environment env = load_env(in);
  EquationSet eqs = parse_equations(source(in), &env.scope);
  FreshSupply fresh(env.scope.next_id());
  UnifyOutcome u = unify(env.kinds, eqs, &fresh);
  if (trace) {
    std::cerr << "rules:";
    for (const auto &r : u.trace) std::cerr << " " << r;
    std::cerr << "\n";
  }
  if (!u.ok()) {
    std::cout << "FAIL: " << failure_kind_name(u.failure->kind) << ": "
              << u.failure->message << "\n";
    return kFail;
  }
  Namer n;
  if (in.json) {
    ordered_json j;
    j["kind_assignment"] = named_kinds(u.result->kinds, n);
    j["substitution"] = named_subst(u.result->subst, n);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::string k = pretty(u.result->kinds, n);
  std::string s = pretty(u.result->subst, n);
  if (!k.empty()) std::cout << k << "\n";
  if (!s.empty()) std::cout << s << "\n";
  return kOk;
}

int cmd_normalize(const std::string &type) {
  std::cout << pretty(normalize(parse_mono(type))) << "\n";
  return kOk;
}

int cmd_eval(const Input &in) {
  EvalOutcome o = eval(parse_term(source(in)));
  if (!o.ok()) {
    std::cerr << "runtime error: " << *o.error << "\n";
    return kFail;
  }
  std::cout << show(*o.value) << "\n";
  return kOk;
}

int cmd_fuzz(std::uint64_t seed, int count, bool verbose) {
  Generator gen(seed);
  int typed = 0, violations = 0;
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
        problem = "value " + show(*v.value) + " does not match " +
                  pretty(o.result->type);
      }
    }
    if (!problem.empty()) {
      ++violations;
      std::cout << "violation: " << pretty(M) << "\n  " << problem << "\n";
    } else if (verbose) {
      std::cout << pretty(M) << " : " << pretty(o.result->type) << "\n";
    }
  }
  std::cout << "terms " << count << ", typed " << typed << ", violations "
            << violations << "\n";
  return violations ? kFail : kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Type inference for a record calculus with extensible records"};
  app.require_subcommand(1);

  Input in;
  bool as_type = false, as_kind = false, derivation = false, trace = false;
  bool verbose = false;
  std::string type;
  std::uint64_t seed = 1;
  int count = 100;

  auto *parse = app.add_subcommand("parse", "Parse and pretty-print");
  add_input(parse, in, "term");
  parse->add_flag("--type", as_type, "Parse a type instead of a term");
  parse->add_flag("--kind", as_kind, "Parse a kind instead of a term");

  auto *inf = app.add_subcommand("infer", "Infer the principal type of a term");
  add_input(inf, in, "term");
  inf->add_option("--env", in.env, "Environment file");
  inf->add_flag("--json", in.json, "Machine-readable output");
  inf->add_flag("--derivation", derivation, "Also print the typing derivation");

  auto *chk = app.add_subcommand("check", "Check a claimed typing");
  add_input(chk, in, "term");
  chk->add_option("--env", in.env, "Environment file");
  chk->add_option("-t,--type", type, "Claimed type")->required();
  chk->add_flag("--json", in.json, "Machine-readable output");

  auto *uni = app.add_subcommand("unify", "Unify kinded equations");
  add_input(uni, in, "equations");
  uni->add_option("--env", in.env, "Kind assignment file");
  uni->add_flag("--json", in.json, "Machine-readable output");
  uni->add_flag("--trace", trace, "Print the rules applied to stderr");

  auto *norm = app.add_subcommand("normalize", "Canonical form of a type");
  norm->add_option("-t,--type", type, "Type to normalize")->required();

  auto *ev = app.add_subcommand("eval", "Evaluate a closed term");
  add_input(ev, in, "term");

  auto *fz = app.add_subcommand("fuzz", "Random soundness testing");
  fz->add_option("--seed", seed, "Random seed");
  fz->add_option("--count", count, "Number of terms")->check(CLI::NonNegativeNumber);
  fz->add_flag("-v,--verbose", verbose, "Print every typed term");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(in, as_type, as_kind);
    if (*inf) return cmd_infer(in, derivation);
    if (*chk) return cmd_check(in, type);
    if (*uni) return cmd_unify(in, trace);
    if (*norm) return cmd_normalize(type);
    if (*ev) return cmd_eval(in);
    if (*fz) return cmd_fuzz(seed, count, verbose);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
