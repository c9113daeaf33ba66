// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>

#include "criteria.hpp"

using namespace acceptance;

namespace {

struct Criterion {
  const char *id;
  const char *title;
  std::function<Outcome()> run;
  double budget_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "inference of extend(x,l,y).l and its subterms", inference_example, 1},
      {"AC2", "kinded unification example, rule viii first", unification_example, 1},
      {"AC3", "equal and unequal extensible types", equality_example, 1},
      {"AC4", "kinding judgments for a contracted record", kinding_example, 1},
      {"AC5", "derivation tree accepted, single mutations rejected", derivation_example, 1},
      {"AC6", "inferred derivations validate (1000 terms)", soundness_property, 60},
      {"AC7", "unifiers are most general over a finite universe", mgu_property, 120},
      {"AC8", "rewriting confluence, kind preservation, canonical chains",
       rewriting_properties, 30},
      {"AC9", "ill-typed terms fail with the documented reasons", negative_suite, 1},
      {"AC10", "well-typed closed terms evaluate to matching values",
       evaluation_soundness, 30},
      {"AC11", "parse(pretty(v)) = v for terms, types and kinds", parser_round_trip, 10},
  };

  int failed = 0;
  for (const auto &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    if (o.pass && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %-4s %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                secs, o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
