#include <gtest/gtest.h>

#include "../support.hpp"
#include "extrec/gen.hpp"
#include "extrec/kinding.hpp"
#include "extrec/subst.hpp"
#include "extrec/unify.hpp"

using namespace extrec;
using testing_support::kinds_same;
using testing_support::tv;
using testing_support::var;

namespace {

struct Problem {
  Environment env;
  EquationSet eqs;
};

Problem problem(const char *env, const char *eqs) {
  Problem p{parse_env(env), {}};
  p.eqs = parse_equations(eqs, &p.env.scope);
  return p;
}

UnifyOutcome run(const Problem &p) {
  FreshSupply fresh(p.env.scope.next_id());
  return unify(p.env.kinds, p.eqs, &fresh);
}

// A result must be an idempotent kinded unifier respecting the input kinds.
void expect_unifier(const Problem &p, const UnifyOutcome &u) {
  ASSERT_TRUE(u.ok()) << u.failure->message;
  const UnifyResult &r = *u.result;
  EXPECT_TRUE(satisfies(r.subst, p.eqs));
  EXPECT_TRUE(respects(r.kinds, r.subst, p.env.kinds));
  EXPECT_TRUE(wf_kind_assignment(r.kinds).ok);
  for (const auto &[v, t] : r.subst) {
    EXPECT_FALSE(r.kinds.count(v)) << "solved variable still kinded";
    EXPECT_TRUE(equiv(substitute(r.subst, t), t)) << "not idempotent";
  }
}

}  // namespace

TEST(Unify, ConstructorClash) {
  auto p = problem("", "Int = Bool");
  auto u = run(p);
  ASSERT_FALSE(u.ok());
  EXPECT_EQ(u.failure->kind, FailureKind::ConstructorClash);
}

TEST(Unify, OccursCheck) {
  auto p = problem("'a :: U", "'a = 'a -> Int");
  auto u = run(p);
  ASSERT_FALSE(u.ok());
  EXPECT_EQ(u.failure->kind, FailureKind::Occurs);
}

TEST(Unify, ArrowsDecompose) {
  auto p = problem("'a :: U\n'b :: U", "'a -> Int = Bool -> 'b");
  auto u = run(p);
  expect_unifier(p, u);
  EXPECT_TRUE(equiv(image(u.result->subst, var(1)), bool_type()));
  EXPECT_TRUE(equiv(image(u.result->subst, var(2)), int_type()));
}

TEST(Unify, RecordAgainstKindedVariable) {
  auto ok = problem("'r :: <<l: Int || m: Bool>>", "'r = {l: Int, n: String}");
  expect_unifier(ok, run(ok));

  auto missing = problem("'r :: <<l: Int || >>", "'r = {m: Bool}");
  auto u = run(missing);
  ASSERT_FALSE(u.ok());
  EXPECT_EQ(u.failure->kind, FailureKind::KindClash);

  auto forbidden = problem("'r :: << || m: Bool>>", "'r = {m: Bool}");
  u = run(forbidden);
  ASSERT_FALSE(u.ok());
  EXPECT_EQ(u.failure->kind, FailureKind::KindClash);
}

TEST(Unify, FieldTypesAreUnifiedThroughKinds) {
  auto p = problem("'a :: U\n'r :: <<l: 'a || >>", "'r = {l: Int}");
  auto u = run(p);
  expect_unifier(p, u);
  EXPECT_TRUE(equiv(image(u.result->subst, var(1)), int_type()));
}

TEST(Unify, TwoKindedVariablesMergeKinds) {
  auto p = problem("'r :: <<l: Int || >>\n's :: << || m: Bool>>", "'r = 's");
  auto u = run(p);
  expect_unifier(p, u);
  ASSERT_EQ(u.result->kinds.size(), 1u);
  const Kind &k = u.result->kinds.begin()->second;
  EXPECT_TRUE(equiv(k, parse_kind("<<l: Int || m: Bool>>")));
  EXPECT_EQ(u.result->trace.front(), "iii");
}

TEST(Unify, DifferentBasesIntroduceAFreshRow) {
  auto p = problem("'r :: << || l: Int>>\n's :: << || m: Bool>>",
                   "'r + {l: Int} = 's + {m: Bool}");
  auto u = run(p);
  expect_unifier(p, u);
  EXPECT_EQ(u.result->trace.front(), "ix");
  ASSERT_EQ(u.result->kinds.size(), 1u);
  const auto &[row, k] = *u.result->kinds.begin();
  EXPECT_GT(row.id, 2u);
  EXPECT_TRUE(equiv(k, parse_kind("<< || l: Int, m: Bool>>")));
}

TEST(Unify, SameLabelOnBothSidesUsesRuleViii) {
  auto p = problem("'r :: << || l: 'a>>\n'a :: U\n's :: << || l: Int>>",
                   "'r + {l: 'a} = 's + {l: Int}");
  auto u = run(p);
  expect_unifier(p, u);
  EXPECT_EQ(u.result->trace.front(), "viii");
}

TEST(Unify, AddedAgainstRemovedClashes) {
  auto p = problem("'r :: << || l: Int>>\n's :: <<l: Int || >>",
                   "'r + {l: Int} = 's - {l: Int}");
  auto u = run(p);
  ASSERT_FALSE(u.ok());
  EXPECT_EQ(u.failure->kind, FailureKind::KindClash);
}

TEST(Unify, ChainAgainstRecord) {
  auto p = problem("'r :: << || l: Int>>", "'r + {l: Int} = {l: Int, m: Bool}");
  auto u = run(p);
  expect_unifier(p, u);
  EXPECT_TRUE(equiv(image(u.result->subst, var(1)), parse_mono("{m: Bool}")));
}

TEST(Unify, MatchRigidKeepsRigidVariables) {
  auto p = problem("'a :: U\n'b :: U", "'a -> 'b = Int -> 'a");
  auto m = match_rigid(p.env.kinds, p.eqs, {var(1)});
  EXPECT_FALSE(m.has_value());
  auto q = problem("'a :: U\n'b :: U", "'b -> 'b = 'a -> 'a");
  m = match_rigid(q.env.kinds, q.eqs, {var(1)});
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(equiv(image(*m, var(2)), tv(1)));
  EXPECT_TRUE(equiv(image(*m, var(1)), tv(1)));
}

// Equivalent kinded types always unify, and a fresh variable takes the type.
TEST(UnifyProperty, EquivalentTypesUnify) {
  Generator gen(31);
  for (int i = 0; i < 500; ++i) {
    KindedType kt = gen.kinded_chain();
    Problem p;
    p.env.kinds = kt.kinds;
    p.eqs = {{kt.type, normalize(kt.type)}, {tv(9), kt.type}};
    p.env.kinds[var(9)] = Kind::U();
    UnifyOutcome u = unify(p.env.kinds, p.eqs);
    expect_unifier(p, u);
    if (u.ok()) EXPECT_TRUE(equiv(image(u.result->subst, var(9)), kt.type));
  }
}
