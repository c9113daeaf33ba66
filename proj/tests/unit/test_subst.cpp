#include <gtest/gtest.h>

#include <algorithm>

#include "../support.hpp"
#include "extrec/gen.hpp"
#include "extrec/kinding.hpp"
#include "extrec/subst.hpp"

using namespace extrec;
using testing_support::tv;
using testing_support::var;

TEST(Subst, AppliesThroughChainsAndKinds) {
  Substitution s{{var(1), make_record({{"k", int_type()}})}, {var(2), bool_type()}};
  Type t = make_ext(tv(1), "l", tv(2));
  EXPECT_TRUE(equiv(substitute(s, t),
                    make_record({{"k", int_type()}, {"l", bool_type()}})));
  Kind k = Kind::record({{"l", tv(2)}}, {});
  EXPECT_TRUE(equiv(substitute(s, k), Kind::record({{"l", bool_type()}}, {})));
}

TEST(Subst, NonExtensibleBaseThrows) {
  Substitution s{{var(1), int_type()}};
  EXPECT_THROW(substitute(s, make_ext(tv(1), "l", int_type())), std::invalid_argument);
}

TEST(Subst, AvoidsCaptureUnderQuantifiers) {
  PolyType p({{var(1), Kind::U()}}, make_arrow(tv(1), tv(2)));
  PolyType r = substitute(Substitution{{var(2), tv(1)}}, p);
  ASSERT_EQ(r.quantifiers.size(), 1u);
  EXPECT_NE(r.quantifiers[0].var, var(1));
  EXPECT_TRUE(poly_equiv(r, PolyType({{var(9), Kind::U()}}, make_arrow(tv(9), tv(1)))));
}

TEST(Subst, ComposeAppliesRightFirst) {
  Substitution s1{{var(1), make_arrow(tv(2), tv(2))}};
  Substitution s2{{var(2), int_type()}};
  Substitution c = compose(s2, s1);
  EXPECT_TRUE(equiv(image(c, var(1)), make_arrow(int_type(), int_type())));
  EXPECT_TRUE(equiv(image(c, var(2)), int_type()));
  EXPECT_TRUE(equiv(image(c, var(3)), tv(3)));
}

TEST(SubstProperty, ComposeAgreesWithSequentialApplication) {
  Generator gen(21);
  const std::vector<TyVar> vs{var(1), var(2), var(3)};
  for (int i = 0; i < 500; ++i) {
    Substitution s1 = gen.substitution(vs, vs);
    Substitution s2 = gen.substitution(vs, vs);
    Type t = gen.extensible(vs, 3);
    Type once = substitute(compose(s2, s1), t);
    Type twice = substitute(s2, substitute(s1, t));
    EXPECT_TRUE(equiv(once, twice)) << pretty(t);
  }
}

TEST(Subst, Respects) {
  Environment env = parse_env("'a :: U\n'r :: <<l: 'a || >>\n");
  const TyVar a = var(1), r = var(2);
  // r := {l: Int}, a := Int respects; r := {} does not.
  Substitution good{{a, int_type()}, {r, make_record({{"l", int_type()}})}};
  Substitution bad{{a, int_type()}, {r, make_record({})}};
  EXPECT_TRUE(respects({}, good, env.kinds));
  EXPECT_FALSE(respects({}, bad, env.kinds));
  // The image must carry the substituted field type.
  Substitution clash{{a, int_type()}, {r, make_record({{"l", bool_type()}})}};
  EXPECT_FALSE(respects({}, clash, env.kinds));
}

TEST(Subst, DependencyOrderPutsKindVariablesFirst) {
  KindAssignment K{{var(1), Kind::record({{"l", tv(3)}}, {})},
                   {var(2), Kind::U()},
                   {var(3), Kind::U()}};
  auto order = dependency_order(K, {var(1), var(2), var(3)});
  ASSERT_EQ(order.size(), 3u);
  auto pos = [&](std::uint64_t id) {
    return std::find(order.begin(), order.end(), var(id)) - order.begin();
  };
  EXPECT_LT(pos(3), pos(1));
}

TEST(Subst, ClosureGeneralizesOnlyVariablesFreeOfGamma) {
  Environment env = parse_env(
      "'a :: U\n"
      "'b :: U\n"
      "'r :: <<l: 'a || >>\n"
      "x : 'b\n");
  Type t = make_arrow(tv(3), tv(2));
  Closure c = closure(env.kinds, env.gamma, t);
  // r and the a it depends on are generalized; b stays free.
  EXPECT_EQ(c.poly.quantifiers.size(), 2u);
  EXPECT_EQ(c.residual.size(), 1u);
  EXPECT_TRUE(c.residual.count(var(2)));
  EXPECT_EQ(c.poly.quantifiers[0].var, var(1));
}

TEST(Subst, GenericInstance) {
  TypeScope s;
  PolyType id = parse_type("forall 'a :: U. 'a -> 'a", &s);
  EXPECT_TRUE(generic_instance({}, id, parse_type("Int -> Int")));
  EXPECT_TRUE(generic_instance({}, id, parse_type("forall 'b :: <<l: Int || >>. 'b -> 'b")));
  EXPECT_FALSE(generic_instance({}, id, parse_type("Int -> Bool")));

  PolyType sel = parse_type("forall 'c :: U. forall 'r :: <<l: 'c || >>. 'r -> 'c");
  EXPECT_TRUE(generic_instance({}, sel, parse_type("{l: Int, m: Bool} -> Int")));
  EXPECT_FALSE(generic_instance({}, sel, parse_type("{m: Bool} -> Int")));

  auto w = generic_instance_witness({}, sel, parse_type("{l: Int} -> Int"));
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_instance({}, sel, parse_type("{l: Int} -> Int"), *w));
  EXPECT_FALSE(verify_instance({}, sel, parse_type("{l: Int} -> Int"), {}));
}

TEST(Subst, RenameQuantifiers) {
  PolyType p({{var(1), Kind::U()}, {var(2), Kind::record({{"l", tv(1)}}, {})}},
             make_arrow(tv(2), tv(1)));
  VarRenaming r;
  PolyType q = rename_quantifiers(p, r);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(poly_equiv(p, q));
  EXPECT_FALSE(ftv(q.body).count(var(1)));
}
