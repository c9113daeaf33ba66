#include <gtest/gtest.h>

#include "../support.hpp"
#include "extrec/gen.hpp"

using namespace extrec;
using testing_support::Alpha;
using testing_support::var;

namespace {

std::string reprint(const char *term) { return pretty(parse_term(term)); }

}  // namespace

TEST(Parser, TermPrecedence) {
  Term t = parse_term("f x y.l");
  ASSERT_EQ(t->tag, TermTag::App);
  EXPECT_EQ(t->second->tag, TermTag::Select);
  EXPECT_EQ(t->first->tag, TermTag::App);

  Term abs = parse_term("\\x. x y");
  ASSERT_EQ(abs->tag, TermTag::Abs);
  EXPECT_EQ(abs->first->tag, TermTag::App);
}

TEST(Parser, TermForms) {
  EXPECT_EQ(reprint("let f = \\x. x in f {l = 1, m = \"a\\n\"}"),
            "let f = \\x. x in f {l = 1, m = \"a\\n\"}");
  EXPECT_EQ(reprint("modify(extend(r, l, -3), l, true)"),
            "modify(extend(r, l, -3), l, true)");
  EXPECT_EQ(reprint("remove((\\x. x) {}, l).m"), "remove((\\x. x) {}, l).m");
  EXPECT_EQ(reprint("(f x).l"), "(f x).l");
}

TEST(Parser, CommentsAndWhitespace) {
  Term t = parse_term("# leading comment\n  x   # trailing\n");
  EXPECT_EQ(t->tag, TermTag::Var);
}

TEST(Parser, SpansPointIntoTheSource) {
  Term t = parse_term("let a = 1 in\n  a.l");
  ASSERT_EQ(t->tag, TermTag::Let);
  EXPECT_EQ(t->second->span.line, 2);
  EXPECT_EQ(t->second->span.column, 3);
}

TEST(Parser, Types) {
  TypeScope s;
  Type t = parse_mono("'a -> 'b -> 'a", &s);
  ASSERT_EQ(t->tag, TypeTag::Arrow);
  EXPECT_EQ(t->right->tag, TypeTag::Arrow);
  EXPECT_EQ(pretty(parse_mono("('a -> 'b) -> 'a")), "('a -> 'b) -> 'a");
  EXPECT_EQ(pretty(parse_mono("('a + {l: Int}) - {m: Bool}")), "'a + {l: Int} - {m: Bool}");
  EXPECT_EQ(pretty(parse_mono("{l: Int, k: {}}")), "{k: {}, l: Int}");
}

TEST(Parser, Kinds) {
  EXPECT_EQ(pretty(parse_kind("U")), "U");
  EXPECT_EQ(pretty(parse_kind("<<||>>")), "<< || >>");
  EXPECT_EQ(pretty(parse_kind("<<l: Int || m: Bool>>")), "<<l: Int || m: Bool>>");
  EXPECT_EQ(pretty(parse_kind("<< || m: Bool>>")), "<< || m: Bool>>");
}

TEST(Parser, ForallBinderDoesNotScopeOverItsKind) {
  PolyType p = parse_type("forall 'a :: <<l: 'a || >>. 'a");
  ASSERT_EQ(p.quantifiers.size(), 1u);
  VarSet inner = ftv(p.quantifiers[0].kind);
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_NE(*inner.begin(), p.quantifiers[0].var);
}

TEST(Parser, SharedScopeKeepsNames) {
  TypeScope s;
  Type a = parse_mono("'x", &s);
  Type b = parse_mono("'y -> 'x", &s);
  EXPECT_TRUE(type_equal(a, b->right));
  EXPECT_EQ(s.next_id(), 3u);
}

TEST(Parser, Environments) {
  Environment env = parse_env(
      "# kinds first\n"
      "'a :: U\n"
      "'r :: <<l: 'a || >>\n"
      "get : forall 'b :: U. 'b -> 'b\n"
      "x : 'r\n");
  EXPECT_EQ(env.kinds.size(), 2u);
  EXPECT_EQ(env.gamma.size(), 2u);
  EXPECT_THROW(parse_env("'a :: U\n'a :: U\n"), ParseError);
  EXPECT_THROW(parse_env("x : Int\nx : Bool\n"), ParseError);
}

TEST(Parser, SubstitutionsAndEquations) {
  TypeScope s;
  Substitution sub = parse_substitution("'a := Int\n'b := 'a -> 'a\n", &s);
  EXPECT_EQ(sub.size(), 2u);
  EquationSet eqs = parse_equations("'a = Int; 'b = {l: 'a}\n'c = 'b", &s);
  EXPECT_EQ(eqs.size(), 3u);
  EXPECT_THROW(parse_substitution("'a := Int\n'a := Bool\n"), ParseError);
}

TEST(Parser, ErrorsHaveLocationAndExpectations) {
  try {
    parse_term("let x = in x");
    FAIL() << "no error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.span.line, 1);
    EXPECT_EQ(e.span.column, 9);
    EXPECT_EQ(std::string(e.what()).rfind("1:9: expected", 0), 0u) << e.what();
    EXPECT_FALSE(e.expected.empty());
  }
  EXPECT_THROW(parse_term("{l = 1, l = 2}"), ParseError);
  EXPECT_THROW(parse_term("\"open"), ParseError);
  EXPECT_THROW(parse_term("x $"), ParseError);
  EXPECT_THROW(parse_mono("Int + {l: Int}"), ParseError);
  EXPECT_THROW(parse_mono("forall 'a :: U. 'a"), ParseError);
  EXPECT_THROW(parse_kind("<<l: Int>>"), ParseError);
}

TEST(Parser, NamerSequence) {
  Namer n;
  EXPECT_EQ(n(var(10)), "a");
  EXPECT_EQ(n(var(3)), "b");
  EXPECT_EQ(n(var(10)), "a");
  for (std::uint64_t i = 0; i < 24; ++i) n(var(100 + i));
  EXPECT_EQ(n(var(500)), "a1");
}

TEST(Parser, PrettyAssignments) {
  Environment env = parse_env("'a :: U\n'r :: <<l: 'a || >>\n");
  EXPECT_EQ(pretty(env.kinds), "'a :: U\n'b :: <<l: 'a || >>");
  Substitution s{{var(1), int_type()}};
  EXPECT_EQ(pretty(s), "'a := Int");
}

TEST(ParserProperty, TypesRoundTripUpToRenaming) {
  Generator gen(61);
  const std::vector<TyVar> vs{var(1), var(2)};
  for (int i = 0; i < 1000; ++i) {
    Type t = gen.type(vs, 4);
    std::string text = pretty(t);
    Type back = parse_mono(text);
    EXPECT_TRUE(Alpha{}.type(t, back)) << text;
  }
}
