import pytest

import extrec

EXAMPLE_ENV = """
'a1 :: << || l: 'a2>>
'a2 :: U
x : 'a1
y : 'a2
"""


def test_selector_type():
    r = extrec.infer(r"\x. x.l")
    assert r["poly_type"] == "forall 'a :: U. forall 'b :: <<l: 'a || >>. 'b -> 'a"
    assert r["valid"]


def test_example_environment():
    r = extrec.infer("extend(x, l, y).l", EXAMPLE_ENV, derivation=True)
    assert r["type"] == "'a"
    assert len(r["substitution"]) == 4
    d = r["derivation"]
    assert d["rule"] == "Sel"
    assert d["children"][0]["rule"] == "Ext"
    assert [c["rule"] for c in d["children"][0]["children"]] == ["Var", "Var"]


@pytest.mark.parametrize(
    "term, rule, reason",
    [
        ("extend({l = 1}, l, 2)", "Ext", "kind-clash"),
        ("remove({}, l)", "Contr", "kind-clash"),
        ("{l = 1}.m", "Sel", "kind-clash"),
        (r"\x. x x", "App", "occurs"),
    ],
)
def test_type_errors(term, rule, reason):
    with pytest.raises(extrec.InferenceError) as info:
        extrec.infer(term)
    assert info.value.rule == rule
    assert info.value.reason == reason


def test_unify_example():
    env = "'a :: << || l: 'c>>\n'c :: U\n'b :: <<l: 'c || >>\n"
    r = extrec.unify("('a + {l: 'c}) - {l: 'c} = 'b - {l: 'c}", env)
    assert r["trace"][0] == "viii"
    assert r["substitution"] == {"'c": "'a + {l: 'b}"}
    with pytest.raises(extrec.UnificationError) as info:
        extrec.unify("Int = Bool")
    assert info.value.kind == "constructor-clash"


def test_check():
    ok, _ = extrec.check(r"\x. x.l", "forall 'b :: <<l: Int || >>. 'b -> Int")
    assert ok
    ok, reason = extrec.check(r"\x. x", "Int -> Bool")
    assert not ok and reason


def test_types_and_kinds():
    assert extrec.normalize("('a + {l: Int}) - {l: Int}") == "'a"
    assert extrec.equiv("('a + {l: Int}) - {m: Bool}", "('a - {m: Bool}) + {l: Int}")
    assert extrec.has_kind("{l: Int}", "<<l: Int || m: Bool>>")
    assert not extrec.has_kind("{l: Int}", "<< || l: Int>>")
    assert extrec.parse_kind("<<||>>") == "<< || >>"
    assert extrec.parse_type("forall 'z :: U. 'z") == "forall 'a :: U. 'a"


def test_evaluate():
    assert extrec.evaluate("remove({l = 1, m = true}, l)") == {"m": True}
    assert extrec.evaluate('{s = "x"}.s') == "x"
    assert isinstance(extrec.evaluate(r"\x. x"), extrec.Closure)
    with pytest.raises(extrec.RuntimeFailure):
        extrec.evaluate("{}.l")
    with pytest.raises(extrec.RuntimeFailure):
        extrec.evaluate(r"(\x. x x) (\x. x x)", max_steps=1000)


def test_parse_errors():
    with pytest.raises(extrec.ParseError):
        extrec.parse_term("let")
    with pytest.raises(ValueError):
        extrec.infer("{l = 1, l = 2}")


def test_fuzz():
    r = extrec.fuzz(seed=2, count=200)
    assert r["violations"] == []
    assert r["typed"] > 100
