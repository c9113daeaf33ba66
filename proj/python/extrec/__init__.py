"""Type inference, unification and evaluation for a record calculus with
extensible records.

Terms, types and kinds are passed as source text in the same syntax the
``extrec`` command line tool reads, and results come back as printed text.
"""

from ._extrec import (
    ParseError,
    equiv,
    fuzz,
    has_kind,
    normalize,
    parse_kind,
    parse_term,
    parse_type,
)
from . import _extrec

__all__ = [
    "Closure",
    "InferenceError",
    "ParseError",
    "RuntimeFailure",
    "UnificationError",
    "check",
    "equiv",
    "evaluate",
    "fuzz",
    "has_kind",
    "infer",
    "normalize",
    "parse_kind",
    "parse_term",
    "parse_type",
    "unify",
]


class InferenceError(Exception):
    """A term has no type. ``rule`` names the failing typing rule and
    ``reason`` is one of unbound-variable, occurs, kind-clash,
    constructor-clash or ext-base-occurs."""

    def __init__(self, rule, reason, message, line, column):
        super().__init__(f"type error in {rule} ({reason}) at {line}:{column}: {message}")
        self.rule = rule
        self.reason = reason
        self.line = line
        self.column = column


class UnificationError(Exception):
    def __init__(self, kind, message, trace):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.trace = trace


class RuntimeFailure(Exception):
    pass


class Closure:
    """A function value. Evaluation results hold these in place of code."""

    def __repr__(self):
        return "<closure>"


def infer(term, env="", derivation=False):
    """Principal typing of ``term`` under an environment given as lines of
    ``'a :: KIND`` and ``x : TYPE``."""
    r = _extrec._infer(term, env, derivation)
    if "error" in r:
        e = r["error"]
        raise InferenceError(e["rule"], e["reason"], e["message"], e["line"], e["column"])
    return r


def unify(equations, env=""):
    r = _extrec._unify(equations, env)
    if "error" in r:
        raise UnificationError(r["error"]["kind"], r["error"]["message"], r["trace"])
    return r


def check(term, type, env=""):
    """``(ok, reason)`` for the claim that ``term`` has ``type``."""
    return _extrec._check(term, type, env)


def evaluate(term, max_steps=10_000_000):
    r = _extrec._eval(term, max_steps)
    if "error" in r:
        raise RuntimeFailure(r["error"])
    return r["value"]
