"""Nested-radical expressions: integers, + - * /, parentheses and sqrt(...).

Parsed with :mod:`ast` into an exact sympy expression; nothing is ever
evaluated by ``eval``.
"""

from __future__ import annotations

import ast
import functools
from fractions import Fraction

import sympy as sp
from mpmath import mp, mpf

from ..errors import UnsupportedExpression

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _build(node):
    if isinstance(node, ast.Expression):
        return _build(node.body)
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return sp.Integer(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left, right = _build(node.left), _build(node.right)
        if isinstance(node.op, ast.Div) and right.is_zero:
            raise UnsupportedExpression("division by zero")
        return _BINOPS[type(node.op)](left, right)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _build(node.operand)
        return -inner if isinstance(node.op, ast.USub) else inner
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        arg = _build(node.args[0])
        if arg.is_negative:
            raise UnsupportedExpression("sqrt of a negative number")
        return sp.sqrt(arg)
    raise UnsupportedExpression(f"unsupported syntax: {ast.dump(node)[:60]}")


@functools.lru_cache(maxsize=512)
def parse_expr(text: str) -> sp.Expr:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise UnsupportedExpression(f"cannot parse {text!r}: {exc.msg}") from None
    try:
        return _build(tree)
    except ZeroDivisionError:
        raise UnsupportedExpression(f"division by zero in {text!r}") from None


def _keep_precision(fn):
    # some sympy routines round-trip mp.dps, which nudges mp.prec off its setting
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        prec = mp.prec
        try:
            return fn(*args, **kwargs)
        finally:
            mp.prec = prec

    return wrapper


@_keep_precision
def to_mpf(expr: sp.Expr) -> mpf:
    digits = int(mp.prec * 0.30103) + 15
    return mpf(str(sp.N(expr, digits)))


@_keep_precision
def exact_simplify(expr: sp.Expr) -> sp.Expr:
    # purely symbolic rewriting; nsimplify is avoided because it guesses numerically
    return sp.sqrtdenest(sp.radsimp(sp.expand(expr)))


_X = sp.Symbol("x")


@_keep_precision
def minimal_polynomial(expr: sp.Expr) -> sp.Poly:
    return sp.Poly(sp.minimal_polynomial(expr, _X, domain=sp.QQ), _X)


def as_fraction(expr: sp.Expr):
    """The Fraction equal to ``expr`` when it is provably rational, else None.

    Decided exactly: an algebraic number is rational iff its minimal
    polynomial over Q is linear.
    """
    e = exact_simplify(sp.sympify(expr))
    if e.is_Rational:
        return Fraction(int(e.p), int(e.q))
    if e.free_symbols or not e.is_number:
        return None
    try:
        m = minimal_polynomial(e)
    except (NotImplementedError, sp.polys.polyerrors.PolynomialError):
        return None
    if m.degree() == 1:
        root = -m.all_coeffs()[1] / m.all_coeffs()[0]
        return Fraction(int(root.p), int(root.q))
    return None
