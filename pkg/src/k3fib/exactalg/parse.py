"""Parsing of the caret text format (``-2*u^4+4*u``, ``2*(y2+1)/(y1-1)^2``).

Expressions are parsed with :mod:`ast` and folded over a caller-provided
namespace, so the same grammar serves rational functions in ``u``, elements
of the X3 function field and number-field constants.
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .poly import RatFunc, UniPoly


class ParseError(ValueError):
    pass


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def evaluate(text, names, const=Fraction):
    """Evaluate ``text`` with identifiers looked up in ``names``.

    ``const`` embeds integer literals into the target algebra.  Exponents must
    be integer literals (possibly negative, which means inversion).
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _fold(tree.body, names, const, text)


def _int_literal(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _int_literal(node.operand)
        if v is not None:
            return -v if isinstance(node.op, ast.USub) else v
    return None


def _fold(node, names, const, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError(f"only integer literals are allowed in {text!r}")
        return const(node.value)
    if isinstance(node, ast.Name):
        try:
            return names[node.id]
        except KeyError:
            raise ParseError(f"unknown symbol {node.id!r} in {text!r}") from None
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _fold(node.operand, names, const, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        left = _fold(node.left, names, const, text)
        if isinstance(node.op, ast.Pow):
            n = _int_literal(node.right)
            if n is None:
                raise ParseError(f"exponent must be an integer literal in {text!r}")
            if n < 0:
                return 1 / (left ** (-n))
            return left ** n
        right = _fold(node.right, names, const, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        try:
            return left / right
        except ZeroDivisionError:
            raise ParseError(f"division by zero in {text!r}") from None
    raise ParseError(f"unsupported syntax in {text!r}")


def parse_poly(text, var="u"):
    """Parse a polynomial with rational coefficients in one variable."""
    value = evaluate(text, {var: UniPoly.gen(var)}, const=lambda n: UniPoly.const(n, var))
    if isinstance(value, RatFunc):
        if not value.is_polynomial():
            raise ParseError(f"{text!r} is not a polynomial")
        value = value.num * (1 / value.den.lc)
    if not isinstance(value, UniPoly):
        value = UniPoly.const(value, var)
    return value


def parse_ratfunc(text, field=None, var="u"):
    """Parse an element of K(u); ``field`` supplies the constant ``a`` when given."""
    names = {var: RatFunc.gen(var)}
    if field is not None:
        names[field.name] = RatFunc(UniPoly.const(field.gen, var))
    value = evaluate(text, names, const=lambda n: RatFunc(UniPoly.const(n, var)))
    if not isinstance(value, RatFunc):
        value = RatFunc(UniPoly.const(value, var))
    return value
