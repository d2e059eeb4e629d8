from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from k3fib.exactalg import (
    NumberField, ParseError, RatFunc, UniPoly, field_from_text, irreducible_factor,
    is_irreducible, nf_invert, parse_poly, parse_ratfunc, poly_arith, squarefree_factor,
)
from strategies import int_unipolys, nonzero_unipolys, rationals, unipolys

u = UniPoly.gen()


def P(text):
    return parse_poly(text)


# -- examples ---------------------------------------------------------------

def test_divmod_examples():
    assert poly_arith(P("u^2-1"), P("u-1"), "divmod") == (P("u+1"), UniPoly())
    assert poly_arith(P("u^3-4"), P("1"), "mul") == P("u^3-4")
    assert poly_arith(P("27*u^6+4"), P("u^2"), "divmod") == (P("27*u^4"), P("4"))


def test_divmod_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        divmod(P("u+1"), UniPoly())


def test_unknown_operation():
    with pytest.raises(ValueError):
        poly_arith(u, u, "pow")


def test_squarefree_examples():
    assert sorted(squarefree_factor(P("u^10*(u-1)^4")), key=lambda fe: fe[1]) == [(P("u-1"), 4), (u, 10)]
    assert squarefree_factor(P("u^3+1")) == [(P("u^3+1"), 1)]
    assert squarefree_factor(P("5")) == []


def test_irreducible_factor_examples():
    assert irreducible_factor(P("u^3+1")) == [(P("u+1"), 1), (P("u^2-u+1"), 1)]
    assert irreducible_factor(P("u^3-1")) == [(P("u-1"), 1), (P("u^2+u+1"), 1)]
    sextic = irreducible_factor(P("27*u^6+4"))
    assert sum(f.degree * e for f, e in sextic) == 6
    assert sextic == [(P("u^6+4/27"), 1)]


def test_factor_hard_cases():
    # irreducible over Q but split modulo every prime
    assert is_irreducible(P("u^4-10*u^2+1"))
    assert irreducible_factor(P("u^4+4")) == [(P("u^2-2*u+2"), 1), (P("u^2+2*u+2"), 1)]
    # non-monic integer factors with many divisors in their values
    f = P("(u^3+7*u^2+5*u+7)*(43*u^3+166*u^2+116*u+120)")
    assert [g.degree for g, _ in irreducible_factor(f)] == [3, 3]


def test_sextic_irreducible_matches_sympy():
    x = sympy.Symbol("x")
    assert sympy.Poly(27 * x**6 + 4, x, domain="QQ").is_irreducible
    assert is_irreducible(P("27*u^6+4"))


def test_nf_invert_examples():
    K = field_from_text("a^3-4")
    a = K.gen
    assert nf_invert(a) == a * a / 4
    assert nf_invert(K(2)) == K(Fraction(1, 2))
    inv = nf_invert(a + 1)
    assert inv == (a * a - a + 1) / 5
    assert inv * (a + 1) == K.one()


def test_nf_invert_zero():
    K = field_from_text("a^3-4")
    with pytest.raises(ZeroDivisionError):
        nf_invert(K.zero())


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        NumberField(P("u^2-1"))


def test_parse_and_ratfunc_normal_form():
    f = parse_ratfunc("(u^2-1)/(2*u-2)")
    assert f == RatFunc(P("u+1"), UniPoly.const(2))
    assert f.den.lc == 1
    with pytest.raises(ParseError):
        parse_poly("u^^2")
    with pytest.raises(ParseError):
        parse_poly("import os")


def test_at_infinity_substitution():
    f = parse_ratfunc("1/u^2")
    assert f.at_infinity("s") == RatFunc(UniPoly.monomial(1, 2, "s"))


# -- properties -------------------------------------------------------------

@given(unipolys(), unipolys(), unipolys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == UniPoly()
    assert a * 1 == a


@settings(max_examples=200)
@given(unipolys(), nonzero_unipolys())
def test_divmod_round_trip(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(st.lists(st.tuples(int_unipolys(1, 2), st.integers(1, 3)), min_size=1, max_size=3))
def test_squarefree_reconstructs(parts):
    p = UniPoly((1,))
    for f, e in parts:
        p = p * f ** e
    factors = squarefree_factor(p)
    rebuilt = UniPoly((1,))
    for f, e in factors:
        assert f.lc == 1
        assert f.gcd(f.derivative()).degree == 0
        rebuilt = rebuilt * f ** e
    assert rebuilt == p.monic()
    exps = [e for _, e in factors]
    assert len(set(exps)) == len(exps)


def _sympy_factors(p):
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))
    _, facs = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for f, e in facs:
        f = f.monic()
        out.append((tuple(Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())), e))
    return sorted(out)


@settings(max_examples=100)
@given(st.lists(int_unipolys(1, 4), min_size=1, max_size=3))
def test_irreducible_factor_agrees_with_sympy(fs):
    p = UniPoly((1,))
    for f in fs:
        p = p * f
    ours = sorted((f.coeffs, e) for f, e in irreducible_factor(p))
    assert ours == _sympy_factors(p)


@settings(max_examples=100)
@given(st.lists(rationals, min_size=1, max_size=3).filter(any))
def test_nf_invert_round_trip(cs):
    K = field_from_text("a^3-4")
    x = K(list(cs))
    assert x * nf_invert(x) == K.one()


@given(unipolys(3), nonzero_unipolys(3), unipolys(3), nonzero_unipolys(3))
def test_ratfunc_field_axioms(a, b, c, d):
    f, g = RatFunc(a, b), RatFunc(c, d)
    assert f + g == g + f
    assert f * (g + 1) == f * g + f
    if not f.is_zero():
        assert f * f.inverse() == RatFunc(UniPoly((1,)))
    assert f.den.lc == 1
