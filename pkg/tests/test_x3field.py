import pytest
from hypothesis import given, settings

from k3fib.exactalg import parse_ratfunc
from k3fib.x3field import (
    RELATION, MPoly, X3Element, parse_x3, reduce_t, relation_element,
    x3_eval, x3_invert, x3_is_zero, x3_mul,
)
from strategies import nonzero_x3_elements, x3_elements

t = X3Element.t()
y1 = X3Element.y1()
y2 = X3Element.y2()
R = X3Element.from_mpoly(RELATION)


def test_products():
    assert x3_mul(t, t * t) == R
    assert x3_mul(t * t, t * t) == R * t
    assert (1 + t) * (1 - t) == 1 - t * t


def test_inverse_examples():
    assert x3_invert(t) == t * t / R
    assert x3_invert(y1 - 1) * (y1 - 1) == X3Element.const(1)
    inv = x3_invert(1 + t)
    assert (1 + t) * inv == X3Element.const(1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        x3_invert(X3Element.const(0))


def test_zero_tests():
    assert x3_is_zero(relation_element())
    assert not x3_is_zero(y1 - y2)


def test_substitution_residual_vanishes():
    u = y1
    w = u * u - 1
    X = w * t
    # Y = (u^2-1)^2 y2, X = (u^2-1) t on Y^2 = X^3 + (u^2-1)^4 with u = y1
    residual = w ** 4 * y2 * y2 - X ** 3 - w ** 4
    assert x3_is_zero(residual)
    assert not x3_is_zero(w ** 4 * y2 * y2 - X ** 3 * w - w ** 4)
    expected = -(w ** 3) * (t ** 3 - w * (y2 * y2 - 1))
    assert residual == expected


def test_parse_x3():
    assert parse_x3("t^3") == R
    assert parse_x3("(y1-1)/(y1-1)") == X3Element.const(1)
    assert parse_x3("2*y2+1/2") == 2 * y2 + X3Element.const(1) / 2


def test_eval_ratfunc():
    f = parse_ratfunc("(u^2-1)/(u+2)")
    assert x3_eval(f, t) * (t + 2) == t * t - 1


# -- properties -------------------------------------------------------------

@given(x3_elements(), x3_elements(), x3_elements())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100)
@given(nonzero_x3_elements())
def test_inverse_round_trip(a):
    assert a * x3_invert(a) == X3Element.const(1)


@settings(max_examples=100)
@given(nonzero_x3_elements(), nonzero_x3_elements())
def test_division_round_trip(a, b):
    assert (a / b) * b == a


@given(x3_elements())
def test_reduction_idempotent(a):
    once = reduce_t(list(a.nums))
    assert reduce_t(list(once)) == once
    raw = [a.nums[0], a.nums[1], a.nums[2], MPoly(), a.nums[0]]
    first = reduce_t(raw)
    assert reduce_t(list(first)) == first
    assert first[1] == a.nums[1] + a.nums[0] * RELATION


@given(x3_elements())
def test_relation_absorbs(a):
    assert x3_is_zero(a * relation_element())
    assert (a * t) * (t * t) == a * R
