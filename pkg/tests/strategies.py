"""Hypothesis strategies shared by the property suites."""
from fractions import Fraction

from hypothesis import strategies as st

from k3fib.exactalg import UniPoly
from k3fib.x3field import MPoly, X3Element

small_int = st.integers(min_value=-9, max_value=9)
rationals = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=5))


def unipolys(max_degree=5, var="u"):
    return st.lists(rationals, max_size=max_degree + 1).map(lambda cs: UniPoly(cs, var))


def nonzero_unipolys(max_degree=5, var="u"):
    return unipolys(max_degree, var).filter(lambda p: not p.is_zero())


def int_unipolys(min_degree=1, max_degree=4, var="u"):
    """Integer-coefficient polynomials of exact degree in the given range."""
    return st.lists(small_int, min_size=min_degree, max_size=max_degree).flatmap(
        lambda cs: st.integers(1, 4).map(lambda lead: UniPoly(cs + [lead], var)))


def mpolys(max_terms=3, max_exp=2):
    key = st.tuples(st.integers(0, max_exp), st.integers(0, max_exp))
    return st.dictionaries(key, small_int, max_size=max_terms).map(MPoly)


def x3_elements():
    return st.tuples(mpolys(), mpolys(), mpolys()).map(X3Element)


def nonzero_x3_elements():
    return x3_elements().filter(lambda a: not a.is_zero())
