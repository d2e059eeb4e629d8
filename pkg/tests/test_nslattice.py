import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3fib.kodaira import KodairaType
from k3fib.nslattice import (
    CURVES, FUNC_NAMES, GRAM, DivisorClass, FiberMismatch, canonical_name, find_corrections,
    gram_rank, intersect, lattice_types, load_divisors, numerically_trivial, parse_terms,
    recognize_fiber,
)

C = DivisorClass.curve
DIVS = load_divisors()


def test_intersection_examples():
    assert intersect(C("F1"), C("E'{1,2}")) == 1
    assert intersect(C("F1"), C("F1")) == -2
    assert intersect(C("F1"), C("G2")) == 0


def test_gram_shape():
    assert GRAM.shape == (24, 24)
    assert (GRAM == GRAM.T).all()
    assert (np.diag(GRAM) == -2).all()
    assert gram_rank() == 20


def test_names():
    assert canonical_name("E13") == "E{1,3}"
    assert canonical_name("E'13") == "E'{1,3}"
    with pytest.raises(ValueError):
        canonical_name("H1")
    assert parse_terms("3*G3 + 2*E{1,3} - F1") == [(3, "G3"), (2, "E{1,3}"), (-1, "F1")]


@pytest.mark.parametrize("name", FUNC_NAMES)
def test_function_divisors_trivial(name):
    assert numerically_trivial(DIVS[name].divisor)


def test_single_curve_not_trivial():
    assert not numerically_trivial(C("F1"))


def test_fiber_types_of_function_divisors():
    iv = KodairaType.parse("IV*")
    for name in ("y1-1", "y1+1", "y2-1", "y2+1"):
        assert lattice_types(DIVS[name]) == (iv, iv)
    assert lattice_types(DIVS["t"]) == (KodairaType.parse("I12"), KodairaType.parse("I3*"))


def test_div1_is_two_ii_star():
    d = DIVS["div1"]
    assert numerically_trivial(d.divisor)
    assert lattice_types(d) == (KodairaType.parse("II*"), KodairaType.parse("II*"))
    assert [d.zero.coefficient(n) for n in ("E'{3,3}", "E{3,3}", "G3", "E{1,3}", "E'{1,3}", "F1")] == [1, 2, 3, 4, 5, 6]


def test_div4_is_i18():
    assert recognize_fiber(DIVS["div4"].zero) == KodairaType.parse("I18")


def test_div3_polar_part():
    assert recognize_fiber(DIVS["div3"].polar) == KodairaType.parse("I6*")


def test_div3_printed_zero_part_is_not_a_fiber():
    with pytest.raises(FiberMismatch) as info:
        recognize_fiber(DIVS["div3"].zero)
    assert info.value.kind == "disconnected"


def test_div3_unique_correction():
    d = DIVS["div3"]
    fixes = find_corrections(d.zero_terms, d.polar)
    assert len(fixes) == 1
    fix = fixes[0]
    assert fix.kodaira == KodairaType.parse("III*")
    assert fix.edits == ["term 5: 3*E'{1,1} -> 2*E'{1,1}", "term 8: 3*E'{1,2} -> 3*E'{1,3}"]
    assert numerically_trivial(fix.divisor - d.polar)
    # the corrected class is (t) - (y1-1) - (y1+1)
    combo = DIVS["t"].divisor - DIVS["y1-1"].divisor - DIVS["y1+1"].divisor
    assert fix.divisor - d.polar == combo


@pytest.mark.parametrize("text, kind", [
    ("F1 - G1", "negative"),
    ("", "empty"),
    ("F1 + F2", "disconnected"),
    ("F1 + E'{1,1}", "not-orthogonal"),
])
def test_mismatch_kinds(text, kind):
    d = DivisorClass.parse(text) if text else DivisorClass()
    with pytest.raises(FiberMismatch) as info:
        recognize_fiber(d)
    assert info.value.kind == kind


def test_multiplicity_mismatch():
    with pytest.raises(FiberMismatch) as info:
        recognize_fiber(2 * DIVS["div4"].zero)
    assert info.value.kind == "multiplicity"


# -- properties -------------------------------------------------------------

_vectors = st.lists(st.integers(-3, 3), min_size=24, max_size=24).map(lambda v: DivisorClass(tuple(v)))


@given(_vectors, _vectors)
def test_pairing_bilinear_and_kills_principal(a, b):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + b, a + b) == intersect(a, a) + 2 * intersect(a, b) + intersect(b, b)
    for name in FUNC_NAMES:
        assert intersect(a, DIVS[name].divisor) == 0


@given(_vectors)
def test_fibers_of_one_fibration_are_equivalent(a):
    zero, polar = DIVS["t"].zero, DIVS["t"].polar
    assert intersect(a, zero) == intersect(a, polar)
    assert intersect(zero, zero) == 0


@settings(max_examples=20)
@given(st.integers(0, 8), st.sampled_from(CURVES))
def test_single_relabel_is_repaired(k, new):
    d = DIVS["div1"]
    terms = list(d.zero_terms)
    c, old = terms[k]
    if canonical_name(new) == canonical_name(old):
        return
    terms[k] = (c, new)
    fixes = find_corrections(terms, d.polar, max_edits=1)
    assert any(f.divisor == d.zero for f in fixes)
