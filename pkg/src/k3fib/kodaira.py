"""Places of Q(u), valuations, and Tate's algorithm for Kodaira fiber types.

Residue characteristic is 0 throughout, so every model is first brought to
the shape y^2 = x^3 + a2 x^2 + a4 x + a6 by completing the square; all later
coordinate changes are x-translations and weight-(2, 3) scalings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .exactalg.factor import irreducible_factor
from .exactalg.numfield import NumberField
from .exactalg.poly import RatFunc, UniPoly
from .ellcurve import WeierstrassCurve

#: valuation of the zero function
INFINITE_VALUATION = math.inf


# -- places ---------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A finite place (monic irreducible polynomial in u) or the place at infinity."""

    poly: Optional[UniPoly] = None

    @classmethod
    def infinity(cls):
        return cls(None)

    @classmethod
    def finite(cls, p):
        p = p.monic()
        if p.degree < 1:
            raise ValueError("a finite place needs a nonconstant polynomial")
        return cls(p)

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    @property
    def label(self):
        return "inf" if self.poly is None else str(self.poly)

    def sort_key(self):
        return (self.degree, self.is_infinity, self.label)

    def __str__(self):
        return self.label


INFINITY = Place.infinity()


def place_from_text(text):
    from .exactalg.parse import parse_poly
    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return INFINITY
    return Place.finite(parse_poly(text))


def _ord_poly(f, p):
    if f.is_zero():
        return INFINITE_VALUATION
    n = 0
    while True:
        q, r = divmod(f, p)
        if not r.is_zero():
            return n
        f = q
        n += 1


def ord_at(f, v):
    """Valuation of the rational function ``f`` at the place ``v``."""
    if not isinstance(f, RatFunc):
        f = RatFunc(f) if isinstance(f, UniPoly) else RatFunc(UniPoly.const(f))
    if f.is_zero():
        return INFINITE_VALUATION
    if v.is_infinity:
        return f.den.degree - f.num.degree
    p = v.poly.with_var(f.var)
    return _ord_poly(f.num, p) - _ord_poly(f.den, p)


# -- Kodaira types ----------------------------------------------------------

_FIXED = {
    # symbol: (components, euler, component group, root-lattice discriminant)
    "II": (1, 2, (), 1),
    "III": (2, 3, (2,), 2),
    "IV": (3, 4, (3,), 3),
    "IV*": (7, 8, (3,), 3),
    "III*": (8, 9, (2,), 2),
    "II*": (9, 10, (), 1),
}


@dataclass(frozen=True, order=True)
class KodairaType:
    family: str          # "I", "I*", or one of the fixed symbols
    n: int = 0

    def __post_init__(self):
        if self.family not in ("I", "I*") and self.family not in _FIXED:
            raise ValueError(f"unknown Kodaira family {self.family!r}")
        if self.n < 0:
            raise ValueError("index must be nonnegative")

    @classmethod
    def parse(cls, text):
        s = text.strip().replace("_", "")
        if s in _FIXED:
            return cls(s)
        if s.startswith("I") and s.endswith("*") and s[1:-1].isdigit():
            return cls("I*", int(s[1:-1]))
        if s.startswith("I") and s[1:].isdigit():
            return cls("I", int(s[1:]))
        raise ValueError(f"cannot parse Kodaira symbol {text!r}")

    @property
    def symbol(self):
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    def __str__(self):
        return self.symbol

    @property
    def components(self):
        if self.family == "I":
            return max(self.n, 1)
        if self.family == "I*":
            return self.n + 5
        return _FIXED[self.family][0]

    @property
    def euler(self):
        if self.family == "I":
            return self.n
        if self.family == "I*":
            return self.n + 6
        return _FIXED[self.family][1]

    @property
    def component_group(self):
        """Cyclic orders of the (geometric) component group."""
        if self.family == "I":
            return (self.n,) if self.n > 1 else ()
        if self.family == "I*":
            return (4,) if self.n % 2 else (2, 2)
        return _FIXED[self.family][2]

    @property
    def discriminant(self):
        """|det| of the root lattice spanned by the non-identity components."""
        if self.family == "I":
            return max(self.n, 1)
        if self.family == "I*":
            return 4
        return _FIXED[self.family][3]

    @property
    def is_multiplicative(self):
        return self.family == "I" and self.n > 0


I0 = KodairaType("I", 0)


# -- local models -----------------------------------------------------------

@dataclass
class FiberData:
    place: Place
    kodaira: KodairaType
    ord_delta: int
    ord_c4: float
    ord_c6: float
    # x_short = scale^2 * x_local + shift, y_short = scale^3 * y_local, written in
    # the local variable (u, or s = 1/u at infinity)
    scale: RatFunc = field(repr=False)
    shift: RatFunc = field(repr=False)
    local: tuple = field(repr=False)          # (a2, a4, a6) of the minimal model
    uniformizer: UniPoly = field(repr=False)
    steps: list = field(default_factory=list, repr=False)

    @property
    def degree(self):
        return self.place.degree

    @property
    def components(self):
        return self.kodaira.components

    @property
    def euler(self):
        return self.kodaira.euler

    def local_coordinates(self, x, y):
        """Coordinates of a point of the short model in the minimal local model."""
        if self.place.is_infinity:
            x, y = x.at_infinity("s"), y.at_infinity("s")
        return (x - self.shift) / self.scale ** 2, y / self.scale ** 3

    def ord(self, f):
        if f.is_zero():
            return INFINITE_VALUATION
        return _ord_poly(f.num, self.uniformizer) - _ord_poly(f.den, self.uniformizer)


def short_disc(a2, a4, a6):
    return (-16 * a2 * a2 * (4 * a2 * a6 - a4 * a4) - 64 * a4 ** 3
            - 432 * a6 * a6 + 288 * a2 * a4 * a6)


def short_c4(a2, a4, a6):
    return 16 * a2 * a2 - 48 * a4


def short_c6(a2, a4, a6):
    return -64 * a2 ** 3 + 288 * a2 * a4 - 864 * a6


@lru_cache(maxsize=256)
def _residue_field(coeffs, var):
    return NumberField(UniPoly(coeffs, var), name=var, check=False)


class _Local:
    """Reduction and lifting between the local ring at (pi) and its residue field."""

    def __init__(self, pi):
        self.pi = pi
        self.k = _residue_field(pi.coeffs, pi.var)

    def ord(self, f):
        if f.is_zero():
            return INFINITE_VALUATION
        return _ord_poly(f.num, self.pi) - _ord_poly(f.den, self.pi)

    def red(self, f):
        if f.is_zero():
            return self.k(0)
        if self.ord(f) < 0:
            raise ValueError("cannot reduce a function with a pole")
        return self.k(f.num) / self.k(f.den)

    def lift(self, e):
        return RatFunc(e.as_poly(self.pi.var))


def _poly_over(k, coeffs):
    return UniPoly([k(c) if not hasattr(c, "field") else c for c in coeffs], "T")


def _repeated_root(k, coeffs):
    """A root of multiplicity >= 2 of a monic polynomial over the residue field."""
    f = _poly_over(k, coeffs)
    g = f.gcd(f.derivative())
    if g.degree < 1:
        return None, 1
    # f is a cubic or quadratic; g is (T - r) or (T - r)^2
    if g.degree == 1:
        return -g[0] / g[1], 2
    return -f[f.degree - 1] / (f.degree * f.lc), 3


def _tate(a2, a4, a6, pi):
    loc = _Local(pi)
    v = loc.ord
    steps = []
    scale = RatFunc(UniPoly.const(1, pi.var))
    shift = RatFunc(UniPoly((), pi.var))
    state = {"a2": a2, "a4": a4, "a6": a6, "scale": scale, "shift": shift}

    def translate(s):
        a2_, a4_, a6_ = state["a2"], state["a4"], state["a6"]
        state["a6"] = a6_ + s * a4_ + s * s * a2_ + s ** 3
        state["a4"] = a4_ + 2 * s * a2_ + 3 * s * s
        state["a2"] = a2_ + 3 * s
        state["shift"] = state["shift"] + state["scale"] ** 2 * s
        steps.append(("translate", s))

    def rescale(e):
        # x_old = pi^(2e) x_new: a_i -> a_i / pi^(i e)
        p = RatFunc(pi) ** e
        state["a2"] = state["a2"] / p ** 2
        state["a4"] = state["a4"] / p ** 4
        state["a6"] = state["a6"] / p ** 6
        state["scale"] = state["scale"] * p
        steps.append(("scale", e))

    need = 0
    for key, w in (("a2", 2), ("a4", 4), ("a6", 6)):
        val = v(state[key])
        if val < 0:
            need = max(need, -(-(-val) // w))
    if need:
        rescale(-need)

    def result(kod):
        A2, A4, A6 = state["a2"], state["a4"], state["a6"]
        return (kod, v(short_disc(A2, A4, A6)), v(short_c4(A2, A4, A6)),
                v(short_c6(A2, A4, A6)), state["scale"], state["shift"], (A2, A4, A6), steps)

    P = RatFunc(pi)
    while True:
        A2, A4, A6 = state["a2"], state["a4"], state["a6"]
        n = v(short_disc(A2, A4, A6))
        if n == 0:
            return result(I0)
        k = loc.k
        x0, _ = _repeated_root(k, [loc.red(A6), loc.red(A4), loc.red(A2), 1])
        if x0 is None:
            raise AssertionError("discriminant vanishes but reduction is smooth")
        if x0:
            translate(loc.lift(x0))
        A2, A4, A6 = state["a2"], state["a4"], state["a6"]
        if v(A2) == 0:
            return result(KodairaType("I", n))
        if v(A6) < 2:
            return result(KodairaType("II"))
        if v(4 * A2 * A6 - A4 * A4) < 3:
            return result(KodairaType("III"))
        if v(A6) < 3:
            return result(KodairaType("IV"))
        cub = [loc.red(A6 / P ** 3), loc.red(A4 / P ** 2), loc.red(A2 / P), 1]
        root, mult = _repeated_root(k, cub)
        if root is None:
            return result(KodairaType("I*", 0))
        if mult == 2:
            if root:
                translate(P * loc.lift(root))
            steps.append(("star", None))
            m = 2
            while True:
                A2, A4, A6 = state["a2"], state["a4"], state["a6"]
                if v(A6) == 2 * m:
                    return result(KodairaType("I*", 2 * m - 3))
                qa = loc.red(A2 / P)
                qb = loc.red(A4 / P ** (m + 1))
                qc = loc.red(A6 / P ** (2 * m + 1))
                if qb * qb - 4 * qa * qc:
                    return result(KodairaType("I*", 2 * m - 2))
                x1 = -qb / (2 * qa)
                if x1:
                    translate(P ** m * loc.lift(x1))
                m += 1
        if root:
            translate(P * loc.lift(root))
        A2, A4, A6 = state["a2"], state["a4"], state["a6"]
        if v(A6) < 5:
            return result(KodairaType("IV*"))
        if v(A4) < 4:
            return result(KodairaType("III*"))
        if v(A6) < 6:
            return result(KodairaType("II*"))
        rescale(1)


def local_curve(E, v):
    """Short-form coefficients of E written in the local variable of ``v``."""
    S = E.short_form()
    coeffs = (S.a2, S.a4, S.a6)
    if v.is_infinity:
        return tuple(c.at_infinity("s") for c in coeffs), UniPoly.gen("s")
    return coeffs, v.poly.with_var(S.a2.var)


def tate_at(E, v):
    """Kodaira type and minimal local model of ``E`` at the place ``v``."""
    (a2, a4, a6), pi = local_curve(E, v)
    kod, od, oc4, oc6, scale, shift, local, steps = _tate(a2, a4, a6, pi)
    return FiberData(v, kod, od, oc4, oc6, scale, shift, local, pi, steps)


def classify_by_valuations(ord_c4, ord_c6, ord_delta):
    """Kodaira type from the valuations of a minimal model (residue char 0).

    Independent of Tate's algorithm; used as a cross-check.
    """
    if ord_delta == 0:
        return I0
    if ord_c4 == 0:
        return KodairaType("I", ord_delta)
    if ord_delta >= 6 and ord_c4 == 2 and ord_c6 == 3:
        return KodairaType("I*", ord_delta - 6)
    if ord_delta == 6:
        return KodairaType("I*", 0)
    table = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}
    if ord_delta in table:
        return KodairaType(table[ord_delta])
    raise ValueError(f"valuations {(ord_c4, ord_c6, ord_delta)} do not fit a minimal model")


def candidate_places(E):
    """Finite places where E can have bad reduction, plus infinity."""
    S = E.short_form()
    polys = [E.discriminant.num, E.discriminant.den]
    polys += [c.den for c in (S.a2, S.a4, S.a6)]
    seen = {}
    for p in polys:
        if p.degree < 1:
            continue
        for g, _ in irreducible_factor(p):
            seen[g.coeffs] = g
    places = [Place.finite(g) for g in seen.values()]
    places.sort(key=Place.sort_key)
    return places + [INFINITY]


@lru_cache(maxsize=256)
def _configuration(coeffs):
    E = WeierstrassCurve(*coeffs)
    out = [fd for fd in (tate_at(E, v) for v in candidate_places(E)) if fd.kodaira != I0]
    out.sort(key=lambda fd: fd.place.sort_key())
    return tuple(out)


def fiber_configuration(E):
    """FiberData for every singular fiber of E (finite places and infinity).

    Results are cached by the coefficient tuple; treat the FiberData as read-only.
    """
    return list(_configuration(E.coeffs))


def euler_sum(config):
    return sum(fd.euler * fd.degree for fd in config)


def geometric_types(config):
    """Multiset of Kodaira symbols over C: a degree-d place counts d times."""
    out = []
    for fd in config:
        out += [fd.kodaira.symbol] * fd.degree
    return sorted(out)


def configuration_string(config):
    """Compact notation such as ``2II* + IV`` (ordered by Euler number, descending)."""
    counts = {}
    for fd in config:
        counts[fd.kodaira] = counts.get(fd.kodaira, 0) + fd.degree
    parts = []
    for kod in sorted(counts, key=lambda k: (-k.euler, k.symbol)):
        c = counts[kod]
        parts.append(f"{c if c > 1 else ''}{kod.symbol}")
    return " + ".join(parts)
