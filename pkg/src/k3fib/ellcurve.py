"""Weierstrass curves over K(u): invariants, group law, twists, base change,
and conversion of a plane cubic with a rational point to Weierstrass form."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .exactalg.parse import ParseError, parse_ratfunc
from .exactalg.poly import RatFunc, UniPoly


class DegenerateCurveError(ValueError):
    """The Weierstrass discriminant vanishes identically."""


class NotOnCurveError(ValueError):
    pass


def _rf(x, var="u"):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, UniPoly):
        return RatFunc(x)
    return RatFunc(UniPoly.const(x, var))


class Invariants(NamedTuple):
    b2: RatFunc
    b4: RatFunc
    b6: RatFunc
    b8: RatFunc
    c4: RatFunc
    c6: RatFunc
    delta: RatFunc
    j: RatFunc


@dataclass(frozen=True, eq=False)
class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in K(u)."""

    a1: RatFunc
    a2: RatFunc
    a3: RatFunc
    a4: RatFunc
    a6: RatFunc
    _inv: Invariants = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _rf(getattr(self, name)))
        object.__setattr__(self, "_inv", _compute_invariants(self))
        if self._inv.delta.is_zero():
            raise DegenerateCurveError(f"singular Weierstrass equation: {self.literal()}")

    @classmethod
    def short(cls, a2=0, a4=0, a6=0):
        return cls(0, a2, 0, a4, a6)

    @property
    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def invariants(self):
        return self._inv

    @property
    def discriminant(self):
        return self._inv.delta

    @property
    def c4(self):
        return self._inv.c4

    @property
    def c6(self):
        return self._inv.c6

    @property
    def j(self):
        return self._inv.j

    def has_short_shape(self):
        return self.a1.is_zero() and self.a3.is_zero()

    def short_form(self):
        """Complete the square: (x, y) -> (x, y + (a1 x + a3)/2)."""
        if self.has_short_shape():
            return self
        b2, b4, b6 = self._inv.b2, self._inv.b4, self._inv.b6
        return WeierstrassCurve(0, b2 / 4, 0, b4 / 2, b6 / 4)

    def to_short_point(self, P):
        if P.is_zero() or self.has_short_shape():
            return P
        return CurvePoint(P.x, P.y + (self.a1 * P.x + self.a3) / 2)

    def lhs_minus_rhs(self, x, y):
        a1, a2, a3, a4, a6 = self.coeffs
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)

    def contains(self, P):
        if P.is_zero():
            return True
        return self.lhs_minus_rhs(P.x, P.y).is_zero()

    def same_equation(self, other):
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def literal(self):
        """The ``a1;a2;a3;a4;a6`` text form accepted by :func:`parse_curve`."""
        return ";".join(str(c) for c in self.coeffs)

    def __str__(self):
        lhs = "Y^2"
        if not self.a1.is_zero():
            lhs += f" + ({self.a1})*X*Y"
        if not self.a3.is_zero():
            lhs += f" + ({self.a3})*Y"
        rhs = "X^3"
        for c, mono in ((self.a2, "X^2"), (self.a4, "X"), (self.a6, "")):
            if c.is_zero():
                continue
            rhs += f" + ({c})" + (f"*{mono}" if mono else "")
        return f"{lhs} = {rhs}"


def _compute_invariants(E):
    a1, a2, a3, a4, a6 = E.coeffs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2 * b2) * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = c4 ** 3 / delta if not delta.is_zero() else RatFunc(0)
    return Invariants(b2, b4, b6, b8, c4, c6, delta, j)


def invariants(E):
    """(b2, b4, b6, b8, c4, c6, discriminant, j) of ``E``."""
    return E.invariants()


class CurvePoint:
    """The point at infinity (``x is None``) or an affine point (x, y)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError("affine point needs both coordinates")
        self.x = None if x is None else _rf(x)
        self.y = None if y is None else _rf(y)

    @classmethod
    def infinity(cls):
        return cls()

    def is_zero(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash(None) if self.is_zero() else hash((self.x, self.y))

    def __str__(self):
        return "O" if self.is_zero() else f"({self.x}, {self.y})"

    __repr__ = __str__


O = CurvePoint.infinity()


def _require_short(E):
    if not E.has_short_shape():
        raise NotImplementedError("group law is implemented for a1 = a3 = 0 only")


def negate(E, P):
    _require_short(E)
    return P if P.is_zero() else CurvePoint(P.x, -P.y)


def add(E, P, Q):
    """Chord-and-tangent addition on y^2 = x^3 + a2 x^2 + a4 x + a6."""
    _require_short(E)
    for R in (P, Q):
        if not E.contains(R):
            raise NotOnCurveError(f"{R} is not on {E}")
    if P.is_zero():
        return Q
    if Q.is_zero():
        return P
    if P.x == Q.x:
        if (P.y + Q.y).is_zero():
            return O
        lam = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.a2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def subtract(E, P, Q):
    return add(E, P, negate(E, Q))


def multiply(E, P, n):
    """n-fold sum by repeated addition; negative n negates first."""
    if not isinstance(n, int):
        raise TypeError("multiplier must be an int")
    if n < 0:
        return multiply(E, negate(E, P), -n)
    if not E.contains(P):
        raise NotOnCurveError(f"{P} is not on {E}")
    R = O
    for _ in range(n):
        R = add(E, R, P)
    return R


def quadratic_twist(E, d):
    """y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6."""
    _require_short(E)
    d = _rf(d)
    if d.is_zero():
        raise ValueError("twist parameter must be nonzero")
    return WeierstrassCurve(0, d * E.a2, 0, d * d * E.a4, d ** 3 * E.a6)


def base_change(E, phi, scale=1):
    """Substitute u := phi(s) and rescale x = scale^2 X, y = scale^3 Y.

    The new coefficients are a_i(phi) / scale^i.
    """
    phi = _rf(phi)
    if phi.is_constant():
        raise ValueError("base change parameter must be nonconstant")
    w = _rf(scale)
    if w.is_zero():
        raise ValueError("scale must be nonzero")
    new = [c.compose(phi) / w ** i for c, i in zip(E.coeffs, (1, 2, 3, 4, 6))]
    return WeierstrassCurve(*new)


def isomorphic_by_scaling(E, F):
    """Return lambda^6 with F = E under (x, y) -> (lambda^2 x, lambda^3 y), or None.

    Only handles short curves whose nonzero coefficients give a consistent
    ratio; used to compare models that differ by a constant scaling.
    """
    if not (E.has_short_shape() and F.has_short_shape()):
        return None
    ratio = None
    for a, b, i in ((E.a2, F.a2, 2), (E.a4, F.a4, 4), (E.a6, F.a6, 6)):
        if a.is_zero() != b.is_zero():
            return None
        if a.is_zero():
            continue
        r = a / b
        if not r.is_constant():
            return None
        r6 = r.constant_value() ** (6 // i)
        if ratio is None:
            ratio = r6
        elif ratio != r6:
            return None
    return ratio


# -- plane cubics ---------------------------------------------------------

def _monomials3():
    return [(i, j, 3 - i - j) for i in range(3, -1, -1) for j in range(3 - i, -1, -1)]


class PlaneCubic:
    """A ternary cubic form sum c_ijk X^i Y^j Z^k over K(u) with a marked point."""

    def __init__(self, coeffs, point):
        self.coeffs = {m: _rf(c) for m, c in coeffs.items() if not _rf(c).is_zero()}
        for m in self.coeffs:
            if len(m) != 3 or sum(m) != 3:
                raise ValueError(f"bad monomial exponent {m}")
        self.point = tuple(_rf(c) for c in point)
        if all(c.is_zero() for c in self.point):
            raise ValueError("(0:0:0) is not a projective point")
        if not self(*self.point).is_zero():
            raise ValueError("designated point is not on the cubic")

    @classmethod
    def from_affine(cls, coeffs, point):
        """``coeffs`` maps (i, j) to the coefficient of v^i y^j; ``point`` = (v0, y0)."""
        return cls({(i, j, 3 - i - j): c for (i, j), c in coeffs.items()},
                   (point[0], point[1], 1))

    def __call__(self, X, Y, Z):
        acc = RatFunc(0)
        for (i, j, k), c in self.coeffs.items():
            acc = acc + c * X ** i * Y ** j * Z ** k
        return acc


@dataclass
class CubicMap:
    """Data of the birational map from a plane cubic to its Weierstrass model."""

    chart: int                 # projective coordinate set to 1
    order: tuple               # the two affine coordinates (indices), after any swap
    origin: tuple              # affine coordinates of the marked point in the chart
    slope: RatFunc             # tangent slope m0 of the lines q = m p
    flex: bool
    q: Optional[RatFunc]       # square root of the quartic at m0 (non-flex case)
    d1: Optional[RatFunc]      # linear coefficient (flex case)
    a_coeffs: list             # A(m), B(m) as coefficient lists in m
    b_coeffs: list
    quartic: list              # coefficients of the translated quartic in n = m - m0

    def map_point(self, cubic, P):
        """Image of a point P = (X:Y:Z) of the cubic; the marked point goes to O."""
        P = tuple(_rf(c) for c in P)
        if P[self.chart].is_zero():
            raise ValueError("point outside the affine chart")
        aff = [P[i] / P[self.chart] for i in range(3)]
        p = aff[self.order[0]] - self.origin[0]
        q = aff[self.order[1]] - self.origin[1]
        if p.is_zero() and q.is_zero():
            return O
        if p.is_zero():
            raise ValueError("point on the line p = 0 is an exceptional point of the map")
        m = q / p
        A = _poly_eval(self.a_coeffs, m)
        B = _poly_eval(self.b_coeffs, m)
        w = 2 * A * p + B
        n = m - self.slope
        if n.is_zero():
            if self.flex or w == self.q:
                return O
            raise ValueError("third point of the tangent line is an exceptional point of the map")
        if self.flex:
            T = 1 / n
            W = w * T * T
            return CurvePoint(self.d1 * T, self.d1 * W)
        d = self.quartic[1]
        c = self.quartic[2]
        qq = self.q
        x = (2 * qq * (w + qq) + d * n) / (n * n)
        y = (4 * qq * qq * (w + qq) + 2 * qq * (d * n + c * n * n) - d * d * n * n / (2 * qq)) / n ** 3
        return CurvePoint(x, y)


def _poly_eval(coeffs, x):
    acc = RatFunc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_mul(a, b):
    out = [RatFunc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    a = a + [RatFunc(0)] * (n - len(a))
    b = b + [RatFunc(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _poly_shift(coeffs, m0):
    """Coefficients of f(m0 + n) in n."""
    out = [RatFunc(0)]
    for c in reversed(coeffs):
        out = _poly_mul(out, [m0, RatFunc(1)])
        out = _poly_add(out, [c])
    return out


def cubic_to_weierstrass(C):
    """Nagell's reduction of a plane cubic with a rational point.

    The point is moved to the origin of an affine chart, the pencil of lines
    q = m p through it turns the cubic into w^2 = D(m) with D of degree <= 4,
    and the tangent direction supplies a rational point on that quartic which
    is then sent to infinity.  Returns (curve, CubicMap).
    """
    chart = next(i for i in (2, 1, 0) if not C.point[i].is_zero())
    others = [i for i in range(3) if i != chart]
    origin = [C.point[i] / C.point[chart] for i in others]
    # affine coefficients after translating the marked point to the origin
    aff = {}
    for mono, c in C.coeffs.items():
        ep, eq = mono[others[0]], mono[others[1]]
        # expand (p + o0)^ep (q + o1)^eq
        for a in range(ep + 1):
            for b in range(eq + 1):
                coef = c * _binom(ep, a) * _binom(eq, b) * origin[0] ** (ep - a) * origin[1] ** (eq - b)
                aff[(a, b)] = aff.get((a, b), RatFunc(0)) + coef
    if not aff.get((0, 0), RatFunc(0)).is_zero():
        raise ValueError("marked point is not on the cubic")
    order = (others[0], others[1])
    if aff.get((0, 1), RatFunc(0)).is_zero():
        aff = {(b, a): c for (a, b), c in aff.items()}
        order = (others[1], others[0])
        origin = origin[::-1]
    c10 = aff.get((1, 0), RatFunc(0))
    c01 = aff.get((0, 1), RatFunc(0))
    if c01.is_zero():
        raise DegenerateCurveError("the marked point is a singular point of the cubic")

    def homog(deg):
        # G_deg(1, m) as coefficient list in m
        return [aff.get((deg - k, k), RatFunc(0)) for k in range(deg + 1)]

    A, B, Cc = homog(3), homog(2), homog(1)
    D = _poly_add(_poly_mul(B, B), [RatFunc(-4) * x for x in _poly_mul(A, Cc)])
    m0 = -c10 / c01
    Dn = _poly_shift(D, m0) + [RatFunc(0)] * 5
    d0, d1, d2, d3, d4 = Dn[:5]
    w0 = _poly_eval(B, m0)
    if any(not x.is_zero() for x in Dn[5:]):
        raise AssertionError("discriminant quartic has degree > 4")
    if w0.is_zero():
        if d1.is_zero():
            raise DegenerateCurveError("singular cubic: repeated root at the flex direction")
        curve = WeierstrassCurve(0, d2, 0, d3 * d1, d4 * d1 * d1)
        cmap = CubicMap(chart, order, tuple(origin), m0, True, None, d1, A, B, [d0, d1, d2, d3, d4])
    else:
        q = w0
        a1 = d1 / q
        a2 = d2 - d1 * d1 / (4 * q * q)
        a3 = 2 * q * d3
        a4 = -4 * q * q * d4
        curve = WeierstrassCurve(a1, a2, a3, a4, a2 * a4)
        cmap = CubicMap(chart, order, tuple(origin), m0, False, q, None, A, B, [d0, d1, d2, d3, d4])
    return curve, cmap


def _binom(n, k):
    from math import comb
    return comb(n, k)


# -- parsing --------------------------------------------------------------

def parse_curve(text, field=None):
    """Parse ``a1;a2;a3;a4;a6`` (RatFunc components in the caret format)."""
    parts = [s.strip() for s in text.split(";")]
    if len(parts) != 5:
        raise ParseError(f"curve literal needs 5 ';'-separated coefficients, got {len(parts)}")
    return WeierstrassCurve(*(parse_ratfunc(p or "0", field) for p in parts))


def parse_point(text, field=None):
    text = text.strip()
    if text.upper() == "O":
        return O
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"point must look like (X, Y) or O: {text!r}")
    inner = text[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return CurvePoint(parse_ratfunc(inner[:i], field), parse_ratfunc(inner[i + 1:], field))
    raise ParseError(f"point must have two coordinates: {text!r}")
