"""Dense univariate polynomials and rational functions over an exact field.

Coefficients may be :class:`fractions.Fraction` or
:class:`~k3fib.exactalg.numfield.NFElement`; anything that supports the field
operations and compares equal to ``0`` works.  Plain ``int`` inputs are
promoted to ``Fraction`` so that division never falls back to floats.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, _RationalABC) and not isinstance(c, Fraction):
        return Fraction(c.numerator, c.denominator)
    return c


class UniPoly:
    """Polynomial stored lowest degree first, with trailing zeros trimmed."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="u"):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -----------------------------------------------------
    @classmethod
    def gen(cls, var="u"):
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var="u"):
        return cls((c,), var)

    @classmethod
    def monomial(cls, c, n, var="u"):
        return cls((0,) * n + (c,), var)

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            if isinstance(other, RatFunc):
                return NotImplemented
            other = UniPoly((other,), self.var)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _wrap(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,), self.var)

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if not isinstance(other, UniPoly):
            other = _coerce(other)
            if other == 0:
                return UniPoly((), self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("UniPoly exponent must be a nonnegative int")
        result = UniPoly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = 1 / other.lc
        if len(rem) - 1 < db:
            return UniPoly((), self.var), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c * inv_lc
            quot[k - db] = q
            for j, cb in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - q * cb
        return UniPoly(quot, self.var), UniPoly(rem[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, (UniPoly, RatFunc)):
            return RatFunc(self) / other
        return self * (1 / _coerce(other))

    def __rtruediv__(self, other):
        return RatFunc(self._wrap(other)) / RatFunc(self)

    # -- calculus / evaluation -------------------------------------------
    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        """Horner evaluation at anything supporting ``+`` and ``*``.

        A constant polynomial returns its bare coefficient, whatever ``x`` is.
        """
        if not self.coeffs:
            return Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def reverse(self, n=None):
        """Coefficients reversed against degree ``n`` (default: own degree)."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return UniPoly(cs[::-1], self.var)

    def with_var(self, var):
        return UniPoly(self.coeffs, var)

    # -- gcd --------------------------------------------------------------
    def gcd(self, other):
        a, b = self, self._wrap(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, t) with s*self + t*other = g, g monic."""
        r0, r1 = self, self._wrap(other)
        s0, s1 = UniPoly((1,), self.var), UniPoly((), self.var)
        t0, t1 = UniPoly((), self.var), UniPoly((1,), self.var)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = 1 / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    # -- display ----------------------------------------------------------
    def __str__(self):
        return format_poly(self.coeffs, self.var)

    def __repr__(self):
        return f"UniPoly({self})"


def _fmt_coeff(c):
    s = str(c)
    if isinstance(c, Fraction):
        return s
    return f"({s})"


def format_poly(coeffs, var="u"):
    """Render in the caret text format, highest degree first."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if isinstance(c, Fraction):
            neg = c < 0
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
        else:
            neg = False
            body = _fmt_coeff(c) + (f"*{mono}" if mono else "")
        if not terms:
            terms.append(("-" if neg else "") + body)
        else:
            terms.append((" - " if neg else " + ") + body)
    return "".join(terms) if terms else "0"


class RatFunc:
    """Element of K(u) kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, UniPoly):
            num = UniPoly((num,))
        if den is None:
            den = UniPoly((1,), num.var)
        elif not isinstance(den, UniPoly):
            den = UniPoly((den,), num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = UniPoly((1,), num.var)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num // g
                    den = den // g
                lc = den.lc
                if lc != 1:
                    inv = 1 / lc
                    num = num * inv
                    den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def gen(cls, var="u"):
        return cls(UniPoly.gen(var))

    @property
    def var(self):
        return self.num.var

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    def _wrap(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return RatFunc(UniPoly((other,), self.var))

    def __eq__(self, other):
        other = self._wrap(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._wrap(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._wrap(other).inverse()

    def __rtruediv__(self, other):
        return self._wrap(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("RatFunc exponent must be an int")
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True)

    def __call__(self, x):
        """Evaluate at ``x`` (a number, RatFunc, or any field-like object)."""
        return self.num(x) / self.den(x)

    def compose(self, phi):
        """Substitute u := phi, with phi a RatFunc."""
        phi = self._wrap(phi)
        return self._wrap(self.num(phi)) / self._wrap(self.den(phi))

    def at_infinity(self, var="s"):
        """Return f(1/s) as a rational function in ``var``."""
        dn, dd = self.num.degree, self.den.degree
        n = max(dn, dd, 0)
        num = self.num.reverse(n).with_var(var)
        den = self.den.reverse(n).with_var(var)
        return RatFunc(num, den)

    def with_var(self, var):
        return RatFunc(self.num.with_var(var), self.den.with_var(var), _normalized=True)

    def derivative(self):
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den ** 2)

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        n = str(self.num)
        if len(self.num.coeffs) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def poly_arith(a, b, op):
    """Dispatch ``op`` in {'add', 'sub', 'mul', 'divmod'} on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")
