"""Simple algebraic extensions Q[a]/(m(a)) and their elements."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .poly import UniPoly, format_poly, _coerce


class NumberField:
    """The field Q[a]/(m) for a monic irreducible ``m`` with rational coefficients.

    Also used for residue fields Q[u]/(p) at finite places, hence ``check``:
    callers that already know ``m`` is irreducible may skip the test.
    """

    def __init__(self, modulus, name="a", check=True):
        if not isinstance(modulus, UniPoly):
            modulus = UniPoly(modulus, name)
        if modulus.degree < 1:
            raise ValueError("defining polynomial must have positive degree")
        for c in modulus.coeffs:
            if not isinstance(c, Fraction):
                raise TypeError("defining polynomial must have rational coefficients")
        self.modulus = modulus.monic().with_var(name)
        self.name = name
        self.degree = self.modulus.degree
        if check:
            from .factor import is_irreducible
            if not is_irreducible(self.modulus):
                raise ValueError(f"{self.modulus} is reducible over Q")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus.coeffs))

    def __repr__(self):
        return f"NumberField({self.modulus})"

    def __call__(self, value):
        """Embed a rational, a coefficient list, or a polynomial in the generator."""
        if isinstance(value, NFElement):
            if value.field != self:
                raise ValueError("element belongs to a different number field")
            return value
        if isinstance(value, UniPoly):
            return NFElement.from_poly(self, value)
        if isinstance(value, (list, tuple)):
            return NFElement.from_poly(self, UniPoly(value, self.name))
        return NFElement(self, (_coerce(value),))

    @property
    def gen(self):
        return self([0, 1])

    def zero(self):
        return self(0)

    def one(self):
        return self(1)


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        d = field.degree
        cs = [_coerce(c) for c in coeffs][:d]
        cs += [Fraction(0)] * (d - len(cs))
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_poly(cls, field, p):
        r = p.with_var(field.name) % field.modulus
        return cls(field, r.coeffs)

    def as_poly(self, var=None):
        return UniPoly(self.coeffs, var or self.field.name)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, [a * other for a in self.coeffs])
        other = self._other(other)
        if other is NotImplemented:
            return other
        return NFElement.from_poly(self.field, self.as_poly() * other.as_poly())

    __rmul__ = __mul__

    def inverse(self):
        return nf_invert(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, [a / other for a in self.coeffs])
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * nf_invert(other)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * nf_invert(self)

    def __pow__(self, n):
        if n < 0:
            return nf_invert(self) ** (-n)
        result = NFElement(self.field, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and self.is_rational()
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __str__(self):
        return format_poly(self.coeffs, self.field.name)

    def __repr__(self):
        return f"NFElement({self} mod {self.field.modulus})"


def nf_invert(x):
    """Inverse in Q[a]/(m) by the extended Euclidean algorithm."""
    if not x:
        raise ZeroDivisionError("inversion of zero in a number field")
    g, s, _ = x.as_poly().xgcd(x.field.modulus)
    if g.degree != 0:
        raise ArithmeticError("element shares a factor with the modulus")
    return NFElement.from_poly(x.field, s)


@lru_cache(maxsize=None)
def field_from_text(text):
    """Build a number field from a polynomial string in ``a`` such as ``a^3-4``."""
    from .parse import parse_poly
    return NumberField(parse_poly(text, var="a"), name="a")
