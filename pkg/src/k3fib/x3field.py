"""Arithmetic in the function field K(y1, y2)[t] / (t^3 - (y1^2-1)(y2^2-1)).

Elements are stored as ``(p0 + p1*t + p2*t^2) / D`` with ``p0, p1, p2`` sparse
polynomials in (y1, y2) and ``D`` a product of monic "atom" polynomials kept
in factored form.  Fractions are never put in lowest terms; zero testing only
looks at the three numerators, which is exact because ``D`` is nonzero.
"""
from __future__ import annotations

from fractions import Fraction

from .exactalg.numfield import NFElement
from .exactalg.parse import evaluate
from .exactalg.poly import RatFunc, UniPoly

_SCALARS = (int, Fraction, NFElement)


class MPoly:
    """Sparse polynomial in (y1, y2): exponent pair -> coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {k: (Fraction(v) if isinstance(v, int) else v)
                      for k, v in terms.items() if v != 0}
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def var(cls, i):
        return cls({(1, 0) if i == 0 else (0, 1): 1})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return MPoly(out)

    def __neg__(self):
        return MPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return MPoly()
            return MPoly({k: v * other for k, v in self.terms.items()})
        if not self.terms or not other.terms:
            return MPoly()
        out = {}
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                k = (a1 + b1, a2 + b2)
                v = ca * cb
                out[k] = out[k] + v if k in out else v
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading(self):
        """Leading (exponent, coefficient) in lex order with y1 > y2."""
        k = max(self.terms)
        return k, self.terms[k]

    def monic(self):
        """Return (lc, monic part) for lex order."""
        _, lc = self.leading()
        return lc, self * (1 / lc)

    def divide_exact(self, other):
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        (o1, o2), oc = other.leading()
        inv = 1 / oc
        rem = dict(self.terms)
        quot = {}
        while rem:
            k = max(rem)
            if k[0] < o1 or k[1] < o2:
                return None
            qk = (k[0] - o1, k[1] - o2)
            qc = rem[k] * inv
            quot[qk] = qc
            for (b1, b2), cb in other.terms.items():
                kk = (qk[0] + b1, qk[1] + b2)
                v = rem.get(kk, 0) - qc * cb
                if v == 0:
                    rem.pop(kk, None)
                else:
                    rem[kk] = v
        return MPoly(quot)

    def evaluate(self, y1, y2):
        acc = 0
        for (i, j), c in self.terms.items():
            acc = acc + c * y1 ** i * y2 ** j
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            mono = "*".join(s for s in (
                "" if i == 0 else ("y1" if i == 1 else f"y1^{i}"),
                "" if j == 0 else ("y2" if j == 1 else f"y2^{j}")) if s)
            cs = str(c) if isinstance(c, Fraction) else f"({c})"
            parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)

    __repr__ = __str__


Y1 = MPoly.var(0)
Y2 = MPoly.var(1)
ONE = MPoly.const(1)
#: t^3 = RELATION in the function field
RELATION = (Y1 * Y1 - ONE) * (Y2 * Y2 - ONE)
_RELATION_ATOMS = {Y1 - ONE: 1, Y1 + ONE: 1, Y2 - ONE: 1, Y2 + ONE: 1}


def reduce_t(coeffs):
    """Reduce a t-polynomial given as a list of MPoly (low first) to degree <= 2."""
    out = [MPoly(), MPoly(), MPoly()]
    for k, c in enumerate(coeffs):
        q, r = divmod(k, 3)
        out[r] = out[r] + (c * RELATION ** q if q else c)
    return tuple(out)


def _atom_power(cache, atom, e):
    key = (atom, e)
    if key not in cache:
        cache[key] = atom ** e
    return cache[key]


_POW_CACHE = {}


class X3Element:
    """c0 + c1*t + c2*t^2 in the function field of X3."""

    __slots__ = ("nums", "den")

    def __init__(self, nums, den=None):
        nums = tuple(nums)
        if len(nums) != 3:
            nums = reduce_t(nums)
        self.nums = nums
        self.den = {} if den is None else {a: e for a, e in den.items() if e}

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls((MPoly.const(c), MPoly(), MPoly()))

    @classmethod
    def from_mpoly(cls, p):
        return cls((p, MPoly(), MPoly()))

    @classmethod
    def y1(cls):
        return cls.from_mpoly(Y1)

    @classmethod
    def y2(cls):
        return cls.from_mpoly(Y2)

    @classmethod
    def t(cls):
        return cls((MPoly(), ONE, MPoly()))

    @classmethod
    def from_t_poly(cls, coeffs, den=None):
        """Build from an unreduced t-polynomial; the relation is applied here."""
        return cls(reduce_t(list(coeffs)), den)

    # -- helpers ----------------------------------------------------------
    def den_poly(self):
        out = ONE
        for a, e in self.den.items():
            out = out * _atom_power(_POW_CACHE, a, e)
        return out

    def is_zero(self):
        return all(p.is_zero() for p in self.nums)

    def _coerce(self, other):
        if isinstance(other, X3Element):
            return other
        if isinstance(other, _SCALARS):
            return X3Element.const(other)
        if isinstance(other, MPoly):
            return X3Element.from_mpoly(other)
        return NotImplemented

    def _scaled(self, den):
        """Numerators rewritten over the (larger) denominator ``den``."""
        factor = ONE
        for a, e in den.items():
            extra = e - self.den.get(a, 0)
            if extra:
                factor = factor * _atom_power(_POW_CACHE, a, extra)
        if factor == ONE:
            return self.nums
        return tuple(p * factor for p in self.nums)

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = dict(self.den)
        for a, e in other.den.items():
            den[a] = max(den.get(a, 0), e)
        p = self._scaled(den)
        q = other._scaled(den)
        return X3Element(tuple(x + y for x, y in zip(p, q)), den)

    __radd__ = __add__

    def __neg__(self):
        return X3Element(tuple(-p for p in self.nums), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return X3Element(tuple(p * other for p in self.nums), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return x3_mul(self, other)

    __rmul__ = __mul__

    def inverse(self):
        return x3_invert(self)

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            inv = 1 / Fraction(other) if isinstance(other, int) else 1 / other
            return X3Element(tuple(p * inv for p in self.nums), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return x3_mul(self, x3_invert(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return x3_mul(other, x3_invert(self))

    def __pow__(self, n):
        if n < 0:
            return x3_invert(self) ** (-n)
        result = X3Element.const(1)
        base = self
        while n:
            if n & 1:
                result = x3_mul(result, base)
            n >>= 1
            if n:
                base = x3_mul(base, base)
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return x3_is_zero(self - other)

    __hash__ = None

    def __str__(self):
        parts = []
        for k, p in enumerate(self.nums):
            if p.is_zero():
                continue
            tk = "" if k == 0 else ("*t" if k == 1 else "*t^2")
            parts.append(f"({p}){tk}")
        num = " + ".join(parts) or "0"
        if not self.den:
            return num
        den = "*".join(f"({a})^{e}" if e > 1 else f"({a})" for a, e in self.den.items())
        return f"[{num}] / [{den}]"

    __repr__ = __str__


def x3_mul(a, b):
    """Product, reduced to t-degree <= 2 with t^3 = (y1^2-1)(y2^2-1)."""
    p, q = a.nums, b.nums
    raw = [MPoly() for _ in range(5)]
    for i in range(3):
        if p[i].is_zero():
            continue
        for j in range(3):
            if q[j].is_zero():
                continue
            raw[i + j] = raw[i + j] + p[i] * q[j]
    den = dict(a.den)
    for atom, e in b.den.items():
        den[atom] = den.get(atom, 0) + e
    c0 = raw[0] + raw[3] * RELATION if not raw[3].is_zero() else raw[0]
    c1 = raw[1] + raw[4] * RELATION if not raw[4].is_zero() else raw[1]
    return X3Element((c0, c1, raw[2]), den)


def _atomize(p, candidates):
    """Split ``p`` into (cofactor, {monic atom: exponent}) using known atoms."""
    atoms = {}
    rest = p
    for cand in candidates:
        if cand.is_constant():
            continue
        while True:
            q = rest.divide_exact(cand)
            if q is None:
                break
            atoms[cand] = atoms.get(cand, 0) + 1
            rest = q
    if not rest.is_constant():
        lc, monic = rest.monic()
        atoms[monic] = atoms.get(monic, 0) + 1
        rest = MPoly.const(lc)
    return rest, atoms


def x3_invert(a):
    """Inverse via the norm and adjugate of multiplication-by-``a``.

    For a = p0 + p1 t + p2 t^2 and R = t^3 the cofactors are
    (p0^2 - p1 p2 R) + (p2^2 R - p0 p1) t + (p1^2 - p0 p2) t^2, and
    a * cofactor = N = p0^3 + p1^3 R + p2^3 R^2 - 3 p0 p1 p2 R.
    """
    if a.is_zero():
        raise ZeroDivisionError("inversion of zero in the X3 function field")
    p0, p1, p2 = a.nums
    dpoly = a.den_poly()
    candidates = list(a.den) + list(_RELATION_ATOMS)
    z0, z1, z2 = (p.is_zero() for p in a.nums)
    if z1 and z2:
        cof, atoms = _atomize(p0, candidates)
        nums = (dpoly * (1 / cof.terms[(0, 0)]), MPoly(), MPoly())
        return X3Element(nums, atoms)
    if z0 and z2:
        # (p1 t)^{-1} = t^2 / (p1 R)
        cof, atoms = _atomize(p1, candidates)
        for atom, e in _RELATION_ATOMS.items():
            atoms[atom] = atoms.get(atom, 0) + e
        return X3Element((MPoly(), MPoly(), dpoly * (1 / cof.terms[(0, 0)])), atoms)
    if z0 and z1:
        cof, atoms = _atomize(p2, candidates)
        for atom, e in _RELATION_ATOMS.items():
            atoms[atom] = atoms.get(atom, 0) + e
        return X3Element((MPoly(), dpoly * (1 / cof.terms[(0, 0)]), MPoly()), atoms)
    R = RELATION
    adj0 = p0 * p0 - p1 * p2 * R
    adj1 = p2 * p2 * R - p0 * p1
    adj2 = p1 * p1 - p0 * p2
    norm = p0 * adj0 + (p1 * adj2 + p2 * adj1) * R
    cof, atoms = _atomize(norm, candidates)
    scale = dpoly * (1 / cof.terms[(0, 0)])
    return X3Element((adj0 * scale, adj1 * scale, adj2 * scale), atoms)


def x3_is_zero(a):
    """Exact zero test: the denominator is nonzero, so test the numerators."""
    return a.is_zero()


def relation_element():
    """t^3 - (y1^2-1)(y2^2-1), built from an unreduced t-polynomial."""
    return X3Element.from_t_poly([-RELATION, MPoly(), MPoly(), ONE])


def x3_eval(f, x):
    """Evaluate a rational function of u (or a polynomial) at the X3 element ``x``."""
    if isinstance(f, UniPoly):
        f = RatFunc(f)

    def horner(p):
        acc = X3Element.const(0)
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc

    num = horner(f.num)
    if f.den.degree == 0:
        return num * (1 / f.den.lc)
    return num / horner(f.den)


def x3_names(field=None, u=None):
    names = {"y1": X3Element.y1(), "y2": X3Element.y2(), "t": X3Element.t()}
    if field is not None:
        names[field.name] = X3Element.const(field.gen)
    if u is not None:
        names["u"] = u
    return names


def parse_x3(text, field=None, u=None):
    """Parse an expression in y1, y2, t (and ``a``, ``u`` when supplied)."""
    value = evaluate(text, x3_names(field, u), const=lambda n: X3Element.const(Fraction(n)))
    if not isinstance(value, X3Element):
        value = X3Element.const(value)
    return value
