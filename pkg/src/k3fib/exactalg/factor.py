"""Squarefree decomposition and factorization over Q for small degrees.

Factorization is Zassenhaus's method: factor modulo a small prime (distinct
degree, then Cantor-Zassenhaus equal degree splitting), Hensel-lift the
modular factors past the Mignotte bound, and recombine subsets.  Distinct
degree data from several primes is intersected first, which proves most
irreducible inputs irreducible without any lifting.
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

from .poly import UniPoly

_SMALL_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def squarefree_factor(p):
    """Yun's algorithm: [(factor, multiplicity), ...] with monic factors.

    Units are dropped, so a constant input gives an empty list.
    """
    if p.is_zero():
        raise ValueError("squarefree_factor of the zero polynomial")
    if p.degree == 0:
        return []
    f = p.monic()
    out = []
    fp = f.derivative()
    a = f.gcd(fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = b.gcd(d)
        b = b // g
        c = d // g
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g.monic(), i))
        i += 1
    return out


# -- integer helpers ------------------------------------------------------

def _int_coeffs(p):
    """Primitive integer coefficients (low first) with positive leading term."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p):
    """All distinct rational roots of ``p`` (rational coefficients)."""
    if p.degree <= 0:
        return []
    ints = _int_coeffs(p)
    roots = []
    while ints and ints[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    for q in _divisors(ints[-1]):
        for r in _divisors(ints[0]):
            for s in (1, -1):
                cand = Fraction(s * r, q)
                if cand in roots:
                    continue
                if p(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


# -- arithmetic modulo a prime -------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if c:
            q = c * inv % p
            for j, cb in enumerate(b):
                a[k - db + j] = (a[k - db + j] - q * cb) % p
    return _trim([c % p for c in a[:db]])


def _pdiv(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if c:
            q = c * inv % p
            quot[k - db] = q
            for j, cb in enumerate(b):
                a[k - db + j] = (a[k - db + j] - q * cb) % p
    return _trim(quot)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pmod_sub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _pmod_add(a, b, m):
    return _pmod_sub(a, [-c for c in b], m)


def _pxgcd(a, b, p):
    """(s, t) with s a + t b = 1 mod p for coprime a, b."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q = _pdiv(r0, r1, p)
        r0, r1 = r1, _pmod_sub(r0, _pmul(q, r1, p), p)
        s0, s1 = s1, _pmod_sub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _pmod_sub(t0, _pmul(q, t1, p), p)
    if len(r0) != 1:
        raise ArithmeticError("polynomials are not coprime modulo p")
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _monic_mod(ints, p):
    inv = pow(ints[-1], -1, p)
    return _trim([c * inv % p for c in ints])


def _ddf(f, p):
    """Distinct degree factorization of a monic squarefree f mod p: [(product, degree)]."""
    out = []
    h = [0, 1]
    i = 1
    while len(f) - 1 >= 2 * i:
        h = _ppowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) > 1:
            out.append((g, i))
            f = _pdiv(f, g, p)
            h = _pmod(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _ddf_degrees(ints, p):
    """Degrees of the irreducible factors of a squarefree polynomial mod p."""
    return [d for g, d in _ddf(_monic_mod(ints, p), p) for _ in range((len(g) - 1) // d)]


def _edf(f, d, p, rng):
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles (odd p)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = _pgcd(f, a, p)
        if len(g) == 1:
            b = _ppowmod(a, (p ** d - 1) // 2, f, p) or [0]
            b = _trim([(b[0] - 1) % p] + list(b[1:]))
            g = _pgcd(f, b, p)
        if 1 < len(g) < len(f):
            return _edf(g, d, p, rng) + _edf(_pdiv(f, g, p), d, p, rng)


def _factor_mod_p(ints, p):
    """Monic irreducible factors of a squarefree integer polynomial modulo p."""
    rng = random.Random(p)
    out = []
    for g, d in _ddf(_monic_mod(ints, p), p):
        out += _edf(g, d, p, rng)
    return out


def _subset_sums(degs):
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _usable(ints, q):
    if ints[-1] % q == 0:
        return False
    fm = _trim([c % q for c in ints])
    dm = _trim([c % q for c in [i * c for i, c in enumerate(ints)][1:]])
    return len(_pgcd(fm, dm, q)) == 1


def candidate_factor_degrees(p, primes=_SMALL_PRIMES):
    """Degrees a proper rational factor of squarefree ``p`` could have."""
    return _sieve(_int_coeffs(p), primes)[0]


def _sieve(ints, primes=_SMALL_PRIMES):
    """(allowed factor degrees, prime with the fewest modular factors)."""
    n = len(ints) - 1
    allowed = set(range(1, n))
    best = None
    for q in primes:
        if not _usable(ints, q):
            continue
        degs = _ddf_degrees(ints, q)
        allowed &= _subset_sums(degs)
        if best is None or len(degs) < best[1]:
            best = (q, len(degs))
        if not allowed:
            break
    if best is None:
        raise ArithmeticError("no usable prime for the factor sieve")
    return allowed, best[0]


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step modulo m (h monic, s g + t h = 1)."""
    e = _pmod_sub(f, _pmul(g, h, m), m)
    se = _pmul(s, e, m)
    q, r = _pdiv(se, h, m), _pmod(se, h, m)
    g2 = _pmod_add(g, _pmod_add(_pmul(t, e, m), _pmul(q, g, m), m), m)
    h2 = _pmod_add(h, r, m)
    b = _pmod_sub(_pmod_add(_pmul(s, g2, m), _pmul(t, h2, m), m), [1], m)
    sb = _pmul(s, b, m)
    c, d = _pdiv(sb, h2, m), _pmod(sb, h2, m)
    s2 = _pmod_sub(s, d, m)
    t2 = _pmod_sub(t, _pmod_add(_pmul(t, b, m), _pmul(c, g2, m), m), m)
    return g2, h2, s2, t2


def _prod_mod(polys, m):
    out = [1]
    for q in polys:
        out = _pmul(out, q, m)
    return out


def _hensel_lift(f, factors, p, k):
    """Lift f = lc(f) * prod(factors) mod p to monic factors mod p^k."""
    target = p ** k
    if len(factors) == 1:
        return [_monic_mod(f, target)]
    half = len(factors) // 2
    lc = f[-1] % p
    g = _pmul([lc], _prod_mod(factors[:half], p), p)
    h = _prod_mod(factors[half:], p)
    s, t = _pxgcd(g, h, p)
    m = p
    while m < target:
        m = min(m * m, target)
        g, h, s, t = _hensel_step([c % m for c in f], g, h, s, t, m)
    return _hensel_lift(g, factors[:half], p, k) + _hensel_lift(h, factors[half:], p, k)


def _primitive(ints):
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    return [-v for v in ints] if ints[-1] < 0 else ints


def _int_divide(a, b):
    """Exact quotient a / b over Z, or None."""
    q, r = divmod(UniPoly(a), UniPoly(b))
    if not r.is_zero() or any(c.denominator != 1 for c in q.coeffs):
        return None
    return [int(c) for c in q.coeffs]


def _zassenhaus(ints):
    """Irreducible factors over Z of a primitive squarefree integer polynomial."""
    n = len(ints) - 1
    if n <= 1:
        return [ints]
    allowed, p = _sieve(ints)
    if not allowed:
        return [ints]
    modular = _factor_mod_p(ints, p)
    lc = ints[-1]
    bound = 2 * abs(lc) * 2 ** n * (math.isqrt(sum(c * c for c in ints)) + 1)
    k = 1
    while p ** k <= bound:
        k += 1
    M = p ** k
    lifted = _hensel_lift(ints, modular, p, k)

    def sym(c):
        c %= M
        return c - M if c > M // 2 else c

    found, rest = [], ints
    remaining = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(remaining):
        for subset in itertools.combinations(remaining, size):
            lead = rest[-1]
            cand = [sym(c) for c in _pmul([lead], _prod_mod([lifted[i] for i in subset], M), M)]
            cand = _primitive(_trim(cand))
            quot = _int_divide(rest, cand)
            if quot is not None:
                found.append(cand)
                rest = _primitive(quot)
                remaining = [i for i in remaining if i not in subset]
                break
        else:
            size += 1
    return found + [rest]


@lru_cache(maxsize=4096)
def _is_irreducible_cached(coeffs):
    p = UniPoly(coeffs)
    n = p.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    if p.gcd(p.derivative()).degree > 0:
        return False
    if n <= 3:
        return not rational_roots(p)
    return len(_zassenhaus(_int_coeffs(p))) == 1


def is_irreducible(p):
    """Irreducibility over Q of a polynomial with rational coefficients."""
    return _is_irreducible_cached(tuple(p.monic().coeffs) if p.degree >= 0 else ())


def _split_squarefree(p):
    if p.degree <= 1:
        return [p.monic()]
    return [UniPoly(g, p.var).monic() for g in _zassenhaus(_int_coeffs(p))]


def irreducible_factor(p):
    """Monic irreducible factors over Q with multiplicities, sorted canonically."""
    if p.is_zero():
        raise ValueError("irreducible_factor of the zero polynomial")
    out = []
    for g, m in squarefree_factor(p):
        out += [(h, m) for h in _split_squarefree(g)]
    out.sort(key=lambda fm: (fm[0].degree, [(c.numerator, c.denominator) for c in reversed(fm[0].coeffs)], fm[1]))
    return out
