"""Mordell-Weil checks on an elliptic K3: torsion, heights, and lattice identities."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ellcurve import O, NotOnCurveError, add
from .exactalg.factor import irreducible_factor
from .kodaira import INFINITY, Place, tate_at


class ComponentMismatchError(AssertionError):
    """Component identification disagreed with the valuation cross-check."""


@dataclass(frozen=True)
class SurfaceConstants:
    chi: int = 2
    rho: int = 20
    target_determinant: int = 3


K3 = SurfaceConstants()


@dataclass
class MWClaim:
    rank: int
    torsion: tuple = ()                 # cyclic orders, e.g. (4,) or (2, 2)
    torsion_points: list = field(default_factory=list)   # (point, order) pairs
    free_generators: list = field(default_factory=list)
    claimed_heights: list = field(default_factory=list)

    @property
    def torsion_order(self):
        return math.prod(self.torsion)


def torsion_verify(E, P, n):
    """True iff P has exact order n."""
    if not E.contains(P):
        raise NotOnCurveError(f"{P} is not on {E}")
    if n < 1:
        raise ValueError("order must be positive")
    Q = O
    for k in range(1, n + 1):
        Q = add(E, Q, P)
        if Q.is_zero():
            return k == n
    return False


# -- local contributions --------------------------------------------------

def contribution(kod, index):
    """Local height correction for a section meeting component ``index``."""
    if index == 0:
        return Fraction(0)
    fam, n = kod.family, kod.n
    if fam == "I":
        k = index
        return Fraction(k * (n - k), n)
    if fam == "I*":
        return Fraction(1) if index == 1 else 1 + Fraction(n, 4)
    table = {"III": Fraction(1, 2), "III*": Fraction(3, 2), "IV": Fraction(2, 3),
             "IV*": Fraction(4, 3)}
    if fam in table:
        return table[fam]
    raise ValueError(f"type {kod} has no non-identity simple component")


def _short_point(E, P):
    return E.to_short_point(P)


def component_index(E, P, fd):
    """Component of the fiber ``fd`` met by the affine section P (0 = identity).

    For I_n the index is normalized to min(k, n - k); for I_n* 1 means the
    near component and 2 the far one.
    """
    if P.is_zero():
        return 0
    Q = _short_point(E, P)
    x, y = fd.local_coordinates(Q.x, Q.y)
    vx, vy = fd.ord(x), fd.ord(y)
    if vx < 1 or vy < 1:
        return 0
    kod = fd.kodaira
    if kod.family == "I":
        if kod.n == 0:
            raise AssertionError("section through a singular point of a smooth fiber")
        k = min(vx, vy)
        return min(k, kod.n - k)
    if kod.family == "I*":
        return 1 if vx == 1 or kod.n == 0 else 2
    if kod.family in ("II", "II*"):
        raise ComponentMismatchError(f"section meets a multiple component of {kod}")
    return 1


def psi_contribution(E, P, fd):
    """Local correction from the valuations of psi_2 and psi_3 (independent route)."""
    if P.is_zero():
        return Fraction(0)
    Q = _short_point(E, P)
    x, y = fd.local_coordinates(Q.x, Q.y)
    a2, a4, a6 = fd.local
    v = fd.ord
    if v(x) < 0:
        return Fraction(0)
    if v(3 * x * x + 2 * a2 * x + a4) <= 0 or v(2 * y) <= 0:
        return Fraction(0)
    b2, b4, b6, b8 = 4 * a2, 2 * a4, 4 * a6, 4 * a2 * a6 - a4 * a4
    psi2 = 2 * y
    psi3 = 3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x * x + 3 * b6 * x + b8
    if fd.kodaira.is_multiplicative:
        n = fd.ord_delta
        m = min(Fraction(v(psi2)), Fraction(n, 2))
        return m * (n - m) / n
    if v(psi3) >= 3 * v(psi2):
        return Fraction(2 * v(psi2), 3)
    return Fraction(v(psi3), 4)


def _places_for(E, P, config):
    """Singular places plus every place where X has a pole, plus infinity."""
    seen = {fd.place.label: fd for fd in config}
    Q = _short_point(E, P)
    extra = []
    if Q.x.den.degree > 0:
        for g, _ in irreducible_factor(Q.x.den):
            extra.append(Place.finite(g))
    extra.append(INFINITY)
    out = list(config)
    for v in extra:
        if v.label not in seen:
            fd = tate_at(E, v)
            seen[v.label] = fd
            out.append(fd)
    return out


def section_meets_zero(E, P, config=None):
    """Intersection number (P . O) summed over all places with degrees."""
    if P.is_zero():
        raise ValueError("(O . O) is not a meeting number")
    total = 0
    for fd in _places_for(E, P, config or []):
        Q = _short_point(E, P)
        x, _ = fd.local_coordinates(Q.x, Q.y)
        vx = fd.ord(x)
        if vx < 0:
            if vx % 2:
                raise AssertionError(f"odd pole order of X at {fd.place}")
            total += fd.degree * (-vx // 2)
    return total


def local_contributions(E, P, config):
    """[(FiberData, index, contribution)] with a loud cross-check per place."""
    out = []
    for fd in config:
        idx = component_index(E, P, fd)
        c = contribution(fd.kodaira, idx)
        alt = psi_contribution(E, P, fd)
        if c != alt:
            raise ComponentMismatchError(
                f"{fd.kodaira} at {fd.place}: component {idx} gives {c}, valuations give {alt}")
        out.append((fd, idx, c))
    return out


def height(E, P, config, constants=K3):
    """Shioda height <P, P> = 2 chi + 2 (P . O) - sum of local corrections."""
    if P.is_zero():
        return Fraction(0)
    po = section_meets_zero(E, P, config)
    corr = sum((fd.degree * c for fd, _, c in local_contributions(E, P, config)), Fraction(0))
    return 2 * constants.chi + 2 * po - corr


# -- lattice identities -----------------------------------------------------

def shioda_tate_check(config, claim, constants=K3):
    total = 2 + sum(fd.degree * (fd.components - 1) for fd in config) + claim.rank
    return total == constants.rho


def mw_determinant(claim):
    if claim.rank == 0:
        return Fraction(1)
    if claim.rank == 1:
        return Fraction(claim.claimed_heights[0])
    raise NotImplementedError("rank >= 2 Gram determinants are not supported")


def trivial_lattice_discriminant(config):
    return math.prod(fd.kodaira.discriminant ** fd.degree for fd in config)


def determinant_check(config, claim, constants=K3):
    det = trivial_lattice_discriminant(config) * mw_determinant(claim) / claim.torsion_order ** 2
    return det == constants.target_determinant


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _p_partition(orders, p):
    """Exponents of the p-primary cyclic factors, sorted descending."""
    exps = []
    for n in orders:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            exps.append(e)
    return sorted(exps, reverse=True)


def group_embeds(sub, ambient):
    """Whether the finite abelian group prod Z/sub_i embeds in prod Z/ambient_j.

    Per prime, a p-group with partition lambda embeds in one with partition mu
    iff lambda_i <= mu_i for every i after sorting.
    """
    primes = {p for n in sub for p in _prime_factors(n)}
    for p in primes:
        lam, mu = _p_partition(sub, p), _p_partition(ambient, p)
        if len(lam) > len(mu) or any(a > b for a, b in zip(lam, mu)):
            return False
    return True


def torsion_injection_check(config, claim):
    ambient = []
    for fd in config:
        ambient += list(fd.kodaira.component_group) * fd.degree
    return group_embeds(tuple(claim.torsion), tuple(ambient))
