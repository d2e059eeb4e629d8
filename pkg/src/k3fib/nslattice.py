"""The lattice spanned by the 24 (-2)-curves on X3 and fiber recognition.

Curves are F1..F3, G1..G3 (images of the fixed-point fibers of the two
factors) and the exceptional pairs E{i,j}, E'{i,j} over the nine
singular points.  Pairings follow the standard configuration:

    F_i . E'{j,k} = [i == j]     G_i . E{k,j} = [i == j]
    E{i,j} . E'{k,l} = [(i, j) == (k, l)]

with every other distinct pair disjoint and every curve of square -2.
"""
from __future__ import annotations

import configparser
import itertools
import re
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .kodaira import KodairaType

CURVES = tuple(
    [f"F{i}" for i in (1, 2, 3)]
    + [f"G{i}" for i in (1, 2, 3)]
    + [f"E{{{i},{j}}}" for i in (1, 2, 3) for j in (1, 2, 3)]
    + [f"E'{{{i},{j}}}" for i in (1, 2, 3) for j in (1, 2, 3)]
)
INDEX = {name: k for k, name in enumerate(CURVES)}


def _gram():
    g = -2 * np.eye(len(CURVES), dtype=np.int64)

    def link(a, b):
        g[INDEX[a], INDEX[b]] = g[INDEX[b], INDEX[a]] = 1

    for i, j in itertools.product((1, 2, 3), repeat=2):
        link(f"F{i}", f"E'{{{i},{j}}}")
        link(f"G{j}", f"E{{{i},{j}}}")
        link(f"E{{{i},{j}}}", f"E'{{{i},{j}}}")
    g.setflags(write=False)
    return g


GRAM = _gram()


def gram_rank():
    return int(np.linalg.matrix_rank(GRAM.astype(float)))


# -- divisor classes ------------------------------------------------------

_NAME_RE = re.compile(r"^(F[123]|G[123]|E'?\{[123],[123]\}|E'?[123][123])$")


def canonical_name(text):
    s = text.strip().replace("′", "'").replace(" ", "")
    if not _NAME_RE.match(s):
        raise ValueError(f"unknown curve {text!r}")
    if s[0] == "E" and "{" not in s:
        prime = "'" if s[1] == "'" else ""
        i, j = s[-2], s[-1]
        s = f"E{prime}{{{i},{j}}}"
    return s


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z][^\s+*-]*)\s*")


def parse_terms(text):
    """Signed sum ``3*G3 + 2*E{1,3} - F1`` as a list of (coefficient, name).

    Repeated names are kept as separate terms.
    """
    terms = []
    pos = 0
    text = text.strip()
    if not text:
        return terms
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse divisor near {text[pos:]!r}")
        if terms and m.group(1) is None:
            raise ValueError(f"missing sign before {m.group(3)!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        terms.append((sign * coef, canonical_name(m.group(3))))
        pos = m.end()
    return terms


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple = (0,) * len(CURVES)

    @classmethod
    def from_terms(cls, terms):
        v = [0] * len(CURVES)
        for c, name in terms:
            v[INDEX[canonical_name(name)]] += c
        return cls(tuple(v))

    @classmethod
    def parse(cls, text):
        return cls.from_terms(parse_terms(text))

    @classmethod
    def curve(cls, name):
        return cls.from_terms([(1, name)])

    @property
    def vector(self):
        return np.array(self.coeffs, dtype=np.int64)

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return DivisorClass(tuple(k * a for a in self.coeffs))

    def support(self):
        return [CURVES[k] for k, c in enumerate(self.coeffs) if c]

    def coefficient(self, name):
        return self.coeffs[INDEX[canonical_name(name)]]

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}{CURVES[k]}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def intersect(d1, d2):
    return int(d1.vector @ GRAM @ d2.vector)


def numerically_trivial(d):
    return not np.any(GRAM @ d.vector)


# -- fiber recognition ----------------------------------------------------

class FiberMismatch(ValueError):
    """Structured reason why a divisor is not a Kodaira fiber.

    ``kind`` is one of: negative, empty, disconnected, not-orthogonal, shape,
    multiplicity.  ``details`` lists the offending curves with data.
    """

    def __init__(self, kind, details, message):
        super().__init__(message)
        self.kind = kind
        self.details = details


def _adjacency(support):
    return {a: [b for b in support if b != a and GRAM[INDEX[a], INDEX[b]] > 0] for a in support}


def _components(adj):
    seen, comps = set(), []
    for start in adj:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp, key=INDEX.get))
    return comps


def _arm(adj, center, first):
    path, prev, cur = [first], center, first
    while True:
        nxt = [b for b in adj[cur] if b != prev]
        if len(nxt) != 1:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _expected_multiplicities(adj):
    """(KodairaType, {curve: multiplicity}) for an affine Dynkin graph, else None."""
    nodes = list(adj)
    n = len(nodes)
    deg = {a: len(adj[a]) for a in nodes}
    edges = sum(deg.values()) // 2
    if n >= 3 and all(d == 2 for d in deg.values()) and edges == n:
        return KodairaType("I", n), {a: 1 for a in nodes}
    if edges != n - 1:
        return None
    branch = [a for a in nodes if deg[a] >= 3]
    if len(branch) == 1 and deg[branch[0]] == 4 and n == 5:
        c = branch[0]
        return KodairaType("I*", 0), {a: (2 if a == c else 1) for a in nodes}
    if len(branch) == 2 and all(deg[b] == 3 for b in branch):
        leaves = [a for a in nodes if deg[a] == 1]
        if len(leaves) != 4 or any(len(adj[l]) != 1 or adj[l][0] not in branch for l in leaves):
            return None
        return KodairaType("I*", n - 5), {a: (1 if deg[a] == 1 else 2) for a in nodes}
    if len(branch) == 1 and deg[branch[0]] == 3:
        c = branch[0]
        arms = sorted((_arm(adj, c, b) for b in adj[c]), key=len)
        lengths = tuple(len(a) for a in arms)
        if lengths == (2, 2, 2):
            kod, top = KodairaType("IV*"), 3
        elif lengths == (1, 3, 3):
            kod, top = KodairaType("III*"), 4
        elif lengths == (1, 2, 5):
            kod, top = KodairaType("II*"), 6
        else:
            return None
        mult = {c: top}
        for arm in arms:
            # multiplicities fall linearly along each arm to top / (len + 1)
            step = top // (len(arm) + 1)
            for k, a in enumerate(arm, start=1):
                mult[a] = top - k * step
        return kod, mult
    return None


def recognize_fiber(d):
    """Kodaira type of the effective divisor ``d`` if it is a fiber class.

    Raises FiberMismatch naming the failing curves otherwise.
    """
    neg = [(CURVES[k], c) for k, c in enumerate(d.coeffs) if c < 0]
    if neg:
        raise FiberMismatch("negative", neg, f"negative coefficients on {[n for n, _ in neg]}")
    support = d.support()
    if not support:
        raise FiberMismatch("empty", [], "zero divisor")
    adj = _adjacency(support)
    comps = _components(adj)
    if len(comps) > 1:
        raise FiberMismatch("disconnected", comps, f"support splits into {len(comps)} pieces: {comps}")
    pairing = GRAM @ d.vector
    bad = [(a, int(pairing[INDEX[a]])) for a in support if pairing[INDEX[a]] != 0]
    if bad:
        raise FiberMismatch("not-orthogonal", bad, f"D.C != 0 for {bad}")
    shape = _expected_multiplicities(adj)
    if shape is None:
        raise FiberMismatch("shape", sorted(support, key=INDEX.get),
                            "dual graph is not an extended Dynkin diagram")
    kod, mult = shape
    wrong = [(a, mult[a], d.coefficient(a)) for a in sorted(support, key=INDEX.get)
             if d.coefficient(a) != mult[a]]
    if wrong:
        raise FiberMismatch("multiplicity", wrong,
                            f"{kod} expects other multiplicities: (curve, expected, got) {wrong}")
    return kod


def try_recognize(d):
    try:
        return recognize_fiber(d)
    except FiberMismatch:
        return None


# -- divisor data ---------------------------------------------------------

@dataclass(frozen=True)
class FunctionDivisor:
    name: str
    zero_terms: tuple
    polar_terms: tuple = ()

    @property
    def zero(self):
        return DivisorClass.from_terms(self.zero_terms)

    @property
    def polar(self):
        return DivisorClass.from_terms(self.polar_terms)

    @property
    def divisor(self):
        return self.zero - self.polar


def load_divisors():
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    cp.read_string(resources.files("k3fib.data").joinpath("divisors.ini").read_text())
    out = {}
    for sec in cp.sections():
        s = cp[sec]
        if "fiber" in s:
            out[sec] = FunctionDivisor(sec, tuple(parse_terms(s["fiber"])))
        else:
            out[sec] = FunctionDivisor(sec, tuple(parse_terms(s["zero"])), tuple(parse_terms(s["polar"])))
    return out


FUNC_NAMES = ("y1-1", "y1+1", "y2-1", "y2+1", "t")


# -- typo search ----------------------------------------------------------

@dataclass
class Correction:
    edits: list                  # human-readable edit descriptions
    terms: list                  # corrected (coefficient, name) list
    kodaira: KodairaType

    @property
    def divisor(self):
        return DivisorClass.from_terms(self.terms)


def _single_edits(terms, max_coef):
    for k, (c, name) in enumerate(terms):
        for other in CURVES:
            if other != name:
                yield (k, "relabel", other)
        for c2 in range(1, max_coef + 1):
            if c2 != c:
                yield (k, "coef", c2)


def _apply(terms, edits):
    out = list(terms)
    for k, kind, val in edits:
        c, name = out[k]
        out[k] = (c, val) if kind == "relabel" else (val, name)
    return out


def _describe(terms, edits):
    msgs = []
    for k, kind, val in edits:
        c, name = terms[k]
        if kind == "relabel":
            msgs.append(f"term {k + 1}: {c}*{name} -> {c}*{val}")
        else:
            msgs.append(f"term {k + 1}: {c}*{name} -> {val}*{name}")
    return msgs


def find_corrections(terms, polar=None, expected=None, max_edits=2):
    """All minimal sets of term edits turning ``terms`` into a fiber.

    An edit relabels one term or changes its coefficient.  A candidate is
    accepted when it is recognized as a Kodaira fiber (of type ``expected``
    if given) and, when ``polar`` is supplied, differs from it by a
    numerically trivial class.
    """
    terms = list(terms)
    max_coef = max(6, max(c for c, _ in terms))
    target = None if polar is None else GRAM @ polar.vector

    def ok(cand):
        d = DivisorClass.from_terms(cand)
        if target is not None and np.any(GRAM @ d.vector != target):
            return None
        kod = try_recognize(d)
        if kod is None or (expected is not None and kod != expected):
            return None
        return kod

    kod = ok(terms)
    if kod is not None:
        return [Correction([], terms, kod)]
    singles = list(_single_edits(terms, max_coef))
    for depth in range(1, max_edits + 1):
        # keyed by resulting class; among edits giving the same class (which
        # happens with repeated terms) the one touching later terms wins
        found = {}
        for combo in itertools.combinations(singles, depth):
            if any(a[:2] == b[:2] for a, b in itertools.combinations(combo, 2)):
                continue
            cand = _apply(terms, combo)
            key = DivisorClass.from_terms(cand).coeffs
            kod = found[key].kodaira if key in found else ok(cand)
            if kod is not None:
                found[key] = Correction(_describe(terms, combo), cand, kod)
        if found:
            return list(found.values())
    return []


def lattice_types(fd):
    """Kodaira types of the zero and polar parts of a function divisor."""
    return recognize_fiber(fd.zero), recognize_fiber(fd.polar)
