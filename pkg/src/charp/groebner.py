"""Buchberger's algorithm over ``k = F_p(v)`` plus membership, dimension, minors.

Polynomials of ``F_p[v, x]`` are regarded as elements of ``k[x]``: the base
parameters move into the coefficients, which are :class:`~charp.fields.Fraction`
objects, and only geometric exponents take part in leading-term comparisons.
Internally an element of ``k[x]`` is a dict from geometric exponent tuples to
nonzero fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from operator import add, sub
from typing import Dict, List, Sequence, Tuple

from .errors import BadSize, InputError, RingMismatch, UnitIdeal
from .fields import Fraction, divide_exact, poly_gcd
from .polyring import ORDERS, Polynomial, RingContext

KPoly = Dict[Tuple[int, ...], Fraction]


@dataclass(frozen=True)
class MonomialOrder:
    tag: str = "grevlex"

    def __post_init__(self):
        if self.tag not in ORDERS:
            raise InputError(f"unknown monomial order {self.tag!r}")

    def key(self, e):
        if self.tag == "lex":
            return e
        return (sum(e), tuple(-a for a in reversed(e)))


def _as_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    return MonomialOrder(order)


@dataclass(frozen=True)
class Ideal:
    ring: RingContext
    generators: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if isinstance(g, int):
                g = self.ring.constant(g)
            if g.ring != self.ring:
                raise RingMismatch("generator from a different ring")
            if g.terms:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


# ---------------------------------------------------------------------------
# k[x] helpers

def to_kpoly(f: Polynomial) -> KPoly:
    ring = f.ring
    m = ring.m
    tail = (0,) * ring.n
    buckets: Dict[tuple, dict] = {}
    for e, c in f.terms.items():
        buckets.setdefault(e[m:], {})[e[:m] + tail] = c
    one = ring.one()
    return {g: Fraction(Polynomial(ring, t, _trusted=True), one, _normalized=True)
            for g, t in buckets.items()}


def from_kpoly(ring: RingContext, h: KPoly) -> Polynomial:
    """Clear denominators: multiply by the (monic) lcm of the coefficient denominators."""
    l = ring.one()
    for c in h.values():
        if not c.den.is_constant() and c.den != l:
            g = poly_gcd(l, c.den)
            l = l * divide_exact(c.den, g)
    m = ring.m
    out = ring.zero()
    for e, c in h.items():
        scaled = divide_exact(l, c.den) * c.num if l != c.den else c.num
        out = out + scaled.mul_term((0,) * m + e)
    return out


def _lead(h: KPoly, key):
    return max(h, key=key)


def _make_monic(h: KPoly, key) -> KPoly:
    lm = _lead(h, key)
    c = h[lm]
    if c.num.is_constant() and c.den.is_constant() and c.num.constant_coefficient() == 1:
        return h
    inv = c.inverse()
    return {e: v * inv for e, v in h.items()}


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(f: KPoly, basis: Sequence[Tuple[tuple, KPoly]], key) -> KPoly:
    """Full reduction of ``f`` by monic ``(leading monomial, poly)`` pairs."""
    f = dict(f)
    rem: KPoly = {}
    while f:
        lm = max(f, key=key)
        c = f.pop(lm)
        for glm, g in basis:
            if _divides(glm, lm):
                shift = tuple(map(sub, lm, glm))
                for e, d in g.items():
                    if e == glm:
                        continue
                    t = tuple(map(add, e, shift))
                    v = f.get(t)
                    v = -(c * d) if v is None else v - c * d
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[lm] = c
    return rem


def _spoly(f: KPoly, flm, g: KPoly, glm) -> KPoly:
    lcm = tuple(map(max, flm, glm))
    sf = tuple(map(sub, lcm, flm))
    sg = tuple(map(sub, lcm, glm))
    out: KPoly = {}
    for e, c in f.items():
        out[tuple(map(add, e, sf))] = c
    for e, c in g.items():
        t = tuple(map(add, e, sg))
        v = out.get(t)
        v = -c if v is None else v - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis over ``k``; elements are monic, sorted by descending leading monomial."""

    ring: RingContext
    order: MonomialOrder
    elements: Tuple[KPoly, ...]

    @property
    def leading_monomials(self) -> List[tuple]:
        key = self.order.key
        return [_lead(h, key) for h in self.elements]

    def polynomials(self) -> List[Polynomial]:
        """Elements with denominators cleared, as polynomials of ``F_p[v, x]``."""
        return [from_kpoly(self.ring, h) for h in self.elements]

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leading_monomials)

    def _pairs(self):
        return list(zip(self.leading_monomials, self.elements))

    def __len__(self):
        return len(self.elements)


def buchberger(ideal, order="grevlex") -> GroebnerBasis:
    if not isinstance(ideal, Ideal):
        raise InputError("buchberger expects an Ideal")
    order = _as_order(order)
    key = order.key
    ring = ideal.ring
    one = {(0,) * ring.n: Fraction.from_int(ring, 1)}
    G: List[KPoly] = []
    lms: List[tuple] = []
    for f in ideal.generators:
        h = _make_monic(to_kpoly(f), key)
        G.append(h)
        lms.append(_lead(h, key))
    if any(not any(e) for e in lms):
        return GroebnerBasis(ring, order, (one,))

    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(tuple(map(max, lms[ij[0]], lms[ij[1]]))), ij))
        pairs.discard((i, j))
        lcm = tuple(map(max, lms[i], lms[j]))
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        if _chain_criterion(i, j, lcm, lms, pairs):
            continue
        h = _reduce(_spoly(G[i], lms[i], G[j], lms[j]), list(zip(lms, G)), key)
        if not h:
            continue
        h = _make_monic(h, key)
        hlm = _lead(h, key)
        if not any(hlm):
            return GroebnerBasis(ring, order, (one,))
        k = len(G)
        G.append(h)
        lms.append(hlm)
        pairs.update((a, k) for a in range(k))

    return GroebnerBasis(ring, order, _interreduce(G, lms, key))


def _chain_criterion(i, j, lcm, lms, pairs) -> bool:
    for k in range(len(lms)):
        if k in (i, j):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        if _divides(lms[k], lcm):
            return True
    return False


def _interreduce(G, lms, key) -> Tuple[KPoly, ...]:
    keep = []
    for a, la in enumerate(lms):
        dominated = False
        for b, lb in enumerate(lms):
            if a != b and _divides(lb, la) and (lb != la or b < a):
                dominated = True
                break
        if not dominated:
            keep.append(a)
    minimal = [(lms[a], G[a]) for a in keep]
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [pair for t, pair in enumerate(minimal) if t != idx]
        tail = {e: c for e, c in g.items() if e != lm}
        r = _reduce(tail, others, key)
        r[lm] = g[lm]
        reduced.append((lm, _make_monic(r, key)))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return tuple(h for _, h in reduced)


def _basis_of(arg, order="grevlex") -> GroebnerBasis:
    if isinstance(arg, GroebnerBasis):
        return arg
    return buchberger(arg, order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` modulo ``G`` with denominators cleared (zero iff ``f`` is in the ideal)."""
    if f.ring != G.ring:
        raise RingMismatch("polynomial and basis belong to different rings")
    rem = _reduce(to_kpoly(f), G._pairs(), G.order.key)
    return from_kpoly(f.ring, rem)


def member(f: Polynomial, ideal) -> bool:
    G = _basis_of(ideal)
    if f.ring != G.ring:
        raise RingMismatch("polynomial and ideal belong to different rings")
    return not _reduce(to_kpoly(f), G._pairs(), G.order.key)


def ideal_equal(I, J) -> bool:
    GI, GJ = _basis_of(I), _basis_of(J)
    return (all(member(g, GJ) for g in _generators(I))
            and all(member(g, GI) for g in _generators(J)))


def _generators(arg):
    if isinstance(arg, GroebnerBasis):
        return arg.polynomials()
    return list(arg.generators)


def s_polynomial_audit(G: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial of ``G`` reduces to zero modulo ``G``."""
    key = G.order.key
    pairs = G._pairs()
    for (la, a), (lb, b) in itertools.combinations(pairs, 2):
        if _reduce(_spoly(a, la, b, lb), pairs, key):
            return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials
    for idx, (h, lm) in enumerate(zip(G.elements, lms)):
        if h[lm] != 1:
            return False
        others = [o for t, o in enumerate(lms) if t != idx]
        if any(_divides(o, e) for e in h for o in others):
            return False
    return True


# ---------------------------------------------------------------------------
# dimension

def minimal_cover_size(supports) -> int:
    """Fewest variables meeting every support set (monomial-ideal codimension)."""
    return _cover(frozenset(frozenset(s) for s in supports))


@lru_cache(maxsize=4096)
def _cover(supports: frozenset) -> int:
    if not supports:
        return 0
    smallest = min(supports, key=lambda s: (len(s), sorted(s)))
    best = None
    for x in sorted(smallest):
        rest = frozenset(s for s in supports if x not in s)
        size = 1 + _cover(rest)
        if best is None or size < best:
            best = size
    return best


def dimension(ideal) -> int:
    """Krull dimension of ``k[x]/I`` from the leading-term ideal."""
    G = _basis_of(ideal)
    if G.is_unit():
        raise UnitIdeal("the ideal is the whole ring")
    supports = [frozenset(i for i, a in enumerate(lm) if a) for lm in G.leading_monomials]
    return G.ring.n - minimal_cover_size(supports)


# ---------------------------------------------------------------------------
# determinants and minors

def determinant(M):
    """Cofactor expansion along the first row; entries need ``+``, ``-``, ``*``."""
    size = len(M)
    if size == 0:
        return 1
    if size == 1:
        return M[0][0]
    if size == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(size):
        a = M[0][j]
        if not a:
            continue
        sub_m = [row[:j] + row[j + 1:] for row in M[1:]]
        term = a * determinant(sub_m)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return M[0][0] * 0
    return total


def minor_indices(rows: int, cols: int, r: int):
    for ri in itertools.combinations(range(rows), r):
        for ci in itertools.combinations(range(cols), r):
            yield ri, ci


def minors(M: Sequence[Sequence[Polynomial]], r: int) -> List[Polynomial]:
    """All ``r x r`` minors, rows outer and columns inner, each in lexicographic order."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise BadSize("ragged matrix")
    if not 1 <= r <= min(rows, cols):
        raise BadSize(f"minor size {r} outside 1..{min(rows, cols)}")
    out = []
    for ri, ci in minor_indices(rows, cols, r):
        d = determinant([[M[i][j] for j in ci] for i in ri])
        out.append(d)
    return out
