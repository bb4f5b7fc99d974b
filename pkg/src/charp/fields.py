"""The base field ``k = F_p(v_1..v_m)`` and evaluation at ``k``-rational points.

Elements of ``k`` are :class:`Fraction` objects whose numerator and denominator
are polynomials of the ambient ring that involve base parameters only.  Reduced
form needs a multivariate gcd over ``F_p``; it is computed recursively
(content / primitive part, primitive pseudo-remainder sequences), which is
plenty for a handful of base parameters.
"""

from __future__ import annotations

from operator import add, sub
from typing import Dict, Mapping

from .errors import IncompleteAssignment, InputError, RingMismatch
from .polyring import Polynomial, RingContext, Role


# ---------------------------------------------------------------------------
# multivariate division and gcd over F_p

def _lead(f: Polynomial):
    e = max(f.terms)
    return e, f.terms[e]


def monic(f: Polynomial) -> Polynomial:
    """Scale so the lex-leading coefficient is 1."""
    if not f.terms:
        return f
    _, c = _lead(f)
    return f if c == 1 else f.scale(pow(c, -1, f.ring.p))


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises ``ArithmeticError`` if ``b`` does not divide ``a``."""
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = a.ring
    p = ring.p
    lb, cb = _lead(b)
    inv = pow(cb, -1, p)
    if len(b.terms) == 1:
        out = {}
        for e, c in a.terms.items():
            q = tuple(map(sub, e, lb))
            if min(q, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            out[q] = c * inv % p
        return Polynomial(ring, out, _trusted=True)
    rest = [(e, c) for e, c in b.terms.items() if e != lb]
    r = dict(a.terms)
    q = {}
    while r:
        lr = max(r)
        shift = tuple(map(sub, lr, lb))
        if min(shift, default=0) < 0:
            raise ArithmeticError("inexact polynomial division")
        c = r.pop(lr) * inv % p
        q[shift] = c
        for e, d in rest:
            t = tuple(map(add, e, shift))
            v = (r.get(t, 0) - c * d) % p
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return Polynomial(ring, q, _trusted=True)


def _coeffs_in(f: Polynomial, pos: int) -> Dict[int, Polynomial]:
    buckets: Dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[pos]
        if k:
            e = e[:pos] + (0,) + e[pos + 1:]
        buckets.setdefault(k, {})[e] = c
    return {k: Polynomial(f.ring, t, _trusted=True) for k, t in buckets.items()}


def _content(f: Polynomial, pos: int) -> Polynomial:
    g = f.ring.zero()
    for c in _coeffs_in(f, pos).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _prem(a: Polynomial, b: Polynomial, pos: int) -> Polynomial:
    cb = _coeffs_in(b, pos)
    db = max(cb)
    lcb = cb[db]
    r = a
    while r.terms:
        dr = r.degree_in(pos)
        if dr < db:
            break
        lcr = _coeffs_in(r, pos)[dr]
        shift = [0] * a.ring.nbasis
        shift[pos] = dr - db
        r = r * lcb - (lcr * b).mul_term(tuple(shift))
    return r


def _univariate_gcd(a: Polynomial, b: Polynomial, pos: int) -> Polynomial:
    p = a.ring.p
    # dense coefficient lists in the single variable
    def dense(f):
        out = [0] * (f.degree_in(pos) + 1)
        for e, c in f.terms.items():
            out[e[pos]] = c
        return out

    x, y = dense(a), dense(b)
    while y:
        inv = pow(y[-1], -1, p)
        while len(x) >= len(y) and x:
            c = x[-1] * inv % p
            k = len(x) - len(y)
            for i, yc in enumerate(y):
                x[i + k] = (x[i + k] - c * yc) % p
            while x and not x[-1]:
                x.pop()
        x, y = y, x
    inv = pow(x[-1], -1, p)
    nb = a.ring.nbasis
    terms = {}
    for k, c in enumerate(x):
        if c:
            e = [0] * nb
            e[pos] = k
            terms[tuple(e)] = c * inv % p
    return Polynomial(a.ring, terms, _trusted=True)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd in ``F_p[basis]``; ``gcd(0, 0) = 0``."""
    if not a.terms:
        return monic(b)
    if not b.terms:
        return monic(a)
    if a.is_constant() or b.is_constant():
        return a.ring.one()
    supp = a.support_positions() | b.support_positions()
    pos = min(supp)
    if len(supp) == 1:
        return _univariate_gcd(a, b, pos)
    ca, cb = _content(a, pos), _content(b, pos)
    c = poly_gcd(ca, cb)
    pa, pb = divide_exact(a, ca), divide_exact(b, cb)
    if pa.degree_in(pos) < pb.degree_in(pos):
        pa, pb = pb, pa
    while True:
        if pb.degree_in(pos) <= 0:
            g = a.ring.one()
            break
        r = _prem(pa, pb, pos)
        if not r.terms:
            g = pb
            break
        pa, pb = pb, divide_exact(r, _content(r, pos))
    return monic(c * g)


# ---------------------------------------------------------------------------
# F_p(v)

class Fraction:
    """Element of ``F_p(v)``: reduced quotient with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized: bool = False):
        if _normalized:
            self.num, self.den = num, den
            return
        if isinstance(num, Fraction):
            if den is not None:
                raise InputError("cannot combine a Fraction with a separate denominator")
            self.num, self.den = num.num, num.den
            return
        ring = num.ring
        if den is None:
            den = ring.one()
        elif isinstance(den, int):
            den = ring.constant(den)
        if den.ring != ring:
            raise RingMismatch("numerator and denominator live in different rings")
        base = ring.base_positions
        if not num.involves_only(base) or not den.involves_only(base):
            raise InputError("field elements may only involve base parameters")
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def from_int(cls, ring: RingContext, c: int) -> "Fraction":
        return cls(ring.constant(c), ring.one(), _normalized=True)

    @property
    def ring(self) -> RingContext:
        return self.num.ring

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def _coerce(self, other):
        if isinstance(other, Fraction):
            if other.ring != self.ring:
                raise RingMismatch("field elements from different rings")
            return other
        if isinstance(other, int):
            return Fraction.from_int(self.ring, other)
        if isinstance(other, Polynomial):
            return Fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return Fraction(self.num + other.num, self.den)
        return Fraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Fraction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return Fraction(self.ring.zero(), self.ring.one(), _normalized=True)
        return Fraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Fraction":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero in F_p(v)")
        return Fraction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, Fraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Fraction({self})"

    def __str__(self):
        num = str(self.num)
        if self.den.is_constant():
            return num
        den = str(self.den)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"


def _normalize(num: Polynomial, den: Polynomial):
    p = num.ring.p
    if not num.terms:
        return num, num.ring.one()
    if den.is_constant():
        inv = pow(den.constant_coefficient(), -1, p)
        return num.scale(inv), num.ring.one()
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = divide_exact(num, g), divide_exact(den, g)
    _, c = _lead(den)
    if c != 1:
        inv = pow(c, -1, p)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


# ---------------------------------------------------------------------------
# evaluation at k-rational points

def as_fraction(ring: RingContext, value) -> Fraction:
    if isinstance(value, Fraction):
        if value.ring != ring:
            raise RingMismatch("coordinate from a different ring")
        return value
    if isinstance(value, int):
        return Fraction.from_int(ring, value)
    if isinstance(value, Polynomial):
        return Fraction(value)
    raise InputError(f"cannot use {value!r} as an element of F_p(v)")


def normalize_point(ring: RingContext, point: Mapping) -> Dict[str, Fraction]:
    """Check that ``point`` assigns every geometric variable and nothing else."""
    coords = {}
    for key, value in point.items():
        b = ring.element(key)
        if b.role is not Role.GEOMETRIC_VARIABLE:
            raise InputError(f"base parameter {b.name!r} cannot be assigned a value")
        coords[b.name] = as_fraction(ring, value)
    missing = [s for s in ring.variables if s not in coords]
    if missing:
        raise IncompleteAssignment(f"no value given for {', '.join(missing)}")
    return {s: coords[s] for s in ring.variables}


class PointEvaluator:
    """Substitution ``x_i -> a_i`` for a fixed point, with cached coordinate powers.

    ``numerator(f)`` returns ``f(a) * prod(den_i ** deg_i(f))`` as a polynomial in
    the base parameters, which vanishes exactly when ``f(a) = 0``; no gcd is needed
    for that test.
    """

    def __init__(self, ring: RingContext, point: Mapping):
        self.ring = ring
        self.point = normalize_point(ring, point)
        self._coords = [(a.num, a.den) for a in self.point.values()]
        self._num_pows = [[ring.one()] for _ in self._coords]
        self._den_pows = [[ring.one()] for _ in self._coords]

    def _pow(self, cache, base, k):
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]

    def _cleared(self, f: Polynomial):
        if f.ring != self.ring:
            raise RingMismatch("polynomial and point belong to different rings")
        ring = self.ring
        m = ring.m
        degs = [f.degree_in(m + i) for i in range(ring.n)]
        zero_tail = (0,) * ring.n
        total = ring.zero()
        for e, c in f.terms.items():
            term = ring.monomial(e[:m] + zero_tail, c)
            for i, (num, den) in enumerate(self._coords):
                k = e[m + i]
                if k:
                    term = term * self._pow(self._num_pows[i], num, k)
                if degs[i] - k and not den.is_constant():
                    term = term * self._pow(self._den_pows[i], den, degs[i] - k)
            total = total + term
        den = ring.one()
        for i, (_, d) in enumerate(self._coords):
            if degs[i] > 0 and not d.is_constant():
                den = den * self._pow(self._den_pows[i], d, degs[i])
        return total, den

    def numerator(self, f: Polynomial) -> Polynomial:
        return self._cleared(f)[0]

    def vanishes(self, f: Polynomial) -> bool:
        return not self._cleared(f)[0].terms

    def __call__(self, f: Polynomial) -> Fraction:
        num, den = self._cleared(f)
        return Fraction(num, den)


def evaluate(f: Polynomial, point: Mapping) -> Fraction:
    """Substitute a ``k``-rational point; base parameters stay symbolic."""
    return PointEvaluator(f.ring, point)(f)
