"""Sparse polynomials over F_p in a distinguished absolute p-basis.

A :class:`RingContext` fixes the prime ``p`` and an ordered basis made of base
parameters ``v_1..v_m`` (transcendental generators of ``k = F_p(v)``) followed by
geometric variables ``x_1..x_n``.  Elements of ``F_p[v, x]`` are stored as a dict
from dense exponent tuples (one slot per basis element) to residues in
``[0, p)``.  Exponent tuples double as the multi-indices of the Hasse operators.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import cached_property
from operator import add
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import CompositeModulus, DuplicateName, InputError, RingMismatch

MultiIndex = Tuple[int, ...]

IDENTIFIER = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
ORDERS = ("grevlex", "lex", "block")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Role(enum.Enum):
    BASE_PARAMETER = "base"
    GEOMETRIC_VARIABLE = "variable"


@dataclass(frozen=True)
class BasisElement:
    name: str
    role: Role
    position: int

    def __str__(self):
        return self.name


def _grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def _lex_key(e):
    return tuple(e)


@dataclass(frozen=True)
class RingContext:
    """``F_p[v_1..v_m, x_1..x_n]`` viewed as a chart of ``F_p(v)[x]``.

    The basis is ``base_params + variables``; position ``i`` of an exponent tuple
    refers to ``basis[i]``.
    """

    p: int
    base_params: Tuple[str, ...] = ()
    variables: Tuple[str, ...] = ()
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "base_params", tuple(self.base_params))
        object.__setattr__(self, "variables", tuple(self.variables))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise CompositeModulus(f"modulus {self.p!r} is not prime")
        seen = set()
        for name in self.base_params + self.variables:
            if not isinstance(name, str) or not IDENTIFIER.match(name):
                raise InputError(f"invalid basis name {name!r}")
            if name in seen:
                raise DuplicateName(f"basis name {name!r} used twice")
            seen.add(name)
        if self.order not in ORDERS:
            raise InputError(f"unknown monomial order {self.order!r}")

    @cached_property
    def basis(self) -> Tuple[BasisElement, ...]:
        m = len(self.base_params)
        return tuple(
            [BasisElement(s, Role.BASE_PARAMETER, i) for i, s in enumerate(self.base_params)]
            + [BasisElement(s, Role.GEOMETRIC_VARIABLE, m + i) for i, s in enumerate(self.variables)]
        )

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return self.base_params + self.variables

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    @property
    def m(self) -> int:
        return len(self.base_params)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def nbasis(self) -> int:
        return len(self.base_params) + len(self.variables)

    @property
    def base_positions(self) -> range:
        return range(0, self.m)

    @property
    def geometric_positions(self) -> range:
        return range(self.m, self.nbasis)

    def position(self, name) -> int:
        if isinstance(name, BasisElement):
            name = name.name
        try:
            return self._positions[name]
        except KeyError:
            raise InputError(f"{name!r} is not a basis element of this ring") from None

    def element(self, name) -> BasisElement:
        return self.basis[self.position(name)]

    def geometric_key(self, order=None):
        """Sort key on the geometric part ``x``-exponents for a monomial order tag."""
        tag = order or self.order
        if tag == "lex":
            return _lex_key
        if tag in ("grevlex", "block"):
            return _grevlex_key
        raise InputError(f"unknown monomial order {tag!r}")

    def term_key(self, order=None):
        """Total order on full exponent tuples: geometric part first, base parameters last."""
        gkey = self.geometric_key(order)
        m = self.m

        def key(e):
            return (gkey(e[m:]), _grevlex_key(e[:m]))

        return key

    # constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return self.monomial((0,) * self.nbasis, c)

    def monomial(self, exps: Sequence[int], c: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def gen(self, name) -> "Polynomial":
        e = [0] * self.nbasis
        e[self.position(name)] = 1
        return Polynomial(self, {tuple(e): 1}, _trusted=True)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(b.name) for b in self.basis)

    def unit_index(self, name, k: int = 1) -> MultiIndex:
        e = [0] * self.nbasis
        e[self.position(name)] = k
        return tuple(e)

    def multi_index(self, index: Mapping | Sequence[int] | None = None) -> MultiIndex:
        """Dense multi-index from a ``{name: exponent}`` mapping or a full tuple."""
        if index is None:
            return (0,) * self.nbasis
        if isinstance(index, Mapping):
            e = [0] * self.nbasis
            for name, k in index.items():
                if k < 0:
                    raise InputError("multi-index entries must be nonnegative")
                e[self.position(name)] += k
            return tuple(e)
        e = tuple(int(k) for k in index)
        if len(e) != self.nbasis or min(e, default=0) < 0:
            raise InputError(f"bad multi-index {index!r} for a basis of size {self.nbasis}")
        return e


def ring_new(p: int, base_params: Iterable[str] = (), variables: Iterable[str] = (),
             order: str = "grevlex") -> RingContext:
    return RingContext(p, tuple(base_params), tuple(variables), order)


class Polynomial:
    """Immutable element of ``F_p[basis]``; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[MultiIndex, int] | None = None,
                 _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        p = ring.p
        nb = ring.nbasis
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nb or min(e, default=0) < 0:
                raise InputError(f"invalid exponent tuple {e!r}")
            c = (clean.get(e, 0) + c) % p
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.terms = clean

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self) -> int:
        return self.terms.get((0,) * self.ring.nbasis, 0)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        """Total degree over the whole basis; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def geometric_degree(self) -> int:
        m = self.ring.m
        return max((sum(e[m:]) for e in self.terms), default=-1)

    def degree_in(self, pos: int) -> int:
        return max((e[pos] for e in self.terms), default=-1)

    def max_exponents(self) -> MultiIndex:
        """Componentwise maximum of the term exponents (zero tuple for f = 0)."""
        if not self.terms:
            return (0,) * self.ring.nbasis
        return tuple(map(max, zip(*self.terms)))

    def support_positions(self) -> set:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def involves_only(self, positions) -> bool:
        allowed = set(positions)
        return self.support_positions() <= allowed

    def sorted_terms(self, order=None):
        """Terms in descending canonical order."""
        key = self.ring.term_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order=None):
        key = self.ring.term_key(order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch("polynomials belong to different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            c = (out.get(e, 0) + c) % p
            if c:
                out[e] = c
            else:
                del out[e]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, _trusted=True)

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

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: a * c % p for e, a in self.terms.items()}, _trusted=True)

    def mul_term(self, exps: MultiIndex, c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(map(add, e, exps)): a * c % p for e, a in self.terms.items()},
            _trusted=True,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return self.mul_term(e, c)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return other.mul_term(e, c)
        p = self.ring.p
        out: Dict[MultiIndex, int] = {}
        get = out.get
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        out = {e: c % p for e, c in out.items() if c % p}
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def frobenius(self, k: int = 1) -> "Polynomial":
        """``f^(p^k)``: coefficients lie in F_p, so only exponents scale."""
        q = self.ring.p ** k
        return Polynomial(
            self.ring, {tuple(a * q for a in e): c for e, c in self.terms.items()}, _trusted=True
        )

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise InputError("exponent must be a nonnegative integer")
        p = self.ring.p
        result = self.ring.one()
        k = 0
        while e:
            e, digit = divmod(e, p)
            if digit:
                base = self.frobenius(k) if k else self
                acc = base
                for _ in range(digit - 1):
                    acc = acc * base
                result = result * acc
            k += 1
        return result

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_pow(f: Polynomial, e: int) -> Polynomial:
    return f ** e


def lucas_binomial(a: Sequence[int], b: Sequence[int], p: int) -> int:
    """Product of binomials ``C(a_i, b_i)`` modulo ``p``, digit by digit (Lucas)."""
    result = 1
    for i in range(max(len(a), len(b))):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        if y > x:
            return 0
        while y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            if dy > dx:
                return 0
            result = result * math.comb(dx, dy) % p
    return result % p


def p_power_decompose(f: Polynomial) -> Dict[MultiIndex, Polynomial]:
    """Unique ``{alpha: g_alpha}`` with ``f = sum g_alpha^p * B^alpha`` and ``0 <= alpha_i < p``."""
    ring = f.ring
    p = ring.p
    parts: Dict[MultiIndex, Dict[MultiIndex, int]] = {}
    for e, c in f.terms.items():
        r = tuple(a % p for a in e)
        q = tuple(a // p for a in e)
        # c^p = c in F_p, so the p-th root of c*B^(pq) is c*B^q
        parts.setdefault(r, {})[q] = c
    key = ring.term_key()
    return {
        r: Polynomial(ring, terms, _trusted=True)
        for r, terms in sorted(parts.items(), key=lambda t: key(t[0]))
    }


def p_power_reconstruct(parts: Mapping[MultiIndex, Polynomial], ring: RingContext) -> Polynomial:
    total = ring.zero()
    for alpha, g in parts.items():
        total = total + g.frobenius().mul_term(alpha)
    return total
