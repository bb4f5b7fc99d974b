"""Hasse-type differential operators attached to the canonical p-basis.

For a multi-index ``beta`` over the basis, ``D^beta`` acts on monomials by
``D^beta(B^alpha) = C(alpha, beta) * B^(alpha - beta)`` with the binomial taken
mod p.  :func:`hasse` uses that closed form; :func:`taylor_hasse` recomputes the
same operator by literally expanding ``f(B + T)`` and reading off the
coefficient of ``T^beta``, and serves as the independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from operator import add, sub
from typing import Callable, Dict, Iterator, Mapping

from .errors import InputError, OrderViolation, RingMismatch
from .polyring import (
    BasisElement,
    MultiIndex,
    Polynomial,
    RingContext,
    lucas_binomial,
    ring_new,
)


def _check_beta(ring: RingContext, beta) -> MultiIndex:
    if isinstance(beta, Mapping):
        return ring.multi_index(beta)
    beta = tuple(beta)
    if len(beta) != ring.nbasis or min(beta, default=0) < 0:
        raise InputError(f"bad multi-index {beta!r}")
    return beta


def hasse(f: Polynomial, beta) -> Polynomial:
    ring = f.ring
    beta = _check_beta(ring, beta)
    if not any(beta):
        return f
    p = ring.p
    out: Dict[MultiIndex, int] = {}
    for alpha, c in f.terms.items():
        b = lucas_binomial(alpha, beta, p)
        if b:
            e = tuple(map(sub, alpha, beta))
            v = (out.get(e, 0) + c * b) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Polynomial(ring, out, _trusted=True)


def taylor_hasse(f: Polynomial, beta) -> Polynomial:
    """``D^beta(f)`` via the Taylor expansion ``f(B + T) = sum_gamma D^gamma(f) T^gamma``."""
    ring = f.ring
    beta = _check_beta(ring, beta)
    active = [i for i, k in enumerate(beta) if k]
    shifts = []
    for i in active:
        name = f"t{i}"
        while name in ring.names or name in shifts:
            name += "_"
        shifts.append(name)
    big = ring_new(ring.p, ring.base_params, ring.variables + tuple(shifts))
    nb = ring.nbasis
    pad = (0,) * len(active)
    shifted = {}
    for j, i in enumerate(active):
        e = [0] * big.nbasis
        e[i] = 1
        t = [0] * big.nbasis
        t[nb + j] = 1
        shifted[i] = Polynomial(big, {tuple(e): 1, tuple(t): 1})
    powers = {i: [big.one()] for i in active}

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * shifted[i])
        return cache[k]

    expanded = big.zero()
    for alpha, c in f.terms.items():
        if any(alpha[i] < beta[i] for i in active):
            # the T^beta coefficient needs t_i-degree beta_i
            continue
        rest = list(alpha) + list(pad)
        for i in active:
            rest[i] = 0
        term = big.monomial(rest, c)
        for i in active:
            term = term * power(i, alpha[i])
        expanded = expanded + term
    target = tuple(beta[i] for i in active)
    out = {}
    for e, c in expanded.terms.items():
        if e[nb:] == target:
            out[e[:nb]] = c
    return Polynomial(ring, out, _trusted=True)


def partial(f: Polynomial, b) -> Polynomial:
    """First-order derivative with respect to the basis element ``b``."""
    ring = f.ring
    name = b.name if isinstance(b, BasisElement) else b
    return hasse(f, ring.unit_index(name))


def compose_scalar(beta: MultiIndex, beta2: MultiIndex, p: int) -> int:
    """Scalar ``c`` with ``D^beta o D^beta2 = c * D^(beta + beta2)``."""
    total = tuple(map(add, beta, beta2))
    return lucas_binomial(total, beta, p)


def order(beta: MultiIndex) -> int:
    return sum(beta)


def indices_up_to(bound: MultiIndex, n: int) -> Iterator[MultiIndex]:
    """All ``beta <= bound`` with ``|beta| <= n``, by increasing order then lex."""
    ranges = [range(min(b, n) + 1) for b in bound]
    by_order: Dict[int, list] = {}
    for beta in product(*ranges):
        s = sum(beta)
        if s <= n:
            by_order.setdefault(s, []).append(beta)
    for s in sorted(by_order):
        yield from sorted(by_order[s], reverse=True)


def indices_of_order(nbasis: int, n: int) -> Iterator[MultiIndex]:
    """All multi-indices of order exactly ``n`` over ``nbasis`` slots."""
    if nbasis == 0:
        if n == 0:
            yield ()
        return
    for first in range(n, -1, -1):
        for rest in indices_of_order(nbasis - 1, n - first):
            yield (first,) + rest


@dataclass(frozen=True)
class DiffOperator:
    """``sum_beta c_beta * D^beta`` with polynomial coefficients."""

    ring: RingContext
    coefficients: Mapping[MultiIndex, Polynomial] = field(default_factory=dict)
    declared_order: int = 0

    def __post_init__(self):
        coeffs = {}
        for beta, c in self.coefficients.items():
            beta = _check_beta(self.ring, beta)
            if isinstance(c, int):
                c = self.ring.constant(c)
            if c.ring != self.ring:
                raise RingMismatch("operator coefficient from a different ring")
            if sum(beta) > self.declared_order:
                raise InputError(f"index {beta} exceeds declared order {self.declared_order}")
            if c.terms:
                coeffs[beta] = c
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)


def apply(op: DiffOperator, f: Polynomial) -> Polynomial:
    if f.ring != op.ring:
        raise RingMismatch("operator and polynomial belong to different rings")
    total = op.ring.zero()
    for beta, c in op.coefficients.items():
        d = hasse(f, beta)
        if d.terms:
            total = total + c * d
    return total


def decompose_blackbox(delta: Callable[[Polynomial], Polynomial], n: int,
                       degree_bound: int, ring: RingContext) -> DiffOperator:
    """Recover ``delta = sum_{|beta| <= n} c_beta D^beta`` from its values on monomials.

    ``c_beta = sum_{gamma <= beta} C(beta, gamma) (-1)^|gamma| B^gamma delta(B^(beta-gamma))``.
    The result is then checked against ``delta`` on every monomial of total degree
    at most ``degree_bound - n``; a mismatch means ``delta`` has order above ``n``.
    """
    if n < 0 or degree_bound < n:
        raise InputError("need 0 <= n <= degree_bound")
    p = ring.p
    nb = ring.nbasis
    images: Dict[MultiIndex, Polynomial] = {}

    def image(alpha):
        if alpha not in images:
            out = delta(ring.monomial(alpha))
            if not isinstance(out, Polynomial) or out.ring != ring:
                raise RingMismatch("operator returned a value outside the ring")
            images[alpha] = out
        return images[alpha]

    coeffs = {}
    for k in range(n + 1):
        for beta in indices_of_order(nb, k):
            c = ring.zero()
            for gamma in product(*(range(b + 1) for b in beta)):
                binom = lucas_binomial(beta, gamma, p)
                if not binom:
                    continue
                if sum(gamma) % 2:
                    binom = p - binom
                img = image(tuple(map(sub, beta, gamma)))
                if img.terms:
                    c = c + img.mul_term(gamma, binom)
            if c.terms:
                coeffs[beta] = c
    op = DiffOperator(ring, coeffs, n)
    for k in range(degree_bound - n + 1):
        for alpha in indices_of_order(nb, k):
            if apply(op, ring.monomial(alpha)) != image(alpha):
                raise OrderViolation(
                    f"operator disagrees with its order-{n} decomposition on monomial {alpha}")
    return op
