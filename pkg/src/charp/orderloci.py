"""Order of elements and ideals at primes, differential saturation, order loci.

``ord_P(f) >= N`` holds exactly when every ``D^beta(f)`` with ``|beta| < N`` lies
in ``P``, so the order is the least ``|beta|`` with ``D^beta(f)`` outside ``P``.
Only ``beta`` below the componentwise maximum exponent of ``f`` can give a
nonzero value, which keeps every search finite.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Mapping, Tuple

from .diffops import hasse, indices_up_to
from .errors import InputError
from .groebner import Ideal, buchberger
from .jacobian import PrimeSpec, _check_prime
from .polyring import MultiIndex, Polynomial, Role

INFINITY = math.inf


@dataclass(frozen=True)
class SaturationResult:
    n: int
    generators: Tuple[Polynomial, ...]
    provenance: Tuple[Tuple[int, MultiIndex], ...]

    def ideal(self, ring) -> Ideal:
        return Ideal(ring, self.generators)


def _derivatives(f: Polynomial, n: int):
    out = []
    for beta in indices_up_to(f.max_exponents(), n):
        d = hasse(f, beta)
        if d.terms or not any(beta):
            out.append((beta, d))
    return out


def diff_saturate(ideal: Ideal, n: int, threads: int = 1) -> SaturationResult:
    """Generators ``D^beta(f_i)`` for ``|beta| <= n``, labelled ``(i, beta)``."""
    if n < 0:
        raise InputError("saturation order must be nonnegative")
    gens = ideal.generators
    if threads > 1 and len(gens) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_gen = list(pool.map(lambda f: _derivatives(f, n), gens))
    else:
        per_gen = [_derivatives(f, n) for f in gens]
    polys, labels = [], []
    for i, items in enumerate(per_gen):
        for beta, d in items:
            polys.append(d)
            labels.append((i, beta))
    return SaturationResult(n, tuple(polys), tuple(labels))


def order_at(f: Polynomial, P: PrimeSpec):
    """``ord_P(f)``; ``INFINITY`` for ``f = 0``."""
    _check_prime(P)
    if not f.terms:
        return INFINITY
    for beta in indices_up_to(f.max_exponents(), f.degree()):
        d = hasse(f, beta)
        if d.terms and not P.contains(d):
            return sum(beta)
    # unreachable for proper primes: D^alpha(f) is a nonzero constant for maximal alpha
    raise InputError("prime contains a unit")


def ideal_order_at(ideal: Ideal, P: PrimeSpec):
    _check_prime(P)
    return min((order_at(f, P) for f in ideal.generators), default=INFINITY)


def order_locus(ideal: Ideal, N: int, reduce: bool = False) -> Ideal:
    """Ideal whose zero set is ``{P : ord_P(I) >= N}``."""
    if N < 1:
        raise InputError("N must be at least 1")
    sat = diff_saturate(ideal, N - 1)
    out = Ideal(ideal.ring, sat.generators)
    if reduce:
        out = Ideal(ideal.ring, tuple(buchberger(out).polynomials()))
    return out


def stratify(ideal: Ideal, n_max: int, threads: int = 1) -> List[Tuple[int, SaturationResult]]:
    """Order loci for ``N = 1..n_max`` as saturations of order ``N - 1``."""
    if n_max < 1:
        raise InputError("N_max must be at least 1")
    return [(N, diff_saturate(ideal, N - 1, threads)) for N in range(1, n_max + 1)]


def oracle_order_at_point(f: Polynomial, point: Mapping):
    """Order at a rational point by translating it to the origin.

    With ``a_i = n_i/d_i``, ``f(x + a) * prod d_i^deg_i`` is expanded exactly; the
    base parameters are units of ``k``, so the order is the least total degree in
    the geometric variables among the surviving terms.
    """
    from .fields import normalize_point

    ring = f.ring
    if not f.terms:
        return INFINITY
    coords = normalize_point(ring, point)
    m = ring.m
    shifted = ring.zero()
    for e, c in f.terms.items():
        term = ring.monomial(e[:m] + (0,) * ring.n, c)
        for i, name in enumerate(ring.variables):
            a = coords[name]
            pos = m + i
            k = e[pos]
            factor = ring.gen(name) * a.den + a.num
            for _ in range(k):
                term = term * factor
            for _ in range(f.degree_in(pos) - k):
                term = term * a.den
        shifted = shifted + term
    geometric = [b.position for b in ring.basis if b.role is Role.GEOMETRIC_VARIABLE]
    return min((sum(e[j] for j in geometric) for e in shifted.terms), default=INFINITY)
