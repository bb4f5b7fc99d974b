"""Extended Jacobian criterion for regularity over ``k = F_p(v)``.

The Jacobian here has a column for every basis element whose partial derivative
does not kill all generators, so base parameters such as ``v`` contribute
columns alongside the geometric variables.  Primes are either ``k``-rational
points (membership by evaluation) or generator lists trusted to be prime
(membership by normal form).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from .diffops import partial
from .errors import (
    BadHeight,
    InputError,
    NoMinorsWarning,
    PrimeDoesNotContainIdeal,
    RankDeficient,
    RingMismatch,
    UnverifiedPrime,
)
from .fields import Fraction, PointEvaluator, normalize_point
from .groebner import GroebnerBasis, Ideal, buchberger, determinant, member, minor_indices
from .polyring import BasisElement, Polynomial, RingContext


@dataclass(frozen=True, eq=False)
class RationalPoint:
    """The maximal ideal ``<x_i - a_i>`` of a point with coordinates in ``k``."""

    ring: RingContext
    coords: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coords", normalize_point(self.ring, self.coords))

    @cached_property
    def evaluator(self) -> PointEvaluator:
        return PointEvaluator(self.ring, self.coords)

    def contains(self, f: Polynomial) -> bool:
        return self.evaluator.vanishes(f)


@dataclass(frozen=True, eq=False)
class PrimeGenerators:
    """A prime given by generators; primality is asserted by the caller, never checked."""

    ideal: Ideal
    asserted_prime: bool = False

    @property
    def ring(self) -> RingContext:
        return self.ideal.ring

    @cached_property
    def basis(self) -> GroebnerBasis:
        return buchberger(self.ideal)

    def contains(self, f: Polynomial) -> bool:
        if not self.asserted_prime:
            raise UnverifiedPrime("generator primes must be asserted prime")
        return member(f, self.basis)


PrimeSpec = Union[RationalPoint, PrimeGenerators]


def prime_contains(P: PrimeSpec, f: Polynomial) -> bool:
    if f.ring != P.ring:
        raise RingMismatch("polynomial and prime belong to different rings")
    return P.contains(f)


def _check_prime(P: PrimeSpec):
    if isinstance(P, PrimeGenerators) and not P.asserted_prime:
        raise UnverifiedPrime("generator primes must be asserted prime")


@dataclass(frozen=True)
class JacobianMatrix:
    rows: Tuple[Tuple[Polynomial, ...], ...]
    columns: Tuple[BasisElement, ...]

    @property
    def shape(self):
        return len(self.rows), len(self.columns)


@dataclass(frozen=True)
class RegularityReport:
    rank_mod_P: int
    r: int
    regular: bool
    witness: Optional[Tuple[Tuple[int, ...], Tuple[str, ...]]] = None

    def as_record(self) -> dict:
        return {
            "rank": self.rank_mod_P,
            "r": self.r,
            "regular": self.regular,
            "witness_rows": list(self.witness[0]) if self.witness else None,
            "witness_cols": list(self.witness[1]) if self.witness else None,
        }


@dataclass(frozen=True)
class BasisRefit:
    removed: Tuple[BasisElement, ...]
    kept: Tuple[BasisElement, ...]
    parameters: Tuple[Polynomial, ...]
    localizer: Polynomial


@dataclass(frozen=True)
class QuotientBasis:
    """Basis of ``C_g = A_f / <z_1..z_r>``: kept basis elements plus classes of ``z_{r+1..d}``."""

    refit: BasisRefit
    ideal: Ideal
    base_elements: Tuple[BasisElement, ...]
    parameter_classes: Tuple[Polynomial, ...]
    localizer: Polynomial = field(default=None)


def _same_ring(gens: Sequence[Polynomial]) -> RingContext:
    if not gens:
        raise InputError("need at least one polynomial")
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring != ring:
            raise RingMismatch("generators belong to different rings")
    return ring


def finite_support(gens: Sequence[Polynomial]) -> List[BasisElement]:
    if not gens:
        return []
    ring = _same_ring(gens)
    return [b for b in ring.basis if any(partial(f, b).terms for f in gens)]


def extended_jacobian(gens: Sequence[Polynomial]) -> JacobianMatrix:
    cols = finite_support(gens)
    rows = tuple(tuple(partial(f, b) for b in cols) for f in gens)
    return JacobianMatrix(rows, tuple(cols))


def _full_jacobian(gens: Sequence[Polynomial]) -> JacobianMatrix:
    ring = _same_ring(gens)
    rows = tuple(tuple(partial(f, b) for b in ring.basis) for f in gens)
    return JacobianMatrix(rows, ring.basis)


def _reduced_matrix(M: JacobianMatrix, P: PrimeSpec):
    """Entries as values mod ``P`` when cheap: field elements at a point, else polynomials."""
    if isinstance(P, RationalPoint):
        ev = P.evaluator
        return [[ev(a) for a in row] for row in M.rows]
    return [list(row) for row in M.rows]


def _minor_survives(sub_m, P: PrimeSpec) -> bool:
    d = determinant(sub_m)
    if isinstance(d, Fraction):
        return bool(d)
    if isinstance(d, int):
        return bool(d % P.ring.p)
    return not P.contains(d)


def _first_surviving_minor(values, size, P):
    rows = len(values)
    cols = len(values[0]) if rows else 0
    for ri, ci in minor_indices(rows, cols, size):
        if _minor_survives([[values[i][j] for j in ci] for i in ri], P):
            return ri, ci
    return None


def rank_mod_prime(M: JacobianMatrix, P: PrimeSpec) -> int:
    return _rank_and_values(M, P)[0]


def _rank_and_values(M: JacobianMatrix, P: PrimeSpec):
    _check_prime(P)
    values = _reduced_matrix(M, P)
    rows, cols = M.shape
    rank = 0
    # some r x r minor survives => some (r-1) x (r-1) minor survives (Laplace)
    for size in range(1, min(rows, cols) + 1):
        if _first_surviving_minor(values, size, P) is None:
            break
        rank = size
    return rank, values


def regularity_test(gens: Sequence[Polynomial], P: PrimeSpec, r: int) -> RegularityReport:
    """Regularity of ``(A/J)_P`` given ``r = height(J A_P)``."""
    _check_prime(P)
    ring = _same_ring(gens)
    if ring != P.ring:
        raise RingMismatch("generators and prime belong to different rings")
    if r < 0:
        raise BadHeight("height must be nonnegative")
    for f in gens:
        if not P.contains(f):
            raise PrimeDoesNotContainIdeal(f"generator {f} is not in the prime")
    M = extended_jacobian(gens)
    rank, values = _rank_and_values(M, P)
    witness = None
    if rank >= r:
        hit = _first_surviving_minor(values, r, P) if r else ((), ())
        if hit is not None:
            ri, ci = hit
            witness = (tuple(ri), tuple(M.columns[j].name for j in ci))
    return RegularityReport(rank, r, rank == r, witness)


def singular_locus(gens: Sequence[Polynomial], r: int, strict: bool = False) -> Ideal:
    """``J + (r x r minors of the extended Jacobian)``; its zero set in ``V(J)`` is the non-regular locus.

    When ``r`` exceeds the Jacobian size no minors exist: the result is ``<gens>``
    and a :class:`NoMinorsWarning` is issued (``strict=True`` raises ``BadHeight``).
    """
    ring = _same_ring(gens)
    if r < 1 or r > len(gens):
        raise BadHeight(f"height {r} impossible for {len(gens)} generator(s)")
    M = extended_jacobian(gens)
    rows, cols = M.shape
    if r > cols:
        if strict:
            raise BadHeight(f"no {r}x{r} minors in a {rows}x{cols} Jacobian")
        warnings.warn(NoMinorsWarning(f"no {r}x{r} minors in a {rows}x{cols} Jacobian"),
                      stacklevel=2)
        return Ideal(ring, tuple(gens))
    out = list(gens)
    seen = set(out)
    for ri, ci in minor_indices(rows, cols, r):
        d = determinant([[M.rows[i][j] for j in ci] for i in ri])
        if d.terms and d not in seen:
            seen.add(d)
            out.append(d)
    return Ideal(ring, tuple(out))


def refit_p_basis(params: Sequence[Polynomial], P: PrimeSpec) -> BasisRefit:
    """Swap ``d`` basis elements for the parameters ``z_1..z_d`` on a chart around ``P``.

    Picks the first column tuple (lexicographic in basis positions) whose minor of
    ``(dz_i/db_j)`` is not in ``P``; that minor is the localizer.
    """
    _check_prime(P)
    ring = _same_ring(params)
    if ring != P.ring:
        raise RingMismatch("parameters and prime belong to different rings")
    M = _full_jacobian(params)
    d = len(params)
    for ci in itertools.combinations(range(ring.nbasis), d):
        det = determinant([[M.rows[i][j] for j in ci] for i in range(d)])
        if det.terms and not P.contains(det):
            removed = tuple(ring.basis[j] for j in ci)
            kept = tuple(b for b in ring.basis if b not in removed)
            return BasisRefit(removed, kept, tuple(params), det)
    raise RankDeficient("no d x d minor of the parameter Jacobian survives modulo the prime")


def quotient_p_basis(params: Sequence[Polynomial], r: int, P: PrimeSpec) -> QuotientBasis:
    if not 0 <= r <= len(params):
        raise BadHeight(f"r={r} outside 0..{len(params)}")
    refit = refit_p_basis(params, P)
    ring = P.ring
    return QuotientBasis(
        refit=refit,
        ideal=Ideal(ring, tuple(params[:r])),
        base_elements=refit.kept,
        parameter_classes=tuple(params[r:]),
        localizer=refit.localizer,
    )


def point(ring: RingContext, **coords) -> RationalPoint:
    """Shorthand: ``point(R, x=0, y=R.gen('v'))``."""
    return RationalPoint(ring, coords)


def origin(ring: RingContext) -> RationalPoint:
    return RationalPoint(ring, {s: 0 for s in ring.variables})


def generic_point(gens: Sequence[Polynomial]) -> PrimeGenerators:
    ring = _same_ring(gens)
    return PrimeGenerators(Ideal(ring, tuple(gens)), asserted_prime=True)
