"""Regularity and order loci over non-perfect fields ``F_p(v_1..v_m)``.

Polynomials live in ``F_p[v, x]`` with the canonical absolute p-basis
``{v_1..v_m, x_1..x_n}``; the Hasse-type operators of that basis drive the
extended Jacobian criterion and the differential description of order loci.
"""

from .diffops import DiffOperator, apply, compose_scalar, decompose_blackbox, hasse, partial, taylor_hasse
from .errors import CharpError, InputError, MathError
from .fields import Fraction, evaluate, poly_gcd
from .groebner import GroebnerBasis, Ideal, MonomialOrder, buchberger, dimension, ideal_equal, member, minors, normal_form
from .jacobian import (
    PrimeGenerators,
    RationalPoint,
    extended_jacobian,
    finite_support,
    quotient_p_basis,
    rank_mod_prime,
    refit_p_basis,
    regularity_test,
    singular_locus,
)
from .orderloci import INFINITY, diff_saturate, ideal_order_at, oracle_order_at_point, order_at, order_locus, stratify
from .parsing import format_poly, parse_poly
from .polyring import BasisElement, Polynomial, RingContext, lucas_binomial, p_power_decompose, ring_new

__version__ = "0.1.0"

__all__ = [
    "BasisElement", "CharpError", "DiffOperator", "Fraction", "GroebnerBasis", "INFINITY", "Ideal",
    "InputError", "MathError", "MonomialOrder", "Polynomial", "PrimeGenerators", "RationalPoint",
    "RingContext", "apply", "buchberger", "compose_scalar", "decompose_blackbox", "diff_saturate",
    "dimension", "evaluate", "extended_jacobian", "finite_support", "format_poly", "hasse",
    "ideal_equal", "ideal_order_at", "lucas_binomial", "member", "minors", "normal_form",
    "oracle_order_at_point", "order_at", "order_locus", "p_power_decompose", "parse_poly", "partial",
    "poly_gcd", "quotient_p_basis", "rank_mod_prime", "refit_p_basis", "regularity_test", "ring_new",
    "singular_locus", "stratify", "taylor_hasse",
]
