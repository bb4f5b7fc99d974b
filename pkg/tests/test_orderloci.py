import itertools
import random

import pytest

from charp.diffops import hasse, indices_up_to
from charp.errors import InputError, UnverifiedPrime
from charp.fields import Fraction, evaluate
from charp.groebner import Ideal, member
from charp.jacobian import PrimeGenerators, RationalPoint, generic_point, origin, point
from charp.orderloci import (
    INFINITY,
    diff_saturate,
    ideal_order_at,
    oracle_order_at_point,
    order_at,
    order_locus,
    stratify,
)
from charp.parsing import parse_poly
from charp.polyring import ring_new

from helpers import random_point, random_poly, vanish_at


def _ideal(ring, *texts):
    return Ideal(ring, tuple(parse_poly(t, ring) for t in texts))


def _strs(polys):
    return [str(g) for g in polys]


# diff_saturate

def test_saturate_example(ex53):
    sat = diff_saturate(_ideal(ex53, "x^2+v*y^2"), 1)
    assert _strs(sat.generators) == ["x^2+v*y^2", "y^2"]
    assert sat.provenance == ((0, (0, 0, 0)), (0, (1, 0, 0)))


def test_saturate_order_zero(ex53):
    I = _ideal(ex53, "x^2+v*y^2", "x*y")
    assert diff_saturate(I, 0).generators == I.generators


def test_saturate_cube_p2():
    R = ring_new(2, [], ["x"])
    sat = diff_saturate(_ideal(R, "x^3"), 2)
    assert _strs(sat.generators) == ["x^3", "x^2", "x"]


def test_saturate_keeps_zero_generator(ex53):
    sat = diff_saturate(Ideal(ex53, (ex53.zero(), ex53.gen("x"))), 1)
    assert sat.provenance[0] == (0, (0, 0, 0))
    with pytest.raises(InputError):
        diff_saturate(Ideal(ex53, ()), -1)


def test_saturate_threads_agree(rng):
    R = ring_new(3, ["v"], ["x", "y"])
    I = Ideal(R, tuple(random_poly(R, rng, 5, 5) for _ in range(4)))
    assert diff_saturate(I, 3, threads=4) == diff_saturate(I, 3)


def test_saturation_monotone(rng):
    for p in (2, 3, 5):
        R = ring_new(p, ["v"], ["x", "y"])
        for _ in range(10):
            I = Ideal(R, tuple(random_poly(R, rng, 5, 5) for _ in range(2)))
            for n in range(4):
                lo, hi = diff_saturate(I, n), diff_saturate(I, n + 1)
                assert set(lo.provenance) <= set(hi.provenance)
                assert set(lo.generators) <= set(hi.generators)


# order_at

@pytest.mark.parametrize("p", [2, 3, 5])
def test_order_standard_hypersurface(p):
    R = ring_new(p, ["v"], ["x", "y"])
    f = R.gen("x") ** p + R.gen("v") * R.gen("y") ** p
    assert order_at(f, origin(R)) == p
    assert oracle_order_at_point(f, {"x": 0, "y": 0}) == p
    assert order_at(f, generic_point([f])) == 1


def test_order_nonvanishing(ex53):
    f = parse_poly("x^2+v*y^2", ex53)
    assert order_at(f, point(ex53, x=1, y=0)) == 0
    assert order_at(ex53.one(), origin(ex53)) == 0
    assert oracle_order_at_point(ex53.one(), {"x": 0, "y": 0}) == 0


def test_order_zero_is_infinite(ex53):
    assert order_at(ex53.zero(), origin(ex53)) == INFINITY
    assert ideal_order_at(Ideal(ex53, (ex53.zero(),)), origin(ex53)) == INFINITY
    assert oracle_order_at_point(ex53.zero(), {"x": 0, "y": 0}) == INFINITY


def test_order_unverified(ex53):
    f = parse_poly("x^2+v*y^2", ex53)
    with pytest.raises(UnverifiedPrime):
        order_at(f, PrimeGenerators(Ideal(ex53, (f,))))


def test_ideal_order_examples(ex53):
    assert ideal_order_at(_ideal(ex53, "x", "y^2"), origin(ex53)) == 1
    assert ideal_order_at(_ideal(ex53, "x^2+v*y^2"), origin(ex53)) == 2


def test_oracle_shifted_point():
    R = ring_new(3, ["v"], ["x", "y"])
    f = parse_poly("(x-1)^2 + v*y", R)
    assert oracle_order_at_point(f, {"x": 1, "y": 0}) == 1
    assert order_at(f, point(R, x=1, y=0)) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_order_matches_oracle(p):
    rng = random.Random(7 * p)
    R = ring_new(p, ["u", "v"], ["x", "y", "z"])
    for _ in range(20):
        f = random_poly(R, rng, 6, 5)
        for _ in range(3):
            coords = random_point(R, rng)
            g = vanish_at(f, coords) if rng.random() < 0.7 else f
            assert order_at(g, RationalPoint(R, coords)) == oracle_order_at_point(g, coords)


def test_order_is_additive(rng):
    for p in (2, 3, 5):
        R = ring_new(p, ["v"], ["x", "y"])
        for _ in range(15):
            coords = random_point(R, rng)
            P = RationalPoint(R, coords)
            f = vanish_at(random_poly(R, rng, 3, 4), coords)
            g = vanish_at(random_poly(R, rng, 3, 4), coords)
            if not f.terms or not g.terms:
                continue
            assert order_at(f * g, P) == order_at(f, P) + order_at(g, P)
            assert oracle_order_at_point(f * g, coords) == order_at(f * g, P)


def test_localization_pe_linear(rng):
    for p in (2, 3):
        R = ring_new(p, ["v"], ["x", "y"])
        for _ in range(10):
            s, f = random_poly(R, rng, 2, 3), random_poly(R, rng, 4, 4)
            for e in (1, 2):
                q = p ** e
                for beta in indices_up_to((q, q, q), q - 1):
                    assert hasse(s ** q * f, beta) == s ** q * hasse(f, beta)


# order_locus / stratify

def test_order_locus_examples(ex53):
    I = _ideal(ex53, "x^2+v*y^2")
    assert _strs(order_locus(I, 2).generators) == ["x^2+v*y^2", "y^2"]
    assert order_locus(I, 1).generators == I.generators
    R = ring_new(5, [], ["x"])
    L = order_locus(_ideal(R, "x^3"), 3)
    assert _strs(L.generators) == ["x^3", "3*x^2", "3*x"]
    assert _strs(order_locus(_ideal(R, "x^3"), 3, reduce=True).generators) == ["x"]
    with pytest.raises(InputError):
        order_locus(I, 0)


def test_order_locus_vanishes_iff_order(rng):
    for p in (2, 3, 5):
        R = ring_new(p, ["v"], ["x", "y"])
        for _ in range(10):
            coords = random_point(R, rng)
            f = vanish_at(random_poly(R, rng, 4, 4), coords)
            if rng.random() < 0.3:
                f = f * f
            P = RationalPoint(R, coords)
            ord_f = order_at(f, P)
            for N in range(1, 5):
                vanish = all(not evaluate(g, coords) for g in order_locus(Ideal(R, (f,)), N).generators)
                assert vanish == (ord_f >= N)


def test_stratify_example(ex53):
    levels = stratify(_ideal(ex53, "x^2+v*y^2"), 3)
    assert [N for N, _ in levels] == [1, 2, 3]
    assert _strs(levels[0][1].generators) == ["x^2+v*y^2"]
    assert _strs(levels[1][1].generators) == ["x^2+v*y^2", "y^2"]
    top = levels[2][1]
    assert ex53.one() in top.generators
    assert member(ex53.one(), top.ideal(ex53))


def test_stratify_hyperplane_and_zero(ex53):
    levels = stratify(_ideal(ex53, "x"), 2)
    assert member(ex53.one(), levels[1][1].ideal(ex53))
    for _, sat in stratify(Ideal(ex53, (ex53.zero(),)), 3):
        assert all(not g.terms for g in sat.generators)
    with pytest.raises(InputError):
        stratify(_ideal(ex53, "x"), 0)


def test_stratify_chain_and_grid(rng):
    R = ring_new(3, ["v"], ["x", "y"])
    v = Fraction(R.gen("v"))
    grid = [Fraction.from_int(R, c) for c in range(3)] + [v, v + 1]
    for _ in range(6):
        I = Ideal(R, tuple(random_poly(R, rng, 4, 4) for _ in range(2)))
        levels = stratify(I, 4)
        for (_, lo), (_, hi) in zip(levels, levels[1:]):
            assert set(lo.generators) <= set(hi.generators)
        for a, b in itertools.product(grid, repeat=2):
            coords = {"x": a, "y": b}
            order = ideal_order_at(I, RationalPoint(R, coords))
            for N, sat in levels:
                vanish = all(not evaluate(g, coords) for g in sat.generators)
                assert vanish == (order >= N)
