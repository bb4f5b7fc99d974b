"""Random generators shared by the test modules."""


from charp.polyring import Polynomial, ring_new


def random_exponent(rng, nvars, max_deg):
    """Uniform-ish exponent tuple with total degree <= max_deg."""
    budget = rng.randint(0, max_deg)
    e = [0] * nvars
    for _ in range(budget):
        if nvars:
            e[rng.randrange(nvars)] += 1
    return tuple(e)


def random_poly(ring, rng, max_deg=4, max_terms=5):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[random_exponent(rng, ring.nbasis, max_deg)] = rng.randrange(ring.p)
    return Polynomial(ring, terms)


def random_base_poly(ring, rng, max_deg=2, max_terms=3):
    """Polynomial in the base parameters only."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = random_exponent(rng, ring.m, max_deg) + (0,) * ring.n
        terms[e] = rng.randrange(ring.p)
    return Polynomial(ring, terms)


def random_ring(rng, p=None, max_base=2, max_vars=3):
    p = p or rng.choice([2, 3, 5])
    m = rng.randint(0, max_base)
    n = rng.randint(1, max_vars)
    return ring_new(p, [f"v{i}" for i in range(1, m + 1)], [f"x{i}" for i in range(1, n + 1)])


def random_point(ring, rng, max_deg=1):
    """Coordinates in k: quotients of small base-parameter polynomials."""
    from charp.fields import Fraction

    coords = {}
    for name in ring.variables:
        num = random_base_poly(ring, rng, max_deg, 2)
        den = random_base_poly(ring, rng, max_deg, 2)
        coords[name] = Fraction(num, den) if den.terms and rng.random() < 0.4 else Fraction(num)
    return coords


def vanish_at(g, coords):
    """``d*g - n`` where ``g(a) = n/d``: the hypersurface through ``a`` cut out by ``g``."""
    from charp.fields import evaluate

    value = evaluate(g, coords)
    return g * value.den - value.num


def dense_poly(ring, rng, max_deg=4, max_terms=5):
    """Nonzero polynomial with between 1 and ``max_terms`` nonzero terms."""
    terms = {}
    while len(terms) < rng.randint(1, max_terms):
        terms[random_exponent(rng, ring.nbasis, max_deg)] = rng.randrange(1, ring.p)
    return Polynomial(ring, terms)
