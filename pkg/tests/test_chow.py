"""Chow rings of multiprojective spaces and projective bundles."""

import itertools
import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from enriqueslab.chow import GradingError, format_class, integrate, make_bundle_ring, make_multiproj


def brute_product(dims, f, g):
    """Truncated polynomial product on plain exponent dicts (oracle)."""
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if all(x <= n for x, n in zip(e, dims)):
                out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def random_dict(rng, dims, nterms=4):
    d = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, n) for n in dims)
        d[e] = d.get(e, 0) + rng.randint(-5, 5)
    return {e: c for e, c in d.items() if c}


DIMS = st.lists(st.integers(0, 3), min_size=1, max_size=3)


@st.composite
def ring_and_classes(draw, k=3):
    dims = draw(DIMS)
    ring = make_multiproj(dims)
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    return ring, dims, [random_dict(rng, dims) for _ in range(k)]


@given(ring_and_classes())
def test_ring_axioms(data):
    ring, dims, (f, g, k) = data
    F, G, K = (ring.from_terms(d) for d in (f, g, k))
    assert F * G == G * F
    assert (F * G) * K == F * (G * K)
    assert F * (G + K) == F * G + F * K
    assert F + ring.zero() == F and F * ring.one() == F
    assert F - F == ring.zero()


@given(ring_and_classes(k=2))
def test_product_matches_brute_force(data):
    ring, dims, (f, g) = data
    assert (ring.from_terms(f) * ring.from_terms(g)).terms == brute_product(dims, f, g)


@given(DIMS)
def test_nilpotency(dims):
    ring = make_multiproj(dims)
    for n, x in zip(dims, ring.gens()):
        assert x ** (n + 1) == 0
        assert x ** n != 0
    assert (sum(ring.gens(), ring.zero())) ** (sum(dims) + 1) == 0


def test_integrals_of_products_of_projective_spaces():
    ring = make_multiproj([1, 2, 2])
    h, a, b = ring.gens()
    assert integrate(h * a ** 2 * b ** 2) == 1
    assert integrate((h + 2 * a) ** 3 * b ** 2) == 12
    # degree of the Segre-type embedding: (h + a + b)^5 = 5!/(1!2!2!)
    assert integrate((h + a + b) ** 5) == 30
    assert integrate(make_multiproj([3]).gen("a") ** 3) == 1


def test_monomial_basis_ranks():
    ring = make_multiproj([1, 2, 2])
    assert [len(ring.monomial_basis(d)) for d in range(6)] == [1, 3, 5, 5, 3, 1]


def h_complete(roots, k):
    """Complete homogeneous symmetric polynomial h_k in the roots (oracle)."""
    total = 0
    for combo in itertools.combinations_with_replacement(range(len(roots)), k):
        term = 1
        for i in combo:
            term = term * roots[i]
        total = total + term
    return total


@pytest.mark.parametrize("seed", range(8))
def test_grothendieck_relation_and_fiber_integration(seed):
    rng = random.Random(seed)
    base = make_multiproj([2, 2])
    r = rng.randint(1, 3)
    roots = [base.linear([rng.randint(-3, 3), rng.randint(-3, 3)]) for _ in range(r)]
    total = base.one()
    for x in roots:
        total = total * (1 + x)
    ring = make_bundle_ring(base, [total.part(i) for i in range(1, r + 1)])
    xi = ring.gen("xi")
    # prod (xi - x_i) = xi^r - c1 xi^(r-1) + ... = 0
    rel = ring.one()
    for x in roots:
        rel = rel * (xi - ring(x))
    assert rel == 0
    # pi_* xi^(r-1+k) = h_k(roots), tested against every base monomial
    for k in range(5):
        for m in base.monomial_basis(4 - k):
            assert integrate(xi ** (r - 1 + k) * ring(m)) == integrate(h_complete(roots, k) * m)


def test_bundle_ring_top_degree_and_pullback():
    base = make_multiproj([1, 2, 2])
    h, a, b = base.gens()
    ring = make_bundle_ring(base, [2 * a + 2 * b, 4 * a * b])
    assert ring.top_degree == 6
    assert integrate(ring(h * a ** 2 * b ** 2) * ring.gen("xi")) == 1
    with pytest.raises(GradingError):
        make_bundle_ring(base, [a * b])


def test_inverse_and_format():
    ring = make_multiproj([1, 2])
    h, a = ring.gens()
    c = 1 + h + 3 * a
    assert c * c.inverse() == 1
    assert format_class(2 * h * a - a ** 2 + 1) == "1 + 2*h*a - a^2"
    assert format_class(ring.zero()) == "0"
    assert format_class(-h) == "-h"


def test_binomial_identity_for_powers():
    ring = make_multiproj([4])
    (x,) = ring.gens()
    for d in range(5):
        assert ((1 + x) ** 7).part(d) == comb(7, d) * x ** d
