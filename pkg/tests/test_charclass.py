"""Characteristic classes checked against classical numbers."""

import random

import pytest

from enriqueslab.charclass import (
    O, CompleteIntersectionSpec, bott_kunneth_table, bott_projective, canonical_class,
    chern_classes, chern_total, degeneracy_class, euler_characteristic_top, hrr_chi,
    resolution_sheaf_cohomology, tangent_class, tangent_class_from_power_sums, todd_class,
)
from enriqueslab.chow import integrate, make_bundle_ring, make_multiproj
from enriqueslab.paperlab import RESOLUTION, pencil_spec

DIMS = (1, 2, 2)


def random_bundle(ring, rng):
    E = O(ring, *[rng.randint(-3, 3) for _ in ring.names])
    for _ in range(rng.randint(0, 3)):
        E = E + O(ring, *[rng.randint(-3, 3) for _ in ring.names], mult=rng.randint(1, 2))
    return E


def test_whitney_on_50_random_bundles():
    ring = make_multiproj(DIMS)
    rng = random.Random(2024)
    for _ in range(50):
        E, F = random_bundle(ring, rng), random_bundle(ring, rng)
        assert chern_total(E + F) == chern_total(E) * chern_total(F)
        cs = chern_classes(E + F)
        assert len(cs) == (E + F).rank + 1
        assert all(c.is_homogeneous(i) or not c for i, c in enumerate(cs))


def chi_projective(n, d):
    # binomial(d+n, n) as a polynomial in d, valid for every integer d
    num = 1
    for k in range(1, n + 1):
        num *= d + k
    den = 1
    for k in range(1, n + 1):
        den *= k
    return num // den


def test_bott_against_hrr_on_100_twists():
    ring = make_multiproj(DIMS)
    spec = CompleteIntersectionSpec(ring, ())
    rng = random.Random(7)
    for _ in range(100):
        d = [rng.randint(-6, 6) for _ in DIMS]
        table = bott_kunneth_table(DIMS, d)
        oracle = 1
        for n, k in zip(DIMS, d):
            oracle *= chi_projective(n, k)
        assert table.euler == oracle == hrr_chi(spec, ring.linear(d))


@pytest.mark.parametrize("n,d,expected", [(2, 3, (0, 10)), (2, -1, (0, 0)), (2, -3, (2, 1)),
                                          (2, -4, (2, 3)), (1, -2, (1, 1)), (3, 0, (0, 1))])
def test_bott_projective(n, d, expected):
    assert bott_projective(n, d) == expected


def test_cohom_kunneth_placement():
    t = bott_kunneth_table(DIMS, (0, -4, 0))
    assert t.vector(5) == (0, 0, 3, 0, 0, 0)
    assert bott_kunneth_table(DIMS, (-2, -2, -2)).is_zero()
    assert bott_kunneth_table(DIMS, (-2, -3, -3)).vector(5) == (0, 0, 0, 0, 0, 1)


def test_tangent_class_two_ways():
    for dims in ([3], [1, 2, 2], [2, 1]):
        ring = make_multiproj(dims)
        assert tangent_class(ring) == tangent_class_from_power_sums(ring)
        assert integrate(tangent_class(ring)) == eval("*".join(str(n + 1) for n in dims))
    base = make_multiproj([1, 2, 2])
    a, b = base.gen("a"), base.gen("b")
    ring = make_bundle_ring(base, [2 * a + 2 * b, 4 * a * b])
    assert tangent_class(ring) == tangent_class_from_power_sums(ring)


def test_todd_of_projective_space_gives_chi_one():
    for n in range(1, 5):
        assert integrate(todd_class(make_multiproj([n]))) == 1


@pytest.mark.parametrize("n,degrees,euler,chi", [
    (3, (4,), 24, 2),          # quartic K3
    (4, (5,), -200, 0),        # quintic threefold
    (3, (3,), 9, 1),           # cubic surface
    (3, (2, 2), 0, 0),         # elliptic quartic curve
    (2, (3,), 0, 0),           # plane cubic
])
def test_classical_complete_intersections(n, degrees, euler, chi):
    ring = make_multiproj([n])
    (H,) = ring.gens()
    spec = CompleteIntersectionSpec(ring, tuple(d * H for d in degrees))
    assert euler_characteristic_top(spec) == euler
    assert hrr_chi(spec) == chi


def test_hirzebruch_surface_euler_four():
    base = make_multiproj([1])
    (h,) = base.gens()
    for k in range(4):
        ring = make_bundle_ring(base, [k * h, base.zero()])
        assert euler_characteristic_top(CompleteIntersectionSpec(ring, ())) == 4


def test_degeneracy_small_cases():
    ring = make_multiproj(DIMS)
    F = O(ring, 1, 2, 0) + O(ring, 1, 0, 2)
    c = chern_classes(F)
    assert degeneracy_class(3, F, 1) == c[1] ** 2 - c[2]
    assert degeneracy_class(2, F, 1) == c[1]
    assert degeneracy_class(1, F, 0) == c[2]
    h, a, b = ring.gens()
    # twelve planes times b^2 recovers the count from the first row alone
    assert integrate(degeneracy_class(3, O(ring, 1, 2, 0), 0) * b ** 2) == 12


def test_resolution_of_structure_sheaf():
    table = resolution_sheaf_cohomology(RESOLUTION)
    assert table.exact and table.vector(3) == (1, 0, 0, 0)
    for md in RESOLUTION[1] + RESOLUTION[2]:
        assert bott_kunneth_table(DIMS, md).is_zero()


def test_resolution_with_possible_differential_is_not_exact():
    # O -> O(1) on P^1 resolves a point; d_1 : H^0(O) -> H^0(O(1)) may be nonzero
    table = resolution_sheaf_cohomology([[(1,)], [(0,)]], dims=(1,))
    assert not table.exact
    assert table.euler == 1
    # O(-2) -> O: both terms sit in total degree 0, so nothing can cancel
    two_points = resolution_sheaf_cohomology([[(0,)], [(-2,)]], dims=(1,))
    assert two_points.exact and two_points.vector(1) == (2, 0)


def test_pencil_invariants():
    spec = pencil_spec()
    ring = spec.ambient
    h, a, b, xi = ring.gens()
    assert spec.dimension == 3
    assert euler_characteristic_top(spec) == -36
    assert 2 * canonical_class(spec) == 2 * h + (xi - 2 * a) + (xi - 2 * b)
    assert hrr_chi(spec) == 1


def test_bundle_rank_and_lines():
    ring = make_multiproj(DIMS)
    E = O(ring, 1, 0, 0, mult=3) + O(ring, 0, 1, 1)
    assert E.rank == 4 and len(E.lines()) == 4
    with pytest.raises(ValueError):
        O(ring, 1, 2)
