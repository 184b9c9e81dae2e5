"""Intersection-theoretic invariants of the pencil, computed from scratch.

Run:  python demos/intersection_numbers.py
"""

from enriqueslab.charclass import (
    O, canonical_class, chern_classes, degeneracy_class, euler_characteristic_top, hrr_chi,
    resolution_sheaf_cohomology,
)
from enriqueslab.chow import format_class, integrate, make_multiproj
from enriqueslab.paperlab import RESOLUTION, compute_invariants, hodge_diamond, pencil_spec


def main():
    ring = make_multiproj([1, 2, 2])
    h, a, b = ring.gens()
    print("Ambient P^1 x P^2 x P^2 with hyperplane classes h, a, b.")

    print("\nThe first row (P1, Q1, R1) has degree (1,2,0); its base locus in P^1 x P^2")
    print("has", integrate((h + 2 * a) ** 3 * b ** 2), "points, each giving a plane of the special fiber.")

    E = O(ring, 1, 2, 0) + O(ring, 1, 0, 2)
    c = chern_classes(E)
    x_class = degeneracy_class(3, E, 1)
    print("\n[X] from Thom-Porteous:", format_class(x_class))
    print("equals c1^2 - c2:", x_class == c[1] ** 2 - c[2])
    x0 = degeneracy_class(3, O(ring, 1, 2, 0) + O(ring, 0, 0, 2), 1)
    print("[special fiber]:", format_class(x0))
    print("((h+2a) - 2b)[X0] =", format_class(((h + 2 * a) - 2 * b) * x0),
          "  (h+2a)^3 =", format_class((h + 2 * a) ** 3))

    spec = pencil_spec()
    print("\nThe model X' in P^1 x P(O(2,0)+O(0,2)):")
    print("  topological Euler number:", euler_characteristic_top(spec))
    print("  canonical class:", format_class(canonical_class(spec)))
    print("  chi(O):", hrr_chi(spec))
    table = resolution_sheaf_cohomology(RESOLUTION)
    print("  h^i(O) from the resolution:", table.vector(3), "(exact)" if table.exact else "(bounds)")

    inv = compute_invariants(point_count=12)
    hd = hodge_diamond(inv)
    print("\nWith rho(Y_min) = 2 and a trivial involution on Pic(Y) taken as inputs:")
    print("  b2 =", hd.values["b2"], " b3 =", hd.values["b3"], " h^{1,2} =", hd.values["h12"])


if __name__ == "__main__":
    main()
