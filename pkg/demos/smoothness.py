"""Jacobian-criterion certificates, cell by cell.

The Enriques surface and the degenerate P1 = Q1 control take seconds;
pass --threefold to also certify the special fiber (about a minute).

Run:  python demos/smoothness.py [--threefold]
"""

import argparse

from enriqueslab import groebner as gb
from enriqueslab import paperlab as pl
from enriqueslab.mpoly import PolyMatrix, minors


def report(title, rep):
    print(f"{title}: {rep.status}, {rep.count()}/{len(rep.records)} cells certified")
    for r in rep.records:
        print(f"    {r.cell:<10} {r.status:<17} {r.method:<16} {r.steps:>8} steps")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=101)
    ap.add_argument("--threefold", action="store_true")
    args = ap.parse_args()

    row1, row2 = pl.surface_forms(1, args.prime)
    ring = row1[0].ring
    surface = minors(PolyMatrix([row1, row2]), 2)
    report("Enriques surface in P^2 x P^2", gb.smoothness_certificate(surface, 2, gb.cell_decomposition(ring)))

    row1[1] = row1[0]
    control = minors(PolyMatrix([row1, row2]), 2)
    report("control with two equal entries", gb.smoothness_certificate(control, 2, gb.cell_decomposition(ring)))

    if args.threefold:
        inst = pl.build_instance(args.prime, 1)
        report("special fiber X0", gb.smoothness_certificate(minors(inst.N_p, 2), 2,
                                                             gb.cell_decomposition(inst.ring_p)))


if __name__ == "__main__":
    main()
