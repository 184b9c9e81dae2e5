"""Sample an instance, then check the special fiber modulo p.

Run:  python demos/special_fiber.py [prime] [seed]
"""

import sys

from enriqueslab import paperlab as pl


def show(rec):
    print(f"  {rec.name}: {rec.status}")
    for k, v in rec.values.items():
        if k != "examples":
            print(f"      {k}: {v}")


def main(p=101, seed=1):
    inst = pl.build_instance(p, seed)
    print(f"Instance over Q from seed {seed}, reduced mod {p}.")
    print("  first entry of N:", str(inst.N.rows[0][0])[:70], "...")
    print("  F has", len(inst.F.terms), "terms over Q")

    print("\nModulo p the minors of M factor through S:")
    show(pl.verify_specialization_decomposition(inst))

    print("\nBase points of the first row (twelve planes):")
    show(pl.verify_twelve_planes(inst))

    print("\nDivisor identity, with the chart-by-chart ideal version:")
    show(pl.verify_divisor_identity(inst, stretch=True))

    print("\nParity congruence on curve classes of the special fiber:")
    show(pl.verify_congruence(inst))

    print("\nA broken builder that forgets the factor p is caught:")
    broken = pl.assemble_instance(p, seed, pl.sample_forms(seed), p_factor=False)
    print("  status:", pl.verify_specialization_decomposition(broken).status)


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:3]))
