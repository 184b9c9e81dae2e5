"""The ten acceptance criteria, one test each.

Every test prints a single ``[PASS]`` or ``[FAIL]`` line as it finishes;
the lines are repeated in the terminal summary.
"""

import json
import os
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from enriqueslab import groebner as gb
from enriqueslab import paperlab as pl
from enriqueslab.charclass import (
    bott_kunneth_table, canonical_class, euler_characteristic_top, hrr_chi, resolution_sheaf_cohomology,
)
from enriqueslab.chow import integrate

ROOT = Path(__file__).resolve().parent.parent
PRIMES = (101, 211)
SEEDS = range(1, 6)
RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str):
    t0 = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        line = f"[FAIL] criterion {number:>2}: {title} ({time.perf_counter() - t0:.1f} s) {exc!r}"[:400]
        RESULTS[number] = line
        print(line, file=sys.__stdout__, flush=True)
        raise
    extra = ", ".join(f"{k}={v}" for k, v in detail.items())
    line = f"[PASS] criterion {number:>2}: {title} ({time.perf_counter() - t0:.1f} s) {extra}".rstrip()
    RESULTS[number] = line
    print(line, file=sys.__stdout__, flush=True)


def test_01_euler_number():
    with criterion(1, "Euler number of the pencil is -36") as d:
        t0 = time.perf_counter()
        chi = euler_characteristic_top(pl.pencil_spec())
        d["chi_top"] = chi
        assert chi == -36
        assert time.perf_counter() - t0 < 1


def test_02_twelve_planes():
    with criterion(2, "twelve planes for 5 seeds x 2 primes") as d:
        ring, h, a, b = pl._chow()
        assert integrate((h + 2 * a) ** 3 * b ** 2) == 12
        slowest = 0.0
        for p in PRIMES:
            for seed in SEEDS:
                t0 = time.perf_counter()
                rec = pl.verify_twelve_planes(pl.build_instance(p, seed))
                slowest = max(slowest, time.perf_counter() - t0)
                assert rec.values == {"class_count": 12, "point_count": 12, "reduced": True,
                                      "disjoint_from_S0": True}, (p, seed, rec.values)
                assert slowest < 30
        d["instances"] = len(PRIMES) * len(SEEDS)
        d["slowest_s"] = round(slowest, 2)


def test_03_structure_sheaf_cohomology():
    with criterion(3, "h^i(O_X) = (1,0,0,0) with vanishing term tables, HRR chi = 1") as d:
        t0 = time.perf_counter()
        table = resolution_sheaf_cohomology(pl.RESOLUTION)
        assert table.exact and table.vector(3) == (1, 0, 0, 0)
        for md in pl.RESOLUTION[1] + pl.RESOLUTION[2]:
            assert bott_kunneth_table((1, 2, 2), md).is_zero()
        assert hrr_chi(pl.pencil_spec()) == 1
        assert time.perf_counter() - t0 < 1
        d["h"] = table.vector(3)


def test_04_canonical_identity():
    with criterion(4, "2K = 2h + (xi - 2a) + (xi - 2b)") as d:
        t0 = time.perf_counter()
        spec = pl.pencil_spec()
        h, a, b, xi = spec.ambient.gens()
        assert 2 * canonical_class(spec) == 2 * h + (xi - 2 * a) + (xi - 2 * b)
        assert time.perf_counter() - t0 < 1


def test_05_divisor_and_congruence():
    with criterion(5, "((h+2a)-2b)[X0] = (h+2a)^3 = 12ha^2 and the parity congruence") as d:
        t0 = time.perf_counter()
        div = pl.verify_divisor_identity()
        assert div.status == pl.VERIFIED and div.values["lhs"] == div.values["rhs"] == "12*h*a^2"
        con = pl.verify_congruence(samples=20)
        assert con.status == pl.VERIFIED and con.values["all_hold"]
        ring, *_ = pl._chow()
        labels = {row["q"] for row in con.values["examples"]}
        # every CH^1 basis element appears, cut against both divisors
        assert {f"{D}*{e}" for D in ("D1", "D2") for e in ring.names} <= labels
        assert con.values["cases"] == len(ring.monomial_basis(2)) + 6 + 20
        assert time.perf_counter() - t0 < 1
        d["cases"] = con.values["cases"]


def test_06_specialization():
    with criterion(6, "minors(M mod p) = S minors(N) and the Laplace certificate") as d:
        slowest = 0.0
        for p in PRIMES:
            for seed in SEEDS:
                t0 = time.perf_counter()
                rec = pl.verify_specialization_decomposition(pl.build_instance(p, seed))
                slowest = max(slowest, time.perf_counter() - t0)
                assert rec.status == pl.VERIFIED, (p, seed, rec.values)
        assert slowest < 5
        d["slowest_s"] = round(slowest, 2)


def test_07_smoothness_certificates():
    with criterion(7, "X0 18/18 and surface 9/9 at both primes, P1=Q1 control singular") as d:
        t0 = time.perf_counter()
        for p in PRIMES:
            rec = pl.verify_smooth_models(pl.build_instance(p, 1),
                                          models=["special_fiber", "enriques_surface"])
            sf, es = rec.values["special_fiber"], rec.values["enriques_surface"]
            assert (sf["status"], sf["certified"], sf["cells"]) == ("smooth-certified", 18, 18), sf
            assert (es["status"], es["certified"], es["cells"]) == ("smooth-certified", 9, 9), es
            assert rec.status == pl.VERIFIED
        forms = pl.sample_forms(1)
        forms["Q1"] = forms["P1"]
        bad = pl.assemble_instance(101, 1, forms)
        ctrl = pl.verify_smooth_models(bad, models=["special_fiber"])
        assert ctrl.values["special_fiber"]["status"] == "singular" and ctrl.status == pl.FAILED
        elapsed = time.perf_counter() - t0
        assert elapsed < 30 * 60
        d["control_singular_cells"] = len(ctrl.values["special_fiber"]["singular_cells"])
        d["total_s"] = round(elapsed)


def test_08_hodge_bookkeeping():
    with criterion(8, "b2 = 26, b3 = 90, h^{1,2} = 45 from computed inputs plus tagged axioms") as d:
        inv = pl.compute_invariants(pl.build_instance(101, 1))
        assert inv.status == pl.VERIFIED and inv.values["point_count"] == 12
        hd = pl.hodge_diamond(inv)
        assert (hd.values["b2"], hd.values["b3"], hd.values["h12"]) == (26, 90, 45)
        assert hd.provenance == pl.AXIOM and hd.axioms == ("picard_rank_inputs",)
        d.update(b2=26, b3=90, h12=45)


PROPERTY_SUITES = [
    "tests/test_charclass.py::test_whitney_on_50_random_bundles",
    "tests/test_charclass.py::test_bott_against_hrr_on_100_twists",
    "tests/test_chow.py::test_grothendieck_relation_and_fiber_integration",
    "tests/test_chow.py::test_ring_axioms",
    "tests/test_chow.py::test_product_matches_brute_force",
    "tests/test_groebner.py::test_s_polynomials_reduce_to_zero",
    "tests/test_groebner.py::test_matches_sympy_over_prime_field",
    "tests/test_groebner.py::test_point_count_matches_chow",
]


def test_09_engine_property_suites():
    with criterion(9, "engine property suites") as d:
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_SUITES],
                              cwd=ROOT, capture_output=True, text=True, check=False)
        elapsed = time.perf_counter() - t0
        tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-300:]
        assert proc.returncode == 0, tail
        assert elapsed < 300
        d["result"] = tail.strip("= ")


def _verify_once(out_dir: Path):
    env = dict(os.environ)
    env.pop("ENRIQUESLAB_BUDGET", None)
    proc = subprocess.run([sys.executable, "-m", "enriqueslab", "verify", "--prime", "101", "--seed", "1",
                           "--output", str(out_dir)], capture_output=True, text=True, env=env, check=False)
    return proc, (out_dir / "report.json").read_bytes() if (out_dir / "report.json").exists() else b""


def test_10_end_to_end(tmp_path):
    with criterion(10, "verify --prime 101 --seed 1 exits 0, certified, byte-identical on rerun") as d:
        first, report1 = _verify_once(tmp_path / "a")
        assert first.returncode == 0, first.stdout[-2000:] + first.stderr[-2000:]
        second, report2 = _verify_once(tmp_path / "b")
        assert second.returncode == 0
        assert report1 and report1 == report2
        assert first.stdout == second.stdout
        doc = json.loads(report1)
        assert doc["verdict"] == pl.VERDICT_CERTIFIED
        assert doc["axioms"] == sorted(pl.AXIOMS)
        assert doc["statement"].startswith("H^4_alg(X, Z) ⊊ Hdg^4(X, Z)")
        verdict_lines = [l for l in first.stdout.splitlines() if l.startswith("verdict:")]
        assert verdict_lines == [f"verdict: {pl.VERDICT_CERTIFIED}"]
        assert "conditional on: lefschetz_surjectivity, picard_rank_inputs, specialization_homomorphism" \
            in first.stdout
        for needle in ("-36", "12", "h^i(O)=0 for i>0: True"):
            assert needle in first.stdout
        d["report_bytes"] = len(report1)
