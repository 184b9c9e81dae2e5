"""The Enriques-pencil construction, instantiated and checked end to end.

An instance fixes a prime p and a seed, samples the nine forms over Q and
assembles

    M = [[P1, Q1, R1], [S*P2 + p*P3, S*Q2 + p*Q3, S*R2 + p*R3]]
    N = [[P1, Q1, R1], [P2, Q2, R2]]
    F = det [[P1, Q1, R1], [P2, Q2, R2], [P3, Q3, R3]]

on P^1 x P^2 x P^2.  Each ``verify_*`` function returns one
:class:`CheckRecord`; :func:`nonalgebraicity_report` chains them together
with the three topological inputs that are assumed rather than computed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import groebner as gb
from .charclass import (CompleteIntersectionSpec, O, bott_kunneth_table, canonical_class,
                        chern_classes, degeneracy_class, euler_characteristic_top, hrr_chi,
                        resolution_sheaf_cohomology)
from .chow import ChowRing, format_class, integrate, make_bundle_ring, make_multiproj
from .mpoly import (LaplaceIdentityError, MPoly, PolyMatrix, PolyRing, laplace_certificate,
                    leibniz_determinant, minors, random_form, standard_ring)

__all__ = [
    "PaperInstance", "CheckRecord", "VerificationReport", "build_instance", "assemble_instance",
    "surface_forms", "verify_twelve_planes", "verify_smooth_models",
    "verify_specialization_decomposition", "verify_divisor_identity", "verify_congruence",
    "verify_cohomology", "compute_invariants", "hodge_diamond", "parity_obstruction",
    "nonalgebraicity_report", "verify_all", "CHECK_NAMES", "AXIOMS", "VERDICT_CERTIFIED",
    "VERDICT_NOT_ESTABLISHED",
]

VERIFIED, FAILED, INCONCLUSIVE, ASSUMED = "verified", "failed", "inconclusive", "assumed"
COMPUTED, AXIOM = "computed", "paper-axiom"

VERDICT_CERTIFIED = "strict inclusion certified modulo 3 cited topological axioms"
VERDICT_NOT_ESTABLISHED = "not established"
STATEMENT = "H^4_alg(X, Z) ⊊ Hdg^4(X, Z)"

FORM_DEGREES = {
    "P1": (1, 2, 0), "Q1": (1, 2, 0), "R1": (1, 2, 0),
    "P2": (0, 0, 2), "Q2": (0, 0, 2), "R2": (0, 0, 2),
    "P3": (1, 0, 2), "Q3": (1, 0, 2), "R3": (1, 0, 2),
}

# the ideal sheaf resolution 0 -> F2 -> F1 -> I_X -> 0, prefixed by O itself
RESOLUTION = (
    ((0, 0, 0),),
    ((-2, -2, -2),) * 3,
    ((-3, -4, -2), (-3, -2, -4)),
)

AXIOMS = {
    "specialization_homomorphism": (
        "Specialization of cycle classes from the generic to the special fiber of the "
        "spread-out family preserves degrees over P^1 and intersection numbers, so the "
        "parity congruence on the special fiber lifts to X over Q-bar.",
        ("W. Fulton, Intersection Theory, chapter 20 (specialization)",),
    ),
    "lefschetz_surjectivity": (
        "H_2(Y_min, Z) -> H_2(P^1, Z) is surjective (Lefschetz hyperplane theorem); the "
        "pull-back to Y and push-forward to X of a preimage of the generator gives beta "
        "with deg(beta/P^1) = 1 and beta.(sum E_1j) = 0.",
        ("Lefschetz hyperplane theorem",),
    ),
    "picard_rank_inputs": (
        "rho(Y_min) = 2 and the covering involution acts trivially on Pic(Y); together "
        "with the blown-up planes this fixes b_2(X) = rho(X).",
        ("Lefschetz hyperplane theorem (Picard group of Y_min)",),
    ),
}

CHECK_NAMES = (
    "specialization_decomposition", "twelve_planes", "smooth_models", "divisor_identity",
    "congruence", "cohomology", "invariants",
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# instances ---------------------------------------------------------------

@dataclass(frozen=True)
class PaperInstance:
    p: int
    seed: int
    forms: dict  # name -> MPoly over Q
    M: PolyMatrix
    N: PolyMatrix
    F: MPoly
    M_p: PolyMatrix
    N_p: PolyMatrix
    F_p: MPoly
    retries: int = 0

    @property
    def ring(self) -> PolyRing:
        return self.F.ring

    @property
    def ring_p(self) -> PolyRing:
        return self.N_p.ring

    def form_p(self, name: str) -> MPoly:
        return self.forms[name].reduce_mod(self.p)

    def rows_p(self, *names: str) -> list[MPoly]:
        return [self.form_p(n) for n in names]

    def f_matrix(self) -> PolyMatrix:
        f = self.forms
        return PolyMatrix([[f["P1"], f["Q1"], f["R1"]],
                           [f["P2"], f["Q2"], f["R2"]],
                           [f["P3"], f["Q3"], f["R3"]]])

    def to_dict(self) -> dict:
        return {
            "format": "enriqueslab-instance",
            "version": 1,
            "prime": self.p,
            "seed": self.seed,
            "retries": self.retries,
            "forms": {name: str(self.forms[name]) for name in FORM_DEGREES},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PaperInstance":
        if data.get("format") != "enriqueslab-instance":
            raise ValueError("not an instance document")
        if data.get("version") != 1:
            raise ValueError(f"unsupported instance version {data.get('version')}")
        p = int(data["prime"])
        _check_prime(p)
        ring = standard_ring(None)
        forms = {}
        for name, deg in FORM_DEGREES.items():
            f = ring.parse(data["forms"][name])
            if f and f.multidegree() != deg:
                raise ValueError(f"form {name} has degree {f.multidegree()}, expected {deg}")
            forms[name] = f
        return assemble_instance(p, int(data["seed"]), forms, int(data.get("retries", 0)))


def _check_prime(p: int):
    if not isinstance(p, int) or not _is_prime(p) or p in (2, 3):
        raise ValueError(f"p must be a prime other than 2 and 3, got {p!r}")


def sample_forms(seed, ring: PolyRing | None = None) -> dict:
    ring = ring or standard_ring(None)
    return {name: random_form(ring, deg, f"{seed}/{name}") for name, deg in FORM_DEGREES.items()}


def assemble_instance(p: int, seed, forms: dict, retries: int = 0,
                      p_factor: bool = True) -> PaperInstance:
    """Build M, N, F from given forms.  ``p_factor=False`` drops the factor p
    in front of the third-row forms (a deliberately broken control)."""
    ring = forms["P1"].ring
    S = ring.var("S")
    f = forms
    k = p if p_factor else 1
    M = PolyMatrix([[f["P1"], f["Q1"], f["R1"]],
                    [S * f[a] + f[b].scale(k) for a, b in (("P2", "P3"), ("Q2", "Q3"), ("R2", "R3"))]])
    N = PolyMatrix([[f["P1"], f["Q1"], f["R1"]], [f["P2"], f["Q2"], f["R2"]]])
    F = leibniz_determinant(PolyMatrix([[f["P1"], f["Q1"], f["R1"]],
                                        [f["P2"], f["Q2"], f["R2"]],
                                        [f["P3"], f["Q3"], f["R3"]]]))
    return PaperInstance(p, seed, dict(forms), M, N, F, M.reduce_mod(p), N.reduce_mod(p),
                         F.reduce_mod(p), retries)


def _reduction_identity(inst: PaperInstance) -> bool:
    S = inst.ring_p.var("S")
    return all(a == S * b for a, b in zip(minors(inst.M_p, 2), minors(inst.N_p, 2)))


def build_instance(p: int, seed=1, retries: int = 0) -> PaperInstance:
    """Sample the forms over Q from ``seed`` and reduce modulo ``p``."""
    _check_prime(p)
    inst = assemble_instance(p, seed, sample_forms(seed), retries)
    for m in minors(inst.M, 2):
        if m.multidegree() != (2, 2, 2):
            raise ArithmeticError("minor of M is not of degree (2,2,2)")
    if not _reduction_identity(inst):
        raise ArithmeticError("minors of M mod p differ from S * minors of N")
    return inst


def surface_forms(seed, p: int | None = None) -> tuple[list[MPoly], list[MPoly]]:
    """Rows of a map O^3 -> O(2,0) + O(0,2) on P^2 x P^2."""
    ring = PolyRing([("X", ["X0", "X1", "X2"]), ("Y", ["Y0", "Y1", "Y2"])], None)
    row1 = [random_form(ring, (2, 0), f"{seed}/u1/{n}") for n in "PQR"]
    row2 = [random_form(ring, (0, 2), f"{seed}/u2/{n}") for n in "PQR"]
    if p is not None:
        row1 = [g.reduce_mod(p) for g in row1]
        row2 = [g.reduce_mod(p) for g in row2]
    return row1, row2


# reports -------------------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    status: str
    values: dict = field(default_factory=dict)
    provenance: str = COMPUTED
    citations: tuple = ()
    prime: int | None = None
    axioms: tuple = ()
    timing: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        d = {"name": self.name, "prime": self.prime, "status": self.status,
             "provenance": self.provenance, "citations": list(self.citations),
             "axioms": list(self.axioms), "values": self.values}
        if timing:
            d["timing"] = round(self.timing, 3)
        return d


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rec = fn(*args, **kwargs)
        rec.timing = time.perf_counter() - t0
        return rec
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _status(ok: bool) -> str:
    return VERIFIED if ok else FAILED


def _chow():
    ring = make_multiproj([1, 2, 2])
    h, a, b = ring.gens()
    return ring, h, a, b


# individual checks -------------------------------------------------------------

@_timed
def verify_twelve_planes(inst: PaperInstance, budget: int | None = gb.DEFAULT_BUDGET) -> CheckRecord:
    """Base locus of (P1, Q1, R1): twelve reduced points of P^1 x P^2, away from S = 0."""
    ring, h, a, b = _chow()
    class_count = integrate((h + 2 * a) ** 3 * b ** 2)
    gens = inst.rows_p("P1", "Q1", "R1")
    dec = gb.cell_decomposition(inst.ring_p, ["P1", "X"])
    values = {"class_count": class_count}
    try:
        count = gb.cell_point_count(gens, dec, budget)
        values["point_count"] = count
        values["reduced"] = gb.radical_point_check(gens, dec, seed=inst.seed, budget=budget)
        values["disjoint_from_S0"] = gb.empty_locus(gens + [inst.ring_p.var("S")], dec, budget)
    except gb.PositiveDimensionalError as exc:
        values["point_count"] = None
        values["error"] = str(exc)
        values["disjoint_from_S0"] = gb.empty_locus(gens + [inst.ring_p.var("S")], dec, budget)
        return CheckRecord("twelve_planes", FAILED, values, prime=inst.p)
    except (gb.BudgetExceeded, gb.Inconclusive) as exc:
        values["error"] = str(exc)
        return CheckRecord("twelve_planes", INCONCLUSIVE, values, prime=inst.p)
    ok = (class_count == 12 and values["point_count"] == 12 and values["reduced"]
          and values["disjoint_from_S0"])
    return CheckRecord("twelve_planes", _status(ok), values, prime=inst.p)


def _model_certificate(gens, dec, budget, jobs, probe_samples, seed) -> dict:
    rep = gb.smoothness_certificate(gens, 2, dec, budget=budget, jobs=jobs)
    out = {"status": rep.status, "cells": len(rep.records),
           "certified": rep.count("smooth-certified"), "steps": sum(r.steps for r in rep.records)}
    if rep.status == "inconclusive":
        probe = gb.smoothness_probe(gens, 2, samples=probe_samples, decomposition=dec,
                                    seed=seed, budget=budget)
        out["probe"] = probe.to_dict()
        out["status"] = "singular" if probe.found_singular else "probed"
    if rep.singular:
        out["singular_cells"] = [r.cell for r in rep.records if r.status == "singular"]
    return out


@_timed
def verify_smooth_models(inst: PaperInstance, budget: int | None = gb.DEFAULT_BUDGET,
                         jobs: int = 1, probe_samples: int = 200,
                         models: Iterable[str] | None = None) -> CheckRecord:
    """Jacobian certificates over F_p for the three degeneracy loci of the construction.

    ``generic_threefold``: rows (P1,Q1,R1) and (P3,Q3,R3), a fully general
    map O^3 -> O(1,2,0) + O(1,0,2).  ``special_fiber``: the minors of N.
    ``enriques_surface``: a general map O^3 -> O(2,0) + O(0,2) on P^2 x P^2,
    together with the emptiness of each row's zero set (X meets neither E_i).
    """
    wanted = tuple(models) if models is not None else ("special_fiber", "enriques_surface",
                                                        "generic_threefold")
    dec = gb.cell_decomposition(inst.ring_p)
    values: dict = {}
    for model in wanted:
        if model == "special_fiber":
            values[model] = _model_certificate(minors(inst.N_p, 2), dec, budget, jobs,
                                               probe_samples, inst.seed)
        elif model == "generic_threefold":
            m = PolyMatrix([inst.rows_p("P1", "Q1", "R1"), inst.rows_p("P3", "Q3", "R3")])
            values[model] = _model_certificate(minors(m, 2), dec, budget, jobs,
                                               probe_samples, inst.seed)
        elif model == "enriques_surface":
            row1, row2 = surface_forms(inst.seed, inst.p)
            sdec = gb.cell_decomposition(row1[0].ring)
            rec = _model_certificate(minors(PolyMatrix([row1, row2]), 2), sdec, budget, jobs,
                                     probe_samples, inst.seed)
            rec["misses_E1"] = gb.empty_locus(row1, gb.cell_decomposition(row1[0].ring, ["X"]), budget)
            rec["misses_E2"] = gb.empty_locus(row2, gb.cell_decomposition(row2[0].ring, ["Y"]), budget)
            values[model] = rec
        else:
            raise ValueError(f"unknown model {model!r}")
    statuses = [v["status"] for v in values.values()]
    disjoint = all(v.get("misses_E1", True) and v.get("misses_E2", True) for v in values.values())
    if "singular" in statuses or not disjoint:
        status = FAILED
    elif all(s == "smooth-certified" for s in statuses):
        status = VERIFIED
    else:
        status = INCONCLUSIVE
    return CheckRecord("smooth_models", status, values, prime=inst.p)


@_timed
def verify_specialization_decomposition(inst: PaperInstance) -> CheckRecord:
    """minors(M mod p) = S * minors(N) and F in (minors of N), both exactly."""
    identity = _reduction_identity(inst)
    values = {"reduction_identity": identity}
    try:
        F, _ = laplace_certificate(inst.f_matrix())
        laplace = F == inst.F
        laplace_certificate(inst.f_matrix().reduce_mod(inst.p))
    except LaplaceIdentityError:
        laplace = False
    values["laplace_certificate"] = laplace
    values["F_terms"] = len(inst.F)
    if not inst.F_p:
        values["note"] = "F vanishes identically; the decomposition degenerates"
        return CheckRecord("specialization_decomposition", FAILED, values, prime=inst.p)
    ok = identity and laplace
    if ok:
        values["components"] = ["V(minors(N))", "V(S, F)"]
        values["inference"] = "V(minors(M mod p), F) = V(minors(N)) ∪ V(S, F)"
    return CheckRecord("specialization_decomposition", _status(ok), values, prime=inst.p)


@_timed
def verify_divisor_identity(inst: PaperInstance | None = None, stretch: bool = False,
                            budget: int | None = gb.DEFAULT_BUDGET,
                            d2_class: str = "2b") -> CheckRecord:
    """((h+2a) - 2b) [X0] = (h+2a)^3 in CH(P^1 x P^2 x P^2).

    On the special fiber X0 the divisor of P1 has class h+2a, that of P2 has
    class 2b, and the twelve planes have ambient class (h+2a)^3.  With an
    instance, also checks that (P2, Q2, R2) have no common zero, so the
    charts P2 != 0, Q2 != 0, R2 != 0 cover X0.  ``d2_class`` exists only for
    the negative control.
    """
    ring, h, a, b = _chow()
    x0 = degeneracy_class(3, O(ring, 1, 2, 0) + O(ring, 0, 0, 2), 1)
    d2 = {"2b": 2 * b, "2a": 2 * a}[d2_class]
    lhs = ((h + 2 * a) - d2) * x0
    rhs = (h + 2 * a) ** 3
    expected = 12 * h * a ** 2
    values = {"X0_class": format_class(x0), "lhs": format_class(lhs), "rhs": format_class(rhs)}
    ok = lhs == rhs == expected
    prime = None
    if inst is not None:
        prime = inst.p
        cover = gb.empty_locus(inst.rows_p("P2", "Q2", "R2"),
                               gb.cell_decomposition(inst.ring_p, ["Y"]), budget)
        values["charts_cover"] = cover
        ok = ok and cover
        if stretch:
            values["ideal_check"] = _chartwise_divisor_check(inst, budget)
    return CheckRecord("divisor_identity", _status(ok), values, prime=prime)


def _chartwise_divisor_check(inst: PaperInstance, budget) -> str:
    """On P2 != 0 (and Q2, R2 likewise) the minor ideal is generated by two minors.

    P2*m12 = Q2*m02 - R2*m01 (expansion of a determinant with a repeated row)
    is checked exactly, and m01, m02 are checked to lie in the cell-wise
    Groebner bases of the minor ideal.
    """
    N = inst.N
    m01, m02, m12 = minors(N, 2)
    P2, Q2, R2 = N.rows[1]
    if not (P2 * m12 == Q2 * m02 - R2 * m01 and Q2 * m02 == P2 * m12 + R2 * m01
            and R2 * m01 == Q2 * m02 - P2 * m12):
        return "failed"
    mins_p = minors(inst.N_p, 2)
    try:
        for cell in gb.cell_decomposition(inst.ring_p):
            sub = cell.substitution()
            polys = [g.subs(sub) for g in mins_p]
            polys = [g for g in polys if g]
            if not polys:
                continue
            basis = gb.buchberger(polys, budget=budget)
            for m in mins_p[:2]:
                if not gb.ideal_contains(basis, m.subs(sub).change_ring(basis.ring)):
                    return "failed"
    except gb.BudgetExceeded:
        return "inconclusive"
    return "verified"


@_timed
def verify_congruence(inst: PaperInstance | None = None, samples: int = 20, seed=0,
                      x0=None) -> CheckRecord:
    """deg(alpha/P^1) = alpha.(sum E) mod 2 for curve classes alpha on X0.

    Curves are alpha = [X0] q with q running over the monomial basis of CH^2,
    over D.e for D in {D1 = h+2a, D2 = 2b} and e in {h, a, b}, and over
    ``samples`` random products of two divisors.  deg(alpha/P^1) is the
    integral of alpha against the fiber class h.  The divisor sum E
    restricts to X0 with class (h+2a) - 2b and has ambient class (h+2a)^3;
    alpha.(sum E) is computed both ways and compared.
    """
    ring, h, a, b = _chow()
    if x0 is None:
        x0 = degeneracy_class(3, O(ring, 1, 2, 0) + O(ring, 0, 0, 2), 1)
    sigma_e = (h + 2 * a) - 2 * b
    planes = (h + 2 * a) ** 3
    rng = random.Random(seed if inst is None else f"{inst.seed}/congruence")
    cases = [(format_class(q), q) for q in ring.monomial_basis(2)]
    for dname, d in (("D1", h + 2 * a), ("D2", 2 * b)):
        cases += [(f"{dname}*{e}", d * ring.gen(e)) for e in ring.names]
    for _ in range(samples):
        c1 = [rng.randint(-9, 9) for _ in range(3)]
        c2 = [rng.randint(-9, 9) for _ in range(3)]
        d1, d2 = ring.linear(c1), ring.linear(c2)
        cases.append((f"({format_class(d1)})*({format_class(d2)})", d1 * d2))
    rows, ok = [], True
    for label, q in cases:
        alpha = x0 * q
        deg = integrate(alpha * h)
        dot = integrate(alpha * sigma_e)
        dot_ambient = integrate(q * planes)
        good = dot == dot_ambient and (deg - dot) % 2 == 0
        ok = ok and good
        rows.append({"q": label, "deg_over_P1": deg, "dot_sum_E": dot, "holds": good})
    values = {"cases": len(rows), "all_hold": ok, "examples": rows[:11]}
    if not ok:
        values["violations"] = [r for r in rows if not r["holds"]]
    return CheckRecord("congruence", _status(ok), values)


def pencil_spec() -> CompleteIntersectionSpec:
    """X' in P^1 x P(O(2,0) + O(0,2)) cut out by three sections of O(1,1)."""
    base = make_multiproj([1, 2, 2])
    h, a, b = base.gens()
    ring = make_bundle_ring(base, [2 * a + 2 * b, 4 * a * b])
    xi = ring.gen("xi")
    d = ring(h) + xi
    return CompleteIntersectionSpec(ring, (d, d, d))


@_timed
def verify_cohomology(inst: PaperInstance | None = None) -> CheckRecord:
    """h^i(O_X) from the resolution of the ideal sheaf, cross-checked by HRR."""
    table = resolution_sheaf_cohomology(RESOLUTION)
    f1 = bott_kunneth_table((1, 2, 2), RESOLUTION[1][0])
    f2 = [bott_kunneth_table((1, 2, 2), md) for md in RESOLUTION[2]]
    chi = hrr_chi(pencil_spec(), 0)
    h = table.vector(3)
    values = {"h": list(h), "exact": table.exact, "hrr_chi": chi,
              "F1_table_zero": f1.is_zero(), "F2_tables_zero": all(t.is_zero() for t in f2)}
    ok = (table.exact and h == (1, 0, 0, 0) and chi == 1 and values["F1_table_zero"]
          and values["F2_tables_zero"])
    return CheckRecord("cohomology", _status(ok), values)


@_timed
def compute_invariants(inst: PaperInstance | None = None, point_count: int | None = None,
                       budget: int | None = gb.DEFAULT_BUDGET) -> CheckRecord:
    """Euler number, canonical class and [X] from Chern classes; twelve-point count."""
    spec = pencil_spec()
    ring = spec.ambient
    h, a, b, xi = ring.gens()
    chi_top = euler_characteristic_top(spec)
    k = canonical_class(spec)
    canonical_ok = 2 * k == 2 * h + (xi - 2 * a) + (xi - 2 * b)
    base, hh, aa, bb = _chow()
    target = O(base, 1, 2, 0) + O(base, 1, 0, 2)
    c = chern_classes(target)
    x_class = degeneracy_class(3, target, 1)
    values = {"chi_top": chi_top, "canonical_class": format_class(k),
              "canonical_identity": canonical_ok, "X_class": format_class(x_class),
              "X_class_is_c1sq_minus_c2": x_class == c[1] ** 2 - c[2]}
    if point_count is None and inst is not None:
        gens = inst.rows_p("P1", "Q1", "R1")
        point_count = gb.cell_point_count(gens, gb.cell_decomposition(inst.ring_p, ["P1", "X"]),
                                          budget)
    values["point_count"] = point_count
    coh = resolution_sheaf_cohomology(RESOLUTION)
    values["h_O"] = list(coh.vector(3))
    ok = chi_top == -36 and canonical_ok and values["X_class_is_c1sq_minus_c2"] \
        and point_count == 12 and coh.exact
    return CheckRecord("invariants", _status(ok), values, prime=None if inst is None else inst.p)


def hodge_diamond(invariants: CheckRecord) -> CheckRecord:
    """Betti and Hodge numbers from computed invariants plus the Picard-rank inputs."""
    v = invariants.values
    count, chi_top = v["point_count"], v["chi_top"]
    h0 = v["h_O"]
    b0, b1 = 1, 2 * h0[1]
    b2 = 2 + 2 * count
    b3 = 2 * b0 + 2 * b2 - chi_top - 2 * b1
    h03 = h0[3]
    values = {"b0": b0, "b1": b1, "b2": b2, "b3": b3, "h11": b2 - 2 * h0[2],
              "h12": (b3 - 2 * h03) // 2, "h03": h03,
              "b2_split": f"2 + 2*{count}"}
    status = ASSUMED if invariants.status == VERIFIED else INCONCLUSIVE
    return CheckRecord("hodge_diamond", status, values, AXIOM,
                       AXIOMS["picard_rank_inputs"][1], axioms=("picard_rank_inputs",))


def parity_obstruction() -> CheckRecord:
    """A class with degree 1 over P^1 and zero intersection with sum E breaks the congruence."""
    deg, dot = 1, 0
    violates = (deg - dot) % 2 != 0
    return CheckRecord("parity_obstruction", _status(violates),
                       {"deg_beta_over_P1": deg, "beta_dot_sum_E": dot, "congruence_violated": violates})


def _axiom_record(name: str) -> CheckRecord:
    text, cites = AXIOMS[name]
    return CheckRecord(name, ASSUMED, {"statement": text}, AXIOM, cites, axioms=(name,))


# report ------------------------------------------------------------------

@dataclass
class VerificationReport:
    records: list
    instances: list  # dicts: prime, seed, retries
    config: dict = field(default_factory=dict)

    @property
    def axioms(self) -> list[str]:
        return sorted({a for r in self.records if r.provenance == AXIOM for a in r.axioms})

    def _computed(self):
        return [r for r in self.records if r.provenance == COMPUTED]

    @property
    def outcome(self) -> str:
        """certified | failed | inconclusive."""
        computed = self._computed()
        if any(r.status == FAILED for r in computed):
            return "failed"
        names = {r.name for r in computed if r.status == VERIFIED}
        required = set(CHECK_NAMES) | {"parity_obstruction"}
        if any(r.status != VERIFIED for r in computed) or not required <= names:
            return "inconclusive"
        if set(self.axioms) != set(AXIOMS):
            return "inconclusive"
        return "certified"

    @property
    def verdict(self) -> str:
        return VERDICT_CERTIFIED if self.outcome == "certified" else VERDICT_NOT_ESTABLISHED

    @property
    def exit_code(self) -> int:
        return {"certified": 0, "failed": 1, "inconclusive": 2}[self.outcome]

    def record(self, name: str, prime: int | None = None) -> CheckRecord:
        for r in self.records:
            if r.name == name and (prime is None or r.prime == prime):
                return r
        raise KeyError(name)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "format": "enriqueslab-report",
            "version": 1,
            "config": self.config,
            "instances": self.instances,
            "checks": [r.to_dict(timing) for r in self.records],
            "axioms": self.axioms,
            "outcome": self.outcome,
            "verdict": self.verdict,
        }
        if self.outcome == "certified":
            d["statement"] = f"{STATEMENT}, conditional on: {', '.join(self.axioms)}"
        return d

    def summary(self) -> str:
        lines = []
        for inst in self.instances:
            lines.append(f"instance p={inst['prime']} seed={inst['seed']} retries={inst['retries']}")
        for r in self.records:
            where = "" if r.prime is None else f" [p={r.prime}]"
            lines.append(f"{r.status:>12}  {r.name}{where}  ({r.provenance})")
            lines.extend(f"{'':14}{k}: {v}" for k, v in _summary_values(r))
        lines.append(f"verdict: {self.verdict}")
        if self.outcome == "certified":
            lines.append(f"{STATEMENT}, conditional on: {', '.join(self.axioms)}")
        return "\n".join(lines)


def _summary_values(r: CheckRecord):
    keys = {
        "twelve_planes": ("class_count", "point_count", "reduced", "disjoint_from_S0"),
        "cohomology": ("h", "hrr_chi"),
        "invariants": ("chi_top", "canonical_class", "point_count"),
        "hodge_diamond": ("b2", "b3", "h12"),
        "divisor_identity": ("lhs", "rhs"),
        "congruence": ("cases", "all_hold"),
    }.get(r.name, ())
    if r.values.get("skipped"):
        return [("skipped", True)]
    out = [(k, r.values[k]) for k in keys if k in r.values]
    if r.name == "cohomology" and "h" in r.values:
        h = r.values["h"]
        out.append(("h^i(O)=0 for i>0", all(x == 0 for x in h[1:])))
    if r.name == "smooth_models":
        out = [(m, f"{v['status']} ({v['certified']}/{v['cells']} cells)") for m, v in r.values.items()]
    return out


def _skipped(name: str, prime=None) -> CheckRecord:
    return CheckRecord(name, INCONCLUSIVE, {"skipped": True}, prime=prime)


def instance_checks(inst: PaperInstance, skip: Sequence[str] = (), budget=gb.DEFAULT_BUDGET,
                    jobs: int = 1, stretch: bool = False, smooth_models=None) -> list[CheckRecord]:
    """The prime-dependent checks for one instance, in report order."""
    skip = set(skip)
    out = []
    runs = [
        ("specialization_decomposition", lambda: verify_specialization_decomposition(inst)),
        ("twelve_planes", lambda: verify_twelve_planes(inst, budget)),
        ("smooth_models", lambda: verify_smooth_models(inst, budget, jobs, models=smooth_models)),
        ("divisor_identity", lambda: verify_divisor_identity(inst, stretch, budget)),
    ]
    for name, run in runs:
        out.append(_skipped(name, inst.p) if name in skip else run())
    return out


def structural_checks(inst: PaperInstance, skip: Sequence[str] = (),
                      point_count: int | None = None, budget=gb.DEFAULT_BUDGET) -> list[CheckRecord]:
    """Seed-independent checks plus the assumed inputs; the parity step comes last."""
    skip = set(skip)
    out = []
    out.append(_skipped("congruence") if "congruence" in skip else verify_congruence(inst))
    out.append(_skipped("cohomology") if "cohomology" in skip else verify_cohomology(inst))
    if "invariants" in skip:
        inv = _skipped("invariants")
        out.append(inv)
    else:
        inv = compute_invariants(inst, point_count, budget)
        inv.prime = None
        out.append(inv)
        out.append(hodge_diamond(inv))
    out.append(_axiom_record("specialization_homomorphism"))
    out.append(_axiom_record("lefschetz_surjectivity"))
    out.append(parity_obstruction())
    return out


def nonalgebraicity_report(inst: PaperInstance, skip: Sequence[str] = (),
                           budget=gb.DEFAULT_BUDGET, jobs: int = 1,
                           stretch: bool = False) -> VerificationReport:
    """All checks for a single instance, chained into the final verdict."""
    recs = instance_checks(inst, skip, budget, jobs, stretch)
    tp = recs[1]
    count = tp.values.get("point_count") if tp.status == VERIFIED else None
    recs += structural_checks(inst, skip, count, budget)
    return VerificationReport(recs, [{"prime": inst.p, "seed": inst.seed, "retries": inst.retries}],
                              {"primes": [inst.p], "seed": inst.seed, "budget": budget,
                               "skip": sorted(skip), "stretch": stretch})


def verify_all(primes: Sequence[int] = (101, 211), seed: int = 1, budget=gb.DEFAULT_BUDGET,
               jobs: int = 1, skip: Sequence[str] = (), stretch: bool = False,
               max_retries: int = 5) -> VerificationReport:
    """Run every check for each prime.

    Generality is tested, not assumed: when the twelve-planes or the
    smoothness check fails for a sampled instance, the forms are resampled
    with seed + 1 and the retry is recorded.
    """
    for p in primes:
        _check_prime(p)
    records, instances = [], []
    count = None
    inst = None
    for p in primes:
        for attempt in range(max_retries + 1):
            inst = build_instance(p, seed + attempt, retries=attempt)
            recs = instance_checks(inst, skip, budget, jobs, stretch)
            general = all(r.status != FAILED for r in recs if r.name in ("twelve_planes", "smooth_models"))
            if general:
                break
        records += recs
        instances.append({"prime": p, "seed": inst.seed, "retries": inst.retries})
        tp = recs[1]
        if tp.status == VERIFIED and count is None:
            count = tp.values["point_count"]
    records += structural_checks(inst, skip, count, budget)
    config = {"primes": list(primes), "seed": seed, "budget": budget, "skip": sorted(skip),
              "stretch": stretch}
    return VerificationReport(records, instances, config)
