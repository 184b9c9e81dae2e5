"""Buchberger's algorithm over F_p (and small rational inputs) with certificates.

Monomials are packed into single Python integers so that the integer order
is the graded reverse lexicographic order, multiplication is addition, and
divisibility is one subtraction and a mask test.  Field layout for n
variables, each field ``_BITS`` wide::

    [ total degree | C - e_{n-1} | ... | C - e_0 ]

with C = 2^(_BITS-1).  Exponents must stay below C.
"""

from __future__ import annotations

import heapq
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import univariate as up
from .mpoly import MPoly, PolyRing, jacobian, minors

__all__ = [
    "GroebnerBasis",
    "BudgetExceeded",
    "PositiveDimensionalError",
    "Inconclusive",
    "ProbeError",
    "INFINITE",
    "DEFAULT_BUDGET",
    "buchberger",
    "normal_form",
    "contains_one",
    "ideal_contains",
    "quotient_dimension",
    "standard_monomials",
    "Cell",
    "CellDecomposition",
    "cell_decomposition",
    "restrict_to_blocks",
    "cell_point_count",
    "empty_locus",
    "radical_point_check",
    "CellRecord",
    "SmoothnessReport",
    "smoothness_certificate",
    "ProbeReport",
    "smoothness_probe",
]

INFINITE = math.inf
DEFAULT_BUDGET = 5_000_000

_BITS = 16
_C = 1 << (_BITS - 1)
_FM = (1 << _BITS) - 1


class BudgetExceeded(RuntimeError):
    """The reduction-step budget ran out before the computation finished."""

    def __init__(self, steps: int):
        super().__init__(f"step budget exhausted after {steps} reduction steps")
        self.steps = steps


class PositiveDimensionalError(ValueError):
    pass


class Inconclusive(RuntimeError):
    pass


class ProbeError(RuntimeError):
    pass


class _Codec:
    """Packing of exponent tuples of a fixed length."""

    def __init__(self, n: int):
        self.n = n
        self.deg_shift = _BITS * n
        self.off = sum(_C << (_BITS * i) for i in range(n))
        self.doff = self.off + (_C << self.deg_shift)
        self.mask = self.off

    def pack(self, e) -> int:
        m = sum(e) << self.deg_shift
        for i, x in enumerate(e):
            if x >= _C:
                raise OverflowError("exponent too large for packed monomials")
            m |= (_C - x) << (_BITS * i)
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple(_C - ((m >> (_BITS * i)) & _FM) for i in range(self.n))

    def degree(self, m: int) -> int:
        return m >> self.deg_shift

    def lcm(self, a: int, b: int) -> int:
        return self.pack(tuple(max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))))


# packed polynomial helpers ------------------------------------------------

def _to_packed(f: MPoly, codec: _Codec) -> dict:
    return {codec.pack(e): c for e, c in f.terms.items()}


def _from_packed(d: dict, ring: PolyRing, codec: _Codec) -> MPoly:
    return MPoly(ring, {codec.unpack(m): c for m, c in d.items()})


def _inv(c, p):
    if p is None:
        v = 1 / Fraction(c)
        return int(v) if v.denominator == 1 else v
    return pow(c, -1, p)


def _make_monic(d: dict, p) -> dict:
    lm = max(d)
    inv = _inv(d[lm], p)
    if p is None:
        return {m: _q(c * inv) for m, c in d.items()}
    return {m: c * inv % p for m, c in d.items()}


def _q(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class _Reducer:
    """Monic polynomial prepared for reduction: lm and tail offsets."""

    __slots__ = ("lm", "tail", "poly")

    def __init__(self, d: dict):
        lm = max(d)
        self.lm = lm
        self.poly = d
        self.tail = [(m - lm, c) for m, c in sorted(d.items(), reverse=True) if m != lm]


class _Counter:
    __slots__ = ("steps", "budget")

    def __init__(self, budget):
        self.steps = 0
        self.budget = budget


def _reduce(f: dict, reducers: list, codec: _Codec, p, counter: _Counter, full: bool = True) -> dict:
    """Remainder of f modulo monic reducers (all terms if ``full``).

    The shortest applicable reducer is used.  Over F_p coefficients are
    reduced lazily, when a term is popped.
    """
    f = dict(f)
    heap = [-m for m in f]
    heapq.heapify(heap)
    rem = {}
    doff, mask = codec.doff, codec.mask
    budget = counter.budget
    reducers = sorted(reducers, key=lambda r: len(r.tail))
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        m = -pop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        if p is not None:
            c %= p
            if not c:
                continue
        for r in reducers:
            if ((r.lm - m + doff) & mask) == mask:
                break
        else:
            rem[m] = c
            if not full:
                for mm, v in f.items():
                    if p is not None:
                        v %= p
                    if v:
                        rem[mm] = v
                return rem
            continue
        counter.steps += 1
        if budget is not None and counter.steps > budget:
            raise BudgetExceeded(counter.steps)
        get = f.get
        if p is None:
            for d, cj in r.tail:
                mm = m + d
                v = get(mm)
                if v is None:
                    f[mm] = _q(-c * cj)
                    push(heap, -mm)
                else:
                    v = _q(v - c * cj)
                    if v:
                        f[mm] = v
                    else:
                        del f[mm]
        else:
            nc = p - c
            for d, cj in r.tail:
                mm = m + d
                v = get(mm)
                if v is None:
                    f[mm] = nc * cj
                    push(heap, -mm)
                else:
                    f[mm] = v + nc * cj
    return rem


def _spoly(a: _Reducer, b: _Reducer, lcm: int, codec: _Codec, p) -> dict:
    """S-polynomial of two monic polynomials."""
    off = codec.off
    ta = lcm - a.lm + off
    tb = lcm - b.lm + off
    out: dict = {}
    for m, c in a.poly.items():
        out[m + ta - off] = c
    for m, c in b.poly.items():
        k = m + tb - off
        v = out.get(k, 0) - c
        if p is not None:
            v %= p
        else:
            v = _q(v)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


# public API ----------------------------------------------------------------

@dataclass
class GroebnerBasis:
    """Reduced, monic Groebner basis under grevlex."""

    ring: PolyRing
    polys: list
    order: str = "grevlex"
    steps: int = 0

    @property
    def staircase(self) -> list[tuple[int, ...]]:
        """Leading exponents of the basis elements."""
        return [max(f.terms, key=_grevlex) for f in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def codec(self) -> _Codec:
        return _Codec(self.ring.nvars)

    def reducers(self, codec: _Codec) -> list:
        return [_Reducer(_to_packed(f, codec)) for f in self.polys]


def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def buchberger(gens: Sequence[MPoly], order: str = "grevlex", budget: int | None = DEFAULT_BUDGET,
               full_reduction: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Pairs are processed by the sugar strategy (least sugar degree, then lcm
    degree, then pair index) after Gebauer-Moeller pruning.  The computation stops as
    soon as a nonzero constant appears.  Exceeding ``budget`` reduction
    steps raises :class:`BudgetExceeded`.
    """
    if order != "grevlex":
        raise ValueError("only grevlex is supported")
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators must share one ring")
    p = ring.p
    codec = _Codec(ring.nvars)
    counter = _Counter(budget)
    one = codec.off

    basis: list[_Reducer] = []
    exps: list[tuple[int, ...]] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: dict[tuple[int, int], int] = {}
    heap: list = []

    def finish_unit():
        return GroebnerBasis(ring, [ring.one()], order, counter.steps)

    def insert(h: dict, sug: int):
        k = len(basis)
        r = _Reducer(_make_monic(h, p))
        basis.append(r)
        sugar.append(max(sug, codec.degree(r.lm)))
        exps.append(codec.unpack(r.lm))
        lm = r.lm
        # Gebauer-Moeller: candidate pairs (i, k), dropped when another
        # candidate's lcm divides theirs, unless the leading terms are coprime
        cand = [(i, codec.lcm(basis[i].lm, lm)) for i in active]
        kept = []
        for idx, (i, L) in enumerate(cand):
            if L == basis[i].lm + lm - codec.off:
                kept.append((i, L))
                continue
            if any(_divides(L2, L, codec) for _, L2 in cand[idx + 1:]):
                continue
            if any(_divides(L2, L, codec) for _, L2 in kept):
                continue
            kept.append((i, L))
        new_pairs = [(i, L) for i, L in kept if L != basis[i].lm + lm - codec.off]
        # prune old pairs by the chain criterion
        for (i, j), L in list(pairs.items()):
            if _divides(lm, L, codec):
                Li = codec.lcm(basis[i].lm, lm)
                Lj = codec.lcm(basis[j].lm, lm)
                if Li != L and Lj != L:
                    del pairs[(i, j)]
        for i, L in new_pairs:
            pairs[(i, k)] = L
            dL = codec.degree(L)
            sg = max(sugar[i] + dL - codec.degree(basis[i].lm), sugar[k] + dL - codec.degree(lm))
            heapq.heappush(heap, (sg, dL, i, k, L))
        active[:] = [i for i in active if not _divides(lm, basis[i].lm, codec)] + [k]

    for g in gens:
        h = _reduce(_to_packed(g, codec), [basis[i] for i in active], codec, p, counter, full_reduction)
        if not h:
            continue
        if max(h) == one:
            return finish_unit()
        insert(h, g.total_degree())

    while heap:
        sg, _, i, j, L = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        s = _spoly(basis[i], basis[j], L, codec, p)
        if not s:
            continue
        h = _reduce(s, [basis[a] for a in active], codec, p, counter, full_reduction)
        if not h:
            continue
        if max(h) == one:
            return finish_unit()
        insert(h, sg)

    # inter-reduce to the reduced basis
    final = []
    act = sorted(active, key=lambda a: basis[a].lm)
    for a in act:
        others = [basis[b] for b in act if b != a]
        head = {basis[a].lm: 1}
        tail = {m: c for m, c in basis[a].poly.items() if m != basis[a].lm}
        red = _reduce(tail, others, codec, p, counter, True)
        red.update(head)
        final.append(_from_packed(red, ring, codec))
    return GroebnerBasis(ring, final, order, counter.steps)


def _divides(a: int, b: int, codec: _Codec) -> bool:
    return ((a - b + codec.doff) & codec.mask) == codec.mask


def normal_form(f: MPoly, gb: GroebnerBasis, budget: int | None = None) -> MPoly:
    if f.ring != gb.ring:
        raise ValueError("ring mismatch")
    codec = gb.codec()
    red = _reduce(_to_packed(f, codec), gb.reducers(codec), codec, gb.ring.p, _Counter(budget), True)
    return _from_packed(red, gb.ring, codec)


def ideal_contains(gb: GroebnerBasis, f: MPoly) -> bool:
    return not normal_form(f, gb)


def contains_one(gb: GroebnerBasis) -> bool:
    return any(f.is_constant() and f for f in gb.polys)


def standard_monomials(gb: GroebnerBasis, limit: int | None = None) -> list[tuple[int, ...]] | None:
    """Monomials outside the leading-term ideal, or None if infinitely many."""
    n = gb.ring.nvars
    lead = gb.staircase
    if any(not any(e) for e in lead):
        return []
    for i in range(n):
        if not any(e[i] > 0 and all(e[j] == 0 for j in range(n) if j != i) for e in lead):
            return None

    def standard(m):
        return not any(all(x >= y for x, y in zip(m, e)) for e in lead)

    out = []
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for m in frontier:
            out.append(m)
            if limit is not None and len(out) > limit:
                raise OverflowError("too many standard monomials")
            for i in range(n):
                mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if mm not in seen and standard(mm):
                    seen.add(mm)
                    nxt.append(mm)
        frontier = nxt
    return sorted(out, key=_grevlex)


def quotient_dimension(gb: GroebnerBasis):
    """dim_k of k[x]/I: an int, or INFINITE."""
    std = standard_monomials(gb)
    return INFINITE if std is None else len(std)


# cells of multiprojective space --------------------------------------------

@dataclass(frozen=True)
class Cell:
    """Affine cell: chart variables set to 1, earlier variables of each block set to 0."""

    chart: tuple
    zeros: tuple

    @property
    def id(self) -> str:
        return ",".join(self.chart)

    def substitution(self) -> dict:
        sub = {v: 1 for v in self.chart}
        sub.update({v: 0 for v in self.zeros})
        return sub


@dataclass(frozen=True)
class CellDecomposition:
    ring: PolyRing
    cells: tuple

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def charts(self) -> list[tuple]:
        return [c.chart for c in self.cells]


def restrict_to_blocks(ring: PolyRing, blocks: Sequence[str]) -> PolyRing:
    """Sub-ring keeping only the named variable blocks."""
    keep = [(b, vs) for b, vs in ring.blocks if b in blocks]
    if len(keep) != len(blocks):
        raise ValueError(f"unknown blocks in {blocks}")
    return PolyRing(keep, ring.p, ring.affine)


def cell_decomposition(ring: PolyRing, blocks: Sequence[str] | None = None) -> CellDecomposition:
    """Disjoint affine cells covering the product of the projective spaces."""
    if blocks is not None:
        ring = restrict_to_blocks(ring, blocks)
    per_block = []
    for _, vs in ring.blocks:
        per_block.append([(vs[j], vs[:j]) for j in range(len(vs))])
    cells = []
    for choice in product(*per_block):
        chart = tuple(c for c, _ in choice)
        zeros = tuple(z for _, zs in choice for z in zs)
        cells.append(Cell(chart, zeros))
    return CellDecomposition(ring, tuple(cells))


def _on_ring(gens, ring: PolyRing):
    return [g.change_ring(ring) if g.ring != ring else g for g in gens]


def _cell_ideal(gens, cell: Cell) -> list[MPoly]:
    sub = cell.substitution()
    out = [g.subs(sub) for g in gens]
    return [g for g in out if g]


def _cell_gb(gens, cell, budget):
    polys = _cell_ideal(gens, cell)
    if not polys:
        ring = gens[0].ring.drop_variables(cell.substitution())
        return GroebnerBasis(ring, [], steps=0)
    return buchberger(polys, budget=budget)


def cell_point_count(gens: Sequence[MPoly], decomposition: CellDecomposition,
                     budget: int | None = DEFAULT_BUDGET) -> int:
    """Points (with multiplicity) of a zero-dimensional multiprojective scheme."""
    gens = _on_ring(gens, decomposition.ring)
    total = 0
    for cell in decomposition:
        gb = _cell_gb(gens, cell, budget)
        if not gb.polys and gb.ring.nvars:
            raise PositiveDimensionalError(f"cell {cell.id}: the whole cell lies in the locus")
        if not gb.polys:
            total += 1
            continue
        d = quotient_dimension(gb)
        if d == INFINITE:
            raise PositiveDimensionalError(f"cell {cell.id}: locus is positive-dimensional")
        total += d
    return total


def empty_locus(gens: Sequence[MPoly], decomposition: CellDecomposition,
                budget: int | None = DEFAULT_BUDGET) -> bool:
    """True iff the multiprojective zero set is empty (1 in the ideal on every cell)."""
    gens = _on_ring(gens, decomposition.ring)
    for cell in decomposition:
        gb = _cell_gb(gens, cell, budget)
        if not contains_one(gb):
            return False
    return True


# zero-dimensional algebra --------------------------------------------------

def _vector(f: MPoly, index: dict, p) -> list:
    v = [0] * len(index)
    for e, c in f.terms.items():
        v[index[e]] = c
    return v


def _minimal_polynomial(gb: GroebnerBasis, ell: MPoly, std: list):
    """Minimal polynomial of multiplication by ``ell`` on k[x]/I, plus the
    Krylov vectors NF(ell^j), j < its degree (coordinates in ``std``)."""
    p = gb.ring.p
    index = {e: i for i, e in enumerate(std)}
    n = len(std)
    codec = gb.codec()
    reducers = gb.reducers(codec)
    counter = _Counter(None)
    echelon = []  # (pivot, reduced vector, combination of powers)
    krylov = []
    cur = gb.ring.one()
    for k in range(n + 1):
        vec = _vector(cur, index, p)
        krylov.append(vec)
        vec = list(vec)
        combo = [0] * (n + 1)
        combo[k] = 1
        for piv, row, rc in echelon:
            c = vec[piv]
            if c:
                vec = [_fsub(x, c * y, p) for x, y in zip(vec, row)]
                combo = [_fsub(x, c * y, p) for x, y in zip(combo, rc)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return up.monic(up.trim(combo, p), p), krylov[:k]
        inv = _inv(vec[piv], p)
        echelon.append((piv, [_fnorm(x * inv, p) for x in vec], [_fnorm(x * inv, p) for x in combo]))
        red = _reduce(_to_packed(ell * cur, codec), reducers, codec, p, counter, True)
        cur = _from_packed(red, gb.ring, codec)
    raise AssertionError("Cayley-Hamilton violated")


def _fsub(a, b, p):
    if p is None:
        return _q(a - b)
    return (a - b) % p


def _fnorm(a, p):
    if p is None:
        return _q(a)
    return a % p


def _random_linear_form(ring: PolyRing, rng: random.Random) -> MPoly:
    p = ring.p
    f = ring.zero()
    for v in ring.variables:
        c = rng.randrange(1, p) if p else rng.randint(1, 50)
        f = f + ring.var(v).scale(c)
    return f


def radical_point_check(gens: Sequence[MPoly], decomposition: CellDecomposition,
                        seed: int = 0, retries: int = 3, budget: int | None = DEFAULT_BUDGET) -> bool:
    """True iff every cell's zero-dimensional quotient is reduced.

    For a random linear form l the minimal polynomial of l on the quotient
    must be squarefree of degree equal to the quotient dimension.  A
    non-squarefree minimal polynomial proves non-reducedness; degree
    deficits are retried and finally raise :class:`Inconclusive`.
    """
    gens = _on_ring(gens, decomposition.ring)
    rng = random.Random(seed)
    for cell in decomposition:
        gb = _cell_gb(gens, cell, budget)
        if not gb.polys:
            if gb.ring.nvars:
                raise PositiveDimensionalError(f"cell {cell.id}: the whole cell lies in the locus")
            continue
        if contains_one(gb):
            continue
        std = standard_monomials(gb)
        if std is None:
            raise PositiveDimensionalError(f"cell {cell.id}: locus is positive-dimensional")
        if not _cell_is_reduced(gb, std, rng, retries, cell.id):
            return False
    return True


def _cell_is_reduced(gb, std, rng, retries, cell_id) -> bool:
    p = gb.ring.p
    if gb.ring.nvars == 0:
        return True
    for _ in range(retries):
        ell = _random_linear_form(gb.ring, rng)
        mp, _ = _minimal_polynomial(gb, ell, std)
        if not up.is_squarefree(mp, p):
            return False
        if up.degree(mp) == len(std):
            return True
    raise Inconclusive(f"cell {cell_id}: no separating linear form found in {retries} tries")


# smoothness ----------------------------------------------------------------

@dataclass
class CellRecord:
    cell: str
    status: str  # smooth-certified | singular | inconclusive
    steps: int
    wall_time: float
    method: str = ""

    def to_dict(self, timing: bool = False) -> dict:
        d = {"cell": self.cell, "status": self.status, "steps": self.steps, "method": self.method}
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d


@dataclass
class SmoothnessReport:
    records: list = field(default_factory=list)

    @property
    def smooth(self) -> bool:
        return bool(self.records) and all(r.status == "smooth-certified" for r in self.records)

    @property
    def singular(self) -> bool:
        return any(r.status == "singular" for r in self.records)

    @property
    def inconclusive(self) -> list:
        return [r.cell for r in self.records if r.status == "inconclusive"]

    @property
    def status(self) -> str:
        if self.singular:
            return "singular"
        if self.smooth:
            return "smooth-certified"
        return "inconclusive"

    def count(self, status: str = "smooth-certified") -> int:
        return sum(r.status == status for r in self.records)

    def to_dict(self, timing: bool = False) -> dict:
        return {"status": self.status, "cells": [r.to_dict(timing) for r in self.records]}


def _singular_locus_generators(gens, cell: Cell, codim: int):
    """(ideal generators, Jacobian minors) restricted to a cell.

    Derivatives are taken in all affine coordinates of the chart, including
    the ones the cell then sets to zero.
    """
    chart_sub = {v: 1 for v in cell.chart}
    affine = [g.subs(chart_sub) for g in gens]
    affine = [g for g in affine if g]
    if not affine:
        return [], []
    ring = affine[0].ring
    J = jacobian(affine, ring.variables)
    nr, nc = J.shape
    mins = minors(J, codim) if codim <= min(nr, nc) else []
    zero_sub = {v: 0 for v in cell.zeros}
    if zero_sub:
        affine = [g.subs(zero_sub) for g in affine]
        mins = [m.subs(zero_sub) for m in mins]
    return [g for g in affine if g], [m for m in mins if m]


def _certify_cell(args):
    gens, cell, codim, budget = args
    t0 = time.perf_counter()
    counter_steps = 0
    try:
        ideal, mins = _singular_locus_generators(gens, cell, codim)
        if not ideal:
            # the whole cell lies in the scheme; smooth only if codim 0
            status = "smooth-certified" if codim == 0 else "singular"
            return CellRecord(cell.id, status, 0, time.perf_counter() - t0, "trivial")
        gb = buchberger(ideal, budget=budget)
        counter_steps += gb.steps
        if contains_one(gb):
            return CellRecord(cell.id, "smooth-certified", counter_steps, time.perf_counter() - t0, "empty")
        remaining = None if budget is None else budget - counter_steps
        gb = buchberger(ideal + mins, budget=remaining)
        counter_steps += gb.steps
        status = "smooth-certified" if contains_one(gb) else "singular"
        return CellRecord(cell.id, status, counter_steps, time.perf_counter() - t0, "jacobian-minors")
    except BudgetExceeded as exc:
        return CellRecord(cell.id, "inconclusive", counter_steps + exc.steps,
                          time.perf_counter() - t0, "budget")


def smoothness_certificate(gens: Sequence[MPoly], expected_codim: int,
                           decomposition: CellDecomposition,
                           budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> SmoothnessReport:
    """Jacobian-criterion certificate, one Groebner computation per cell.

    A cell is smooth-certified when I + (c x c Jacobian minors) contains 1
    there, and singular when the basis is proper (a singular point exists
    over the algebraic closure).
    """
    gens = _on_ring(gens, decomposition.ring)
    tasks = [(gens, cell, expected_codim, budget) for cell in decomposition]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_certify_cell, tasks))
    else:
        records = [_certify_cell(t) for t in tasks]
    return SmoothnessReport(records)


# randomized probe -------------------------------------------------------------

@dataclass
class ProbeReport:
    points: int = 0
    full_rank: int = 0
    singular_points: list = field(default_factory=list)
    attempts: int = 0

    @property
    def found_singular(self) -> bool:
        return bool(self.singular_points)

    @property
    def summary(self) -> str:
        if self.singular_points:
            return f"singular point found ({len(self.singular_points)} of {self.points} sampled)"
        return f"no singularity found in {self.points} samples"

    def to_dict(self) -> dict:
        return {"points": self.points, "full_rank": self.full_rank,
                "singular_points": len(self.singular_points), "summary": self.summary}


def _eval_in_field(f: MPoly, point: list, K: up.ExtensionField):
    total = []
    for e, c in f.terms.items():
        t = [c % K.p]
        for x, k in zip(point, e):
            if k:
                t = K.mul(t, K.pow(x, k))
        total = K.add(total, t)
    return total


def smoothness_probe(gens: Sequence[MPoly], expected_codim: int, samples: int = 100,
                     extension_degree: int = 2, decomposition: CellDecomposition | None = None,
                     seed: int = 0, max_attempts: int | None = None,
                     budget: int | None = DEFAULT_BUDGET) -> ProbeReport:
    """Sample points by random linear slicing and test the Jacobian rank there.

    Each attempt restricts the equations to a random affine subspace of
    dimension ``expected_codim`` in one chart, solves the resulting
    zero-dimensional system through the minimal polynomial of a separating
    linear form, and reads off its points over F_{p^k}, k <= extension_degree.
    Non-reduced slices (a slice through a singular point always is one) are
    replaced by their radical first.  Never claims smoothness; reports rank-deficient points as singular.
    """
    gens = list(gens)
    ring = gens[0].ring
    p = ring.p
    if p is None:
        raise ValueError("the probe works over prime fields only")
    if decomposition is None:
        decomposition = cell_decomposition(ring)
    gens = _on_ring(gens, decomposition.ring)
    rng = random.Random(seed)
    report = ProbeReport()
    charts = decomposition.charts()
    max_attempts = max_attempts or max(20, 4 * samples)
    c = expected_codim
    while report.points < samples and report.attempts < max_attempts:
        chart = charts[report.attempts % len(charts)]
        report.attempts += 1
        affine = [g.subs({v: 1 for v in chart}) for g in gens]
        affine = [g for g in affine if g]
        if not affine:
            continue
        aring = affine[0].ring
        n = aring.nvars
        if c > n or c < 1:
            raise ValueError("expected codimension out of range for the chart")
        params = PolyRing([("u", [f"u{i}" for i in range(c)])], p, affine=True)
        us = params.gens()
        A = [[rng.randrange(p) for _ in range(c)] for _ in range(n)]
        b = [rng.randrange(p) for _ in range(n)]
        images = {}
        for i, v in enumerate(aring.variables):
            img = params.const(b[i])
            for j in range(c):
                img = img + us[j].scale(A[i][j])
            images[v] = img
        sliced = [f.compose(images, params) for f in affine]
        sliced = [f for f in sliced if f]
        if not sliced:
            continue
        try:
            gb = buchberger(sliced, budget=budget)
        except BudgetExceeded:
            continue
        if contains_one(gb):
            continue
        std = standard_monomials(gb, limit=5000)
        if std is None:
            continue
        ell = _random_linear_form(params, rng)
        mp, krylov = _minimal_polynomial(gb, ell, std)
        if not up.is_squarefree(mp, p):
            # a slice through a singular point is never reduced there: pass
            # to the radical through the squarefree part of mp
            sq = up.divmod_poly(mp, up.gcd(mp, up.derivative(mp, p), p), p)[0]
            try:
                gb = buchberger(gb.polys + [_horner(sq, ell)], budget=budget)
            except BudgetExceeded:
                continue
            if contains_one(gb):
                continue
            std = standard_monomials(gb, limit=5000)
            mp, krylov = _minimal_polynomial(gb, ell, std)
        if up.degree(mp) != len(std) or not up.is_squarefree(mp, p):
            continue
        coords = []
        for j in range(c):
            coords.append(_express_in_powers(normal_form(us[j], gb), krylov, std, p))
        J = jacobian(affine, aring.variables)
        for psi in up.irreducible_factors(mp, p, extension_degree, seed=rng.randrange(1 << 30)):
            K = up.ExtensionField(p, psi)
            u = [K.elem(g) for g in coords]
            point = []
            for i in range(n):
                x = K.elem([b[i]])
                for j in range(c):
                    x = K.add(x, K.mul([A[i][j]], u[j]) if A[i][j] else [])
                point.append(x)
            values = [[_eval_in_field(entry, point, K) for entry in row] for row in J.rows]
            report.points += 1
            if K.rank(values) < c:
                report.singular_points.append((chart, K.k, point))
            else:
                report.full_rank += 1
            if report.points >= samples:
                break
    if report.points == 0:
        raise ProbeError(f"no points located in {report.attempts} slicing attempts")
    return report


def _horner(coeffs: list, x: MPoly) -> MPoly:
    out = x.ring.zero()
    for c in reversed(coeffs):
        out = out * x + c
    return out


def _express_in_powers(f: MPoly, krylov: list, std: list, p) -> list:
    """Coefficients g with NF(f) = sum g_j ell^j (Krylov vectors as basis)."""
    index = {e: i for i, e in enumerate(std)}
    target = _vector(f, index, p)
    n = len(std)
    # solve K g = target where K has the Krylov vectors as columns
    rows = [[krylov[j][i] for j in range(n)] + [target[i]] for i in range(n)]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if rows[i][col] % p), None)
        if piv is None:
            raise ArithmeticError("Krylov vectors are not a basis")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                fct = rows[i][col]
                rows[i] = [(x - fct * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return up.trim([rows[i][n] for i in range(n)], p)
