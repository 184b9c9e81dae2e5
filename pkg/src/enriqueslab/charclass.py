"""Characteristic classes of bundles on Chow rings, and cohomology of line bundles.

Everything here is computed inside a :class:`~enriqueslab.chow.ChowRing`.
Todd classes and Chern characters are rational; results that must be
integers (Euler characteristics) are checked for integrality before they are
returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Sequence

from .chow import ChowClass, ChowRing, GradingError, integrate

__all__ = [
    "BundleExpr",
    "CompleteIntersectionSpec",
    "CohomTable",
    "line_class",
    "O",
    "chern_total",
    "chern_classes",
    "tangent_class",
    "tangent_class_from_power_sums",
    "todd_class",
    "degeneracy_class",
    "euler_characteristic_top",
    "canonical_class",
    "hrr_chi",
    "bott_projective",
    "bott_kunneth_table",
    "resolution_sheaf_cohomology",
    "section_divisor_classes",
    "IntegralityError",
]


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer came out fractional."""


@dataclass(frozen=True)
class BundleExpr:
    """Formal direct sum of line bundles plus non-split pieces.

    ``summands`` holds (first Chern class, multiplicity) pairs; ``formal``
    holds (total Chern class, rank) pairs for bundles known only through
    their Chern classes.
    """

    ring: ChowRing
    summands: tuple = ()
    formal: tuple = ()

    def __post_init__(self):
        for line, mult in self.summands:
            if not line.is_homogeneous(1):
                raise GradingError("line summands must be codimension-one classes")
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
        for total, rank in self.formal:
            if total.constant() != 1:
                raise ValueError("total Chern class must start with 1")
            if rank < 0:
                raise ValueError("rank must be nonnegative")

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.summands) + sum(r for _, r in self.formal)

    def __add__(self, other: "BundleExpr") -> "BundleExpr":
        if other.ring != self.ring:
            raise ValueError("bundles live on different rings")
        return BundleExpr(self.ring, self.summands + other.summands, self.formal + other.formal)

    def __mul__(self, k: int) -> "BundleExpr":
        return BundleExpr(self.ring, tuple((l, m * k) for l, m in self.summands),
                          tuple(f for f in self.formal for _ in range(k)))

    __rmul__ = __mul__

    def lines(self) -> list[ChowClass]:
        """Chern roots with multiplicity (only for split bundles)."""
        if self.formal:
            raise ValueError("bundle has non-split summands")
        return [l for l, m in self.summands for _ in range(m)]


def line_class(ring: ChowRing, multidegree: Sequence[int]) -> ChowClass:
    """First Chern class of O(d_1, ..., d_k) on a multiprojective ring (or its bundles).

    On a bundle ring the degrees may stop at the base generators or include
    the tautological ones.
    """
    base = ring
    while base.kind == "bundle":
        base = base.base
    if len(multidegree) == ring.ngens:
        return ring.linear(list(multidegree))
    if len(multidegree) != base.ngens:
        raise ValueError(f"expected {base.ngens} or {ring.ngens} degrees, got {len(multidegree)}")
    return ring(base.linear(list(multidegree)))


def O(ring: ChowRing, *multidegree: int, mult: int = 1) -> BundleExpr:
    """The bundle O(d_1,...,d_k)^{mult}."""
    return BundleExpr(ring, ((line_class(ring, multidegree), mult),))


def chern_total(E: BundleExpr) -> ChowClass:
    c = E.ring.one()
    for line, mult in E.summands:
        c = c * (1 + line) ** mult
    for total, _ in E.formal:
        c = c * E.ring(total)
    return c


def chern_classes(E: BundleExpr) -> list[ChowClass]:
    """[c_0, c_1, ..., c_rank]."""
    c = chern_total(E)
    return [c.part(i) for i in range(E.rank + 1)]


def _bundle_chern(ring: ChowRing) -> list[ChowClass]:
    """[c_0(E), ..., c_r(E)] pulled back to ``ring``, for ring = P(E)."""
    return [ring.one()] + [ring(c) for c in ring.chern]


def tangent_class(ring: ChowRing) -> ChowClass:
    """Total Chern class of the tangent bundle, via Euler sequences.

    For P(E) over a base, the relative tangent bundle fits into
    0 -> O -> E^dual (x) O(1) -> T_rel -> 0, giving
    c(T_rel) = sum_i (-1)^i c_i(E) (1 + xi)^(r-i).
    """
    if ring.kind == "multiprojective":
        c = ring.one()
        for g, n in zip(ring.gens(), ring.dims):
            c = c * (1 + g) ** (n + 1)
        return c
    if ring.kind != "bundle":
        raise ValueError(f"unsupported ring kind {ring.kind!r}")
    xi = ring.gen(ring.names[-1])
    r = ring.rank
    cs = _bundle_chern(ring)
    rel = ring.zero()
    for i in range(r + 1):
        rel = rel + (-1) ** i * cs[i] * (1 + xi) ** (r - i)
    return ring(tangent_class(ring.base)) * rel


# power series machinery -------------------------------------------------

def _series_inverse(a: list[Fraction], n: int) -> list[Fraction]:
    b = [Fraction(0)] * n
    b[0] = 1 / Fraction(a[0])
    for k in range(1, n):
        s = sum(a[j] * b[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        b[k] = -s * b[0]
    return b


def _series_log(a: list[Fraction], n: int) -> list[Fraction]:
    """log of a series with a[0] == 1, via (log a)' = a'/a."""
    inv = _series_inverse(a, n)
    da = [k * a[k] for k in range(1, min(len(a), n))]
    out = [Fraction(0)] * n
    for k in range(1, n):
        # coefficient of x^(k-1) in a' * inv
        s = sum(da[j] * inv[k - 1 - j] for j in range(min(k, len(da))))
        out[k] = s / k
    return out


@lru_cache(maxsize=None)
def todd_log_coefficients(n: int) -> tuple[Fraction, ...]:
    """Coefficients t_k with log(x / (1 - e^-x)) = sum_k t_k x^k, k < n."""
    # (1 - e^-x)/x = sum (-1)^k x^k / (k+1)!
    q = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    td = _series_inverse(q, n + 1)
    return tuple(_series_log(td, n + 1)[:n])


def _exp(x: ChowClass) -> ChowClass:
    """exp of a nilpotent class."""
    ring = x.ring
    result = ring.one()
    term = ring.one()
    for k in range(1, ring.top_degree + 1):
        term = term * x / k
        if not term:
            break
        result = result + term
    return result


def _power_sums_from_chern(cs: list[ChowClass], kmax: int) -> list[ChowClass]:
    """Newton's identities: p_k from elementary symmetric functions c_i."""
    ring = cs[0].ring
    r = len(cs) - 1
    p = [ring(r)]
    for k in range(1, kmax + 1):
        s = ring.zero()
        for i in range(1, min(k - 1, r) + 1):
            s = s + (-1) ** (i - 1) * cs[i] * p[k - i]
        if k <= r:
            s = s + (-1) ** (k - 1) * k * cs[k]
        p.append(s)
    return p


def tangent_power_sums(ring: ChowRing, kmax: int | None = None) -> list[ChowClass]:
    """Power sums of Chern roots of the tangent bundle, p_0 .. p_kmax."""
    kmax = ring.top_degree if kmax is None else kmax
    if ring.kind == "multiprojective":
        p = [ring(ring.top_degree)]
        for k in range(1, kmax + 1):
            s = ring.zero()
            for g, n in zip(ring.gens(), ring.dims):
                s = s + (n + 1) * g ** k
            p.append(s)
        return p
    base_p = [ring(x) for x in tangent_power_sums(ring.base, kmax)]
    xi = ring.gen(ring.names[-1])
    pe = _power_sums_from_chern(_bundle_chern(ring), kmax)
    # roots of E^dual(1) are xi - e_j; the trivial summand of the Euler
    # sequence contributes p_0 = 1 only.
    out = [base_p[0] + ring.rank - 1]
    for k in range(1, kmax + 1):
        s = ring.zero()
        for m in range(k + 1):
            s = s + comb(k, m) * (-1) ** m * xi ** (k - m) * pe[m]
        out.append(base_p[k] + s)
    return out


def _chern_from_power_sums(p: list[ChowClass]) -> ChowClass:
    """c = exp(sum_k (-1)^(k-1) p_k / k)."""
    ring = p[0].ring
    s = ring.zero()
    for k in range(1, len(p)):
        s = s + p[k] * Fraction((-1) ** (k - 1), k)
    return _exp(s)


def tangent_class_from_power_sums(ring: ChowRing) -> ChowClass:
    """Independent route to c(T) through power sums; used to cross-check."""
    return _chern_from_power_sums(tangent_power_sums(ring))


def todd_class(ring: ChowRing) -> ChowClass:
    n = ring.top_degree
    t = todd_log_coefficients(n + 1)
    p = tangent_power_sums(ring, n)
    s = ring.zero()
    for k in range(1, n + 1):
        s = s + p[k] * t[k]
    return _exp(s)


def degeneracy_class(source_rank: int, target: BundleExpr, corank_bound: int) -> ChowClass:
    """Thom-Porteous class of {rank <= r} for O^e -> F with F of rank f.

    With trivial source c(F - E) = c(F), and the class is the
    (e-r) x (e-r) determinant of c_{f-r+j-i}(F).
    """
    e, f, r = source_rank, target.rank, corank_bound
    if r < 0 or r > min(e, f):
        raise ValueError("corank bound out of range")
    codim = (e - r) * (f - r)
    ring = target.ring
    if codim > ring.top_degree:
        raise ValueError(f"expected codimension {codim} exceeds ambient dimension {ring.top_degree}")
    cs = chern_classes(target)

    def c(k):
        if k < 0 or k > f:
            return ring.zero()
        return cs[k]

    m = e - r
    matrix = [[c(f - r + j - i) for j in range(m)] for i in range(m)]
    return _det(matrix, ring)


def _det(matrix, ring):
    n = len(matrix)
    if n == 0:
        return ring.one()
    if n == 1:
        return matrix[0][0]
    total = ring.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total = total + (-1) ** j * matrix[0][j] * _det(minor, ring)
    return total


@dataclass(frozen=True)
class CompleteIntersectionSpec:
    """Zero locus of a section of a sum of line bundles with the given classes."""

    ambient: ChowRing
    divisors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.ambient(d) for d in self.divisors))
        for d in self.divisors:
            if not d.is_homogeneous(1):
                raise GradingError("divisor classes must have codimension one")

    @property
    def dimension(self) -> int:
        return self.ambient.top_degree - len(self.divisors)

    def fundamental_class(self) -> ChowClass:
        c = self.ambient.one()
        for d in self.divisors:
            c = c * d
        return c


def euler_characteristic_top(spec: CompleteIntersectionSpec) -> int:
    """Topological Euler number via c(T_X) = c(T_A) / prod(1 + D_i)."""
    ring = spec.ambient
    normal = ring.one()
    for d in spec.divisors:
        normal = normal * (1 + d)
    cT = tangent_class(ring) * normal.inverse()
    value = integrate(cT * spec.fundamental_class())
    return _as_int(value)


def canonical_class(spec: CompleteIntersectionSpec) -> ChowClass:
    """Ambient class restricting to K of the complete intersection (adjunction)."""
    k = -tangent_class(spec.ambient).part(1)
    for d in spec.divisors:
        k = k + d
    return k


def hrr_chi(spec: CompleteIntersectionSpec, twist: ChowClass | int = 0) -> int:
    """chi(X, L) = int_A ch(L) Td(T_A) prod(1 - e^-D_i)."""
    ring = spec.ambient
    twist = ring(twist)
    if not twist.is_homogeneous(1):
        raise GradingError("twist must be a codimension-one class")
    integrand = _exp(twist) * todd_class(ring)
    for d in spec.divisors:
        integrand = integrand * (1 - _exp(-d))
    return _as_int(integrate(integrand))


def _as_int(value) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise IntegralityError(f"non-integral result {value}")
    return int(value)


def section_divisor_classes(ring: ChowRing, lines: Sequence[ChowClass]) -> list[ChowClass]:
    """Classes of the sections P(L_i) inside P(L_1 + ... + L_r).

    P(L_i) is cut out by the composites L_j -> E -> O(1), j != i; for rank 2
    this is the single divisor xi - c1(L_j).
    """
    if ring.kind != "bundle" or ring.rank != len(lines):
        raise ValueError("ring must be P(L_1 + ... + L_r) with matching lines")
    if ring.rank != 2:
        raise ValueError("section divisors only make sense for rank 2")
    xi = ring.gen(ring.names[-1])
    l1, l2 = (ring(l) for l in lines)
    return [xi - l2, xi - l1]


# cohomology tables ------------------------------------------------------

@dataclass
class CohomTable:
    """Dimensions of H^i; ``exact`` False means only chi and upper bounds are known."""

    dims: dict = field(default_factory=dict)
    exact: bool = True
    euler: int | None = None

    def __post_init__(self):
        self.dims = {int(k): int(v) for k, v in sorted(self.dims.items()) if v}
        if self.euler is None:
            self.euler = sum((-1) ** k * v for k, v in self.dims.items())

    def __getitem__(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def is_zero(self) -> bool:
        return self.exact and not self.dims

    def vector(self, top: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(top + 1))

    def to_dict(self) -> dict:
        return {"dims": {str(k): v for k, v in self.dims.items()},
                "exact": self.exact, "euler": self.euler}


def bott_projective(n: int, d: int) -> tuple[int, int]:
    """(degree, dimension) of the unique nonzero H^i(P^n, O(d)), or (0, 0)."""
    if d >= 0:
        return 0, comb(d + n, n)
    if d <= -n - 1:
        return n, comb(-d - 1, n)
    return 0, 0


def bott_kunneth_table(dims: Sequence[int], multidegree: Sequence[int]) -> CohomTable:
    if len(dims) != len(multidegree):
        raise ValueError("dims and multidegree lengths differ")
    degree, size = 0, 1
    for n, d in zip(dims, multidegree):
        i, h = bott_projective(n, d)
        degree += i
        size *= h
    return CohomTable({degree: size} if size else {})


def resolution_sheaf_cohomology(terms: Sequence[Sequence[Sequence[int]]],
                                twist: Sequence[int] | None = None,
                                dims: Sequence[int] = (1, 2, 2)) -> CohomTable:
    """Cohomology of G resolved by 0 -> F_k -> ... -> F_1 -> F_0 -> G -> 0.

    ``terms[j]`` lists the multidegrees of the line bundles making up F_j.
    The hypercohomology spectral sequence E_1^{-j,q} = H^q(F_j(twist)) is used
    only when no differential can be nonzero; otherwise the answer is the
    Euler characteristic with per-degree upper bounds.
    """
    twist = tuple(twist) if twist is not None else (0,) * len(dims)
    entries: dict[tuple[int, int], int] = {}
    for j, term in enumerate(terms):
        for md in term:
            table = bott_kunneth_table(dims, [a + b for a, b in zip(md, twist)])
            for q, h in table.dims.items():
                entries[(j, q)] = entries.get((j, q), 0) + h
    bounds: dict[int, int] = {}
    for (j, q), h in entries.items():
        bounds[q - j] = bounds.get(q - j, 0) + h
    chi = sum((-1) ** n * h for n, h in bounds.items())
    # d_r : E^{-j,q} -> E^{-j+r,q-r+1}, r >= 1: needs a nonzero source in a
    # higher column and a nonzero target one total degree up.
    degenerate = True
    for (j, q) in entries:
        for (j2, q2) in entries:
            if j2 < j and q2 - j2 == q - j + 1:
                degenerate = False
    if degenerate:
        return CohomTable(bounds, exact=True)
    return CohomTable(bounds, exact=False, euler=chi)
