"""Exact Chow rings of multiprojective spaces and projective bundles over them.

A class is a sparse map from exponent tuples to integer (or, for Todd-class
work, rational) coefficients.  Every operation returns the unique normal form,
so equality of classes is equality of term maps.

Projective bundles follow Grothendieck's convention: ``P(E)`` parameterizes
rank-one quotients of ``E`` and ``xi = c1(O(1))`` satisfies

    xi^r - c1(E) xi^(r-1) + c2(E) xi^(r-2) - ... + (-1)^r cr(E) = 0.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ChowRing",
    "ChowClass",
    "make_multiproj",
    "make_bundle_ring",
    "integrate",
    "GradingError",
]

_DEFAULT_NAMES = "abcdefgklmnpqrsuvw"


class GradingError(ValueError):
    """A class of the wrong codimension was supplied."""


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def default_names(dims: Sequence[int]) -> tuple[str, ...]:
    """Generator names used throughout: ``h`` for a leading P^1, then a, b, c, ..."""
    names = []
    rest = iter(_DEFAULT_NAMES)
    for i, n in enumerate(dims):
        if i == 0 and n == 1:
            names.append("h")
        else:
            names.append(next(rest))
    return tuple(names)


class ChowRing:
    """Truncated multiprojective ring, or a projective-bundle extension of one.

    Use :func:`make_multiproj` and :func:`make_bundle_ring` rather than the
    constructor.
    """

    def __init__(self, names, kind, dims=None, base=None, chern=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names {self.names}")
        self.kind = kind
        self.dims = tuple(dims) if dims is not None else None
        self.base = base
        self.chern = tuple(chern) if chern is not None else ()
        if kind == "multiprojective":
            self.top_degree = sum(self.dims)
            self.top_exponents = self.dims
        else:
            self.rank = len(self.chern)
            self.top_degree = base.top_degree + self.rank - 1
            self.top_exponents = base.top_exponents + (self.rank - 1,)
        self._key = (self.names, kind, self.dims,
                     None if base is None else base._key,
                     tuple(tuple(sorted(c.terms.items())) for c in self.chern))

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> list[tuple[str, int | None]]:
        """(name, nilpotency exponent) pairs; bundle generators carry None."""
        if self.kind == "multiprojective":
            return [(n, d + 1) for n, d in zip(self.names, self.dims)]
        return self.base.generators + [(self.names[-1], None)]

    def __eq__(self, other):
        return isinstance(other, ChowRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.kind == "multiprojective":
            return "ChowRing(" + "*".join(f"P^{d}" for d in self.dims) + ")"
        return f"ChowRing(P({self.rank}) over {self.base!r})"

    # construction helpers
    def _exps(self, index: int, power: int = 1) -> tuple[int, ...]:
        e = [0] * self.ngens
        e[index] = power
        return tuple(e)

    def one(self) -> "ChowClass":
        return self.from_terms({(0,) * self.ngens: 1})

    def zero(self) -> "ChowClass":
        return ChowClass(self, {})

    def gen(self, name: str) -> "ChowClass":
        return self.from_terms({self._exps(self.names.index(name)): 1})

    def gens(self) -> tuple["ChowClass", ...]:
        return tuple(self.gen(n) for n in self.names)

    def __call__(self, value) -> "ChowClass":
        if isinstance(value, ChowClass):
            if value.ring == self:
                return value
            return self.pullback(value)
        return self.from_terms({(0,) * self.ngens: value})

    def from_terms(self, terms: Mapping[tuple[int, ...], int]) -> "ChowClass":
        return ChowClass(self, self._normalize(dict(terms)))

    def linear(self, coefficients: Sequence[int]) -> "ChowClass":
        """The codimension-one class sum c_i * g_i."""
        if len(coefficients) > self.ngens:
            raise ValueError("too many coefficients")
        terms = {self._exps(i): c for i, c in enumerate(coefficients) if c}
        return self.from_terms(terms)

    def pullback(self, c: "ChowClass") -> "ChowClass":
        """Pull a class on a base ring up through bundle extensions."""
        ring = self
        pad = 0
        while ring is not None and ring != c.ring:
            if ring.kind != "bundle":
                raise ValueError(f"{c.ring!r} is not a base of {self!r}")
            ring = ring.base
            pad += 1
        if ring is None:
            raise ValueError(f"{c.ring!r} is not a base of {self!r}")
        return self.from_terms({e + (0,) * pad: v for e, v in c.terms.items()})

    def monomial_basis(self, degree: int | None = None) -> list["ChowClass"]:
        """Additive basis of normal-form monomials (optionally of one codimension)."""
        out = []
        for e in self._basis_exponents():
            if degree is None or sum(e) == degree:
                out.append(self.from_terms({e: 1}))
        return out

    def _basis_exponents(self):
        if self.kind == "multiprojective":
            return sorted(product(*(range(d + 1) for d in self.dims)),
                          key=lambda e: (sum(e), e))
        base = self.base._basis_exponents()
        return sorted((b + (k,) for b in base for k in range(self.rank)),
                      key=lambda e: (sum(e), e))

    # normal form
    def _normalize(self, terms: dict) -> dict:
        if self.kind == "multiprojective":
            out = {}
            for e, c in terms.items():
                c = _clean(c)
                if c and all(x <= n for x, n in zip(e, self.dims)):
                    out[e] = c
            return out
        r = self.rank
        by_xi: dict[int, dict] = {}
        for e, c in terms.items():
            if not c:
                continue
            slot = by_xi.setdefault(e[-1], {})
            slot[e[:-1]] = slot.get(e[:-1], 0) + c
        by_xi = {k: self.base._normalize(v) for k, v in by_xi.items()}
        chern = [c.terms for c in self.chern]
        while by_xi and max(by_xi) >= r:
            k = max(by_xi)
            top = by_xi.pop(k)
            if not top:
                continue
            # xi^r = sum_{i=1..r} (-1)^(i+1) c_i xi^(r-i)
            for i in range(1, r + 1):
                prod_terms = self.base._mul_terms(chern[i - 1], top)
                if not prod_terms:
                    continue
                slot = by_xi.setdefault(k - i, {})
                sign = 1 if i % 2 else -1
                for e, c in prod_terms.items():
                    slot[e] = slot.get(e, 0) + sign * c
            for kk in range(k - r, k):
                if kk in by_xi:
                    by_xi[kk] = self.base._normalize(by_xi[kk])
        out = {}
        for k, bterms in by_xi.items():
            for e, c in bterms.items():
                c = _clean(c)
                if c:
                    out[e + (k,)] = c
        return out

    def _mul_terms(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return self._normalize(out)


class ChowClass:
    """An element of a :class:`ChowRing` in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ChowRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            if other.ring == self.ring:
                return other
            return self.ring(other)
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        raise TypeError(f"cannot combine ChowClass with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return ChowClass(self.ring, {e: _clean(c) for e, c in terms.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return ChowClass(self.ring, {e: _clean(c * other) for e, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ChowClass(self.ring, self.ring._mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # grading
    def part(self, degree: int) -> "ChowClass":
        """Homogeneous component of the given codimension."""
        return ChowClass(self.ring, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        d = self.degrees()
        if not d:
            return True
        return len(d) == 1 and (degree is None or d == {degree})

    def constant(self):
        return self.terms.get((0,) * self.ring.ngens, 0)

    def coefficient(self, exps: Iterable[int]):
        return self.terms.get(tuple(exps), 0)

    def inverse(self) -> "ChowClass":
        """Multiplicative inverse of a class with constant term +-1 (or rational)."""
        c0 = self.constant()
        if not c0:
            raise ZeroDivisionError("class has zero constant term")
        nil = self.ring.one() - self / c0
        result = self.ring.one()
        power = self.ring.one()
        for _ in range(self.ring.top_degree):
            power = power * nil
            if not power:
                break
            result = result + power
        return result / c0

    def __repr__(self):
        return f"ChowClass({self})"

    def __str__(self):
        return format_class(self)


def _monomial_text(names, e) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def format_class(c: ChowClass) -> str:
    """Canonical text: terms ordered by codimension, then exponent tuple descending."""
    if not c.terms:
        return "0"
    items = sorted(c.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))
    out = []
    for e, coef in items:
        mono = _monomial_text(c.ring.names, e)
        neg = coef < 0
        mag = -coef if neg else coef
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        elif isinstance(mag, Fraction):
            body = f"({mag})*{mono}"
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def make_multiproj(dims: Sequence[int], names: Sequence[str] | None = None) -> ChowRing:
    """Chow ring of P^{n_1} x ... x P^{n_k}: Z[H_1..H_k] / (H_i^{n_i+1})."""
    dims = [int(d) for d in dims]
    if not dims:
        raise ValueError("dims must be nonempty")
    if any(d < 0 for d in dims):
        raise ValueError("dimensions must be nonnegative")
    names = tuple(names) if names is not None else default_names(dims)
    if len(names) != len(dims):
        raise ValueError("one name per factor required")
    return ChowRing(names, "multiprojective", dims=dims)


def make_bundle_ring(base: ChowRing, chern: Sequence[ChowClass], name: str = "xi") -> ChowRing:
    """Chow ring of P(E) over ``base`` for E of rank r with Chern classes c_1..c_r."""
    chern = [base(c) for c in chern]
    if not chern:
        raise ValueError("rank must be at least 1")
    for i, c in enumerate(chern, start=1):
        if not c.is_homogeneous(i):
            raise GradingError(f"c_{i} must have codimension {i}, got degrees {sorted(c.degrees())}")
    return ChowRing(base.names + (name,), "bundle", base=base, chern=chern)


def integrate(c: ChowClass):
    """Degree of the zero-cycle part: coefficient of the top basis monomial."""
    return c.terms.get(c.ring.top_exponents, 0)
