"""Sparse exact polynomials over Q or F_p with blockwise (multi)grading.

Polynomials are dictionaries from exponent tuples to coefficients.  Over Q
coefficients are ``int`` or ``Fraction``; over F_p they are ints in [0, p).
Terms print in graded reverse lexicographic order with the ring's variable
order (S > T > X0 > ... > Y2 for the standard ring).
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

__all__ = [
    "PolyRing",
    "MPoly",
    "PolyMatrix",
    "standard_ring",
    "random_form",
    "minors",
    "determinant",
    "leibniz_determinant",
    "laplace_certificate",
    "jacobian",
    "dehomogenize",
    "monomials_of_degree",
    "grevlex_key",
    "LaplaceIdentityError",
    "PolyParseError",
]


class LaplaceIdentityError(ArithmeticError):
    """The cofactor identity failed to hold (arithmetic bug)."""


class PolyParseError(ValueError):
    pass


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def grevlex_key(e: tuple[int, ...]):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """Polynomial ring with named variable blocks over Q (p=None) or F_p."""

    def __init__(self, blocks: Sequence[tuple[str, Sequence[str]]], p: int | None = None,
                 affine: bool = False):
        self.blocks = tuple((name, tuple(vs)) for name, vs in blocks)
        self.variables = tuple(v for _, vs in self.blocks for v in vs)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.p = p
        self.affine = affine
        self.nvars = len(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}
        spans = []
        start = 0
        for _, vs in self.blocks:
            spans.append((start, start + len(vs)))
            start += len(vs)
        self.block_spans = tuple(spans)
        self._key = (self.blocks, p, affine)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        field = "QQ" if self.p is None else f"GF({self.p})"
        blocks = ", ".join("[" + ",".join(vs) + "]" for _, vs in self.blocks)
        return f"PolyRing({field}; {blocks}{'; affine' if self.affine else ''})"

    @property
    def field_name(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def index(self, var: str) -> int:
        return self._index[var]

    def coerce_coeff(self, c):
        if self.p is None:
            return _clean(Fraction(c)) if not isinstance(c, int) else c
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ZeroDivisionError(f"coefficient {c} is not {self.p}-integral")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return c % self.p

    def inv(self, c):
        if self.p is None:
            return _clean(1 / Fraction(c))
        return pow(c, -1, self.p)

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    def const(self, c) -> "MPoly":
        c = self.coerce_coeff(c)
        return MPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "MPoly":
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return MPoly(self, {tuple(e): 1})

    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps: Sequence[int], coeff=1) -> "MPoly":
        return self.from_terms({tuple(exps): coeff})

    def from_terms(self, terms: Mapping) -> "MPoly":
        out = {}
        for e, c in terms.items():
            c = self.coerce_coeff(c)
            if c:
                out[tuple(e)] = c
        return MPoly(self, out)

    def with_prime(self, p: int | None) -> "PolyRing":
        return PolyRing(self.blocks, p, self.affine)

    def drop_variables(self, names: Iterable[str], affine: bool = True) -> "PolyRing":
        names = set(names)
        blocks = [(b, [v for v in vs if v not in names]) for b, vs in self.blocks]
        return PolyRing([(b, vs) for b, vs in blocks if vs], self.p, affine)

    def __call__(self, value) -> "MPoly":
        if isinstance(value, MPoly):
            if value.ring == self:
                return value
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> "MPoly":
        """Parse the canonical text form, e.g. ``3*S*X0^2 - T + 5``."""
        return _parse_poly(self, text)


def standard_ring(p: int | None = None) -> PolyRing:
    """Coordinates of P^1 x P^2 x P^2: [S,T], [X0,X1,X2], [Y0,Y1,Y2]."""
    return PolyRing([("P1", ["S", "T"]), ("X", ["X0", "X1", "X2"]), ("Y", ["Y0", "Y1", "Y2"])], p)


class MPoly:
    """Sparse polynomial; immutable by convention."""

    __slots__ = ("ring", "terms", "_multidegree")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._multidegree = False

    # arithmetic
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = self.ring.p
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if p is not None:
                v %= p
            if v:
                terms[e] = _clean(v)
            else:
                terms.pop(e, None)
        return MPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        if p is None:
            return MPoly(self.ring, {e: -c for e, c in self.terms.items()})
        return MPoly(self.ring, {e: (-c) % p for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = self.ring.p
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        if p is None:
            return MPoly(self.ring, {e: _clean(c) for e, c in out.items() if c})
        return MPoly(self.ring, {e: c % p for e, c in out.items() if c % p})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        c = self.ring.coerce_coeff(c)
        return self * self.ring.const(c) if c else self.ring.zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def multidegree(self) -> tuple[int, ...] | None:
        """Blockwise degree if multihomogeneous, else None (zero poly: None)."""
        if self._multidegree is False:
            degs = set()
            for e in self.terms:
                degs.add(tuple(sum(e[a:b]) for a, b in self.ring.block_spans))
            self._multidegree = degs.pop() if len(degs) == 1 else None
        return self._multidegree

    def is_multihomogeneous(self) -> bool:
        return self.multidegree() is not None

    def variables_used(self) -> set[str]:
        used = set()
        for e in self.terms:
            for v, k in zip(self.ring.variables, e):
                if k:
                    used.add(v)
        return used

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def monic(self) -> "MPoly":
        _, c = self.leading_term()
        return self.scale(self.ring.inv(c))

    # calculus and substitution
    def diff(self, var: str) -> "MPoly":
        i = self.ring.index(var)
        p = self.ring.p
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            v = c * k
            if p is not None:
                v %= p
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
        return MPoly(self.ring, out)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a full point given as name -> value (exact arithmetic)."""
        vals = [point[v] for v in self.ring.variables]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        if self.ring.p is not None:
            total %= self.ring.p
        return _clean(total) if isinstance(total, Fraction) else total

    def subs(self, values: Mapping[str, object], ring: PolyRing | None = None) -> "MPoly":
        """Substitute constants for some variables; result lives in ``ring``
        (default: the ring with those variables dropped, marked affine)."""
        target = ring or self.ring.drop_variables(values)
        keep = [self.ring.index(v) for v in target.variables]
        subs = [(self.ring.index(v), c) for v, c in values.items()]
        out = {}
        p = self.ring.p
        for e, c in self.terms.items():
            v = c
            for i, x in subs:
                if e[i]:
                    v = v * x ** e[i]
                    if not v:
                        break
            if not v:
                continue
            ne = tuple(e[i] for i in keep)
            out[ne] = out.get(ne, 0) + v
        if p is None:
            return MPoly(target, {e: _clean(c) for e, c in out.items() if c})
        return MPoly(target, {e: c % p for e, c in out.items() if c % p})

    def compose(self, images: Mapping[str, "MPoly"], ring: PolyRing) -> "MPoly":
        """Substitute polynomials (in ``ring``) for every variable."""
        gens = [images[v] for v in self.ring.variables]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = gens[i] ** k
            return cache[key]

        total = ring.zero()
        for e, c in self.terms.items():
            t = ring.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            total = total + t
        return total

    def change_ring(self, ring: PolyRing) -> "MPoly":
        """Move to a ring over the same variables (possibly a different field)."""
        if ring.variables != self.ring.variables:
            idx = [self.ring.index(v) if v in self.ring._index else None for v in ring.variables]
            used = self.variables_used()
            if not used <= set(ring.variables):
                raise ValueError(f"variables {sorted(used - set(ring.variables))} missing from target")
            return ring.from_terms({tuple(e[i] if i is not None else 0 for i in idx): c
                                    for e, c in self.terms.items()})
        return ring.from_terms(self.terms)

    def reduce_mod(self, p: int) -> "MPoly":
        """Image in the same ring over F_p (coefficients must be p-integral)."""
        return self.change_ring(self.ring.with_prime(p))

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        return format_poly(self)


def _mono_text(names, e) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def format_poly(f: MPoly) -> str:
    """Canonical text form: grevlex-descending terms, explicit ``^``."""
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        mono = _mono_text(f.ring.variables, e)
        neg = f.ring.p is None and c < 0
        mag = -c if neg else c
        if isinstance(mag, Fraction):
            coef = f"{mag.numerator}/{mag.denominator}"
        else:
            coef = str(mag)
        if not mono:
            body = coef
        elif mag == 1:
            body = mono
        else:
            body = f"{coef}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _parse_poly(ring: PolyRing, text: str) -> MPoly:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif sym.strip():
            tokens.append(("sym", sym))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    terms: dict = {}
    sign = 1
    if peek() == ("sym", "-"):
        take()
        sign = -1
    elif peek() == ("sym", "+"):
        take()
    if peek()[0] == "end":
        raise PolyParseError("empty polynomial")
    while True:
        coef = Fraction(1)
        exps = [0] * ring.nvars
        first = True
        while True:
            kind, val = take()
            if kind == "num":
                c = Fraction(val)
                if peek() == ("sym", "/"):
                    take()
                    k2, den = take()
                    if k2 != "num" or den == 0:
                        raise PolyParseError("bad rational coefficient")
                    c /= den
                coef *= c
            elif kind == "var":
                if val not in ring._index:
                    raise PolyParseError(f"unknown variable {val!r}")
                k = 1
                if peek() == ("sym", "^"):
                    take()
                    k2, k = take()
                    if k2 != "num":
                        raise PolyParseError("exponent must be an integer")
                exps[ring.index(val)] += k
            else:
                raise PolyParseError(f"unexpected token {val!r}")
            first = False
            if peek() == ("sym", "*"):
                take()
                continue
            break
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + sign * coef
        kind, val = take()
        if kind == "end":
            break
        if kind == "sym" and val in "+-":
            sign = 1 if val == "+" else -1
            continue
        raise PolyParseError(f"unexpected token {val!r}")
    return ring.from_terms(terms)


# generation ------------------------------------------------------------

def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree d in nvars variables, grevlex-descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return sorted(out, key=grevlex_key, reverse=True)


def random_form(ring: PolyRing, multidegree: Sequence[int], seed) -> MPoly:
    """Dense multihomogeneous form with seeded random nonzero coefficients.

    Over Q the coefficients are drawn from [-9, 9] minus 0, over F_p uniformly
    from the nonzero residues.  ``seed`` may be an int or a string.
    """
    if len(multidegree) != len(ring.blocks):
        raise ValueError("one degree per block required")
    if any(d < 0 for d in multidegree):
        raise ValueError("degrees must be nonnegative")
    rng = random.Random(seed)
    per_block = [monomials_of_degree(len(vs), d) for (_, vs), d in zip(ring.blocks, multidegree)]
    choices = [c for c in range(-9, 10) if c] if ring.p is None else None
    terms = {}
    for parts in product(*per_block):
        e = tuple(x for part in parts for x in part)
        if choices is not None:
            terms[e] = rng.choice(choices)
        else:
            terms[e] = rng.randrange(1, ring.p)
    return MPoly(ring, terms)


# matrices --------------------------------------------------------------

class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    def __init__(self, rows: Sequence[Sequence[MPoly]]):
        rows = [list(r) for r in rows]
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("matrix must be rectangular and nonempty")
        self.rows = rows
        self.ring = rows[0][0].ring

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(x) for x in r] for r in self.rows])

    def reduce_mod(self, p: int) -> "PolyMatrix":
        return self.map(lambda f: f.reduce_mod(p))

    def det(self) -> MPoly:
        return determinant(self)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self):
        return "PolyMatrix(" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + ")"


def determinant(m: PolyMatrix) -> MPoly:
    """Cofactor expansion along the first row."""
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return m.rows[0][0]
    if n == 2:
        (a, b), (c, d) = m.rows
        return a * d - b * c
    total = m.ring.zero()
    for j in range(n):
        entry = m.rows[0][j]
        if not entry:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = entry * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def leibniz_determinant(m: PolyMatrix) -> MPoly:
    """Permutation-sum determinant; independent of :func:`determinant`."""
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    total = m.ring.zero()
    for perm in permutations(range(n)):
        t = m.ring.const(_perm_sign(perm))
        for i, j in enumerate(perm):
            t = t * m.rows[i][j]
        total = total + t
    return total


def minors(m: PolyMatrix, k: int) -> list[MPoly]:
    """All k x k minors, ordered lexicographically by (row set, column set)."""
    nr, nc = m.shape
    if k < 1 or k > min(nr, nc):
        raise ValueError(f"minor size {k} out of range for a {nr}x{nc} matrix")
    out = []
    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            out.append(determinant(m.submatrix(rs, cs)))
    return out


def laplace_certificate(m3: PolyMatrix):
    """det(m3) together with its expansion along the third row.

    Returns ``(F, [(cofactor_j, minor_j)])`` where ``minor_j`` are the 2x2
    minors of the first two rows on columns (0,1), (0,2), (1,2) -- the order
    of :func:`minors` -- and F = sum cofactor_j * minor_j exactly.  F is
    computed by the Leibniz sum, so the check is not circular.
    """
    if m3.shape != (3, 3):
        raise ValueError("laplace_certificate needs a 3x3 matrix")
    F = leibniz_determinant(m3)
    top = m3.submatrix([0, 1], [0, 1, 2])
    two = minors(top, 2)  # columns (0,1), (0,2), (1,2)
    r = m3.rows[2]
    # the minor on columns (j,k) pairs with the third-row entry in the
    # remaining column l, with sign (-1)^(2 + l)
    pairs = [(r[2], two[0]), (-r[1], two[1]), (r[0], two[2])]
    combo = m3.ring.zero()
    for cof, mn in pairs:
        combo = combo + cof * mn
    if combo != F:
        raise LaplaceIdentityError("cofactor expansion does not reproduce the determinant")
    return F, pairs


def jacobian(polys: Sequence[MPoly], vars: Sequence[str]) -> PolyMatrix:
    if not polys:
        raise ValueError("need at least one polynomial")
    ring = polys[0].ring
    for v in vars:
        ring.index(v)
    return PolyMatrix([[f.diff(v) for v in vars] for f in polys])


def dehomogenize(f: MPoly, chart: Sequence[str]) -> MPoly:
    """Set the chart variables (one per block) to 1; result is affine."""
    ring = f.ring
    chosen = set(chart)
    for _, vs in ring.blocks:
        if len(chosen & set(vs)) != 1:
            raise ValueError(f"chart {tuple(chart)} must pick exactly one variable per block")
    return f.subs({v: 1 for v in chart})
