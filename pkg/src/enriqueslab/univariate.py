"""Dense univariate polynomials over F_p (or Q when p is None).

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; ``[]`` is zero.
"""

from __future__ import annotations

import random
from fractions import Fraction

__all__ = [
    "trim", "degree", "add", "sub", "mul", "divmod_poly", "monic", "gcd",
    "derivative", "powmod", "is_squarefree", "distinct_degree_factorization",
    "equal_degree_split", "irreducible_factors", "ExtensionField",
]


def _norm(c, p):
    if p is None:
        if isinstance(c, Fraction) and c.denominator == 1:
            return int(c)
        return c
    return c % p


def _inv(c, p):
    if p is None:
        v = 1 / Fraction(c)
        return int(v) if v.denominator == 1 else v
    return pow(c, -1, p)


def trim(a, p=None):
    a = [_norm(c, p) for c in a]
    while a and not a[-1]:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def add(a, b, p=None):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def sub(a, b, p=None):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def mul(a, b, p=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out, p)


def divmod_poly(a, b, p=None):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = _inv(b[-1], p)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = _norm(a[-1] * inv, p)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = _norm(a[k + j] - c * y, p)
        a = trim(a, p)
    return trim(q, p), a


def monic(a, p=None):
    if not a:
        return []
    inv = _inv(a[-1], p)
    return trim([c * inv for c in a], p)


def gcd(a, b, p=None):
    a, b = trim(a, p), trim(b, p)
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def derivative(a, p=None):
    return trim([i * c for i, c in enumerate(a)][1:], p)


def powmod(base, e: int, mod, p):
    result = [1]
    base = divmod_poly(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = divmod_poly(mul(base, base, p), mod, p)[1]
    return result


def is_squarefree(a, p=None) -> bool:
    """gcd(a, a') constant; over a perfect field this means separable."""
    if degree(a) < 1:
        return True
    d = derivative(a, p)
    if not d:
        return False
    return degree(gcd(a, d, p)) == 0


def distinct_degree_factorization(f, p: int, max_degree: int | None = None):
    """[(d, g_d)] with g_d the product of the monic irreducible degree-d factors.

    ``f`` must be squarefree and monic.
    """
    f = monic(f, p)
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        if max_degree is not None and d > max_degree:
            return out
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if degree(g) > 0:
            out.append((d, g))
            f = divmod_poly(f, g, p)[0]
            h = divmod_poly(h, f, p)[1]
    if degree(f) > 0 and (max_degree is None or degree(f) <= max_degree):
        out.append((degree(f), f))
    return out


def equal_degree_split(g, d: int, p: int, rng: random.Random):
    """Split a product of degree-d irreducibles (Cantor-Zassenhaus, p odd)."""
    if p == 2:
        raise ValueError("equal-degree splitting implemented for odd p only")
    g = monic(g, p)
    if degree(g) == d:
        return [g]
    n = degree(g)
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if degree(a) < 1:
            continue
        b = sub(powmod(a, (p ** d - 1) // 2, g, p), [1], p)
        h = gcd(g, b, p)
        if 0 < degree(h) < n:
            q = divmod_poly(g, h, p)[0]
            return equal_degree_split(h, d, p, rng) + equal_degree_split(q, d, p, rng)


def irreducible_factors(f, p: int, max_degree: int, seed=0):
    """Monic irreducible factors of squarefree ``f`` of degree <= max_degree."""
    rng = random.Random(seed)
    out = []
    for d, g in distinct_degree_factorization(f, p, max_degree):
        out.extend(equal_degree_split(g, d, p, rng))
    return out


class ExtensionField:
    """F_p[t]/(modulus) for a monic irreducible modulus."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.modulus = monic(modulus, p)
        self.k = degree(self.modulus)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def elem(self, a):
        if isinstance(a, int):
            return trim([a], self.p)
        return divmod_poly(trim(list(a), self.p), self.modulus, self.p)[1]

    def add(self, a, b):
        return add(a, b, self.p)

    def sub(self, a, b):
        return sub(a, b, self.p)

    def mul(self, a, b):
        return divmod_poly(mul(a, b, self.p), self.modulus, self.p)[1]

    def inv(self, a):
        # extended Euclid on (a, modulus)
        r0, r1 = self.modulus, trim(a, self.p)
        s0, s1 = [], [1]
        while r1:
            q, r = divmod_poly(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, sub(s0, mul(q, s1, self.p), self.p)
        if degree(r0) != 0:
            raise ZeroDivisionError("element is not invertible")
        c = pow(r0[0], -1, self.p)
        return self.mul(s0, [c])

    def pow(self, a, e: int):
        return powmod(a, e, self.modulus, self.p) if e else [1]

    def rank(self, matrix) -> int:
        """Rank of a matrix with entries in this field (Gaussian elimination)."""
        rows = [[self.elem(x) for x in r] for r in matrix]
        rank = 0
        ncols = len(rows[0]) if rows else 0
        for col in range(ncols):
            pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = self.inv(rows[rank][col])
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    f = self.mul(rows[i][col], inv)
                    rows[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(rows[i], rows[rank])]
            rank += 1
        return rank
