"""Conversions between enriqueslab polynomials and sympy (test oracle only)."""

import sympy


def symbols(ring):
    return sympy.symbols(" ".join(ring.variables))


def to_sympy(f):
    gens = symbols(f.ring)
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for g, k in zip(gens, e):
            term *= g ** k
        expr += term
    return sympy.expand(expr)
