"""A small statement language for Chow-ring and cohomology queries.

Example::

    space P(1)*P(2)*P(2);
    bundle E = O(1,2,0) + O(1,0,2);
    integrate (c1(E)^2 - c2(E)) * h * a^2;
    projectivize O(0,2,0) + O(0,0,2) as xi;
    euler zero(3*O(1,0,0,1));

Statements::

    space P(n1)*P(n2)*...;               set the ambient space
    projectivize <bundle> as <name>;     replace it by P(bundle), new generator <name>
    bundle <name> = <bundle>;
    let <name> = <class>;
    integrate <class>;
    chern <bundle>;
    euler <variety>;                     topological Euler number
    chi <bundle> on <variety>;           Riemann-Roch
    cohom <bundle> on P(..)*...;         Bott/Kunneth table
    degeneracy O^e -> <bundle> rank <= r;  Thom-Porteous class

with ``<variety>`` either a product of projective spaces or ``zero(<bundle>)``
inside the current space.  Class expressions use + - * ^, integers,
generator names, ``let`` names and ``c<k>(<bundle>)``; a number directly
followed by a factor multiplies (``2a``).  Comments run from ``#`` to the
end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import charclass as cc
from .chow import ChowRing, format_class, integrate, make_bundle_ring, make_multiproj

__all__ = ["ParseError", "EvalError", "parse", "to_source", "statement_source", "evaluate", "run",
           "Program", "Statement", "Result"]

MAX_DEPTH = 100
MAX_EXPONENT = 10_000

KEYWORDS = {"space", "projectivize", "as", "bundle", "let", "integrate", "chern", "euler", "chi",
            "on", "cohom", "degeneracy", "rank", "zero", "P", "O"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        exp = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")


class EvalError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        super().__init__(f"{line}:{column}: {message}")


# syntax tree ----------------------------------------------------------------
# Statement positions are excluded from equality so round trips compare trees.

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class ChernOf:
    k: int
    bundle: "BundleSum"


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Line:
    degrees: tuple


@dataclass(frozen=True)
class BundleRef:
    name: str


@dataclass(frozen=True)
class BundleSum:
    terms: tuple  # (multiplicity, Line | BundleRef)


@dataclass(frozen=True)
class Space:
    dims: tuple


@dataclass(frozen=True)
class ZeroLocus:
    bundle: BundleSum


@dataclass(frozen=True)
class Statement:
    verb: str
    args: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Program:
    statements: tuple


# lexer -------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # int, ident, op, eof
    text: str
    line: int
    column: int


_OPS = ("->", "<=", "+", "-", "*", "^", "(", ")", ",", ";", "=")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for op in _OPS:
            if text.startswith(op, i):
                tokens.append(Token("op", op, line, col))
                i += len(op)
                col += len(op)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


# parser ------------------------------------------------------------------

_STATEMENTS = ("space", "projectivize", "bundle", "let", "integrate", "chern", "euler", "chi",
               "cohom", "degeneracy")
_FACTOR_START = ("integer", "identifier", "(", "-")


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected, message=None):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(message or f"unexpected {found}", t.line, t.column, expected)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "ident") and t.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail({text})
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail({"integer"})
        v = int(self.tok.text)
        self.i += 1
        return v

    def signed_integer(self) -> int:
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        elif self.at("+"):
            self.i += 1
        return sign * self.integer()

    def identifier(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            self.fail({"identifier"})
        self.i += 1
        return t.text

    def nest(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.fail(set(), "expression nested too deeply")

    # grammar
    def program(self) -> Program:
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.statement())
        return Program(tuple(stmts))

    def statement(self) -> Statement:
        t = self.tok
        pos = (t.line, t.column)
        if t.kind != "ident" or t.text not in _STATEMENTS:
            self.fail(set(_STATEMENTS))
        verb = t.text
        self.i += 1
        if verb == "space":
            args = (self.space(),)
        elif verb == "projectivize":
            b = self.bundle()
            self.expect("as")
            args = (b, self.identifier())
        elif verb in ("bundle", "let"):
            name = self.identifier()
            self.expect("=")
            args = (name, self.bundle() if verb == "bundle" else self.expr())
        elif verb == "integrate":
            args = (self.expr(),)
        elif verb == "chern":
            args = (self.bundle(),)
        elif verb == "euler":
            args = (self.variety(),)
        elif verb in ("chi", "cohom"):
            b = self.bundle()
            self.expect("on")
            args = (b, self.variety() if verb == "chi" else self.space())
        else:  # degeneracy
            self.expect("O")
            self.expect("^")
            e = self.integer()
            self.expect("->")
            b = self.bundle()
            self.expect("rank")
            self.expect("<=")
            args = (e, b, self.integer())
        self.expect(";")
        return Statement(verb, args, pos)

    def space(self) -> Space:
        dims = [self.proj()]
        while self.at("*"):
            self.i += 1
            dims.append(self.proj())
        return Space(tuple(dims))

    def proj(self) -> int:
        self.expect("P")
        self.expect("(")
        n = self.integer()
        self.expect(")")
        return n

    def variety(self):
        if self.at("zero"):
            self.i += 1
            self.expect("(")
            b = self.bundle()
            self.expect(")")
            return ZeroLocus(b)
        if self.at("P"):
            return self.space()
        self.fail({"zero", "P"})

    def bundle(self) -> BundleSum:
        terms = [self.bundle_term()]
        while self.at("+"):
            self.i += 1
            terms.append(self.bundle_term())
        return BundleSum(tuple(terms))

    def bundle_term(self):
        mult = 1
        if self.tok.kind == "int":
            mult = self.integer()
            self.expect("*")
        if self.at("O"):
            self.i += 1
            self.expect("(")
            degs = [self.signed_integer()]
            while self.at(","):
                self.i += 1
                degs.append(self.signed_integer())
            self.expect(")")
            return (mult, Line(tuple(degs)))
        if self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            return (mult, BundleRef(self.identifier()))
        self.fail({"O", "identifier", "integer"})

    def expr(self):
        self.nest()
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        self.depth -= 1
        return node

    def term(self):
        node = self.unary()
        while True:
            if self.at("*"):
                self.i += 1
                node = BinOp("*", node, self.unary())
            elif _is_number(node) and self._starts_atom():
                node = BinOp("*", node, self.power())
            else:
                return node

    def _starts_atom(self) -> bool:
        t = self.tok
        return (t.kind == "ident" and t.text not in KEYWORDS) or self.at("(")

    def unary(self):
        if self.at("-"):
            self.nest()
            self.i += 1
            node = Neg(self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self):
        node = self.atom()
        if self.at("^"):
            self.i += 1
            node = Pow(node, self.integer())
        return node

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text))
        if self.at("("):
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.i += 1
            if _is_chern_name(t.text) and self.at("("):
                self.i += 1
                b = self.bundle()
                self.expect(")")
                return ChernOf(int(t.text[1:]), b)
            return Name(t.text)
        self.fail(set(_FACTOR_START))


def _is_number(node) -> bool:
    while isinstance(node, Neg):
        node = node.operand
    return isinstance(node, Num)


def _is_chern_name(s: str) -> bool:
    return len(s) > 1 and s[0] == "c" and s[1:].isdigit()


def parse(text) -> Program:
    """Parse a script; raises :class:`ParseError` and nothing else."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    if not isinstance(text, str):
        raise ParseError("input must be text", 1, 1)
    tokens = tokenize(text)
    try:
        return _Parser(tokens).program()
    except RecursionError:
        raise ParseError("expression nested too deeply", 1, 1) from None


# pretty printer ------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _expr_src(node, prec: int = 0) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, ChernOf):
        return f"c{node.k}({_bundle_src(node.bundle)})"
    if isinstance(node, Neg):
        s = "-" + _expr_src(node.operand, 3)
        return f"({s})" if prec > 3 else s
    if isinstance(node, Pow):
        base = _expr_src(node.base, 4)
        if isinstance(node.base, Pow):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    p = _PREC[node.op]
    right_prec = p + 1  # left-associative
    s = f"{_expr_src(node.left, p)} {node.op} {_expr_src(node.right, right_prec)}"
    return f"({s})" if p < prec else s


def _bundle_src(b: BundleSum) -> str:
    parts = []
    for mult, item in b.terms:
        body = f"O({','.join(str(d) for d in item.degrees)})" if isinstance(item, Line) else item.name
        parts.append(body if mult == 1 else f"{mult}*{body}")
    return " + ".join(parts)


def _space_src(s: Space) -> str:
    return "*".join(f"P({n})" for n in s.dims)


def _variety_src(v) -> str:
    return f"zero({_bundle_src(v.bundle)})" if isinstance(v, ZeroLocus) else _space_src(v)


def statement_source(st: Statement) -> str:
    v, a = st.verb, st.args
    if v == "space":
        body = _space_src(a[0])
    elif v == "projectivize":
        body = f"{_bundle_src(a[0])} as {a[1]}"
    elif v == "bundle":
        body = f"{a[0]} = {_bundle_src(a[1])}"
    elif v == "let":
        body = f"{a[0]} = {_expr_src(a[1])}"
    elif v == "integrate":
        body = _expr_src(a[0])
    elif v == "chern":
        body = _bundle_src(a[0])
    elif v == "euler":
        body = _variety_src(a[0])
    elif v == "chi":
        body = f"{_bundle_src(a[0])} on {_variety_src(a[1])}"
    elif v == "cohom":
        body = f"{_bundle_src(a[0])} on {_space_src(a[1])}"
    else:
        body = f"O^{a[0]} -> {_bundle_src(a[1])} rank <= {a[2]}"
    return f"{v} {body};"


def to_source(prog: Program) -> str:
    return "\n".join(statement_source(s) for s in prog.statements) + ("\n" if prog.statements else "")


# evaluation --------------------------------------------------------------

@dataclass
class Result:
    statement: Statement
    value: object  # int, ChowClass, CohomTable or None
    text: str


class _Env:
    def __init__(self):
        self.ring: ChowRing | None = None
        self.bundles: dict = {}
        self.lets: dict = {}

    def need_ring(self, st):
        if self.ring is None:
            raise EvalError("no space declared", *st.pos)
        return self.ring


def _bundle(env: _Env, ring: ChowRing, b: BundleSum, st) -> cc.BundleExpr:
    total = None
    for mult, item in b.terms:
        if mult <= 0:
            raise EvalError("bundle multiplicity must be positive", *st.pos)
        if isinstance(item, Line):
            try:
                piece = cc.BundleExpr(ring, ((cc.line_class(ring, item.degrees), mult),))
            except ValueError as exc:
                raise EvalError(str(exc), *st.pos) from None
        else:
            if item.name not in env.bundles:
                raise EvalError(f"undeclared bundle {item.name!r}", *st.pos)
            piece = env.bundles[item.name]
            if piece.ring != ring:
                raise EvalError(f"bundle {item.name!r} lives on another space", *st.pos)
            piece = piece * mult
        total = piece if total is None else total + piece
    return total


def _class(env: _Env, node, st):
    ring = env.need_ring(st)
    if isinstance(node, Num):
        return ring(node.value)
    if isinstance(node, Name):
        if node.name in env.lets:
            return env.lets[node.name]
        if node.name in ring.names:
            return ring.gen(node.name)
        raise EvalError(f"unknown name {node.name!r}", *st.pos)
    if isinstance(node, ChernOf):
        E = _bundle(env, ring, node.bundle, st)
        return cc.chern_total(E).part(node.k)
    if isinstance(node, Neg):
        return -_class(env, node.operand, st)
    if isinstance(node, Pow):
        if node.exponent > MAX_EXPONENT:
            raise EvalError(f"exponent above {MAX_EXPONENT}", *st.pos)
        return _class(env, node.base, st) ** node.exponent
    left, right = _class(env, node.left, st), _class(env, node.right, st)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def _variety(env: _Env, v, st):
    """(ring, divisors) for a variety expression."""
    if isinstance(v, Space):
        return make_multiproj(list(v.dims)), ()
    ring = env.need_ring(st)
    E = _bundle(env, ring, v.bundle, st)
    return ring, tuple(E.lines())


def _num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _table_text(t: cc.CohomTable, top: int) -> str:
    cells = " ".join(f"h^{i}={t[i]}" for i in range(top + 1))
    return cells + ("" if t.exact else f" (bounds; chi={t.euler})")


def _execute(env: _Env, st: Statement) -> Result:
    v, a = st.verb, st.args
    if v == "space":
        if any(n < 0 for n in a[0].dims):
            raise EvalError("dimensions must be nonnegative", *st.pos)
        env.ring = make_multiproj(list(a[0].dims))
        env.bundles.clear()
        env.lets.clear()
        return Result(st, None, ", ".join(env.ring.names))
    if v == "projectivize":
        ring = env.need_ring(st)
        E = _bundle(env, ring, a[0], st)
        if a[1] in ring.names:
            raise EvalError(f"generator {a[1]!r} already exists", *st.pos)
        cs = [c for c in cc.chern_classes(E)[1:]]
        env.ring = make_bundle_ring(ring, cs, name=a[1])
        env.bundles.clear()
        env.lets.clear()
        return Result(st, None, ", ".join(env.ring.names))
    if v == "bundle":
        env.bundles[a[0]] = _bundle(env, env.need_ring(st), a[1], st)
        return Result(st, None, f"{a[0]} of rank {env.bundles[a[0]].rank}")
    if v == "let":
        if a[0] in env.need_ring(st).names:
            raise EvalError(f"{a[0]!r} is a generator name", *st.pos)
        env.lets[a[0]] = _class(env, a[1], st)
        return Result(st, env.lets[a[0]], format_class(env.lets[a[0]]))
    if v == "integrate":
        value = integrate(_class(env, a[0], st))
        return Result(st, value, _num(value))
    if v == "chern":
        c = cc.chern_total(_bundle(env, env.need_ring(st), a[0], st))
        return Result(st, c, format_class(c))
    if v == "euler":
        ring, divs = _variety(env, a[0], st)
        value = cc.euler_characteristic_top(cc.CompleteIntersectionSpec(ring, divs))
        return Result(st, value, str(value))
    if v == "chi":
        ring, divs = _variety(env, a[1], st)
        E = _bundle(env, ring, a[0], st)
        spec = cc.CompleteIntersectionSpec(ring, divs)
        value = sum(cc.hrr_chi(spec, line) * m for line, m in E.summands)
        text = str(value)
        if isinstance(a[1], Space):
            tables = [_line_table(a[1].dims, item.degrees) for _, item in a[0].terms
                      if isinstance(item, Line)]
            if len(tables) == len(a[0].terms):
                text += "  [" + "; ".join(_table_text(t, sum(a[1].dims)) for t in tables) + "]"
        return Result(st, value, text)
    if v == "cohom":
        dims = a[1].dims
        tables = []
        for mult, item in a[0].terms:
            if not isinstance(item, Line):
                raise EvalError("cohom takes explicit line bundles", *st.pos)
            t = _line_table(dims, item.degrees)
            tables.append(cc.CohomTable({k: mult * x for k, x in t.dims.items()}))
        total = cc.CohomTable({i: sum(t[i] for t in tables) for i in range(sum(dims) + 1)})
        return Result(st, total, _table_text(total, sum(dims)))
    e, b, r = a
    ring = env.need_ring(st)
    try:
        value = cc.degeneracy_class(e, _bundle(env, ring, b, st), r)
    except ValueError as exc:
        raise EvalError(str(exc), *st.pos) from None
    return Result(st, value, format_class(value))


def _line_table(dims, degrees):
    if len(degrees) != len(dims):
        raise EvalError(f"expected {len(dims)} degrees, got {len(degrees)}")
    return cc.bott_kunneth_table(dims, degrees)


def evaluate(prog: Program) -> list[Result]:
    env = _Env()
    out = []
    for st in prog.statements:
        try:
            out.append(_execute(env, st))
        except EvalError:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise EvalError(str(exc), *st.pos) from None
    return out


def run(text) -> list[Result]:
    return evaluate(parse(text))
