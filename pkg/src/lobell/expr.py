"""Weight expressions: integers, cos/sin of rational multiples of pi, sqrt and + - * /.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := INT | '(' expr ')' | 'sqrt' '(' expr ')'
            | ('cos' | 'sin') '(' 'pi' ['*' ['-'] INT] ['/' INT] ')'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from flint import fmpq, fmpq_poly

from .algfield import FieldElement, FieldTower, make_tower
from .algfield.poly import dickson
from .errors import DivisionByZero, ParseError


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Trig:
    """cos(pi*a/b) or sin(pi*a/b)."""

    func: str
    a: int
    b: int


@dataclass(frozen=True)
class Sqrt:
    arg: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Int, Trig, Sqrt, Neg, BinOp]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


@dataclass
class _Tok:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    col: int


def _tokenize(text: str, line: int | None, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = col0 + m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), col))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), col))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(_Tok("op", ch, col))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text.rstrip())))
    return toks


class _Parser:
    def __init__(self, text: str, line: int | None, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.line, tok.col)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "int":
            found = self.tok.text or "end of expression"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.i += 1
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Int(int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            name = tok.text
            self.i += 1
            if name == "sqrt":
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Sqrt(e)
            if name in ("cos", "sin"):
                return self.trig(name)
            raise self.error(f"unknown name {name!r}", tok)
        raise self.error(f"unexpected {tok.text or 'end of expression'!r}")

    def trig(self, func) -> Trig:
        self.expect("(")
        if self.tok.text != "pi":
            raise self.error("trigonometric arguments must have the form pi*a/b")
        self.i += 1
        a, b = 1, 1
        if self.tok.text == "*":
            self.i += 1
            sgn = 1
            if self.tok.text == "-":
                sgn = -1
                self.i += 1
            a = sgn * self.integer()
        if self.tok.text == "/":
            self.i += 1
            tok = self.tok
            b = self.integer()
            if b == 0:
                raise self.error("zero denominator", tok)
        self.expect(")")
        return Trig(func, a, b)


def parse_expr(text: str, line: int | None = None, column: int = 1) -> Expr:
    """Parse a weight expression; ``column`` is where ``text`` starts in its line."""
    return _Parser(text, line, column).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(e: Expr) -> str:
    return _fmt(e, 0)


def _fmt(e: Expr, outer: int, right: bool = False) -> str:
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, Trig):
        return f"{e.func}(pi*{e.a}/{e.b})"
    if isinstance(e, Sqrt):
        return f"sqrt({_fmt(e.arg, 0)})"
    if isinstance(e, Neg):
        # unary minus binds tighter than * and /, and -(a*b) = (-a)*b
        s = "-" + _fmt(e.arg, 2)
        return f"({s})" if outer >= 2 else s
    prec = _PREC[e.op]
    s = f"{_fmt(e.left, prec)}{e.op}{_fmt(e.right, prec, True)}"
    if prec < outer or (right and prec == outer):
        return f"({s})"
    return s


# -- conductor and evaluation ------------------------------------------------


def trig_conductor(func: str, a: int, b: int) -> int:
    """Conductor N with cos(pi a/b) (or sin) in Q(2cos(2pi/N)); minimal unless the value is rational."""
    if func == "sin":
        # sin(pi a/b) = cos(pi (b - 2a)/(2b))
        a, b = b - 2 * a, 2 * b
    q = Fraction(a, b)
    return 2 * q.denominator if q.numerator % 2 else q.denominator


def conductor(e: Expr) -> int:
    if isinstance(e, Int):
        return 1
    if isinstance(e, Trig):
        return trig_conductor(e.func, e.a, e.b)
    if isinstance(e, (Sqrt, Neg)):
        return conductor(e.arg)
    return math.lcm(conductor(e.left), conductor(e.right))


def trig_value(tower: FieldTower, func: str, a: int, b: int) -> FieldElement:
    if func == "sin":
        return tower.sin_pi(a, b)
    return tower.cos_pi(a, b)


class Evaluator:
    """Evaluates expressions in a growing tower, adjoining square roots on demand."""

    def __init__(self, N: int):
        self.tower = make_tower(N)
        self._roots: list[tuple[FieldElement, FieldElement]] = []

    def lift(self, a: FieldElement) -> FieldElement:
        return self.tower.lift(a)

    def __call__(self, e: Expr) -> FieldElement:
        return self.lift(self._eval(e))

    def _eval(self, e: Expr) -> FieldElement:
        t = self.tower
        if isinstance(e, Int):
            return t.rational(e.value)
        if isinstance(e, Trig):
            return trig_value(t, e.func, e.a, e.b)
        if isinstance(e, Neg):
            return -self._eval(e.arg)
        if isinstance(e, Sqrt):
            return self.sqrt(self._eval(e.arg))
        x = self.lift(self._eval(e.left))
        y = self.lift(self._eval(e.right))
        if e.op == "+":
            return x + y
        if e.op == "-":
            return x - y
        if e.op == "*":
            return x * y
        if y.is_zero():
            raise DivisionByZero("division by zero in a weight expression")
        return x / y

    def sqrt(self, r: FieldElement) -> FieldElement:
        r = self.lift(r)
        for known, root in self._roots:
            if self.lift(known) == r:
                return self.lift(root)
        self.tower, y = self.tower.adjoin_sqrt(r)
        self._roots.append((r, y))
        return y


def evaluate(e: Expr, N: int | None = None) -> FieldElement:
    """Value of a standalone expression in the smallest tower that holds it."""
    ev = Evaluator(N or conductor(e))
    return ev(e)


# -- rendering field elements in the grammar --------------------------------


def _base_to_cosines(poly: fmpq_poly, m: int) -> list[fmpq]:
    """Coefficients c_0..c_{m-1} with poly(theta) = c_0 + sum_k c_k D_k(theta)."""
    rem = poly
    out = [fmpq(0)] * m
    for k in range(m - 1, 0, -1):
        c = rem.coeffs()[k] if rem.degree() >= k else fmpq(0)
        if c != 0:
            out[k] = c
            rem = rem - c * fmpq_poly(list(dickson(k).coeffs()))
    out[0] = rem.coeffs()[0] if rem.degree() >= 0 else fmpq(0)
    return out


def _rational_expr(q: fmpq) -> Expr:
    num, den = int(q.p), int(q.q)
    e: Expr = Int(abs(num))
    if den != 1:
        e = BinOp("/", e, Int(den))
    return Neg(e) if num < 0 else e


def _sum(terms: list[Expr]) -> Expr:
    if not terms:
        return Int(0)
    out = terms[0]
    for t in terms[1:]:
        if isinstance(t, Neg):
            out = BinOp("-", out, t.arg)
        else:
            out = BinOp("+", out, t)
    return out


def _times(q: fmpq, e: Expr | None) -> Expr:
    if e is None:
        return _rational_expr(q)
    if q == 1:
        return e
    if q == -1:
        return Neg(e)
    num, den = int(q.p), int(q.q)
    out: Expr = e if abs(num) == 1 else BinOp("*", Int(abs(num)), e)
    if den != 1:
        out = BinOp("/", out, Int(den))
    return Neg(out) if num < 0 else out


def element_to_expr(a: FieldElement) -> Expr:
    """An expression in the weight grammar that evaluates to ``a`` in its tower.

    Base components are written in the basis 1, 2cos(2pi k/N); adjoined
    roots as sqrt of their radicands.
    """
    tower = a.tower
    N, m = tower.conductor, tower.m
    coords = a.coords
    radicand_exprs = [element_to_expr(r) for r in tower.radicands]
    terms: list[Expr] = []
    for mask in range(1 << tower.level):
        block = coords[mask * m : (mask + 1) * m]
        if all(c == 0 for c in block):
            continue
        if m == 1:
            cos_coeffs = [block[0]]
        else:
            cos_coeffs = _base_to_cosines(fmpq_poly(block), m)
        root: Expr | None = None
        for i in range(tower.level):
            if mask >> i & 1:
                s = Sqrt(radicand_exprs[i])
                root = s if root is None else BinOp("*", root, s)
        for k, c in enumerate(cos_coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(_times(c, root))
                continue
            q = Fraction(2 * k, N)
            cos = Trig("cos", q.numerator, q.denominator)
            factor: Expr = cos if root is None else BinOp("*", cos, root)
            terms.append(_times(c * 2, factor))
    return _sum(terms)


def element_to_text(a: FieldElement) -> str:
    return to_text(element_to_expr(a))


__all__ = [
    "BinOp",
    "Evaluator",
    "Expr",
    "Int",
    "Neg",
    "Sqrt",
    "Trig",
    "conductor",
    "element_to_expr",
    "element_to_text",
    "evaluate",
    "parse_expr",
    "to_text",
]
