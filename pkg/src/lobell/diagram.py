"""Coxeter-Vinberg diagrams: data model, text format and Gram matrix assembly.

Text format (``#`` starts a comment)::

    nodes <N>
    angle <i> <j> <m>        # dihedral angle pi/m, m >= 3
    parallel <i> <j>         # entry -1
    dashed <i> <j> <expr>    # entry -<expr>, <expr> > 1

Node indices are 1-based.  Absent pairs are orthogonal walls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .algfield import FieldTower, sign
from .errors import DivisionByZero, NonRealRadicand, ParseError, ValidationError
from .exactlin import SymMatrix, signature
from .expr import Evaluator, Expr, conductor, parse_expr, to_text


@dataclass(frozen=True)
class Angle:
    m: int


@dataclass(frozen=True)
class Parallel:
    pass


@dataclass(frozen=True)
class Dashed:
    weight: Expr


EdgeKind = Union[Angle, Parallel, Dashed]


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    kind: EdgeKind
    line: int | None = field(default=None, compare=False, hash=False)

    def text(self) -> str:
        k = self.kind
        if isinstance(k, Angle):
            return f"angle {self.i} {self.j} {k.m}"
        if isinstance(k, Parallel):
            return f"parallel {self.i} {self.j}"
        return f"dashed {self.i} {self.j} {to_text(k.weight)}"


@dataclass(frozen=True)
class CoxeterDiagram:
    node_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: (e.i, e.j))))

    def edge(self, i: int, j: int) -> Edge | None:
        i, j = min(i, j), max(i, j)
        for e in self.edges:
            if (e.i, e.j) == (i, j):
                return e
        return None

    def relabeled(self, perm: list[int]) -> "CoxeterDiagram":
        """Diagram with node i renamed perm[i-1] (1-based labels)."""
        edges = []
        for e in self.edges:
            a, b = perm[e.i - 1], perm[e.j - 1]
            edges.append(Edge(min(a, b), max(a, b), e.kind))
        return CoxeterDiagram(self.node_count, tuple(edges))


def _split_words(line: str):
    """Whitespace-separated words with their 1-based start columns."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _int_word(word, col, lineno, what) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {word!r}", lineno, col) from None


def parse_diagram(text: str, validate: bool = True) -> CoxeterDiagram:
    """Parse the diagram text format.

    With ``validate`` the dashed weights are evaluated exactly and must
    exceed 1.
    """
    nodes = None
    edges: list[Edge] = []
    seen: dict[tuple[int, int], int] = {}
    positions: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = _split_words(line)
        if not words:
            continue
        kw, kcol = words[0]
        if kw == "nodes":
            if nodes is not None:
                raise ParseError("duplicate 'nodes' line", lineno, kcol)
            if len(words) != 2:
                raise ParseError("expected 'nodes <count>'", lineno, kcol)
            nodes = _int_word(words[1][0], words[1][1], lineno, "node count")
            if nodes < 1:
                raise ValidationError("node count must be positive", lineno, words[1][1])
            continue
        if kw not in ("angle", "parallel", "dashed"):
            raise ParseError(f"unknown keyword {kw!r}", lineno, kcol)
        if nodes is None:
            raise ParseError("'nodes' must come before any edge", lineno, kcol)
        if len(words) < 3:
            raise ParseError(f"'{kw}' needs two node indices", lineno, kcol)
        i = _int_word(words[1][0], words[1][1], lineno, "node index")
        j = _int_word(words[2][0], words[2][1], lineno, "node index")
        for v, (_, col) in ((i, words[1]), (j, words[2])):
            if not 1 <= v <= nodes:
                raise ValidationError(f"node index {v} out of range 1..{nodes}", lineno, col)
        if i == j:
            raise ValidationError("an edge needs two distinct nodes", lineno, words[2][1])
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValidationError(f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})", lineno, kcol)
        seen[key] = lineno
        if kw == "angle":
            if len(words) != 4:
                raise ParseError("expected 'angle <i> <j> <m>'", lineno, kcol)
            m = _int_word(words[3][0], words[3][1], lineno, "angle label")
            if m < 3:
                raise ValidationError(f"angle label must be at least 3, got {m}", lineno, words[3][1])
            kind: EdgeKind = Angle(m)
        elif kw == "parallel":
            if len(words) != 3:
                raise ParseError("expected 'parallel <i> <j>'", lineno, kcol)
            kind = Parallel()
        else:
            if len(words) < 4:
                raise ParseError("expected 'dashed <i> <j> <expr>'", lineno, kcol)
            col = words[3][1]
            kind = Dashed(parse_expr(line[col - 1 :], lineno, col))
            positions[key] = col
        edges.append(Edge(key[0], key[1], kind, lineno))
    if nodes is None:
        raise ParseError("missing 'nodes' line", 1, 1)
    d = CoxeterDiagram(nodes, tuple(edges))
    if validate:
        _check_weights(d, positions)
    return d


def _check_weights(d: CoxeterDiagram, positions):
    # the weights alone fix the tower needed here; angle labels can make the
    # full diagram conductor much larger
    dashed = [e for e in d.edges if isinstance(e.kind, Dashed)]
    if not dashed:
        return
    ev = Evaluator(math.lcm(*(conductor(e.kind.weight) for e in dashed)))
    for e in dashed:
        col = positions.get((e.i, e.j))
        try:
            w = ev(e.kind.weight)
        except DivisionByZero:
            raise ValidationError("division by zero in weight", e.line, col) from None
        except NonRealRadicand:
            raise ValidationError("square root of a non-positive number", e.line, col) from None
        if sign(w - 1) <= 0:
            raise ValidationError("dashed weight must be greater than 1", e.line, col)


def serialize(d: CoxeterDiagram) -> str:
    return "\n".join([f"nodes {d.node_count}"] + [e.text() for e in d.edges]) + "\n"


def diagram_conductor(d: CoxeterDiagram) -> int:
    """Conductor of a cyclotomic base holding every cosine the diagram needs."""
    N = 1
    for e in d.edges:
        if isinstance(e.kind, Angle):
            N = math.lcm(N, 2 * e.kind.m)
        elif isinstance(e.kind, Dashed):
            N = math.lcm(N, conductor(e.kind.weight))
    return N


def assemble_gram(d: CoxeterDiagram) -> tuple[FieldTower, SymMatrix]:
    """Exact Gram matrix: 1 on the diagonal, -cos(pi/m), -1 or -w off it."""
    ev = Evaluator(diagram_conductor(d))
    values = {}
    for e in d.edges:
        k = e.kind
        if isinstance(k, Angle):
            values[e.i - 1, e.j - 1] = -ev.tower.cos_pi(1, k.m)
        elif isinstance(k, Parallel):
            values[e.i - 1, e.j - 1] = -ev.tower.one()
        else:
            try:
                values[e.i - 1, e.j - 1] = -ev(k.weight)
            except DivisionByZero:
                raise ValidationError("division by zero in weight", e.line) from None
    tower = ev.tower
    M = SymMatrix(tower, d.node_count)
    for i in range(d.node_count):
        M[i, i] = tower.one()
    for k, v in values.items():
        M[k] = tower.lift(v)
    return tower, M


def lorentz_check(M: SymMatrix, d: int) -> bool:
    """True iff M has signature (d, 1, dim - d - 1)."""
    return signature(M).as_tuple() == (d, 1, M.dim - d - 1)
