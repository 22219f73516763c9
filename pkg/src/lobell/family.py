"""Generators and closed-form quantities for the Lobell family."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from flint import arb, fmpq

from .algfield import FieldElement, totient, working_precision
from .diagram import CoxeterDiagram, assemble_gram, parse_diagram
from .errors import DomainError


def _require(n: int, least: int = 5, name: str = "n"):
    if not isinstance(n, int) or n < least:
        raise DomainError(f"{name} must be an integer >= {least}, got {n!r}")


def tn_text(n: int, k: int = 2) -> str:
    """Canonical diagram file of the slice (k = 2) or its contraction with angles pi/2k."""
    a = f"sqrt(1+1/(2*cos(pi*2/{n})))"
    return "\n".join(
        [
            "nodes 6",
            f"angle 1 2 {n}",
            f"angle 1 6 {2 * k}",
            f"angle 2 5 {2 * k}",
            f"dashed 3 4 cos(pi*1/{n})/cos(pi*2/{n})",
            f"dashed 3 6 {a}",
            f"dashed 4 5 {a}",
        ]
    ) + "\n"


def tn_diagram(n: int) -> CoxeterDiagram:
    _require(n)
    return parse_diagram(tn_text(n), validate=False)


def pnk_diagram(n: int, k: int) -> CoxeterDiagram:
    _require(n)
    _require(k, 2, "k")
    return parse_diagram(tn_text(n, k), validate=False)


FAMILIES = {"T": tn_diagram}


# -- face lattice -------------------------------------------------------------


class Role(Enum):
    TOP = "top"
    BOTTOM = "bottom"
    LATERAL = "lateral"


@dataclass(frozen=True)
class Face:
    index: int
    role: Role
    position: int | None = None  # 0..n-1 for lateral faces
    row: int | None = None  # 0 = next to the top, 1 = next to the bottom

    def __str__(self):
        if self.role is Role.LATERAL:
            return f"{'U' if self.row == 0 else 'L'}{self.position}"
        return self.role.value


@dataclass(frozen=True)
class FaceLattice:
    n: int
    faces: tuple[Face, ...]
    adjacency: frozenset[frozenset[int]]
    vertices: tuple[tuple[int, int, int], ...]

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return 1

    def neighbours(self, f: int) -> list[int]:
        return sorted(next(iter(e - {f})) for e in self.adjacency if f in e)

    def counts(self) -> tuple[int, int, int]:
        return len(self.faces), len(self.adjacency), len(self.vertices)

    def euler_characteristic(self) -> int:
        F, E, V = self.counts()
        return F - E + V


def lobell_faces(n: int) -> FaceLattice:
    """Top and bottom n-gons with two rows of n pentagons between them.

    Faces 0 and 1 are top and bottom, 2+i is the upper pentagon U_i and
    2+n+i the lower pentagon L_i.  U_i meets L_i and L_{i+1}.
    """
    _require(n)
    U = lambda i: 2 + i % n
    L = lambda i: 2 + n + i % n
    faces = [Face(0, Role.TOP), Face(1, Role.BOTTOM)]
    faces += [Face(U(i), Role.LATERAL, i, 0) for i in range(n)]
    faces += [Face(L(i), Role.LATERAL, i, 1) for i in range(n)]
    edges = set()
    verts = []
    for i in range(n):
        edges |= {
            frozenset((0, U(i))),
            frozenset((1, L(i))),
            frozenset((U(i), U(i + 1))),
            frozenset((L(i), L(i + 1))),
            frozenset((U(i), L(i))),
            frozenset((U(i), L(i + 1))),
        }
        verts += [
            (0, U(i), U(i + 1)),
            (U(i), U(i + 1), L(i + 1)),
            (U(i), L(i), L(i + 1)),
            (1, L(i), L(i + 1)),
        ]
    return FaceLattice(n, tuple(faces), frozenset(edges), tuple(tuple(sorted(v)) for v in verts))


# -- closed-form quantities -----------------------------------------------------


def _bits(digits: int) -> int:
    return int(digits * 3.33) + 32


def _certified(fn, digits: int) -> arb:
    tol = arb(10) ** (-digits)
    bits = _bits(digits)
    while True:
        with working_precision(bits):
            v = fn()
            if v.rad() * 2 <= tol:
                return v
        if bits > 1 << 16:
            raise ArithmeticError("could not certify the requested number of digits")
        bits *= 2


def delta_n(n: int, digits: int = 30) -> arb:
    """Ball of width <= 10^-digits around arccosh(cos(pi/n)/cos(2pi/n))."""
    _require(n)
    return _certified(lambda: (arb.cos_pi_fmpq(fmpq(1, n)) / arb.cos_pi_fmpq(fmpq(2, n))).acosh(), digits)


def systole_candidate(n: int, digits: int = 30) -> arb:
    """2*delta_n (the shortest geodesic for large n; no threshold is claimed)."""
    _require(n)
    return _certified(lambda: 2 * (arb.cos_pi_fmpq(fmpq(1, n)) / arb.cos_pi_fmpq(fmpq(2, n))).acosh(), digits)


def antiprism_ratio(n: int, digits: int = 30) -> arb:
    """(1 + sin(pi/n)) / cos(pi/n)."""
    _require(n, 3)
    return _certified(lambda: (1 + arb.sin_pi_fmpq(fmpq(1, n))) / arb.cos_pi_fmpq(fmpq(1, n)), digits)


def field_degree(n: int) -> int:
    """Degree of Q(cos 2pi/n)."""
    if n <= 2:
        return 1
    return totient(n) // 2


@dataclass(frozen=True)
class TraceFieldFacts:
    n: int
    field_degree: int
    note: str = ""


def trace_field_facts(n: int, other: int | None = None) -> TraceFieldFacts:
    """Degree of the trace field; with ``other``, compare degrees of the two fields."""
    _require(n)
    deg = field_degree(n)
    note = ""
    if other is not None:
        _require(other, name="other")
        d2 = field_degree(other)
        if d2 != deg:
            note = f"incommensurable: field degrees differ ({deg} != {d2})"
        else:
            note = f"no degree obstruction: both fields have degree {deg}"
    return TraceFieldFacts(n, deg, note)


@dataclass(frozen=True)
class LobellQuantities:
    n: int
    a_n: FieldElement
    d_n: FieldElement
    delta_n: arb
    systole_candidate: arb
    field_degree: int


def slice_weights(n: int) -> tuple[FieldElement, FieldElement]:
    """(a_n, d_n) read off the slice Gram matrix."""
    _, G = assemble_gram(tn_diagram(n))
    return -G[2, 5], -G[2, 3]


def lobell_quantities(n: int, digits: int = 30) -> LobellQuantities:
    _require(n)
    a, d = slice_weights(n)
    return LobellQuantities(n, a, d, delta_n(n, digits), systole_candidate(n, digits), field_degree(n))
