"""Cyclic products of a Gram matrix and the ground field they generate.

The ground field is kept as an explicit rational subspace of the ambient
tower.  Its own real embeddings are described through a primitive element
and the real roots of its minimal polynomial.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from flint import arb, fmpq, fmpq_mat, fmpq_poly

from .algfield import FieldElement, FieldTower, RealEmbedding, apply_embedding, approximate, embedding_fixes, is_algebraic_integer
from .algfield.embed import precision_schedule
from .algfield.poly import eval_fmpq_poly, interval_to_ball, primitive_integer, real_root_intervals, refine_root, working_precision
from .exactlin import Signature, SymMatrix, signature_from_signs


@dataclass(frozen=True)
class CycleSet:
    fundamental_cycles: tuple[tuple[int, ...], ...]
    edge_pairs: tuple[tuple[int, int], ...]
    components: int


def _adjacency(M: SymMatrix) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {i: [] for i in range(M.dim)}
    for i, j in M.support():
        adj[i].append(j)
        adj[j].append(i)
    for v in adj.values():
        v.sort()
    return adj


def _normalize_cycle(cyc: list[int]) -> tuple[int, ...]:
    """Start at the smallest vertex and head towards its smaller neighbour."""
    k = cyc.index(min(cyc))
    cyc = cyc[k:] + cyc[:k]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return tuple(cyc)


def cycle_set(M: SymMatrix) -> CycleSet:
    """Fundamental cycles of a BFS spanning forest of the support graph."""
    adj = _adjacency(M)
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    components = 0
    for root in range(M.dim):
        if root in parent:
            continue
        components += 1
        parent[root], depth[root] = None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in parent:
                    parent[w], depth[w] = u, depth[u] + 1
                    queue.append(w)
    cycles = []
    for i, j in M.support():
        if parent.get(j) == i or parent.get(i) == j:
            continue
        a, b = [i], [j]
        while a[-1] != b[-1]:
            if depth[a[-1]] >= depth[b[-1]]:
                a.append(parent[a[-1]])
            else:
                b.append(parent[b[-1]])
        cycles.append(_normalize_cycle(a + b[-2::-1]))
    return CycleSet(tuple(sorted(cycles)), tuple(M.support()), components)


def cycle_product(M: SymMatrix, cycle) -> FieldElement:
    out = M.tower.one()
    for k in range(len(cycle)):
        out = out * M[cycle[k], cycle[(k + 1) % len(cycle)]]
    return out


def describe_cycle(cycle) -> str:
    return "-".join(str(v + 1) for v in cycle)


def labelled_generators(M: SymMatrix) -> list[tuple[str, FieldElement]]:
    cs = cycle_set(M)
    out = [(f"edge {i + 1}-{j + 1}", M[i, j] * M[i, j]) for i, j in cs.edge_pairs]
    out += [(f"cycle {describe_cycle(c)}", cycle_product(M, c)) for c in cs.fundamental_cycles]
    return out


def cycle_generators(M: SymMatrix) -> list[FieldElement]:
    """Edge squares followed by fundamental-cycle products."""
    return [g for _, g in labelled_generators(M)]


class _Echelon:
    """Incremental row echelon form over Q for membership tests."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[int, list[fmpq]]] = []

    def reduce(self, v: list[fmpq]) -> list[fmpq]:
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c != 0:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        for piv, x in enumerate(v):
            if x != 0:
                row = [y / x for y in v]
                # keep rows fully reduced against the new pivot
                self.rows = [(p, [a - r[piv] * b for a, b in zip(r, row)]) for p, r in self.rows]
                self.rows.append((piv, row))
                return True
        return False

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))


@dataclass
class SubfieldDesc:
    """A subfield of a tower, kept as a rational subspace with a basis."""

    tower: FieldTower
    generators: list[FieldElement]
    basis: list[FieldElement]
    _echelon: _Echelon = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.basis)

    def contains(self, a: FieldElement) -> bool:
        return self._echelon.contains(self.tower.lift(a).coords)

    @cached_property
    def primitive_element(self) -> FieldElement:
        if self.degree == 1:
            return self.tower.one()
        for c in range(1, 50):
            gamma = self.tower.zero()
            for i, b in enumerate(self.basis[1:], start=1):
                gamma = gamma + b * (c**i % 97 + i)
            if gamma.minpoly().degree() == self.degree:
                return gamma
        raise ArithmeticError("no primitive element found for the ground field")

    @cached_property
    def primitive_minpoly(self) -> fmpq_poly:
        return self.primitive_element.minpoly()

    @cached_property
    def _power_system(self):
        """Pivot columns and inverse matrix for coordinates in powers of gamma."""
        d = self.degree
        powers = [self.tower.one()]
        for _ in range(d - 1):
            powers.append(powers[-1] * self.primitive_element)
        rows = [p.coords for p in powers]
        ech = fmpq_mat(d, self.tower.dimension, [c for r in rows for c in r]).rref()[0]
        pivots = []
        for i in range(d):
            for j in range(self.tower.dimension):
                if ech[i, j] != 0:
                    pivots.append(j)
                    break
        sub = fmpq_mat(d, d, [rows[i][j] for j in pivots for i in range(d)])
        return pivots, sub, rows

    def power_coordinates(self, a: FieldElement) -> fmpq_poly:
        """The polynomial p of degree < d with a = p(gamma); a must lie in the field."""
        a = self.tower.lift(a)
        if self.degree == 1:
            if not a.is_rational():
                raise ValueError("element is not in the ground field")
            return fmpq_poly([a.rational_value()])
        pivots, sub, rows = self._power_system
        coords = a.coords
        rhs = fmpq_mat(len(pivots), 1, [coords[j] for j in pivots])
        x = sub.solve(rhs)
        coeffs = [x[i, 0] for i in range(self.degree)]
        check = [sum((coeffs[i] * rows[i][j] for i in range(self.degree)), fmpq(0)) for j in range(self.tower.dimension)]
        if check != coords:
            raise ValueError("element is not in the ground field")
        return fmpq_poly(coeffs)


def subfield_closure(gens, tower: FieldTower | None = None, verify: bool = True) -> SubfieldDesc:
    """Smallest unital subspace containing ``gens`` and closed under multiplication."""
    gens = list(gens)
    if tower is None:
        if not gens:
            raise ValueError("an empty generator list needs an explicit tower")
        tower = max((g.tower for g in gens), key=lambda t: t.level)
    gens = [tower.lift(g) for g in gens]
    ech = _Echelon(tower.dimension)
    basis: list[FieldElement] = []

    def push(x):
        if ech.add(x.coords):
            basis.append(x)
            return True
        return False

    push(tower.one())
    for g in gens:
        push(g)
    frontier = list(basis)
    while frontier:
        new = []
        for b in frontier:
            for g in gens:
                x = b * g
                if push(x):
                    new.append(x)
        frontier = new
    k = SubfieldDesc(tower, gens, basis, ech)
    if verify:
        for i, x in enumerate(basis):
            for y in basis[i:]:
                if not k.contains(x * y):
                    raise ArithmeticError("subfield closure is not multiplicatively closed")
    return k


def embedding_restricts_to_identity(emb: RealEmbedding, k: SubfieldDesc) -> bool:
    return all(embedding_fixes(emb, g) for g in k.generators)


# -- real embeddings of the ground field itself ------------------------------


@dataclass(frozen=True)
class GroundEmbedding:
    """A real embedding tau of k, sending its primitive element to one real root."""

    index: int
    interval: tuple[fmpq, fmpq]


def ground_embeddings(k: SubfieldDesc) -> list[GroundEmbedding]:
    if k.degree == 1:
        return [GroundEmbedding(0, (fmpq(0), fmpq(0)))]
    return [GroundEmbedding(i, iv) for i, iv in enumerate(real_root_intervals(k.primitive_minpoly))]


def _root_ball(k: SubfieldDesc, tau: GroundEmbedding, bits: int) -> arb:
    lo, hi = refine_root(k.primitive_minpoly, tau.interval[0], tau.interval[1], bits)
    return interval_to_ball(lo, hi)


def apply_ground(k: SubfieldDesc, tau: GroundEmbedding, a: FieldElement, bits: int = 64) -> arb:
    """Ball around tau(a) for a in k."""
    p = k.power_coordinates(a)
    if k.degree == 1:
        return arb(p.coeffs()[0] if p.coeffs() else 0)
    prec = bits + 16
    while True:
        with working_precision(prec):
            v = eval_fmpq_poly(p, _root_ball(k, tau, prec))
        if v.rad() <= arb(2) ** (-bits):
            return v
        prec *= 2


def ground_sign(k: SubfieldDesc, tau: GroundEmbedding, a: FieldElement) -> int:
    a = k.tower.lift(a)
    if a.is_zero():
        return 0
    p = k.power_coordinates(a)
    if k.degree == 1:
        return 1 if p.coeffs()[0] > 0 else -1
    for prec in precision_schedule():
        with working_precision(prec):
            v = eval_fmpq_poly(p, _root_ball(k, tau, prec))
            if v > 0:
                return 1
            if v < 0:
                return -1


def identity_ground_index(k: SubfieldDesc) -> int:
    if k.degree == 1:
        return 0
    return restriction_index(None, k)


def restriction_index(emb: RealEmbedding | None, k: SubfieldDesc) -> int:
    """Index of the ground embedding that a tower embedding restricts to.

    ``None`` stands for the designated embedding.
    """
    if k.degree == 1:
        return 0
    taus = ground_embeddings(k)
    gamma = k.primitive_element
    bits = 32
    while True:
        v = approximate(gamma, bits) if emb is None else apply_embedding(emb, gamma, bits)
        hits = [t.index for t in taus if not (v < arb(t.interval[0]) or v > arb(t.interval[1]))]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise ArithmeticError("embedding image of the primitive element matches no real root")
        bits *= 2


def cyclotomic_label(k: SubfieldDesc, tau: GroundEmbedding, n: int) -> int | None:
    """l with tau(2cos(2pi/n)) = 2cos(2pi l/n), if 2cos(2pi/n) lies in k."""
    if k.tower.conductor % n:
        return None
    c = k.tower.two_cos_multiple(k.tower.conductor // n)
    if not k.contains(c):
        return None
    cands = [l for l in range(1, n // 2 + 1) if math.gcd(l, n) == 1]
    bits = 32
    while True:
        v = apply_ground(k, tau, c, bits)
        with working_precision(bits + 16):
            hits = [l for l in cands if v.overlaps(2 * arb.cos_pi_fmpq(fmpq(2 * l, n)))]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            return None
        bits *= 2


# -- the rescaled form whose entries all lie in k ---------------------------


def rescaled_form(M: SymMatrix) -> SymMatrix:
    """D*M*D with D diagonal, chosen so that every entry is a cyclic product.

    D is built along a BFS spanning forest: c_root = 1 and
    c_child = c_parent * m_{parent,child}.
    """
    adj = _adjacency(M)
    c: dict[int, FieldElement] = {}
    for root in range(M.dim):
        if root in c:
            continue
        c[root] = M.tower.one()
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in c:
                    c[w] = c[u] * M[u, w]
                    queue.append(w)
    out = SymMatrix(M.tower, M.dim)
    for i in range(M.dim):
        for j in range(i, M.dim):
            v = M[i, j]
            if not v.is_zero():
                out[i, j] = c[i] * c[j] * v
    return out


def ground_signature(k: SubfieldDesc, tau: GroundEmbedding, coeffs: list[FieldElement]) -> Signature:
    return signature_from_signs([ground_sign(k, tau, c) for c in coeffs])


# -- integrality -------------------------------------------------------------


@dataclass(frozen=True)
class IntegralityWitness:
    cycle: str
    value: FieldElement
    decimal: str


def decimal_preview(a: FieldElement, digits: int = 30) -> str:
    bits = int(digits * 3.33) + 16
    v = approximate(a, bits)
    with working_precision(bits + 16):
        return v.mid().str(digits, radius=False)


def cyc2_integrality(
    M: SymMatrix, k: SubfieldDesc | None = None, digits: int = 30
) -> tuple[bool, list[IntegralityWitness]]:
    """Integrality of the generators of Cyc(2M); failures come with decimal previews."""
    twice = M.scaled(2)
    witnesses = []
    for label, g in labelled_generators(twice):
        if not is_algebraic_integer(g):
            witnesses.append(IntegralityWitness(label, g, decimal_preview(g, digits)))
    return not witnesses, witnesses


def norm_poly(a: FieldElement):
    """Primitive integer minimal polynomial of a (used in reports)."""
    return primitive_integer(a.minpoly())


__all__ = [
    "CycleSet",
    "GroundEmbedding",
    "IntegralityWitness",
    "SubfieldDesc",
    "apply_ground",
    "cycle_generators",
    "cycle_product",
    "cycle_set",
    "cyc2_integrality",
    "embedding_restricts_to_identity",
    "ground_embeddings",
    "ground_signature",
    "labelled_generators",
    "rescaled_form",
    "restriction_index",
    "subfield_closure",
]
