"""Real embeddings of a tower, certified evaluation and exact sign decisions."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

from flint import arb, fmpq

from .poly import (
    ball_to_interval,
    count_real_roots,
    eval_fmpq_poly,
    primitive_integer,
    root_separation_bits,
    working_precision,
)
from .tower import FieldElement, FieldTower

DEFAULT_PRECISION_BITS = 64
MAX_PRECISION_BITS = 1 << 20


def start_precision() -> int:
    """Starting precision for interval refinement (LOBELL_PRECISION_BITS, default 64)."""
    raw = os.environ.get("LOBELL_PRECISION_BITS", "")
    try:
        bits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION_BITS
    return bits if bits >= 16 else DEFAULT_PRECISION_BITS


def precision_schedule():
    bits = start_precision()
    while bits <= MAX_PRECISION_BITS:
        yield bits
        bits *= 2
    raise ArithmeticError("precision limit reached while refining an interval")


@dataclass(frozen=True)
class RealEmbedding:
    """A real embedding: a base root (ascending index) and signs for the square-root layers."""

    tower: FieldTower
    base_root_index: int
    signs: tuple[int, ...]
    root_intervals: tuple[tuple[fmpq, fmpq], ...] = ()

    @property
    def is_identity(self) -> bool:
        return self.base_root_index == self.tower.designated_root_index and all(s > 0 for s in self.signs)

    def restrict(self, level: FieldTower) -> "RealEmbedding":
        return RealEmbedding(level, self.base_root_index, self.signs[: level.level])

    def describe(self) -> str:
        j = base_root_numerators(self.tower.conductor)[self.base_root_index]
        s = "".join("+" if x > 0 else "-" for x in self.signs)
        return f"theta->2cos(2pi*{j}/{self.tower.conductor})" + (f", signs {s}" if s else "")

    def __hash__(self):
        return hash((self.tower.key, self.base_root_index, self.signs))

    def __eq__(self, other):
        return (
            isinstance(other, RealEmbedding)
            and self.tower == other.tower
            and self.base_root_index == other.base_root_index
            and self.signs == other.signs
        )


@dataclass(frozen=True)
class EmbeddingEnumeration:
    embeddings: tuple[RealEmbedding, ...]
    totally_real: bool
    witness: str | None = None

    def __iter__(self):
        return iter((list(self.embeddings), self.totally_real))

    def __len__(self):
        return len(self.embeddings)


@lru_cache(maxsize=None)
def base_root_numerators(N: int) -> list[int]:
    """j values with 2cos(2pi j/N) the real roots of the base polynomial, roots ascending."""
    js = [j for j in range(0, N // 2 + 1) if math.gcd(j, N) == 1]
    return sorted(js, reverse=True)


def _base_ball(tower: FieldTower, index: int, prec: int) -> arb:
    N = tower.conductor
    j = base_root_numerators(N)[index]
    with working_precision(prec + 8):
        return 2 * arb.cos_pi_fmpq(fmpq(2 * j, N))


def _layer_values(emb: RealEmbedding, prec: int, upto: int) -> list[arb]:
    """sigma(sqrt r_i) for i = 1..upto, computed bottom-up.

    The working precision is raised locally until every radicand image is
    certified positive.
    """
    chain = emb.tower.chain
    while True:
        ball = _base_ball(emb.tower, emb.base_root_index, prec)
        vals: list[arb] = []
        with working_precision(prec + 8):
            for i in range(1, upto + 1):
                level = chain[i]
                r = _eval_raw(level.parent, level._radicand_raw, ball, vals)
                if not r > 0:
                    break
                root = r.sqrt()
                vals.append(root if emb.signs[i - 1] > 0 else -root)
        if len(vals) == upto:
            return vals
        if prec > MAX_PRECISION_BITS:
            raise ArithmeticError("radicand image is not certified positive")
        prec *= 2


def _eval_raw(level: FieldTower, raw, ball: arb, layer_vals: list[arb]) -> arb:
    if level.parent is None:
        return eval_fmpq_poly(raw, ball)
    u, v = raw
    val = _eval_raw(level.parent, u, ball, layer_vals)
    if level.parent._is_zero(v):
        return val
    return val + _eval_raw(level.parent, v, ball, layer_vals) * layer_vals[level.level - 1]


def _evaluate_at(emb: RealEmbedding, a: FieldElement, prec: int) -> arb:
    a = emb.tower.lift(a) if a.tower != emb.tower else a
    layers = _layer_values(emb, prec, emb.tower.level)
    ball = _base_ball(emb.tower, emb.base_root_index, prec)
    with working_precision(prec + 8):
        return _eval_raw(emb.tower, a.raw, ball, layers)


def apply_embedding(emb: RealEmbedding, a: FieldElement, bits: int = 64) -> arb:
    """Certified ball containing sigma(a), of radius at most 2^-bits."""
    if a.is_rational():
        return arb(a.rational_value())
    tol = arb(2) ** (-bits)
    for prec in precision_schedule():
        prec = max(prec, bits + 16)
        val = _evaluate_at(emb, a, prec)
        if val.rad() <= tol:
            return val


def sign_under(emb: RealEmbedding, a: FieldElement) -> int:
    """Sign of sigma(a); zero is decided on coordinates only."""
    if a.is_zero():
        return 0
    if a.is_rational():
        q = a.rational_value()
        return 1 if q > 0 else -1
    for prec in precision_schedule():
        val = _evaluate_at(emb, a, prec)
        if val > 0:
            return 1
        if val < 0:
            return -1


@lru_cache(maxsize=None)
def identity_embedding(tower: FieldTower) -> RealEmbedding:
    signs = (1,) * tower.level
    return RealEmbedding(tower, tower.designated_root_index, signs, _root_intervals(tower, tower.designated_root_index, signs))


def _root_intervals(tower, index, signs):
    out = [tower.base_root_intervals[index]]
    if tower.level:
        emb = RealEmbedding(tower, index, signs)
        for v in _layer_values(emb, start_precision(), tower.level):
            out.append(ball_to_interval(v))
    return tuple(out)


def sign(a: FieldElement) -> int:
    """Sign of a at the designated embedding."""
    return sign_under(identity_embedding(a.tower), a)


def approximate(a: FieldElement, bits: int = 64) -> arb:
    return apply_embedding(identity_embedding(a.tower), a, bits)


def real_embeddings(tower: FieldTower) -> EmbeddingEnumeration:
    """All real embeddings, ordered by base root then sign vector (+ before -).

    A branch whose radicand image is negative is dropped and the tower is
    reported as not totally real.
    """
    f = tower.base._f
    totally_real = count_real_roots(f) == f.degree()
    witness = None if totally_real else "base polynomial has non-real roots"
    out = []
    for index in range(len(tower.base_root_intervals)):
        partial = [()]
        for i in range(1, tower.level + 1):
            level = tower.chain[i]
            r = FieldElement(level.parent, level._radicand_raw)
            nxt = []
            for signs in partial:
                emb = RealEmbedding(level.parent, index, signs)
                if sign_under(emb, r) > 0:
                    nxt.extend([signs + (1,), signs + (-1,)])
                else:
                    totally_real = False
                    if witness is None:
                        witness = f"radicand r_{i} is negative under {emb.describe()}"
            partial = nxt
        for signs in partial:
            out.append(RealEmbedding(tower, index, signs, _root_intervals(tower, index, signs)))
    return EmbeddingEnumeration(tuple(out), totally_real, witness)


@lru_cache(maxsize=None)
def real_embeddings_of(tower: FieldTower) -> tuple[RealEmbedding, ...]:
    return real_embeddings(tower).embeddings


@lru_cache(maxsize=4096)
def _separation(a: FieldElement) -> int:
    return root_separation_bits(primitive_integer(a.minpoly()))


def embedding_fixes(emb: RealEmbedding, a: FieldElement) -> bool:
    """Exact test of sigma(a) == a.

    Both numbers are roots of the minimal polynomial of a; distinct roots
    are at least 2^-b apart, so comparing balls of radius below 2^-(b+3)
    against the threshold 2^-(b+1) decides the question.
    """
    if a.tower != emb.tower:
        a = emb.tower.lift(a)
    if emb.is_identity or a.is_rational():
        return True
    b = _separation(a)
    ident = identity_embedding(emb.tower)
    threshold = arb(2) ** (-(b + 1))
    bits = b + 3
    while True:
        d = abs(apply_embedding(emb, a, bits) - apply_embedding(ident, a, bits))
        if d < threshold:
            return True
        if d > threshold:
            return False
        bits *= 2


def is_algebraic_integer(a: FieldElement) -> bool:
    """True iff the characteristic polynomial of multiplication by a is integral."""
    if a.is_rational():
        return a.rational_value().q == 1
    return all(c.q == 1 for c in a.charpoly().coeffs())
