"""Exact symmetric matrices over a field tower: characteristic polynomial and signature."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .algfield import FieldElement, FieldTower, RealEmbedding, identity_embedding, sign_under


@dataclass(frozen=True)
class Signature:
    """Counts of positive, negative and zero eigenvalues."""

    p: int
    q: int
    r: int

    @property
    def dim(self) -> int:
        return self.p + self.q + self.r

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self):
        return f"({self.p},{self.q},{self.r})"


class SymMatrix:
    """Symmetric matrix with entries in a tower, stored as its upper triangle."""

    def __init__(self, tower: FieldTower, dim: int, upper: dict[tuple[int, int], FieldElement] | None = None):
        self.tower = tower
        self.dim = dim
        self._upper: dict[tuple[int, int], FieldElement] = {}
        for (i, j), v in (upper or {}).items():
            self[i, j] = v

    @classmethod
    def from_rows(cls, tower: FieldTower, rows: Sequence[Sequence]) -> "SymMatrix":
        n = len(rows)
        m = cls(tower, n)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix is not square")
            for j in range(i, n):
                a, b = tower.lift(rows[i][j]), tower.lift(rows[j][i])
                if a != b:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
                m[i, j] = a
        return m

    @classmethod
    def identity(cls, tower: FieldTower, dim: int) -> "SymMatrix":
        return cls(tower, dim, {(i, i): tower.one() for i in range(dim)})

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        if i > j:
            i, j = j, i
        self._check(i, j)
        v = self._upper.get((i, j))
        return v if v is not None else self.tower.zero()

    def __setitem__(self, ij, value):
        i, j = ij
        if i > j:
            i, j = j, i
        self._check(i, j)
        value = self.tower.lift(value)
        if value.is_zero():
            self._upper.pop((i, j), None)
        else:
            self._upper[(i, j)] = value

    def _check(self, i, j):
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(f"index ({i}, {j}) out of range for dimension {self.dim}")

    def rows(self) -> list[list[FieldElement]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def support(self) -> list[tuple[int, int]]:
        """Off-diagonal pairs i<j with nonzero entry."""
        return sorted(k for k in self._upper if k[0] != k[1])

    def map(self, fn: Callable[[FieldElement], FieldElement], tower: FieldTower | None = None) -> "SymMatrix":
        out = SymMatrix(tower or self.tower, self.dim)
        for k, v in self._upper.items():
            out[k] = fn(v)
        return out

    def scaled(self, c) -> "SymMatrix":
        return self.map(lambda v: v * c)

    def __neg__(self):
        return self.map(lambda v: -v)

    def lift(self, tower: FieldTower) -> "SymMatrix":
        return self.map(tower.lift, tower)

    def permuted(self, perm: Sequence[int]) -> "SymMatrix":
        """Matrix with rows/columns reordered: new index perm[i] gets old index i."""
        out = SymMatrix(self.tower, self.dim)
        for (i, j), v in self._upper.items():
            out[perm[i], perm[j]] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, SymMatrix) or self.dim != other.dim:
            return NotImplemented
        keys = set(self._upper) | set(other._upper)
        return all(self[k] == other[k] for k in keys)

    def __repr__(self):
        return f"SymMatrix(dim={self.dim}, nonzeros={len(self._upper)})"


def _mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.is_zero() or b.is_zero():
        return a.tower.zero() if a.tower.level >= b.tower.level else b.tower.zero()
    return a * b


def _berkowitz(rows: list[list[FieldElement]], tower: FieldTower) -> list[FieldElement]:
    """Coefficients of det(xI - A), highest degree first (division free)."""
    n = len(rows)
    one, zero = tower.one(), tower.zero()
    if n == 0:
        return [one]
    if n == 1:
        return [one, -rows[0][0]]
    a = rows[0][0]
    R = rows[0][1:]
    C = [rows[i][0] for i in range(1, n)]
    A = [row[1:] for row in rows[1:]]
    # powers A^k C for k = 0..n-2, collapsed against R
    vals = [one, -a]
    vec = C
    for k in range(n - 1):
        s = zero
        for r_i, v_i in zip(R, vec):
            s = s + _mul(r_i, v_i)
        vals.append(-s)
        if k < n - 2:
            vec = [_dot(row, vec, zero) for row in A]
    sub = _berkowitz(A, tower)
    out = []
    for i in range(n + 1):
        s = zero
        for j in range(min(i, n - 1) + 1):
            s = s + _mul(vals[i - j], sub[j])
        out.append(s)
    return out


def _dot(row, vec, zero):
    s = zero
    for x, y in zip(row, vec):
        s = s + _mul(x, y)
    return s


def charpoly(M: SymMatrix) -> list[FieldElement]:
    """Coefficients of det(lambda I - M), highest degree first; the first is 1."""
    return _berkowitz(M.rows(), M.tower)


def signature_from_signs(signs: Sequence[int]) -> Signature:
    """Signature from the signs of the charpoly coefficients (highest first).

    Every root is real, so Descartes' count of sign changes is exact for the
    positive roots once the zero root has been split off.
    """
    n = len(signs) - 1
    r = 0
    while r < n and signs[n - r] == 0:
        r += 1
    nonzero = [s for s in signs[: n - r + 1] if s != 0]
    p = sum(1 for x, y in zip(nonzero, nonzero[1:]) if x != y)
    return Signature(p, n - r - p, r)


def signature_under(M: SymMatrix, emb: RealEmbedding, coeffs: list[FieldElement] | None = None) -> Signature:
    """Signature of M^sigma; coefficient signs are taken under sigma, zeros exactly."""
    if coeffs is None:
        coeffs = charpoly(M)
    return signature_from_signs([sign_under(emb, c) for c in coeffs])


def signature(M: SymMatrix) -> Signature:
    return signature_under(M, identity_embedding(M.tower))


def is_psd(M: SymMatrix, emb: RealEmbedding, coeffs: list[FieldElement] | None = None) -> tuple[bool, Signature]:
    sig = signature_under(M, emb, coeffs)
    return sig.q == 0, sig


def determinant(M: SymMatrix) -> FieldElement:
    c = charpoly(M)
    return c[-1] if M.dim % 2 == 0 else -c[-1]
