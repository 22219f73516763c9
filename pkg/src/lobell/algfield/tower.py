"""Towers Q(2cos(2pi/N))(sqrt r_1, ..., sqrt r_t) with exact rational coordinates.

A level-0 value is an ``fmpq_poly`` reduced modulo the base polynomial.
A level-t value is a pair ``(u, v)`` of level-(t-1) values standing for
``u + v*sqrt(r_t)``.  Flattened coordinates put the base power index in
the low position and the subset of adjoined roots (top layer = highest
bit) in the high position: index = i + m*mask.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from flint import fmpq, fmpq_mat, fmpq_poly, fmpz, fmpz_poly

from ..errors import DivisionByZero, LobellError, NonRealRadicand
from .poly import IntPoly, dickson, min_poly_two_cos, primitive_integer, real_root_intervals


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, (int, fmpz)):
        return fmpq(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class FieldTower:
    """One level of a tower of real quadratic extensions over a real cyclotomic field.

    Do not build directly; use :func:`make_tower` or :meth:`adjoin_sqrt`.
    """

    def __init__(self, conductor: int, parent: "FieldTower | None" = None, radicand=None):
        self.conductor = int(conductor)
        self.parent = parent
        self._radicand_raw = radicand
        if parent is None:
            self.base_poly: IntPoly = min_poly_two_cos(self.conductor)
            self._f = fmpq_poly(list(self.base_poly.coefficients))
            self.m = self.base_poly.degree
            self.level = 0
            self.dimension = self.m
        else:
            self.base_poly = parent.base_poly
            self._f = parent._f
            self.m = parent.m
            self.level = parent.level + 1
            self.dimension = 2 * parent.dimension

    # -- structure -----------------------------------------------------

    @cached_property
    def base(self) -> "FieldTower":
        return self if self.parent is None else self.parent.base

    @cached_property
    def chain(self) -> tuple["FieldTower", ...]:
        """All levels from the base up to this one."""
        if self.parent is None:
            return (self,)
        return self.parent.chain + (self,)

    @property
    def depth(self) -> int:
        """Number of adjoined square roots."""
        return self.level

    @cached_property
    def radicands(self) -> tuple["FieldElement", ...]:
        """r_1..r_t, each an element of the level below the one it defines."""
        return tuple(FieldElement(t.parent, t._radicand_raw) for t in self.chain[1:])

    @cached_property
    def base_root_interval(self) -> tuple[fmpq, fmpq]:
        """Isolating interval (lo, hi] of the designated root 2cos(2pi/N)."""
        return self.base_root_intervals[self.designated_root_index]

    @cached_property
    def base_root_intervals(self) -> list[tuple[fmpq, fmpq]]:
        return real_root_intervals(self.base._f)

    @property
    def designated_root_index(self) -> int:
        # 2cos(2pi j/N) decreases in j on 1..N/2, so j = 1 is the largest real root
        return len(self.base_root_intervals) - 1

    @cached_property
    def key(self):
        if self.parent is None:
            return (self.conductor,)
        return self.parent.key + (tuple(self.radicands[-1].coords),)

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldTower) and self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldTower(N={self.conductor}, depth={self.level}, dimension={self.dimension})"

    def is_ancestor_of(self, other: "FieldTower") -> bool:
        return other.level >= self.level and other.chain[self.level] == self

    # -- raw arithmetic --------------------------------------------------

    def _zero(self):
        if self.parent is None:
            return fmpq_poly([])
        z = self.parent._zero()
        return (z, z)

    def _from_q(self, q):
        if self.parent is None:
            return fmpq_poly([_to_fmpq(q)])
        return (self.parent._from_q(q), self.parent._zero())

    def _is_zero(self, x) -> bool:
        if self.parent is None:
            return x.is_zero()
        return self.parent._is_zero(x[0]) and self.parent._is_zero(x[1])

    def _eq(self, x, y) -> bool:
        if self.parent is None:
            return x == y
        return self.parent._eq(x[0], y[0]) and self.parent._eq(x[1], y[1])

    def _add(self, x, y):
        if self.parent is None:
            return x + y
        p = self.parent
        return (p._add(x[0], y[0]), p._add(x[1], y[1]))

    def _sub(self, x, y):
        if self.parent is None:
            return x - y
        p = self.parent
        return (p._sub(x[0], y[0]), p._sub(x[1], y[1]))

    def _neg(self, x):
        if self.parent is None:
            return -x
        return (self.parent._neg(x[0]), self.parent._neg(x[1]))

    def _scale(self, x, q: fmpq):
        if self.parent is None:
            return x * q
        return (self.parent._scale(x[0], q), self.parent._scale(x[1], q))

    def _mul(self, x, y):
        if self.parent is None:
            return (x * y) % self._f
        p = self.parent
        u1, v1 = x
        u2, v2 = y
        if p._is_zero(v1):
            return (p._mul(u1, u2), p._mul(u1, v2))
        if p._is_zero(v2):
            return (p._mul(u1, u2), p._mul(v1, u2))
        uu = p._mul(u1, u2)
        vv = p._mul(v1, v2)
        cross = p._mul(p._add(u1, v1), p._add(u2, v2))
        return (p._add(uu, p._mul(self._radicand_raw, vv)), p._sub(p._sub(cross, uu), vv))

    def _inv(self, x):
        if self._is_zero(x):
            raise DivisionByZero("division by zero in a field tower")
        if self.parent is None:
            g, s, _ = x.xgcd(self._f)
            return (s / g.coeffs()[0]) % self._f
        p = self.parent
        u, v = x
        if p._is_zero(v):
            return (p._inv(u), p._zero())
        norm = p._sub(p._mul(u, u), p._mul(self._radicand_raw, p._mul(v, v)))
        ninv = p._inv(norm)
        return (p._mul(u, ninv), p._neg(p._mul(v, ninv)))

    def _coords(self, x) -> list[fmpq]:
        if self.parent is None:
            c = list(x.coeffs())
            return c + [fmpq(0)] * (self.m - len(c))
        return self.parent._coords(x[0]) + self.parent._coords(x[1])

    def _from_coords(self, coords):
        if self.parent is None:
            return fmpq_poly(list(coords))
        h = self.dimension // 2
        return (self.parent._from_coords(coords[:h]), self.parent._from_coords(coords[h:]))

    def _lift(self, x, source: "FieldTower"):
        """Raw value of ``source`` (an ancestor level) viewed in this level."""
        if source.level == self.level:
            return x
        return (self.parent._lift(x, source), self.parent._zero())

    def _mult_rows(self, x) -> list[list[fmpq]]:
        """Matrix of y -> x*y in the flattened basis, as a list of rows."""
        if self.parent is None:
            theta = fmpq_poly([0, 1])
            cols = []
            cur = x
            for _ in range(self.m):
                cols.append(self._coords(cur))
                cur = (cur * theta) % self._f
            return [[cols[j][i] for j in range(self.m)] for i in range(self.m)]
        p = self.parent
        u, v = x
        mu = p._mult_rows(u)
        mv = p._mult_rows(v)
        mrv = p._mult_rows(p._mul(self._radicand_raw, v))
        top = [a + b for a, b in zip(mu, mrv)]
        bottom = [a + b for a, b in zip(mv, mu)]
        return top + bottom

    # -- public constructors ---------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, self._zero())

    def one(self) -> "FieldElement":
        return FieldElement(self, self._from_q(1))

    def rational(self, q) -> "FieldElement":
        return FieldElement(self, self._from_q(q))

    def from_coords(self, coords) -> "FieldElement":
        coords = [_to_fmpq(c) for c in coords]
        if len(coords) != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates, got {len(coords)}")
        return FieldElement(self, self._from_coords(coords))

    def theta(self) -> "FieldElement":
        """The base generator 2cos(2pi/N)."""
        if self.m == 1:
            return self.rational(-self.base_poly.coefficients[0])
        return self.lift(FieldElement(self.base, fmpq_poly([0, 1])))

    def two_cos_multiple(self, k: int) -> "FieldElement":
        """2cos(2pi k/N) as the Dickson polynomial D_k evaluated at theta."""
        d = fmpq_poly(list(dickson(k % self.conductor).coeffs()))
        if self.m == 1:
            val = d(fmpq(-self.base_poly.coefficients[0]))
            return self.rational(val)
        return self.lift(FieldElement(self.base, d % self._f))

    def cos_pi(self, p: int, q: int) -> "FieldElement":
        """cos(pi p/q); requires p*N/(2q) to be an integer."""
        num, den = Fraction(p, q).numerator, Fraction(p, q).denominator
        if (num * self.conductor) % (2 * den):
            raise LobellError(f"cos(pi*{p}/{q}) does not lie in the base field of conductor {self.conductor}")
        k = num * self.conductor // (2 * den)
        return self.two_cos_multiple(k) / 2

    def sin_pi(self, p: int, q: int) -> "FieldElement":
        """sin(pi p/q) = cos(pi (q - 2p)/(2q))."""
        return self.cos_pi(q - 2 * p, 2 * q)

    def sqrt_generator(self, i: int) -> "FieldElement":
        """sqrt(r_i) (1-based) lifted to this level."""
        t = self.chain[i]
        p = t.parent
        return self.lift(FieldElement(t, (p._zero(), p._from_q(1))))

    def lift(self, a) -> "FieldElement":
        """Coerce a rational or an element of an ancestor level into this level."""
        if isinstance(a, FieldElement):
            if a.tower == self:
                return a if a.tower is self else FieldElement(self, a.raw)
            if a.tower.level <= self.level and self.chain[a.tower.level] == a.tower:
                return FieldElement(self, self._lift(a.raw, self.chain[a.tower.level]))
            raise LobellError("element does not belong to a subfield of this tower")
        return self.rational(a)

    def adjoin_sqrt(self, r) -> tuple["FieldTower", "FieldElement"]:
        """Adjoin sqrt(r), or return the existing root when r is already a square.

        Returns the (possibly unchanged) tower and the positive square root
        of r (positive at the designated embedding).
        """
        from .embed import sign

        r = self.lift(r)
        s = sign(r)
        if s <= 0:
            raise NonRealRadicand("radicand is not positive at the designated embedding")
        y = find_square_root(r)
        if y is not None:
            return self, y
        t = FieldTower(self.conductor, self, r.raw)
        return t, t.sqrt_generator(t.level)

    def multiplication_matrix(self, a: "FieldElement") -> fmpq_mat:
        a = self.lift(a)
        rows = self._mult_rows(a.raw)
        d = self.dimension
        return fmpq_mat(d, d, [c for row in rows for c in row])


class FieldElement:
    """Exact element of a :class:`FieldTower`."""

    __slots__ = ("tower", "raw")

    def __init__(self, tower: FieldTower, raw):
        self.tower = tower
        self.raw = raw

    @property
    def coords(self) -> list[fmpq]:
        return self.tower._coords(self.raw)

    def is_zero(self) -> bool:
        return self.tower._is_zero(self.raw)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> fmpq:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.tower == self.tower:
                return other
            if other.tower.level < self.tower.level:
                return self.tower.lift(other)
            raise LobellError("elements belong to different towers")
        return self.tower.rational(other)

    def _pair(self, other):
        if isinstance(other, FieldElement) and other.tower.level > self.tower.level:
            return other.tower.lift(self), other
        return self, self._coerce(other)

    def __add__(self, other):
        a, b = self._pair(other)
        return FieldElement(a.tower, a.tower._add(a.raw, b.raw))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return FieldElement(a.tower, a.tower._sub(a.raw, b.raw))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.tower, self.tower._neg(self.raw))

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return FieldElement(self.tower, self.tower._scale(self.raw, _to_fmpq(other)))
        a, b = self._pair(other)
        return FieldElement(a.tower, a.tower._mul(a.raw, b.raw))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.tower._inv(self.raw))

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            q = _to_fmpq(other)
            if q == 0:
                raise DivisionByZero("division by zero")
            return FieldElement(self.tower, self.tower._scale(self.raw, 1 / q))
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.tower.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement) and other.tower.level > self.tower.level:
            return other == self
        try:
            b = self._coerce(other)
        except (LobellError, TypeError):
            return NotImplemented
        return self.tower._eq(self.raw, b.raw)

    def __hash__(self):
        return hash((self.tower.key, tuple(self.coords)))

    def __float__(self):
        from .embed import approximate

        return float(approximate(self, 64))

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"

    def multiplication_matrix(self) -> fmpq_mat:
        return self.tower.multiplication_matrix(self)

    def charpoly(self) -> fmpq_poly:
        """Characteristic polynomial over Q of multiplication by this element."""
        return self.multiplication_matrix().charpoly()

    def minpoly(self) -> fmpq_poly:
        return self.multiplication_matrix().minpoly()


def make_tower(N: int, radicands=()) -> FieldTower:
    """Build Q(2cos(2pi/N)) and adjoin the square roots of ``radicands`` in order.

    Each radicand may be an int, a rational or an element of the level
    built so far (or of one of its ancestors).  Radicands that are
    already squares are absorbed without growing the tower.
    """
    if N < 1:
        raise ValueError("conductor must be positive")
    t = FieldTower(N)
    for r in radicands:
        t, _ = t.adjoin_sqrt(r)
    return t


def _rational_sqrt(q: fmpq):
    if q < 0:
        return None
    p, d = int(q.p), int(q.q)
    sp, sd = fmpz(p).isqrt(), fmpz(d).isqrt()
    if sp * sp == p and sd * sd == d:
        return fmpq(sp, sd)
    return None


def find_square_root(r: FieldElement):
    """A square root of r inside r's tower, or None if r is not a square there.

    The sign of the returned root is positive at the designated embedding.
    Negative values under some real embedding rule out squares cheaply;
    otherwise X^2 - r is split with a norm factorization over Q.
    """
    from .embed import real_embeddings_of, sign, sign_under

    tower = r.tower
    if r.is_zero():
        return tower.zero()
    if r.is_rational():
        q = _rational_sqrt(r.rational_value())
        if q is not None:
            return tower.rational(q)
        if r.rational_value() < 0:
            return None
    for emb in real_embeddings_of(tower):
        if sign_under(emb, r) < 0:
            return None
    y = _split_quadratic(r)
    if y is None:
        return None
    return y if sign(y) > 0 else -y


def _split_quadratic(r: FieldElement):
    tower = r.tower
    D = tower.dimension
    gens = [tower.sqrt_generator(i) for i in range(1, tower.level + 1)]
    theta = tower.theta()
    for attempt in range(1, 50):
        gamma = theta * attempt
        for i, g in enumerate(gens):
            gamma = gamma + g * (i + 1 + attempt)
        mg = _rows(tower, gamma)
        mr = _rows(tower, r)
        # w = X + gamma acting on L[X]/(X^2 - r) over the basis {e, e*X}
        rows = []
        for i in range(D):
            rows.append(mg[i] + mr[i])
        for i in range(D):
            rows.append([fmpq(1) if j == i else fmpq(0) for j in range(D)] + mg[i])
        mat = fmpq_mat(2 * D, 2 * D, [c for row in rows for c in row])
        norm = primitive_integer(mat.charpoly())
        if norm.gcd(norm.derivative()).degree() > 0:
            continue
        _, factors = norm.factor()
        if len(factors) == 1:
            return None
        for h, _ in factors:
            y = _root_from_factor(h, gamma, r)
            if y is not None:
                return y
        raise AssertionError("split norm without a recoverable square root")
    raise LobellError("could not find a separating element for a square-root test")


def _rows(tower: FieldTower, a: FieldElement):
    return tower._mult_rows(a.raw)


def _root_from_factor(h: fmpz_poly, gamma: FieldElement, r: FieldElement):
    """Reduce h modulo (x - gamma)^2 - r over the field and read off the root."""
    tower = r.tower
    c_x = gamma * 2
    c_1 = r - gamma * gamma
    a0, a1 = tower.zero(), tower.zero()
    for c in reversed(h.coeffs()):
        # (a0 + a1 x) * x = a1 * c_1 + (a0 + a1 * c_x) x
        a0, a1 = a1 * c_1 + int(c), a0 + a1 * c_x
    if a1.is_zero():
        return None
    y = -a0 / a1 - gamma
    if y * y == r:
        return y
    return None
