"""Integer and rational polynomial helpers.

Cyclotomic polynomials and the minimal polynomial of ``2cos(2pi/N)``,
Sturm sequences, exact real-root isolation and a root separation bound.
Polynomials are stored lowest degree first.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from functools import lru_cache

import flint
from flint import arb, arb_poly, fmpq, fmpq_poly, fmpz, fmpz_poly


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients, lowest first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = list(int(x) for x in self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def from_flint(cls, p) -> "IntPoly":
        return cls(tuple(int(c) for c in p.coeffs()))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def flint(self) -> fmpz_poly:
        return fmpz_poly(list(self.coefficients))

    @property
    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __call__(self, x):
        acc = 0 if not isinstance(x, arb) else arb(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        return str(self.flint)


@contextlib.contextmanager
def working_precision(bits: int):
    """Temporarily set the working precision of flint's ball arithmetic."""
    old = flint.ctx.prec
    flint.ctx.prec = max(int(bits), 16)
    try:
        yield
    finally:
        flint.ctx.prec = old


def totient(n: int) -> int:
    return int(fmpz(n).euler_phi())


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> fmpz_poly:
    """n-th cyclotomic polynomial by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = fmpz_poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q, r = divmod(p, cyclotomic(d))
            assert r == 0
            p = q
    return p


@lru_cache(maxsize=None)
def dickson(k: int) -> fmpz_poly:
    """Polynomial D_k with D_k(x + 1/x) = x^k + x^-k, i.e. 2cos(kt) = D_k(2cos t)."""
    if k < 0:
        return dickson(-k)
    y = fmpz_poly([0, 1])
    prev, cur = fmpz_poly([2]), y
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, y * cur - prev
    return cur


@lru_cache(maxsize=None)
def min_poly_two_cos(n: int) -> IntPoly:
    """Monic minimal polynomial of 2cos(2pi/n).

    Folds the palindromic cyclotomic polynomial: Phi_n(x) = x^m psi(x + 1/x)
    with m = phi(n)/2.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return IntPoly((-2, 1))
    if n == 2:
        return IntPoly((2, 1))
    phi = cyclotomic(n).coeffs()
    m = (len(phi) - 1) // 2
    psi = fmpz_poly([phi[m]])
    for j in range(1, m + 1):
        psi += phi[m + j] * dickson(j)
    return IntPoly.from_flint(psi)


def as_fmpq_poly(p) -> fmpq_poly:
    if isinstance(p, IntPoly):
        return fmpq_poly(list(p.coefficients))
    if isinstance(p, fmpq_poly):
        return p
    return fmpq_poly(list(p.coeffs()))


def primitive_integer(p) -> fmpz_poly:
    """Integer polynomial with content 1 and the same roots, leading coefficient positive."""
    p = as_fmpq_poly(p)
    num = p.numer()
    coeffs = [int(c) for c in num.coeffs()]
    g = 0
    for c in coeffs:
        g = _gcd(g, c)
    if g == 0:
        return fmpz_poly([])
    if coeffs[-1] < 0:
        g = -g
    return fmpz_poly([c // g for c in coeffs])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def squarefree_part(p) -> fmpq_poly:
    p = as_fmpq_poly(p)
    g = p.gcd(p.derivative())
    return p // g


def sturm_sequence(p) -> list[fmpq_poly]:
    p = as_fmpq_poly(p)
    seq = [p, p.derivative()]
    while seq[-1].degree() > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        # positive rescaling keeps the sign pattern and the sizes small
        r = as_fmpq_poly(primitive_integer(r)) * (1 if r.coeffs()[-1] > 0 else -1)
        seq.append(r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(seq, x) -> int:
    return _variations([_sign(q(x)) for q in seq])


def _variations_at_infinity(seq, positive: bool) -> int:
    signs = []
    for q in seq:
        lead = _sign(q.coeffs()[-1])
        if not positive and q.degree() % 2 == 1:
            lead = -lead
        signs.append(lead)
    return _variations(signs)


def count_real_roots(p, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in (lo, hi]; whole line by default."""
    seq = sturm_sequence(p)
    v_lo = _variations_at_infinity(seq, False) if lo is None else _variations_at(seq, fmpq(lo))
    v_hi = _variations_at_infinity(seq, True) if hi is None else _variations_at(seq, fmpq(hi))
    return v_lo - v_hi


def cauchy_bound(p) -> fmpq:
    c = as_fmpq_poly(p).coeffs()
    lead = abs(c[-1])
    return 1 + max((abs(x) / lead for x in c[:-1]), default=fmpq(0))


def real_root_intervals(p) -> list[tuple[fmpq, fmpq]]:
    """Disjoint intervals (lo, hi] each holding exactly one real root, ascending.

    Exact bisection on a Sturm sequence of the squarefree part.
    """
    p = squarefree_part(p)
    if p.degree() < 1:
        return []
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    out = []

    def split(lo, hi, v_lo, v_hi):
        n = v_lo - v_hi
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        v_mid = _variations_at(seq, mid)
        split(lo, mid, v_lo, v_mid)
        split(mid, hi, v_mid, v_hi)

    lo, hi = -bound, bound
    split(lo, hi, _variations_at(seq, lo), _variations_at(seq, hi))
    return out


def refine_root(p, lo: fmpq, hi: fmpq, bits: int) -> tuple[fmpq, fmpq]:
    """Shrink an isolating interval (lo, hi] of a squarefree p below width 2^-bits."""
    p = as_fmpq_poly(p)
    target = fmpq(1, 2**bits)
    s_hi = _sign(p(hi))
    if s_hi == 0:
        return hi, hi
    while hi - lo > target:
        mid = (lo + hi) / 2
        s = _sign(p(mid))
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def root_separation_bits(p) -> int:
    """An integer b with |x - y| > 2^-b for any two distinct complex roots of p.

    Mahler's bound for squarefree integer polynomials, taken with integer
    bit lengths so that it is never optimistic.
    """
    q = primitive_integer(squarefree_part(p))
    d = q.degree()
    if d < 2:
        return 0
    norm_sq = sum(int(c) ** 2 for c in q.coeffs())
    bits = (d + 2) * int(d).bit_length() + (d - 1) * norm_sq.bit_length()
    return bits // 2 + 1


def fmpq_from_arb_endpoint(x: arb) -> fmpq:
    m, e = x.mid().man_exp()
    e = int(e)
    if e >= 0:
        return fmpq(m * fmpz(2) ** e)
    return fmpq(m, fmpz(2) ** (-e))


def ball_to_interval(x: arb) -> tuple[fmpq, fmpq]:
    """Rational endpoints of a real ball."""
    return fmpq_from_arb_endpoint(x.lower()), fmpq_from_arb_endpoint(x.upper())


def interval_to_ball(lo: fmpq, hi: fmpq) -> arb:
    mid = (lo + hi) / 2
    rad = (hi - lo) / 2
    b = arb(mid)
    if rad != 0:
        b = b + arb(0, arb(rad).upper())
    return b


def eval_fmpq_poly(p: fmpq_poly, x: arb) -> arb:
    """Certified value of a rational polynomial at a ball."""
    coeffs = p.coeffs()
    if not coeffs:
        return arb(0)
    return arb_poly([arb(c) for c in coeffs])(x)
