import itertools
import random

import mpmath
import pytest
from flint import fmpq
from hypothesis import given, settings
from hypothesis import strategies as st

from lobell.algfield import (
    apply_embedding,
    approximate,
    embedding_fixes,
    is_algebraic_integer,
    make_tower,
    real_embeddings,
    sign,
    sign_under,
)
from lobell.algfield.embed import precision_schedule, start_precision

from conftest import build_tower, random_element


def _mp(ball):
    return mpmath.mpf(ball.mid().str(60, radius=False))


@pytest.mark.parametrize("N", range(3, 61))
def test_designated_root_matches_100_digit_oracle(N):
    mpmath.mp.dps = 100
    t = make_tower(N)
    got = _mp(approximate(t.theta(), 200))
    assert abs(got - 2 * mpmath.cos(2 * mpmath.pi / N)) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("name", ["Q(sqrt2,sqrt3)", "K_12", "Q(cos 2pi/24)"])
def test_embeddings_of_totally_real_towers(name):
    t = build_tower(name)
    embs, totally_real = real_embeddings(t)
    assert totally_real
    assert len(embs) == t.dimension
    for e in embs:
        for r in t.radicands:
            assert sign_under(e, r) == 1


def test_not_totally_real_has_witness():
    # T_7 needs sqrt(1 + 1/(2cos(2pi/7))), which is negative at l = 3
    t = make_tower(28)
    r = 1 + 1 / t.two_cos_multiple(4)
    t2, _ = t.adjoin_sqrt(r)
    enum = real_embeddings(t2)
    assert not enum.totally_real
    assert enum.witness
    assert len(enum.embeddings) < t2.dimension


def test_embeddings_are_distinct_on_generators():
    t = build_tower("Q(sqrt2,sqrt3)")
    embs, _ = real_embeddings(t)
    s2, s3 = t.sqrt_generator(1), t.sqrt_generator(2)
    seen = {(sign_under(e, s2), sign_under(e, s3)) for e in embs}
    assert seen == set(itertools.product((1, -1), repeat=2))


def test_sign_zero_iff_zero(tower):
    rng = random.Random(3)
    assert sign(tower.zero()) == 0
    for _ in range(30):
        a = random_element(tower, rng, allow_zero=False)
        assert sign(a) != 0


def test_sign_multiplicative(tower):
    rng = random.Random(11)
    embs, _ = real_embeddings(tower)
    for _ in range(40):
        a, b = random_element(tower, rng), random_element(tower, rng)
        for e in embs[:4]:
            assert sign_under(e, a * b) == sign_under(e, a) * sign_under(e, b)


def test_sign_of_tiny_difference():
    # 2cos(pi/12)^2 and 1 + cos(pi/6) agree exactly; perturb by 2^-200
    t = make_tower(24)
    c = t.cos_pi(1, 12)
    eps = fmpq(1, 2 ** 200)
    assert sign(2 * c * c - 1 - t.cos_pi(1, 6)) == 0
    assert sign(2 * c * c - 1 - t.cos_pi(1, 6) + eps) == 1
    assert sign(2 * c * c - 1 - t.cos_pi(1, 6) - eps) == -1


def test_apply_embedding_is_ring_map():
    t = build_tower("K_12")
    rng = random.Random(5)
    embs, _ = real_embeddings(t)
    mpmath.mp.dps = 50
    for _ in range(10):
        a, b = random_element(t, rng), random_element(t, rng)
        for e in embs:
            lhs = _mp(apply_embedding(e, a * b, 200))
            rhs = _mp(apply_embedding(e, a, 200)) * _mp(apply_embedding(e, b, 200))
            assert abs(lhs - rhs) < mpmath.mpf(10) ** -40 * (1 + abs(rhs))


def test_embedding_fixes_is_closed_under_ring_operations():
    t = build_tower("K_12")
    embs, _ = real_embeddings(t)
    gens = [t.cos_pi(1, 6), t.cos_pi(1, 4), t.sqrt_generator(t.depth), t.cos_pi(1, 12)]
    for e in embs:
        fixed = [g for g in gens if embedding_fixes(e, g)]
        for a, b in itertools.combinations_with_replacement(fixed, 2):
            assert embedding_fixes(e, a + b)
            assert embedding_fixes(e, a * b)
    assert sum(embedding_fixes(e, gens[0]) for e in embs) == 4
    assert all(embedding_fixes(e, t.rational(fmpq(3, 7))) for e in embs)


def test_algebraic_integers():
    t = build_tower("K_12")
    y = t.sqrt_generator(t.depth)
    assert is_algebraic_integer(y)
    assert is_algebraic_integer(2 * t.cos_pi(1, 12))
    assert not is_algebraic_integer(t.cos_pi(1, 12))
    assert not is_algebraic_integer(t.rational(fmpq(1, 2)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=8, max_size=8), st.lists(st.integers(-5, 5), min_size=8, max_size=8))
def test_algebraic_integers_closed_under_product(u, v):
    t = build_tower("K_12")
    # integer combinations of products of integral generators are integral
    basis = [t.one(), 2 * t.cos_pi(1, 12), t.sqrt_generator(1), t.sqrt_generator(t.depth)]
    def build(c):
        return sum((ci * basis[i % 4] * (basis[1] if i >= 4 else 1) for i, ci in enumerate(c)), t.zero())
    a, b = build(u), build(v)
    assert is_algebraic_integer(a) and is_algebraic_integer(b)
    assert is_algebraic_integer(a * b)


def test_precision_env(monkeypatch):
    monkeypatch.setenv("LOBELL_PRECISION_BITS", "128")
    assert start_precision() == 128
    assert next(precision_schedule()) == 128
    monkeypatch.delenv("LOBELL_PRECISION_BITS")
    assert start_precision() == 64
