import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lobell.algfield import make_tower, real_embeddings
from lobell.diagram import assemble_gram
from lobell.exactlin import (
    Signature,
    SymMatrix,
    charpoly,
    determinant,
    is_psd,
    signature,
    signature_from_signs,
    signature_under,
)
from lobell.family import tn_diagram

from oracles import numeric_signature, q23_embeddings, random_q23_matrix


def bareiss_det(M: SymMatrix):
    """Fraction-free elimination with row swaps on zero pivots."""
    A = [row[:] for row in M.rows()]
    n = len(A)
    sgn, prev = 1, M.tower.one()
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return M.tower.zero()
            A[k], A[swap] = A[swap], A[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sgn * A[n - 1][n - 1]


def test_signature_against_eigenvalue_oracle():
    rng = random.Random(2024)
    embs = q23_embeddings()
    for trial in range(50):
        dim = rng.randint(1, 6)
        rank = rng.randint(0, dim - 1) if trial % 3 == 0 and dim > 1 else None
        M, table = random_q23_matrix(rng, dim, rank)
        coeffs = charpoly(M)
        for emb, e2, e3 in embs:
            got = signature_under(M, emb, coeffs)
            assert got.as_tuple() == numeric_signature(table, dim, e2, e3), (trial, emb.signs)


def test_negation_swaps_p_and_q():
    rng = random.Random(9)
    for _ in range(10):
        M, _ = random_q23_matrix(rng, rng.randint(2, 5))
        s, t = signature(M), signature(-M)
        assert (s.p, s.q, s.r) == (t.q, t.p, t.r)
        assert s.dim == M.dim


def test_determinant_matches_bareiss():
    rng = random.Random(77)
    for dim in range(1, 7):
        M, _ = random_q23_matrix(rng, dim)
        assert determinant(M) == bareiss_det(M)
    t = make_tower(24)
    rows = [[t.cos_pi(i + j, 12) if i != j else t.rational(2) for j in range(8)] for i in range(8)]
    M = SymMatrix.from_rows(t, rows)
    assert determinant(M) == bareiss_det(M)


def test_signature_from_signs():
    # x^2 (x - 1)(x + 2) = x^4 + x^3 - 2x^2
    assert signature_from_signs([1, 1, -1, 0, 0]) == Signature(1, 1, 2)
    assert signature_from_signs([1]) == Signature(0, 0, 0)
    assert str(Signature(3, 1, 2)) == "(3,1,2)"


def test_identity_and_psd():
    t = make_tower(1, [2])
    I = SymMatrix.identity(t, 4)
    emb = real_embeddings(t).embeddings[0]
    assert is_psd(I, emb) == (True, Signature(4, 0, 0))


def test_from_rows_requires_symmetry():
    t = make_tower(1)
    with pytest.raises(ValueError):
        SymMatrix.from_rows(t, [[1, 2], [3, 4]])


@pytest.mark.parametrize("n", range(5, 41))
def test_slice_gram_rank_four(n):
    _, G = assemble_gram(tn_diagram(n))
    c = charpoly(G)
    assert c[-1].is_zero() and c[-2].is_zero()
    assert not c[-3].is_zero()
    assert signature(G) == Signature(3, 1, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5))
def test_signature_sums_to_dim(seed, dim):
    M, _ = random_q23_matrix(random.Random(seed), dim)
    for emb, _, _ in q23_embeddings():
        assert signature_under(M, emb).dim == dim
