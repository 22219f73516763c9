import mpmath
import pytest

from lobell.algfield import totient
from lobell.diagram import Angle, assemble_gram
from lobell.errors import DomainError
from lobell.exactlin import charpoly
from lobell.family import (
    Role,
    antiprism_ratio,
    delta_n,
    field_degree,
    lobell_faces,
    lobell_quantities,
    pnk_diagram,
    slice_weights,
    systole_candidate,
    tn_diagram,
    trace_field_facts,
)


def _mp(ball):
    return mpmath.mpf(ball.mid().str(50, radius=False))


@pytest.mark.parametrize("n", range(5, 61))
def test_slice_identity(n):
    a, d = slice_weights(n)
    a2 = a * a
    assert d * d == (2 * a2 - 1) * (a2 - 1)


@pytest.mark.parametrize("n", [5, 6, 9, 13])
def test_contraction_diagrams(n):
    assert pnk_diagram(n, 2) == tn_diagram(n)
    d = pnk_diagram(n, 3)
    assert d.edge(1, 6).kind == Angle(6) and d.edge(2, 5).kind == Angle(6)
    assert d.edge(1, 2).kind == Angle(n)
    with pytest.raises(DomainError):
        pnk_diagram(n, 1)


def test_delta_oracle():
    mpmath.mp.dps = 60
    for n in (5, 10, 37, 100):
        want = mpmath.acosh(mpmath.cos(mpmath.pi / n) / mpmath.cos(2 * mpmath.pi / n))
        assert abs(_mp(delta_n(n, 40)) - want) < mpmath.mpf(10) ** -38
        assert abs(_mp(systole_candidate(n, 40)) - 2 * want) < mpmath.mpf(10) ** -38


def test_delta_strictly_decreasing():
    vals = [delta_n(n, 25) for n in range(5, 201)]
    for x, y in zip(vals, vals[1:]):
        assert x > y  # ball comparison: certified only when the balls separate


def test_ratio_monotone():
    vals = [antiprism_ratio(n, 20) for n in range(3, 1001)]
    for x, y in zip(vals, vals[1:]):
        assert x > y
    assert vals[-1] > 1
    assert abs(float(antiprism_ratio(5).mid()) - 1.9626105055051) < 1e-12


@pytest.mark.parametrize("n", range(5, 51))
def test_face_lattice_counts(n):
    fl = lobell_faces(n)
    assert fl.counts() == (2 * n + 2, 6 * n, 4 * n)
    assert fl.euler_characteristic() == 2
    for f in fl.faces:
        deg = len(fl.neighbours(f.index))
        assert deg == (n if f.role is not Role.LATERAL else 5)
    # every vertex lies on three mutually adjacent faces
    for v in fl.vertices:
        assert len(set(v)) == 3
        assert all(frozenset((a, b)) in fl.adjacency for a, b in ((v[0], v[1]), (v[0], v[2]), (v[1], v[2])))


def test_dodecahedron():
    fl = lobell_faces(5)
    assert all(len(fl.neighbours(f.index)) == 5 for f in fl.faces)


def test_field_degree_and_trace_facts():
    assert [field_degree(n) for n in (5, 6, 7, 8, 12, 18)] == [2, 1, 3, 2, 2, 3]
    assert all(field_degree(n) == totient(n) // 2 for n in range(5, 100))
    assert "incommensurable" in trace_field_facts(7, 12).note
    assert "no degree obstruction" in trace_field_facts(5, 8).note


def test_quantities_bundle():
    q = lobell_quantities(8)
    assert q.field_degree == 2
    assert q.systole_candidate.overlaps(2 * q.delta_n)


@pytest.mark.parametrize("bad", [4, 0, -3, 5.0, "7"])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        tn_diagram(bad)
    with pytest.raises(DomainError):
        lobell_faces(bad)


def test_slice_charpoly_rank():
    _, G = assemble_gram(tn_diagram(11))
    c = charpoly(G)
    assert [x.is_zero() for x in c[-3:]] == [False, True, True]
