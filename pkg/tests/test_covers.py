import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lobell.covers import (
    ORIENTABLE_COLORS,
    find_coloring,
    format_coloring,
    independent,
    parse_coloring,
    verify_coloring,
)
from lobell.errors import DomainError, IncompleteColoring, ParseError
from lobell.family import lobell_faces, systole_candidate

from oracles import brute_force_coloring_exists, gl3_images


def test_independence():
    assert independent(1, 2, 4)
    assert independent(1, 2, 7)
    assert not independent(1, 2, 3)
    assert not independent(1, 1, 2)
    assert sum(independent(*c) for c in itertools.permutations(range(1, 8), 3)) == 168


@pytest.mark.parametrize("n", [5, 6, 7, 9, 12, 13])
@pytest.mark.parametrize("teb", [False, True])
def test_search_results_verify(n, teb):
    fl = lobell_faces(n)
    c = find_coloring(fl, teb)
    if c is None:
        return
    rep = verify_coloring(fl, c, 20)
    assert rep.valid and rep.orientable
    assert rep.top_equals_bottom or not teb
    assert (rep.geodesic_candidate_length is not None) == rep.top_equals_bottom


@pytest.mark.parametrize("n", [5, 6])
@pytest.mark.parametrize("teb", [False, True])
def test_search_is_exhaustive(n, teb):
    fl = lobell_faces(n)
    assert (find_coloring(fl, teb) is not None) == brute_force_coloring_exists(fl, teb)


@pytest.mark.parametrize("n", [6, 9, 12, 15])
def test_top_equals_bottom_when_three_divides(n):
    fl = lobell_faces(n)
    rep = verify_coloring(fl, find_coloring(fl, True), 25)
    assert rep.top_equals_bottom
    assert abs(rep.geodesic_candidate_length - systole_candidate(n, 25)) < 1e-20


@pytest.mark.parametrize("n", [5, 7, 8, 10])
def test_no_top_equals_bottom_otherwise(n):
    assert find_coloring(lobell_faces(n), True) is None


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([6, 9]), st.permutations(ORIENTABLE_COLORS))
def test_color_permutation_equivariance(n, perm):
    fl = lobell_faces(n)
    c = find_coloring(fl, True)
    sub = dict(zip(ORIENTABLE_COLORS, perm))
    moved = {f: sub[v] for f, v in c.items()}
    a, b = verify_coloring(fl, c, 10), verify_coloring(fl, moved, 10)
    assert (a.valid, a.orientable, a.top_equals_bottom) == (b.valid, b.orientable, b.top_equals_bottom)


def test_linear_maps_preserve_validity():
    fl = lobell_faces(6)
    c = find_coloring(fl)
    images = list(gl3_images(c))
    assert len(images) == 168
    assert all(verify_coloring(fl, img, 10).valid for img in images)


def test_invalid_coloring_detected():
    fl = lobell_faces(5)
    c = find_coloring(fl)
    c[2] = c[3]  # U_0 and U_1 share an edge
    rep = verify_coloring(fl, c, 10)
    assert not rep.valid
    assert rep.geodesic_candidate_length is None


def test_file_format_round_trip():
    fl = lobell_faces(9)
    c = find_coloring(fl, True)
    text = format_coloring(c)
    assert text.splitlines()[0] == "face 0 100"
    assert parse_coloring(text) == c


def test_incomplete_and_bad_colorings():
    fl = lobell_faces(5)
    c = find_coloring(fl)
    del c[4]
    with pytest.raises(IncompleteColoring):
        verify_coloring(fl, c)
    c[4] = 9
    with pytest.raises(DomainError):
        verify_coloring(fl, c)


@pytest.mark.parametrize("text", ["face 0 000\n", "face x 100\n", "face 0 12\n", "tint 0 100\n", "face 0 100\nface 0 010\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_coloring(text)
