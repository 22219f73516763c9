import glob
import os

import pytest
from flint import fmpq

from lobell.algfield import identity_embedding, real_embeddings, totient
from lobell.diagram import assemble_gram, parse_diagram
from lobell.exactlin import charpoly, signature_under
from lobell.family import tn_diagram
from lobell.groundfield import (
    apply_ground,
    cycle_generators,
    cycle_product,
    cycle_set,
    cyc2_integrality,
    embedding_restricts_to_identity,
    ground_embeddings,
    ground_signature,
    identity_ground_index,
    labelled_generators,
    rescaled_form,
    restriction_index,
    subfield_closure,
)

from oracles import all_cycle_products, simple_cycles

DATA = os.path.join(os.path.dirname(__file__), "data")
CORPUS = sorted(glob.glob(os.path.join(DATA, "*.diagram")))


def _gram(path):
    return assemble_gram(parse_diagram(open(path).read()))


@pytest.mark.parametrize("path", CORPUS, ids=os.path.basename)
def test_fundamental_cycle_count(path):
    _, G = _gram(path)
    cs = cycle_set(G)
    assert len(cs.fundamental_cycles) == len(cs.edge_pairs) - G.dim + cs.components


@pytest.mark.parametrize("path", CORPUS, ids=os.path.basename)
def test_closure_matches_brute_force(path):
    t, G = _gram(path)
    k_gen = subfield_closure(cycle_generators(G), t)
    brute = all_cycle_products(G)
    k_all = subfield_closure(brute, t)
    assert k_gen.degree == k_all.degree
    assert all(k_gen.contains(x) for x in brute)
    assert all(k_all.contains(x) for x in cycle_generators(G))


@pytest.mark.parametrize("path", CORPUS, ids=os.path.basename)
def test_cycle_product_orientation_free(path):
    _, G = _gram(path)
    for cyc in simple_cycles(G):
        assert cycle_product(G, cyc) == cycle_product(G, cyc[::-1])


def test_closure_contains_one_and_is_closed():
    _, G = assemble_gram(tn_diagram(9))
    k = subfield_closure(cycle_generators(G))
    assert k.contains(G.tower.one())
    for a in k.basis:
        for b in k.basis:
            assert k.contains(a * b)


@pytest.mark.parametrize("n", range(5, 19))
def test_slice_ground_field_degree(n):
    t, G = assemble_gram(tn_diagram(n))
    k = subfield_closure(cycle_generators(G), t)
    assert k.degree == totient(n) // 2
    assert k.contains(t.two_cos_multiple(t.conductor // n))


def test_generator_labels():
    _, G = assemble_gram(tn_diagram(12))
    labels = [l for l, _ in labelled_generators(G)]
    assert labels[:2] == ["edge 1-2", "edge 1-6"]
    assert labels[-1] == "cycle 1-2-5-4-3-6"


@pytest.mark.parametrize("n", [5, 7, 10, 12, 18])
def test_restriction_routes_agree(n):
    # the interval route and the exact-fixing route must give the same answer
    t, G = assemble_gram(tn_diagram(n))
    k = subfield_closure(cycle_generators(G), t)
    ident = identity_ground_index(k)
    for emb in real_embeddings(t).embeddings:
        assert (restriction_index(emb, k) == ident) == embedding_restricts_to_identity(emb, k)
    assert restriction_index(identity_embedding(t), k) == ident


@pytest.mark.parametrize("path", CORPUS, ids=os.path.basename)
def test_rescaled_form_lives_in_ground_field(path):
    t, G = _gram(path)
    k = subfield_closure(cycle_generators(G), t)
    R = rescaled_form(G)
    for i in range(G.dim):
        for j in range(i, G.dim):
            assert k.contains(R[i, j])


@pytest.mark.parametrize("n", [5, 8, 12])
def test_rescaled_signature_matches_tower_signature(n):
    # on embeddings of K, G^sigma and the rescaled form are congruent
    t, G = assemble_gram(tn_diagram(n))
    k = subfield_closure(cycle_generators(G), t)
    taus = {tau.index: tau for tau in ground_embeddings(k)}
    gc, rc = charpoly(G), charpoly(rescaled_form(G))
    for emb in real_embeddings(t).embeddings:
        tau = taus[restriction_index(emb, k)]
        assert signature_under(G, emb, gc) == ground_signature(k, tau, rc)


def test_apply_ground_on_rationals():
    t, G = assemble_gram(tn_diagram(7))
    k = subfield_closure(cycle_generators(G), t)
    for tau in ground_embeddings(k):
        v = apply_ground(k, tau, t.rational(fmpq(3, 5)), 80)
        assert abs(float(v.mid()) - 0.6) < 1e-15


def test_integrality_witnesses_are_generators():
    _, G = assemble_gram(tn_diagram(12))
    ok, bad = cyc2_integrality(G)
    assert not ok
    labels = dict(labelled_generators(G.scaled(2)))
    for w in bad:
        assert labels[w.cycle] == w.value
    # a product of passing generators can only fail if some generator fails
    _, G6 = assemble_gram(tn_diagram(6))
    assert cyc2_integrality(G6)[0]
