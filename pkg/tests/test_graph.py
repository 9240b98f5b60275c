import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
import strategies as S
from spancospan import graph as gc
from spancospan.errors import (
    CodomainMismatch,
    DomainMismatch,
    IndexOutOfRange,
    NotACocone,
    SizeBound,
    StructureNotPreserved,
)
from spancospan.graph import FinGraph, GraphHom, compose

EDGE = FinGraph(2, [(0, 1)])
LOOP = FinGraph(1, [(0, 0)])


def cycle(n, perm=None):
    perm = perm or list(range(n))
    return FinGraph(n, [(perm[i], perm[(i + 1) % n]) for i in range(n)])


# ---------------------------------------------------------------- basics


@pytest.mark.parametrize("n", [0, 1, 3])
def test_discrete(n):
    g = gc.discrete(n)
    assert g.node_count == n and g.edges == ()


def test_bad_edge_index_rejected():
    with pytest.raises(IndexOutOfRange):
        FinGraph(1, [(0, 1)])


def test_validate_hom_identity_ok():
    gc.validate_hom(gc.identity(cycle(3)))


def test_validate_hom_mismatched_endpoints():
    g = FinGraph(2, [(0, 1), (1, 0)])
    with pytest.raises(StructureNotPreserved, match="edge 0"):
        gc.validate_hom(GraphHom(g, g, [0, 1], [1, 0]))


def test_validate_hom_wrong_length():
    with pytest.raises(IndexOutOfRange):
        gc.validate_hom(GraphHom(EDGE, EDGE, [0], [0]))


def test_compose_identity_neutral():
    f = GraphHom(EDGE, LOOP, [0, 0], [0])
    assert compose(gc.identity(LOOP), f).same_maps(f)
    assert compose(f, gc.identity(EDGE)).same_maps(f)


def test_compose_collapsing_maps_pointwise():
    two = gc.discrete(2)
    f = GraphHom(two, two, [1, 1])
    g = GraphHom(two, two, [0, 0])
    h = compose(g, f)
    assert h.node_map == tuple(g.node_map[f.node_map[x]] for x in range(2)) == (0, 0)


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatch):
        compose(gc.identity(EDGE), gc.identity(LOOP))


def test_is_mono_cases():
    assert gc.is_mono(gc.identity(cycle(3)))
    assert not gc.is_mono(GraphHom(gc.discrete(2), gc.discrete(1), [0, 0]))
    # interface glue into the rule's left side: two nodes into the edge a -> c
    assert gc.is_mono(GraphHom(gc.discrete(2), EDGE, [0, 1]))


# ---------------------------------------------------------------- colimits


def test_coproduct_with_empty():
    w = gc.coproduct(gc.empty(), cycle(3))
    assert gc.is_iso(w.legs[1])


def test_coproduct_discrete():
    assert gc.coproduct(gc.discrete(2), gc.discrete(3)).object == gc.discrete(5)


def test_coproduct_two_edges():
    w = gc.coproduct(EDGE, EDGE)
    assert w.object == FinGraph(4, [(0, 1), (2, 3)])
    assert all(gc.is_mono(leg) for leg in w.legs)


def test_coequalizer_equal_maps_is_iso():
    f = GraphHom(gc.discrete(1), EDGE, [0])
    assert gc.is_iso(gc.coequalizer(f, f).legs[0])


def test_coequalizer_two_points():
    one, two = gc.discrete(1), gc.discrete(2)
    w = gc.coequalizer(GraphHom(one, two, [0]), GraphHom(one, two, [1]))
    assert w.object == gc.discrete(1)


def test_coequalizer_edge_endpoints_gives_loop():
    one = gc.discrete(1)
    f, g = GraphHom(one, EDGE, [0]), GraphHom(one, EDGE, [1])
    w = gc.coequalizer(f, g)
    assert w.object == LOOP
    # oracle: identifying the endpoints leaves one class
    classes = oracles._classes([0, 1], [(0, 1)])
    assert len(classes) == w.object.node_count


def test_coequalizer_smallest_representative_order():
    one, three = gc.discrete(1), gc.discrete(3)
    w = gc.coequalizer(GraphHom(one, three, [2]), GraphHom(one, three, [1]))
    assert w.legs[0].node_map == (0, 1, 1)


def test_pushout_empty_apex_is_coproduct():
    w = gc.pushout(gc.initial_map(EDGE), gc.initial_map(LOOP))
    assert w.object == gc.coproduct(EDGE, LOOP).object


def test_pushout_glue_two_edges_at_endpoint():
    one = gc.discrete(1)
    w = gc.pushout(GraphHom(one, EDGE, [1]), GraphHom(one, EDGE, [0]))
    assert gc.are_isomorphic(w.object, FinGraph(3, [(0, 1), (1, 2)]))
    assert oracles.matches_pushout(w.diagram[0], w.diagram[1], *w.legs)


def test_pushout_along_identity():
    f = GraphHom(gc.discrete(1), EDGE, [0])
    w = gc.pushout(gc.identity(f.dom), f)
    assert gc.is_iso(w.legs[1])


def test_pushout_domain_mismatch():
    with pytest.raises(DomainMismatch):
        gc.pushout(gc.identity(EDGE), gc.identity(LOOP))


def test_mediate_pushout_own_legs_is_identity():
    one = gc.discrete(1)
    w = gc.pushout(GraphHom(one, EDGE, [1]), GraphHom(one, EDGE, [0]))
    assert gc.mediate_pushout(w, *w.legs).same_maps(gc.identity(w.object))


def test_mediate_pushout_into_terminal():
    one = gc.discrete(1)
    w = gc.pushout(GraphHom(one, EDGE, [1]), GraphHom(one, EDGE, [0]))
    u = gc.mediate_pushout(w, gc.to_terminal(EDGE), gc.to_terminal(EDGE))
    assert u.same_maps(gc.to_terminal(w.object))


def test_mediate_pushout_rejects_non_cocone():
    one = gc.discrete(1)
    w = gc.pushout(GraphHom(one, EDGE, [1]), GraphHom(one, EDGE, [0]))
    # identities send the glued point to different nodes
    with pytest.raises(NotACocone):
        gc.mediate_pushout(w, gc.identity(EDGE), gc.identity(EDGE))


# ---------------------------------------------------------------- limits


def test_pullback_of_coproduct_injections_is_empty():
    w = gc.coproduct(EDGE, LOOP)
    p = gc.pullback(*w.legs)
    assert p.object == gc.empty()


def test_product_of_discrete():
    assert gc.product(gc.discrete(2), gc.discrete(3)).object.node_count == 6


def test_pullback_codomain_mismatch():
    with pytest.raises(CodomainMismatch):
        gc.pullback(gc.identity(EDGE), gc.identity(LOOP))


@given(S.cospans_of_homs())
def test_pullback_of_mono_is_mono(pair):
    f, g = pair
    m = gc.image(f)
    w = gc.pullback(m, g)
    assert gc.is_mono(w.legs[1])


# ---------------------------------------------------------------- search


def test_iso_search_self_is_identity():
    g = cycle(3)
    assert gc.iso_search(g, g).same_maps(gc.identity(g))


def test_path_not_iso_triangle():
    assert gc.iso_search(FinGraph(3, [(0, 1), (1, 2)]), cycle(3)) is None


def test_permuted_three_cycles():
    g, h = cycle(3), cycle(3, [2, 0, 1])
    iso = gc.iso_search(g, h)
    assert iso is not None
    inv = gc.inverse(iso)
    assert compose(inv, iso).same_maps(gc.identity(g))
    assert compose(iso, inv).same_maps(gc.identity(h))


def test_constrained_iso_empty_constraints_matches_plain():
    g = FinGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert gc.constrained_iso_search(g, g).same_maps(gc.iso_search(g, g))


def test_constrained_iso_degree_clash():
    g = FinGraph(3, [(0, 1), (1, 0)])
    assert gc.constrained_iso_search(g, g, node_pairs=[(2, 0)]) is None


def test_size_bound():
    big = gc.discrete(gc.MAX_SEARCH_NODES + 1)
    with pytest.raises(SizeBound):
        gc.iso_search(big, big)


def test_find_all_homs_edge_into_loop():
    assert len(list(gc.enumerate_homs(EDGE, LOOP))) == 1
    assert list(gc.enumerate_homs(EDGE, LOOP, monic_only=True)) == []


# ---------------------------------------------------------------- properties


@given(S.spans())
def test_pushout_matches_oracle(span):
    f, g = span
    w = gc.pushout(f, g)
    assert oracles.matches_pushout(f, g, *w.legs)


@given(S.cospans_of_homs())
def test_pullback_matches_oracle(pair):
    f, g = pair
    w = gc.pullback(f, g)
    assert oracles.matches_pullback(f, g, *w.legs)


@given(S.graphs(4, 4), S.graphs(4, 4))
def test_enumerate_homs_matches_brute_force(g, h):
    ours = [(x.node_map, x.edge_map) for x in gc.enumerate_homs(g, h)]
    brute = [(x.node_map, x.edge_map) for x in oracles.all_homs(g, h)]
    assert sorted(ours) == sorted(brute)
    assert len(set(ours)) == len(ours)
    assert ours == sorted(ours)


@given(S.graphs(5, 5), S.graphs(5, 5))
def test_iso_search_matches_brute_force(g, h):
    iso = gc.iso_search(g, h)
    assert (iso is not None) == oracles.brute_iso(g, h)
    if iso is not None:
        gc.validate_hom(iso)
        assert gc.is_iso(iso)


@given(S.graphs(4, 4), st.randoms(use_true_random=False))
def test_iso_search_finds_relabelling(g, rnd):
    perm = list(range(g.node_count))
    rnd.shuffle(perm)
    edges = [(perm[s], perm[t]) for s, t in g.edges]
    rnd.shuffle(edges)
    h = FinGraph(g.node_count, edges)
    iso = gc.iso_search(g, h)
    assert iso is not None
    back = gc.iso_search(h, g)
    assert back is not None
    assert gc.is_iso(compose(back, iso))


@given(S.spans(3))
def test_pushout_universal_property_exhaustive(span):
    f, g = span
    w = gc.pushout(f, g)
    target = FinGraph(2, [(0, 0), (0, 1), (1, 1), (1, 0)])
    for b in oracles.all_homs(f.cod, target):
        for c in oracles.all_homs(g.cod, target):
            if not compose(b, f).same_maps(compose(c, g)):
                continue
            mediators = [
                u for u in oracles.all_homs(w.object, target)
                if compose(u, w.legs[0]).same_maps(b) and compose(u, w.legs[1]).same_maps(c)
            ]
            assert len(mediators) == 1
            assert mediators[0].same_maps(gc.mediate_pushout(w, b, c))


@given(S.cospans_of_homs(3))
def test_pullback_universal_property_exhaustive(pair):
    f, g = pair
    w = gc.pullback(f, g)
    probe = FinGraph(2, [(0, 1)])
    for p in oracles.all_homs(probe, f.dom):
        for q in oracles.all_homs(probe, g.dom):
            if not compose(f, p).same_maps(compose(g, q)):
                continue
            mediators = [
                u for u in oracles.all_homs(probe, w.object)
                if compose(w.legs[0], u).same_maps(p) and compose(w.legs[1], u).same_maps(q)
            ]
            assert len(mediators) == 1
            assert mediators[0].same_maps(gc.mediate_pullback(w, p, q))


@given(S.monos(4), st.data())
def test_mono_stable_under_pushout(m, data):
    f = data.draw(S.homs_from(m.dom))
    w = gc.pushout(m, f)
    assert gc.is_mono(w.legs[1])
    assert gc.is_pullback_square(m, f, w.legs[0], w.legs[1])


@given(S.graphs(3, 3), S.graphs(3, 3))
def test_coproducts_disjoint(g, h):
    p = gc.pullback(*gc.coproduct(g, h).legs).object
    assert p.node_count == 0 and p.edge_count == 0


@given(S.graphs(4, 4), st.data())
def test_regular_epi_stable_under_pullback(g, data):
    n = g.node_count
    pairs = data.draw(st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=2)) if n else []
    y = gc.discrete(len(pairs))
    q = gc.coequalizer(GraphHom(y, g, [a for a, _ in pairs]), GraphHom(y, g, [b for _, b in pairs])).legs[0]
    along = data.draw(S.homs_into(q.cod, 3)) if q.cod.node_count else gc.identity(q.cod)
    assert gc.is_epi(gc.pullback(q, along).legs[1])


@given(S.graphs(4, 4), S.graphs(4, 4), S.graphs(4, 4))
def test_iso_is_an_equivalence(a, b, c):
    assert gc.are_isomorphic(a, a)
    ab, bc = gc.iso_search(a, b), gc.iso_search(b, c)
    if ab is not None:
        assert gc.is_iso(gc.iso_search(b, a))
    if ab is not None and bc is not None:
        assert gc.is_iso(compose(bc, ab))


def test_regression_all_small_homs_valid():
    for g, h in itertools.product([EDGE, LOOP, cycle(2)], repeat=2):
        for x in gc.enumerate_homs(g, h):
            assert gc.is_valid_hom(x)
