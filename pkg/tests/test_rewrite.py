import pytest
from hypothesis import given

import oracles
import strategies as S
import worked
from spancospan import cospan as ca
from spancospan import gen
from spancospan import graph as gc
from spancospan import rewrite as rw
from spancospan.errors import FootMismatch, InterfaceIncompatible, NotMono
from spancospan.graph import FinGraph, GraphHom, compose
from spancospan.rewrite import Grammar, InterfaceProduction, Production

EDGE = FinGraph(2, [(0, 1)])
PATH2 = FinGraph(3, [(0, 1), (1, 2)])


@pytest.fixture(scope="module")
def ws():
    return worked.load()


def empty_interface(p: Production) -> InterfaceProduction:
    e = gc.empty()
    return InterfaceProduction(p, e, e, gc.initial_map(p.glue), gc.initial_map(p.glue))


def identity_production(g: FinGraph) -> Production:
    return Production(g, g, g, gc.identity(g), gc.identity(g))


# ---------------------------------------------------------------- productions and matches


def test_production_rejects_non_monic():
    two, one = gc.discrete(2), gc.discrete(1)
    with pytest.raises(NotMono):
        Production(one, two, two, GraphHom(two, one, [0, 0]), gc.identity(two))


def test_matches_single_node_into_discrete():
    assert len(rw.find_matches(gc.discrete(1), gc.discrete(3))) == 3


def test_matches_edge_into_loop():
    loop = FinGraph(1, [(0, 0)])
    (m,) = rw.find_matches(EDGE, loop)
    assert m.node_map == (0, 0)
    assert rw.find_matches(EDGE, loop, monic_only=True) == []


def test_example_match_found(ws):
    p, m0 = ws.get("p"), ws.get("m0")
    assert any(m.same_maps(m0) for m in rw.find_matches(p.base.left, ws.get("G")))


# ---------------------------------------------------------------- complements


def test_complement_of_identity_leg(ws):
    m = ws.get("m0")
    comp = rw.pushout_complement(gc.identity(m.dom), m)
    assert comp.context == m.cod
    assert comp.e_to_g.same_maps(gc.identity(m.cod))
    assert comp.k_to_e.same_maps(m)


def test_complement_worked_example(ws):
    p, m0 = ws.get("p"), ws.get("m0")
    comp = rw.pushout_complement(p.base.l, m0)
    assert comp.context == ws.get("E")
    assert comp.e_to_g.edge_map == (0, 1)


def test_complement_dangling_violation():
    one = gc.discrete(1)
    l = gc.initial_map(one)
    m = GraphHom(one, EDGE, [0])
    assert rw.pushout_complement(l, m) is None
    assert any("dangle" in v for v in rw.gluing_violations(l, m))
    assert list(oracles.complement_candidates(l, m)) == []


def test_complement_identification_violation():
    two = gc.discrete(2)
    k = gc.discrete(1)
    l = GraphHom(k, two, [0])
    m = GraphHom(two, gc.discrete(1), [0, 0])
    assert rw.pushout_complement(l, m) is None
    assert list(oracles.complement_candidates(l, m)) == []


def test_complement_requires_monic():
    two, one = gc.discrete(2), gc.discrete(1)
    with pytest.raises(NotMono):
        rw.pushout_complement(GraphHom(two, one, [0, 0]), gc.identity(one))


@given(S.seeds)
def test_complement_unique_and_gluing_condition_exact(seed):
    rng = gen.case_rng(seed, 0)
    L = gen.random_graph(rng, 3, max_edges=3)
    l = gen.random_subgraph(rng, L)
    G = gen.random_graph(rng, 4, max_edges=5)
    m = gen.random_hom(rng, L, G)
    if m is None:
        return
    comp = rw.pushout_complement(l, m)
    cands = list(oracles.complement_candidates(l, m))
    if comp is None:
        assert cands == []
        return
    image = (set(comp.e_to_g.node_map), set(comp.e_to_g.edge_map))
    assert cands == [image]


# ---------------------------------------------------------------- derivations


def test_identity_production_derivation(ws):
    g = ws.get("G")
    d = rw.derive(identity_production(EDGE), ws.get("m0"))
    assert gc.are_isomorphic(d.result, g)


def test_worked_example_derivation(ws):
    d = rw.derive(ws.get("p").base, ws.get("m0"))
    assert gc.are_isomorphic(d.result, ws.get("D"))
    assert worked.has_edge_removed_and_loop_added(d.result)


def test_edge_deletion_on_path_two_results():
    p = empty_interface(Production(EDGE, gc.discrete(2), gc.discrete(2), GraphHom(gc.discrete(2), EDGE, [0, 1]), gc.identity(gc.discrete(2))))
    matches = rw.find_matches(EDGE, PATH2)
    assert len(matches) == 2
    results = [rw.derive(p.base, m) for m in matches]
    survivors = {frozenset(d.e_to_g.edge_map) for d in results}
    assert survivors == {frozenset({0}), frozenset({1})}


@given(S.seeds)
def test_derivation_legs_monic_and_squares_pullbacks(seed):
    rng = gen.case_rng(seed, 1)
    L = gen.random_graph(rng, 3, max_edges=3)
    l = gen.random_subgraph(rng, L)
    r = gen.grow(rng, l.dom, 4)
    G = gen.random_graph(rng, 4, max_edges=5)
    m = gen.random_hom(rng, L, G)
    if m is None:
        return
    d = rw.derive(Production(L, l.dom, r.cod, l, r), m)
    if d is None:
        return
    assert gc.is_mono(d.e_to_g) and gc.is_mono(d.e_to_d)
    assert gc.is_pullback_square(l, d.k_to_e, m, d.e_to_g)
    assert gc.is_pullback_square(r, d.k_to_e, d.r_to_d, d.e_to_d)
    assert oracles.matches_pushout(l, d.k_to_e, m, d.e_to_g)
    assert oracles.matches_pushout(r, d.k_to_e, d.r_to_d, d.e_to_d)


# ---------------------------------------------------------------- interfaces


def test_io_identity_production(ws):
    g = ws.get("G_open")
    base = identity_production(g.apex)
    p = InterfaceProduction(base, g.left_foot, g.right_foot, g.in_leg, g.out_leg)
    step = rw.io_derive(p, gc.identity(g.apex), g)
    assert ca.open_graph_iso(step.target, g) is not None


def test_io_derive_worked_example(ws):
    step = rw.io_derive(ws.get("p"), ws.get("m0"), ws.get("G_open"))
    assert ca.open_graph_iso(step.target, ws.get("D_open")) is not None


def test_io_feet_preserved_outside_rewrite():
    # path a -> b -> c with input a, output c; delete b -> c keeping b, c
    g = ca.open_graph(PATH2, [0], [2])
    k = gc.discrete(2)
    one = gc.discrete(1)
    base = Production(EDGE, k, k, GraphHom(k, EDGE, [0, 1]), gc.identity(k))
    p = InterfaceProduction(base, one, one, GraphHom(one, k, [0]), GraphHom(one, k, [1]))
    cod_out = ca.open_graph(PATH2, [1], [2])
    m = GraphHom(EDGE, PATH2, [1, 2], [1])
    with pytest.raises(InterfaceIncompatible):
        rw.io_derive(p, m, g)
    step = rw.io_derive(p, m, cod_out)
    d = step.derivation
    src_in = gc.factor_through_mono(cod_out.in_leg, d.e_to_g)
    assert step.target.in_leg.same_maps(compose(d.e_to_d, src_in))
    assert step.target.apex.edge_count == 1


def test_io_derive_foot_mismatch(ws):
    g = ca.open_graph(ws.get("G"), [0, 1], [2])
    with pytest.raises(FootMismatch):
        rw.io_derive(ws.get("p"), ws.get("m0"), g)


# ---------------------------------------------------------------- dictionary


def test_worked_example_twocell(ws):
    step = rw.io_derive(ws.get("p"), ws.get("m0"), ws.get("G_open"))
    cell = rw.derivation_to_twocell(step)
    assert worked.matches_expected(cell, ws.get("expected_cell"))


def test_identity_derivation_twocell(ws):
    g = ws.get("G_open")
    base = identity_production(g.apex)
    p = InterfaceProduction(base, g.left_foot, g.right_foot, g.in_leg, g.out_leg)
    cell = rw.derivation_to_twocell(rw.io_derive(p, gc.identity(g.apex), g))
    assert gc.is_iso(cell.up_leg) and gc.is_iso(cell.down_leg)


def test_twocell_to_derivation_round_trip(ws):
    step = rw.io_derive(ws.get("p"), ws.get("m0"), ws.get("G_open"))
    cell = rw.derivation_to_twocell(step)
    back = rw.twocell_to_derivation(cell, ws.get("p"))
    assert back is not None
    assert rw.same_derivation(back.derivation, step.derivation)
    assert rw.twocell_to_derivation(cell) is not None


def test_twocell_to_derivation_empty_middle():
    one = gc.discrete(1)
    s = ca.open_graph(one, [0], [])
    e = gc.empty()
    bad = ca.unsafe_twocell(s, s, e, gc.initial_map(one), gc.initial_map(one), GraphHom(one, e, [0]), gc.initial_map(e))
    assert rw.twocell_to_derivation(bad) is None


@given(S.seeds)
def test_twocell_to_derivation_random_cells(seed):
    rng = gen.case_rng(seed, 2)
    x, y = gen.random_discrete(rng, 2), gen.random_discrete(rng, 2)
    s = gen.random_cospan(rng, x, y, 4)
    cell, _ = gen.random_cell_pair(rng, s, 4)
    d = rw.twocell_to_derivation(cell)
    assert d is not None
    der = d.derivation
    assert oracles.matches_pushout(der.production.l, der.k_to_e, der.match, der.e_to_g)
    assert oracles.matches_pushout(der.production.r, der.k_to_e, der.r_to_d, der.e_to_d)


def test_chain_composition_worked_example(ws):
    one = gc.discrete(1)
    # second rule: drop the loop on c
    k = gc.discrete(2)
    loop_side = FinGraph(2, [(1, 1)])
    q = InterfaceProduction(
        Production(loop_side, k, k, GraphHom(k, loop_side, [0, 1]), gc.identity(k)),
        one, one, GraphHom(one, k, [0]), GraphHom(one, k, [1]),
    )
    steps = rw.derive_chain(ws.get("G_open"), [ws.get("p"), q])
    chain = rw.chain_twocell(steps)
    e = ws.get("E")
    final = ca.open_graph(e, [0], [2])
    expected = ca.TwoCell(
        ws.get("G_open"), final, e,
        GraphHom(e, ws.get("G"), [0, 1, 2], [0, 1]), gc.identity(e),
        GraphHom(one, e, [0]), GraphHom(one, e, [2]),
    )
    assert worked.matches_expected(chain, expected)


def test_derive_chain_stuck(ws):
    with pytest.raises(LookupError):
        rw.derive_chain(ws.get("G_open"), [ws.get("p"), ws.get("p")])


# ---------------------------------------------------------------- languages


def test_language_without_productions(ws):
    g = ws.get("G_open")
    assert len(rw.language(Grammar((g, g), ()), 3, 100)) == 1


def test_language_depth_zero(ws):
    assert rw.language(ws.get("grammar"), 0, 100) == [ws.get("G_open")]


def test_language_edge_deletion_path():
    k = gc.discrete(2)
    p = empty_interface(Production(EDGE, k, k, GraphHom(k, EDGE, [0, 1]), gc.identity(k)))
    start = ca.open_graph(PATH2, [], [])
    members = rw.language(Grammar((start,), (p,)), 2, 100)
    # brute force: every edge subset of the path, up to iso
    classes = []
    for mask in range(4):
        g = FinGraph(3, [e for i, e in enumerate(PATH2.edges) if mask >> i & 1])
        if not any(oracles.brute_iso(g, h) for h in classes):
            classes.append(g)
    assert len(members) == len(classes) == 3
    for g in classes:
        assert sum(oracles.brute_iso(g, h.apex) for h in members) == 1


def test_language_size_cap(ws):
    assert len(rw.language(ws.get("grammar"), 2, 100)) == 2
    assert len(rw.language(ws.get("grammar"), 2, 5)) == 1
