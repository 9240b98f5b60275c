"""Seeded random instances: graphs, homs, open graphs, 2-cells, cubes.

Generators grow graphs outward from their feet (quotient the feet, then add
nodes and edges) so that gluing actually happens. Every function takes a
``random.Random`` and is deterministic given its state.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import graph as gc
from .cospan import OpenGraph, TwoCell, unsafe_twocell
from .graph import FinGraph, GraphHom, compose


def case_rng(seed: int, index: int) -> random.Random:
    """Independent stream for case ``index`` of a seeded run."""
    return random.Random(f"{seed}:{index}")


def random_graph(rng: random.Random, max_nodes: int, max_edges: Optional[int] = None, min_nodes: int = 0) -> FinGraph:
    n = rng.randint(min(min_nodes, max_nodes), max_nodes)
    if max_edges is None:
        max_edges = n + 1
    m = rng.randint(0, max_edges) if n else 0
    return FinGraph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(m)])


def random_discrete(rng: random.Random, max_nodes: int) -> FinGraph:
    return gc.discrete(rng.randint(0, max_nodes))


def random_hom(rng: random.Random, g: FinGraph, h: FinGraph, tries: int = 50) -> Optional[GraphHom]:
    """A random hom ``g -> h``, or ``None`` if random node maps keep failing."""
    if g.node_count and not h.node_count:
        return None
    buckets = gc._edge_buckets(h)
    for _ in range(tries):
        nodes = [rng.randrange(h.node_count) for _ in range(g.node_count)]
        edges = []
        for s, t in g.edges:
            cands = buckets.get((nodes[s], nodes[t]))
            if not cands:
                break
            edges.append(rng.choice(cands))
        else:
            return GraphHom(g, h, nodes, edges)
    return None


def random_map_into(rng: random.Random, h: FinGraph, max_nodes: int, max_edges: int = 4) -> GraphHom:
    """A hom from a fresh graph into ``h``; its edges are lifts of edges of ``h``."""
    if not h.node_count:
        return gc.initial_map(h)
    n = rng.randint(0, max_nodes)
    nodes = [rng.randrange(h.node_count) for _ in range(n)]
    edges, edge_map = [], []
    for _ in range(rng.randint(0, max_edges) if h.edge_count and n else 0):
        f = rng.randrange(h.edge_count)
        s, t = h.edges[f]
        srcs = [x for x in range(n) if nodes[x] == s]
        tgts = [x for x in range(n) if nodes[x] == t]
        if srcs and tgts:
            edges.append((rng.choice(srcs), rng.choice(tgts)))
            edge_map.append(f)
    return GraphHom(FinGraph(n, edges), h, nodes, edge_map)


def random_quotient(rng: random.Random, g: FinGraph, merges: int) -> GraphHom:
    """Surjection merging up to ``merges`` random pairs of nodes."""
    if g.node_count < 2 or merges <= 0:
        return gc.identity(g)
    pairs = [(rng.randrange(g.node_count), rng.randrange(g.node_count)) for _ in range(merges)]
    y = gc.discrete(len(pairs))
    w = gc.coequalizer(GraphHom(y, g, [a for a, _ in pairs]), GraphHom(y, g, [b for _, b in pairs]))
    return w.legs[0]


def shrink_to(rng: random.Random, g: FinGraph, max_nodes: int) -> GraphHom:
    """Surjection onto a quotient with at most ``max_nodes`` nodes (needs ``max_nodes >= 1`` if ``g`` is nonempty)."""
    q = gc.identity(g)
    while q.cod.node_count > max_nodes:
        q = compose(random_quotient(rng, q.cod, 1), q)
    return q


def grow(rng: random.Random, g: FinGraph, max_nodes: int, max_new_edges: int = 2) -> GraphHom:
    """Monic inclusion of ``g`` into a graph with extra nodes and edges."""
    n = g.node_count + rng.randint(0, max(0, max_nodes - g.node_count))
    edges = list(g.edges)
    if n:
        for _ in range(rng.randint(0, max_new_edges)):
            edges.append((rng.randrange(n), rng.randrange(n)))
    h = FinGraph(n, edges)
    return GraphHom(g, h, range(g.node_count), range(g.edge_count))


def random_subgraph(rng: random.Random, g: FinGraph, nodes=(), edges=(), keep: float = 0.5) -> GraphHom:
    """Inclusion of a random subgraph containing the given nodes and edges."""
    req_nodes = set(nodes)
    req_edges = set(edges)
    for e in req_edges:
        req_nodes.update(g.edges[e])
    kept = {x for x in range(g.node_count) if x in req_nodes or rng.random() < keep}
    kept_edges = [
        e
        for e, (s, t) in enumerate(g.edges)
        if e in req_edges or (s in kept and t in kept and rng.random() < keep)
    ]
    return gc.subgraph(g, kept, kept_edges)


def random_cospan(rng: random.Random, x: FinGraph, y: FinGraph, max_nodes: int) -> OpenGraph:
    """Open graph ``x -> apex <- y`` with apex at most ``max_nodes`` nodes."""
    cop = gc.coproduct(x, y)
    q = random_quotient(rng, cop.object, rng.randint(0, 2))
    q = compose(shrink_to(rng, q.cod, max_nodes), q)
    j = grow(rng, q.cod, max_nodes)
    into = compose(j, q)
    return OpenGraph(x, y, j.cod, compose(into, cop.legs[0]), compose(into, cop.legs[1]))


def _sub_with_feet(rng, s: OpenGraph, nonmonic: bool = False):
    incl = random_subgraph(
        rng, s.apex,
        s.in_leg.node_map + s.out_leg.node_map,
        s.in_leg.edge_map + s.out_leg.edge_map,
    )
    mid_in, mid_out = gc.factor_through_mono(s.in_leg, incl), gc.factor_through_mono(s.out_leg, incl)
    if nonmonic and s.apex.node_count and rng.random() < 0.7:
        # extra nodes doubling up on existing ones make the leg non-injective
        extra = gc.discrete(rng.randint(1, 2))
        cop = gc.coproduct(incl.dom, extra)
        doubled = GraphHom(extra, s.apex, [rng.randrange(s.apex.node_count) for _ in range(extra.node_count)])
        return gc.copair(cop, incl, doubled), compose(cop.legs[0], mid_in), compose(cop.legs[0], mid_out)
    return incl, mid_in, mid_out


def _extension(rng, middle: FinGraph, max_nodes: int, nonmonic: bool) -> GraphHom:
    if nonmonic and rng.random() < 0.7:
        q = random_quotient(rng, middle, rng.randint(1, 2))
    else:
        q = gc.identity(middle)
    return compose(grow(rng, q.cod, max_nodes), q)


def random_cell_pair(rng: random.Random, s: OpenGraph, max_nodes: int, nonmonic: bool = False) -> tuple[TwoCell, TwoCell]:
    """Cells ``L => s`` and ``s => L'`` with middles inside ``s``."""
    make = unsafe_twocell if nonmonic else TwoCell
    incl1, in1, out1 = _sub_with_feet(rng, s, nonmonic)
    j1 = _extension(rng, incl1.dom, max_nodes, nonmonic)
    top = OpenGraph(s.left_foot, s.right_foot, j1.cod, compose(j1, in1), compose(j1, out1))
    first = make(top, s, incl1.dom, j1, incl1, in1, out1)
    incl2, in2, out2 = _sub_with_feet(rng, s, nonmonic)
    j2 = _extension(rng, incl2.dom, max_nodes, nonmonic)
    bottom = OpenGraph(s.left_foot, s.right_foot, j2.cod, compose(j2, in2), compose(j2, out2))
    second = make(s, bottom, incl2.dom, incl2, j2, in2, out2)
    return first, second


def random_foot(rng: random.Random, max_size: int) -> FinGraph:
    return random_graph(rng, min(2, max_size // 2), max_edges=1)


def random_quadruple(rng: random.Random, max_size: int, nonmonic: bool = False) -> tuple[TwoCell, TwoCell, TwoCell, TwoCell]:
    """Four cells arranged for interchange: ``ss; s2`` over ``X -> Y``, ``ts; t2`` over ``Y -> Z``."""
    x, y, z = (random_foot(rng, max_size) for _ in range(3))
    s = random_cospan(rng, x, y, max_size)
    t = random_cospan(rng, y, z, max_size)
    ss, s2 = random_cell_pair(rng, s, max_size, nonmonic)
    ts, t2 = random_cell_pair(rng, t, max_size, nonmonic)
    return ss, s2, ts, t2


def random_chain(rng: random.Random, length: int, max_size: int) -> list[OpenGraph]:
    """``length`` composable open graphs."""
    feet = [random_foot(rng, max_size) for _ in range(length + 1)]
    return [random_cospan(rng, feet[i], feet[i + 1], max_size) for i in range(length)]


def random_mono(rng: random.Random, max_nodes: int) -> GraphHom:
    a = random_graph(rng, max(0, max_nodes - 1), max_edges=2)
    return grow(rng, a, max_nodes, max_new_edges=2)


def random_map_from(rng: random.Random, a: FinGraph, max_nodes: int) -> GraphHom:
    """Arbitrary map out of ``a``: quotient it, then embed in something bigger."""
    q = shrink_to(rng, a, max(1, min(max_nodes, a.node_count)) if a.node_count else 0)
    q = compose(random_quotient(rng, q.cod, rng.randint(0, 1)), q)
    return compose(grow(rng, q.cod, max_nodes), q)


# ---------------------------------------------------------------- cubes


@dataclass(frozen=True)
class Cube:
    """A commuting cube; primed objects form the top face.

    Top face ``A' -> B', A' -> C', B' -> D', C' -> D'``, bottom face likewise
    unprimed, vertical maps ``a, b, c, d`` from top to bottom.
    """

    top_ab: GraphHom
    top_ac: GraphHom
    top_bd: GraphHom
    top_cd: GraphHom
    bot_ab: GraphHom
    bot_ac: GraphHom
    bot_bd: GraphHom
    bot_cd: GraphHom
    a: GraphHom
    b: GraphHom
    c: GraphHom
    d: GraphHom


def random_vk_cube(rng: random.Random, max_nodes: int) -> Cube:
    """Cube with monic top and bottom faces, pullback top, pushout front faces.

    The vertical maps quotient the top face by a relation living in ``A'``
    and then glue on a shared extension ``X`` of the image of ``A'``. The
    bottom corner ``A`` is either the full pullback of ``B -> D <- C`` or a
    random subgraph of it through which ``A'`` still maps, so both sides of
    the equivalence get exercised.
    """
    dp = random_graph(rng, max_nodes, max_edges=max_nodes + 2)
    bp = random_subgraph(rng, dp, keep=0.7)
    cp = random_subgraph(rng, dp, keep=0.7)
    top = gc.pullback(bp, cp)
    ap = top.object
    ab_p, ac_p = top.legs
    a_in_d = compose(bp, ab_p)
    k = rng.randint(0, 2) if ap.node_count else 0
    rel = gc.discrete(k)
    y1 = GraphHom(rel, ap, [rng.randrange(ap.node_count) for _ in range(k)])
    y2 = GraphHom(rel, ap, [rng.randrange(ap.node_count) for _ in range(k)])
    wd = gc.coequalizer(compose(a_in_d, y1), compose(a_in_d, y2))
    wb = gc.coequalizer(compose(ab_p, y1), compose(ab_p, y2))
    wc = gc.coequalizer(compose(ac_p, y1), compose(ac_p, y2))
    (qd,), (qb,), (qc,) = wd.legs, wb.legs, wc.legs
    bd0 = gc.mediate_coequalizer(wb, compose(qd, bp))
    cd0 = gc.mediate_coequalizer(wc, compose(qd, cp))

    a0 = gc.image(compose(qd, a_in_d))
    ext = grow(rng, a0.dom, a0.dom.node_count + rng.randint(0, 2), max_new_edges=2)
    pd = gc.pushout(a0, ext)
    pb = gc.pushout(gc.factor_through_mono(a0, bd0), ext)
    pc = gc.pushout(gc.factor_through_mono(a0, cd0), ext)
    d = compose(pd.legs[0], qd)
    b = compose(pb.legs[0], qb)
    c = compose(pc.legs[0], qc)
    bd = gc.mediate_pushout(pb, compose(pd.legs[0], bd0), pd.legs[1])
    cd = gc.mediate_pushout(pc, compose(pd.legs[0], cd0), pd.legs[1])

    bottom = gc.pullback(bd, cd)
    a_full = gc.mediate_pullback(bottom, compose(b, ab_p), compose(c, ac_p))
    if rng.random() < 0.5:
        incl = gc.identity(bottom.object)
    else:
        incl = random_subgraph(rng, bottom.object, a_full.node_map, a_full.edge_map, keep=0.4)
    a = gc.factor_through_mono(a_full, incl)
    return Cube(
        ab_p, ac_p, bp, cp,
        compose(bottom.legs[0], incl), compose(bottom.legs[1], incl), bd, cd,
        a, b, c, d,
    )


# ---------------------------------------------------------------- rewriting


def random_production(rng: random.Random, max_nodes: int, interface: int = 2):
    """Production ``L >-> K <-< R`` with a discrete interface of up to ``interface`` nodes in each foot."""
    from .rewrite import InterfaceProduction, Production

    L = random_graph(rng, max_nodes, max_edges=max_nodes)
    l = random_subgraph(rng, L, keep=0.6)
    r = grow(rng, l.dom, max_nodes)
    K = l.dom
    feet = []
    for _ in range(2):
        n = rng.randint(0, min(interface, K.node_count)) if K.node_count else 0
        x = gc.discrete(n)
        feet.append((x, GraphHom(x, K, [rng.randrange(K.node_count) for _ in range(n)])))
    (i, i_map), (o, o_map) = feet
    return InterfaceProduction(Production(L, K, r.cod, l, r), i, o, i_map, o_map)


def random_io_step(rng: random.Random, max_nodes: int, tries: int = 20):
    """A random interface derivation, or ``None`` if every attempt fails the gluing condition.

    The open graph is built around the match: its feet are the images of
    the production's interface, so the match is always interface-compatible.
    """
    from .rewrite import io_derive

    for _ in range(tries):
        p = random_production(rng, max_nodes)
        G = random_graph(rng, max_nodes + 1, max_edges=max_nodes + 2, min_nodes=1)
        m = random_hom(rng, p.base.left, G)
        if m is None:
            continue
        lhs = p.left_cospan()
        g = OpenGraph(p.input, p.output, G, compose(m, lhs.in_leg), compose(m, lhs.out_leg))
        step = io_derive(p, m, g)
        if step is not None:
            return step
    return None
