"""Finite directed multigraphs, their homomorphisms, and finite (co)limits.

Nodes and edges are identified by position. Everything here is a pure
function of immutable values; semantic equality of graphs always goes
through :func:`iso_search`.

Colimits are "chosen": a coproduct lists the left summand first, and a
coequalizer keeps the smallest index of each class as its representative,
with classes ordered by representative. Pushouts are a coproduct followed by
a coequalizer, so every output here is reproducible bit for bit.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .errors import (
    CodomainMismatch,
    DomainMismatch,
    IndexOutOfRange,
    NotACocone,
    NotACone,
    SizeBound,
    StructureNotPreserved,
)

# Iso search and hom enumeration are exponential; refuse anything bigger.
MAX_SEARCH_NODES = 64

Edge = tuple[int, int]


@dataclass(frozen=True)
class FinGraph:
    node_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple((int(s), int(t)) for s, t in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.node_count < 0:
            raise IndexOutOfRange(f"negative node count {self.node_count}")
        for i, (s, t) in enumerate(edges):
            if not (0 <= s < self.node_count and 0 <= t < self.node_count):
                raise IndexOutOfRange(
                    f"edge {i} = ({s}, {t}) out of range for {self.node_count} nodes"
                )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        return self.node_count + len(self.edges)

    def source(self, e: int) -> int:
        return self.edges[e][0]

    def target(self, e: int) -> int:
        return self.edges[e][1]

    def is_discrete(self) -> bool:
        return not self.edges

    def __repr__(self):
        return f"FinGraph({self.node_count}, {list(self.edges)})"


@dataclass(frozen=True)
class GraphHom:
    """A node map and an edge map between two graphs.

    Construction does not validate; call :func:`validate_hom` at trust
    boundaries. Every hom produced by this package is valid.
    """

    dom: FinGraph
    cod: FinGraph
    node_map: tuple[int, ...]
    edge_map: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "node_map", tuple(int(x) for x in self.node_map))
        object.__setattr__(self, "edge_map", tuple(int(x) for x in self.edge_map))

    def __call__(self, node: int) -> int:
        return self.node_map[node]

    def edge(self, e: int) -> int:
        return self.edge_map[e]

    def same_maps(self, other: "GraphHom") -> bool:
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.node_map == other.node_map
            and self.edge_map == other.edge_map
        )

    def __repr__(self):
        return f"GraphHom(nodes={list(self.node_map)}, edges={list(self.edge_map)})"


@dataclass(frozen=True)
class CoconeWitness:
    """A computed colimit: its object, its structural legs, and the diagram."""

    object: FinGraph
    legs: tuple[GraphHom, ...]
    diagram: tuple[GraphHom, ...] = ()
    kind: str = "colimit"
    parts: tuple = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class ConeWitness:
    object: FinGraph
    legs: tuple[GraphHom, ...]
    diagram: tuple[GraphHom, ...] = ()
    kind: str = "limit"
    node_index: dict = field(default_factory=dict, compare=False, repr=False)
    edge_index: dict = field(default_factory=dict, compare=False, repr=False)


# ---------------------------------------------------------------- basics


def discrete(n: int) -> FinGraph:
    return FinGraph(n, ())


def empty() -> FinGraph:
    return FinGraph(0, ())


def terminal() -> FinGraph:
    """One node with one loop."""
    return FinGraph(1, ((0, 0),))


def identity(g: FinGraph) -> GraphHom:
    return GraphHom(g, g, tuple(range(g.node_count)), tuple(range(g.edge_count)))


def initial_map(g: FinGraph) -> GraphHom:
    return GraphHom(empty(), g, (), ())


def to_terminal(g: FinGraph) -> GraphHom:
    return GraphHom(g, terminal(), (0,) * g.node_count, (0,) * g.edge_count)


def validate_hom(h: GraphHom) -> None:
    """Raise unless ``h`` is a structure-preserving map between its graphs."""
    dom, cod = h.dom, h.cod
    if len(h.node_map) != dom.node_count:
        raise IndexOutOfRange(
            f"node map has length {len(h.node_map)}, domain has {dom.node_count} nodes"
        )
    if len(h.edge_map) != dom.edge_count:
        raise IndexOutOfRange(
            f"edge map has length {len(h.edge_map)}, domain has {dom.edge_count} edges"
        )
    for i, x in enumerate(h.node_map):
        if not 0 <= x < cod.node_count:
            raise IndexOutOfRange(f"node {i} maps to {x}, codomain has {cod.node_count} nodes")
    for e, x in enumerate(h.edge_map):
        if not 0 <= x < cod.edge_count:
            raise IndexOutOfRange(f"edge {e} maps to {x}, codomain has {cod.edge_count} edges")
    for e, (s, t) in enumerate(dom.edges):
        cs, ct = cod.edges[h.edge_map[e]]
        if cs != h.node_map[s] or ct != h.node_map[t]:
            raise StructureNotPreserved(
                f"edge {e} = ({s}, {t}) maps to edge {h.edge_map[e]} = ({cs}, {ct}) "
                f"but its endpoints map to ({h.node_map[s]}, {h.node_map[t]})"
            )


def is_valid_hom(h: GraphHom) -> bool:
    try:
        validate_hom(h)
    except (IndexOutOfRange, StructureNotPreserved):
        return False
    return True


def compose(g: GraphHom, f: GraphHom) -> GraphHom:
    """``g`` after ``f``."""
    if f.cod != g.dom:
        raise DomainMismatch("compose: codomain of f differs from domain of g")
    return GraphHom(
        f.dom,
        g.cod,
        tuple(g.node_map[x] for x in f.node_map),
        tuple(g.edge_map[x] for x in f.edge_map),
    )


def compose_all(*homs: GraphHom) -> GraphHom:
    """Composite of ``homs`` in application order right to left."""
    result = homs[-1]
    for h in reversed(homs[:-1]):
        result = compose(h, result)
    return result


def is_mono(h: GraphHom) -> bool:
    return len(set(h.node_map)) == len(h.node_map) and len(set(h.edge_map)) == len(h.edge_map)


def is_epi(h: GraphHom) -> bool:
    return len(set(h.node_map)) == h.cod.node_count and len(set(h.edge_map)) == h.cod.edge_count


def is_iso(h: GraphHom) -> bool:
    return is_mono(h) and is_epi(h)


def inverse(h: GraphHom) -> GraphHom:
    if not is_iso(h):
        raise StructureNotPreserved("inverse of a non-invertible hom")
    nodes = [0] * h.cod.node_count
    for i, x in enumerate(h.node_map):
        nodes[x] = i
    edges = [0] * h.cod.edge_count
    for i, x in enumerate(h.edge_map):
        edges[x] = i
    return GraphHom(h.cod, h.dom, tuple(nodes), tuple(edges))


def subgraph(g: FinGraph, nodes: Sequence[int], edges: Sequence[int]) -> GraphHom:
    """Inclusion of the subgraph on the given nodes and edges, in index order.

    Edges whose endpoints are not kept raise :class:`StructureNotPreserved`.
    """
    keep_nodes = sorted(set(nodes))
    index = {x: i for i, x in enumerate(keep_nodes)}
    keep_edges = sorted(set(edges))
    new_edges = []
    for e in keep_edges:
        s, t = g.edges[e]
        if s not in index or t not in index:
            raise StructureNotPreserved(f"edge {e} dangles outside the chosen nodes")
        new_edges.append((index[s], index[t]))
    sub = FinGraph(len(keep_nodes), tuple(new_edges))
    return GraphHom(sub, g, tuple(keep_nodes), tuple(keep_edges))


def image(h: GraphHom) -> GraphHom:
    """Inclusion of the image subgraph of ``h``."""
    return subgraph(h.cod, h.node_map, h.edge_map)


def check_size(g: FinGraph, bound: int = MAX_SEARCH_NODES) -> None:
    if g.node_count > bound:
        raise SizeBound(f"graph has {g.node_count} nodes, search bound is {bound}")


# ---------------------------------------------------------------- colimits


class _UnionFind:
    """Union-find whose root is always the smallest member."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra < rb:
            self.parent[rb] = ra
        elif rb < ra:
            self.parent[ra] = rb

    def quotient(self):
        """Map each element to the index of its class, classes ordered by root."""
        roots = sorted({self.find(x) for x in range(len(self.parent))})
        rank = {r: i for i, r in enumerate(roots)}
        return [rank[self.find(x)] for x in range(len(self.parent))], roots


def coproduct(g: FinGraph, h: FinGraph) -> CoconeWitness:
    n = g.node_count
    edges = g.edges + tuple((s + n, t + n) for s, t in h.edges)
    obj = FinGraph(n + h.node_count, edges)
    left = GraphHom(g, obj, tuple(range(n)), tuple(range(g.edge_count)))
    right = GraphHom(
        h,
        obj,
        tuple(range(n, n + h.node_count)),
        tuple(range(g.edge_count, g.edge_count + h.edge_count)),
    )
    return CoconeWitness(obj, (left, right), (), "coproduct")


def copair(w: CoconeWitness, f: GraphHom, g: GraphHom) -> GraphHom:
    """The map out of a coproduct restricting to ``f`` and ``g``."""
    left, right = w.legs
    if f.dom != left.dom or g.dom != right.dom:
        raise DomainMismatch("copair: maps do not start at the summands")
    if f.cod != g.cod:
        raise CodomainMismatch("copair: maps have different codomains")
    return GraphHom(w.object, f.cod, f.node_map + g.node_map, f.edge_map + g.edge_map)


def coequalizer(f: GraphHom, g: GraphHom) -> CoconeWitness:
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("coequalizer: maps are not parallel")
    cod = f.cod
    nodes = _UnionFind(cod.node_count)
    for x in range(f.dom.node_count):
        nodes.union(f.node_map[x], g.node_map[x])
    edges = _UnionFind(cod.edge_count)
    for e in range(f.dom.edge_count):
        edges.union(f.edge_map[e], g.edge_map[e])
    node_q, _ = nodes.quotient()
    edge_q, edge_roots = edges.quotient()
    obj = FinGraph(
        max(node_q, default=-1) + 1,
        tuple((node_q[cod.edges[r][0]], node_q[cod.edges[r][1]]) for r in edge_roots),
    )
    q = GraphHom(cod, obj, tuple(node_q), tuple(edge_q))
    return CoconeWitness(obj, (q,), (f, g), "coequalizer")


def mediate_coequalizer(w: CoconeWitness, h: GraphHom) -> GraphHom:
    """The unique ``u`` with ``u . q = h``."""
    f, g = w.diagram
    (q,) = w.legs
    if h.dom != f.cod:
        raise NotACocone("mediate_coequalizer: map does not start at the coequalized object")
    if not compose(h, f).same_maps(compose(h, g)):
        raise NotACocone("mediate_coequalizer: map does not coequalize the pair")
    nodes: list[Optional[int]] = [None] * w.object.node_count
    for x, y in enumerate(q.node_map):
        nodes[y] = h.node_map[x] if nodes[y] is None else nodes[y]
    edges: list[Optional[int]] = [None] * w.object.edge_count
    for e, y in enumerate(q.edge_map):
        edges[y] = h.edge_map[e] if edges[y] is None else edges[y]
    return GraphHom(w.object, h.cod, tuple(nodes), tuple(edges))


def pushout(f: GraphHom, g: GraphHom) -> CoconeWitness:
    """Pushout of the span ``B <-f- A -g-> C``; legs are ``(B -> P, C -> P)``."""
    if f.dom != g.dom:
        raise DomainMismatch("pushout: maps do not share a domain")
    cop = coproduct(f.cod, g.cod)
    coeq = coequalizer(compose(cop.legs[0], f), compose(cop.legs[1], g))
    (q,) = coeq.legs
    legs = (compose(q, cop.legs[0]), compose(q, cop.legs[1]))
    return CoconeWitness(coeq.object, legs, (f, g), "pushout", (cop, coeq))


def mediate_pushout(w: CoconeWitness, b: GraphHom, c: GraphHom) -> GraphHom:
    f, g = w.diagram
    if b.dom != f.cod or c.dom != g.cod or b.cod != c.cod:
        raise NotACocone("mediate_pushout: maps do not form a cocone on the span")
    if not compose(b, f).same_maps(compose(c, g)):
        raise NotACocone("mediate_pushout: square does not commute")
    cop, coeq = w.parts
    return mediate_coequalizer(coeq, copair(cop, b, c))


def is_pushout_square(f: GraphHom, g: GraphHom, b: GraphHom, c: GraphHom) -> bool:
    """Whether ``b . f = c . g`` and the comparison from the chosen pushout is an iso."""
    if b.dom != f.cod or c.dom != g.cod or b.cod != c.cod or f.dom != g.dom:
        return False
    if not compose(b, f).same_maps(compose(c, g)):
        return False
    return is_iso(mediate_pushout(pushout(f, g), b, c))


# ---------------------------------------------------------------- limits


def pullback(f: GraphHom, g: GraphHom) -> ConeWitness:
    """Pullback of the cospan ``B -f-> D <-g- C``; legs are ``(P -> B, P -> C)``.

    Nodes are the pairs ``(b, c)`` with ``f(b) = g(c)`` in lexicographic
    order; edges likewise.
    """
    if f.cod != g.cod:
        raise CodomainMismatch("pullback: maps do not share a codomain")
    B, C = f.dom, g.dom
    by_image = defaultdict(list)
    for c in range(C.node_count):
        by_image[g.node_map[c]].append(c)
    pairs = [(b, c) for b in range(B.node_count) for c in by_image[f.node_map[b]]]
    node_index = {p: i for i, p in enumerate(pairs)}
    edge_by_image = defaultdict(list)
    for e in range(C.edge_count):
        edge_by_image[g.edge_map[e]].append(e)
    edge_pairs = [(e, e2) for e in range(B.edge_count) for e2 in edge_by_image[f.edge_map[e]]]
    edge_index = {p: i for i, p in enumerate(edge_pairs)}
    edges = tuple(
        (
            node_index[(B.edges[e][0], C.edges[e2][0])],
            node_index[(B.edges[e][1], C.edges[e2][1])],
        )
        for e, e2 in edge_pairs
    )
    obj = FinGraph(len(pairs), edges)
    left = GraphHom(obj, B, tuple(p[0] for p in pairs), tuple(p[0] for p in edge_pairs))
    right = GraphHom(obj, C, tuple(p[1] for p in pairs), tuple(p[1] for p in edge_pairs))
    return ConeWitness(obj, (left, right), (f, g), "pullback", node_index, edge_index)


def mediate_pullback(w: ConeWitness, p: GraphHom, q: GraphHom) -> GraphHom:
    f, g = w.diagram
    if p.cod != f.dom or q.cod != g.dom or p.dom != q.dom:
        raise NotACone("mediate_pullback: maps do not form a cone on the cospan")
    if not compose(f, p).same_maps(compose(g, q)):
        raise NotACone("mediate_pullback: square does not commute")
    nodes = tuple(w.node_index[(p.node_map[z], q.node_map[z])] for z in range(p.dom.node_count))
    edges = tuple(w.edge_index[(p.edge_map[e], q.edge_map[e])] for e in range(p.dom.edge_count))
    return GraphHom(p.dom, w.object, nodes, edges)


def is_pullback_square(p: GraphHom, q: GraphHom, f: GraphHom, g: GraphHom) -> bool:
    """Whether ``f . p = g . q`` and the comparison into the chosen pullback is an iso."""
    if p.cod != f.dom or q.cod != g.dom or f.cod != g.cod or p.dom != q.dom:
        return False
    if not compose(f, p).same_maps(compose(g, q)):
        return False
    return is_iso(mediate_pullback(pullback(f, g), p, q))


def product(g: FinGraph, h: FinGraph) -> ConeWitness:
    w = pullback(to_terminal(g), to_terminal(h))
    return ConeWitness(w.object, w.legs, w.diagram, "product", w.node_index, w.edge_index)


# ---------------------------------------------------------------- search


def _edge_buckets(g: FinGraph) -> dict[Edge, list[int]]:
    buckets: dict[Edge, list[int]] = defaultdict(list)
    for e, st in enumerate(g.edges):
        buckets[st].append(e)
    return buckets


def enumerate_homs(
    g: FinGraph,
    h: FinGraph,
    monic_only: bool = False,
    node_ok: Optional[Callable[[int, int], bool]] = None,
    edge_ok: Optional[Callable[[int, int], bool]] = None,
    bound: int = MAX_SEARCH_NODES,
) -> Iterator[GraphHom]:
    """Yield every hom ``g -> h`` (or every monic one) in lexicographic order.

    ``node_ok(x, y)`` and ``edge_ok(e, f)`` restrict which assignments are
    allowed. Order: node maps lexicographically, then edge maps
    lexicographically for each node map.
    """
    check_size(g, bound)
    check_size(h, bound)
    n = g.node_count
    h_buckets = _edge_buckets(h)
    # edges checked as soon as both endpoints are assigned
    closing: list[list[int]] = [[] for _ in range(n)]
    for e, (s, t) in enumerate(g.edges):
        closing[max(s, t)].append(e)

    def edge_candidates(e, nmap):
        s, t = g.edges[e]
        cands = h_buckets.get((nmap[s], nmap[t]), [])
        if edge_ok is not None:
            cands = [f for f in cands if edge_ok(e, f)]
        return cands

    nmap = [0] * n
    used_nodes: set[int] = set()

    def assign_edges(e, emap, used):
        if e == g.edge_count:
            yield GraphHom(g, h, tuple(nmap), tuple(emap))
            return
        for f in edge_candidates(e, nmap):
            if monic_only and f in used:
                continue
            emap.append(f)
            used.add(f)
            yield from assign_edges(e + 1, emap, used)
            used.discard(f)
            emap.pop()

    def assign_nodes(i):
        if i == n:
            yield from assign_edges(0, [], set())
            return
        for y in range(h.node_count):
            if monic_only and y in used_nodes:
                continue
            if node_ok is not None and not node_ok(i, y):
                continue
            nmap[i] = y
            if all(edge_candidates(e, nmap) for e in closing[i]):
                used_nodes.add(y)
                yield from assign_nodes(i + 1)
                used_nodes.discard(y)

    yield from assign_nodes(0)


def _profiles(g: FinGraph) -> list[tuple[int, int, int]]:
    out = [0] * g.node_count
    inc = [0] * g.node_count
    loops = [0] * g.node_count
    for s, t in g.edges:
        out[s] += 1
        inc[t] += 1
        if s == t:
            loops[s] += 1
    return list(zip(out, inc, loops))


def constrained_iso_search(
    g: FinGraph,
    h: FinGraph,
    node_pairs: Sequence[tuple[int, int]] = (),
    edge_pairs: Sequence[tuple[int, int]] = (),
    node_ok: Optional[Callable[[int, int], bool]] = None,
    edge_ok: Optional[Callable[[int, int], bool]] = None,
    bound: int = MAX_SEARCH_NODES,
) -> Optional[GraphHom]:
    """First isomorphism ``g -> h`` extending the forced pairs, or ``None``.

    Backtracks over node bijections in lexicographic order, pruning on
    (out, in, loop) degree profiles and on edge multiplicities between
    already-placed nodes, then matches parallel edges.
    """
    check_size(g, bound)
    check_size(h, bound)
    if g.node_count != h.node_count or g.edge_count != h.edge_count:
        return None
    pg, ph = _profiles(g), _profiles(h)
    if Counter(pg) != Counter(ph):
        return None

    forced_nodes: dict[int, int] = {}
    for x, y in node_pairs:
        if forced_nodes.setdefault(x, y) != y:
            return None
    if len(set(forced_nodes.values())) != len(forced_nodes):
        return None
    forced_edges: dict[int, int] = {}
    for e, f in edge_pairs:
        if forced_edges.setdefault(e, f) != f:
            return None
    if len(set(forced_edges.values())) != len(forced_edges):
        return None

    mult_g = Counter(g.edges)
    mult_h = Counter(h.edges)
    h_buckets = _edge_buckets(h)
    n = g.node_count
    nmap = [0] * n
    used: set[int] = set()

    def node_allowed(x, y):
        if y in used or pg[x] != ph[y]:
            return False
        if x in forced_nodes and forced_nodes[x] != y:
            return False
        if node_ok is not None and not node_ok(x, y):
            return False
        for j in range(x):
            if mult_g[(x, j)] != mult_h[(y, nmap[j])] or mult_g[(j, x)] != mult_h[(nmap[j], y)]:
                return False
        return mult_g[(x, x)] == mult_h[(y, y)]

    def assign_edges(e, emap, used_edges):
        if e == g.edge_count:
            return GraphHom(g, h, tuple(nmap), tuple(emap))
        s, t = g.edges[e]
        for f in h_buckets.get((nmap[s], nmap[t]), []):
            if f in used_edges:
                continue
            if e in forced_edges and forced_edges[e] != f:
                continue
            if edge_ok is not None and not edge_ok(e, f):
                continue
            emap.append(f)
            used_edges.add(f)
            found = assign_edges(e + 1, emap, used_edges)
            if found is not None:
                return found
            used_edges.discard(f)
            emap.pop()
        return None

    def assign_nodes(i):
        if i == n:
            return assign_edges(0, [], set())
        for y in range(h.node_count):
            if not node_allowed(i, y):
                continue
            nmap[i] = y
            used.add(y)
            found = assign_nodes(i + 1)
            if found is not None:
                return found
            used.discard(y)
        return None

    return assign_nodes(0)


def iso_search(g: FinGraph, h: FinGraph, bound: int = MAX_SEARCH_NODES) -> Optional[GraphHom]:
    return constrained_iso_search(g, h, bound=bound)


def are_isomorphic(g: FinGraph, h: FinGraph) -> bool:
    return iso_search(g, h) is not None


def factor_through_mono(h: GraphHom, m: GraphHom) -> Optional[GraphHom]:
    """The unique ``k`` with ``m . k = h`` for monic ``m``, if ``h`` lands in its image."""
    if h.cod != m.cod:
        raise CodomainMismatch("factor_through_mono: maps do not share a codomain")
    npos = {y: x for x, y in enumerate(m.node_map)}
    epos = {f: e for e, f in enumerate(m.edge_map)}
    if not (all(y in npos for y in h.node_map) and all(f in epos for f in h.edge_map)):
        return None
    return GraphHom(h.dom, m.dom, tuple(npos[y] for y in h.node_map), tuple(epos[f] for f in h.edge_map))
