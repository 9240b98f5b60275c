"""Double-pushout rewriting, with and without input/output interfaces.

A production ``L <-l- K -r-> R`` has monic legs. Applying it at a match
``m: L -> G`` removes ``m(L - l(K))`` from ``G`` (the pushout complement
``E``) and glues ``R`` back along ``K``. Productions with an interface
``(I, O)`` carry discrete graphs mapping into ``K``; derivations along them
keep the inputs and outputs of open graphs fixed, and each such derivation
is a 2-cell ``G <= E => D``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from . import graph as gc
from .cospan import OpenGraph, TwoCell, open_graph_iso, twocell_problems, vcompose
from .errors import FootMismatch, InterfaceIncompatible, NotMono, ValidationError
from .graph import FinGraph, GraphHom, compose


@dataclass(frozen=True)
class Production:
    left: FinGraph
    glue: FinGraph
    right: FinGraph
    l: GraphHom
    r: GraphHom

    def __post_init__(self):
        for name, h, cod in (("l", self.l, self.left), ("r", self.r, self.right)):
            if h.dom != self.glue or h.cod != cod:
                raise ValidationError(f"production leg {name} has the wrong domain or codomain")
            gc.validate_hom(h)
            if not gc.is_mono(h):
                raise NotMono(f"production leg {name} is not monic")


def production(l: GraphHom, r: GraphHom) -> Production:
    return Production(l.cod, l.dom, r.cod, l, r)


@dataclass(frozen=True)
class InterfaceProduction:
    base: Production
    input: FinGraph
    output: FinGraph
    i_map: GraphHom
    o_map: GraphHom

    def __post_init__(self):
        if not (self.input.is_discrete() and self.output.is_discrete()):
            raise ValidationError("interface graphs must be discrete")
        for name, h, dom in (("i_map", self.i_map, self.input), ("o_map", self.o_map, self.output)):
            if h.dom != dom or h.cod != self.base.glue:
                raise ValidationError(f"{name} must run from the interface into K")
            gc.validate_hom(h)

    def left_cospan(self) -> OpenGraph:
        b = self.base
        return OpenGraph(self.input, self.output, b.left, compose(b.l, self.i_map), compose(b.l, self.o_map))

    def right_cospan(self) -> OpenGraph:
        b = self.base
        return OpenGraph(self.input, self.output, b.right, compose(b.r, self.i_map), compose(b.r, self.o_map))


class Complement(NamedTuple):
    context: FinGraph
    k_to_e: GraphHom
    e_to_g: GraphHom


@dataclass(frozen=True)
class Derivation:
    production: Production
    match: GraphHom
    context: FinGraph
    k_to_e: GraphHom
    e_to_g: GraphHom
    result: FinGraph
    r_to_d: GraphHom
    e_to_d: GraphHom

    @property
    def source(self) -> FinGraph:
        return self.match.cod


@dataclass(frozen=True)
class IODerivation:
    """A derivation along an interface production, between open graphs."""

    derivation: Derivation
    production: InterfaceProduction
    source: OpenGraph
    target: OpenGraph


@dataclass(frozen=True)
class Grammar:
    start_graphs: tuple[OpenGraph, ...]
    productions: tuple[InterfaceProduction, ...]

    def __post_init__(self):
        object.__setattr__(self, "start_graphs", tuple(self.start_graphs))
        object.__setattr__(self, "productions", tuple(self.productions))
        feet = {(g.left_foot, g.right_foot) for g in self.start_graphs}
        feet |= {(p.input, p.output) for p in self.productions}
        if len(feet) > 1:
            raise FootMismatch("grammar members do not share one interface (I, O)")
        for g in self.start_graphs:
            g.validate(discrete_feet=True)


# ---------------------------------------------------------------- matching


def find_matches(L: FinGraph, G: FinGraph, monic_only: bool = False, bound: int = gc.MAX_SEARCH_NODES) -> list[GraphHom]:
    return list(gc.enumerate_homs(L, G, monic_only=monic_only, bound=bound))


def gluing_violations(l: GraphHom, m: GraphHom) -> list[str]:
    """Reasons the gluing condition fails for ``l: K >-> L`` and ``m: L -> G``."""
    L, G = l.cod, m.cod
    kept_nodes = set(l.node_map)
    kept_edges = set(l.edge_map)
    problems = []
    # identification: m may only merge elements that are both preserved
    seen: dict[int, int] = {}
    for x in range(L.node_count):
        y = m.node_map[x]
        if y in seen and not (x in kept_nodes and seen[y] in kept_nodes):
            problems.append(f"nodes {seen[y]} and {x} of L are identified but not both preserved")
        seen.setdefault(y, x)
    seen = {}
    for e in range(L.edge_count):
        f = m.edge_map[e]
        if f in seen and not (e in kept_edges and seen[f] in kept_edges):
            problems.append(f"edges {seen[f]} and {e} of L are identified but not both preserved")
        seen.setdefault(f, e)
    # dangling: no surviving edge may touch a deleted node
    deleted_nodes = {m.node_map[x] for x in range(L.node_count) if x not in kept_nodes}
    deleted_edges = {m.edge_map[e] for e in range(L.edge_count) if e not in kept_edges}
    for f, (s, t) in enumerate(G.edges):
        if f not in deleted_edges and (s in deleted_nodes or t in deleted_nodes):
            problems.append(f"edge {f} of G would dangle")
    return problems


def pushout_complement(l: GraphHom, m: GraphHom) -> Optional[Complement]:
    """``E = G - m(L - l(K))`` with its maps, or ``None`` if gluing fails."""
    if not gc.is_mono(l):
        raise NotMono("pushout_complement: l is not monic")
    if l.cod != m.dom:
        raise gc.DomainMismatch("pushout_complement: match does not start at L")
    if gluing_violations(l, m):
        return None
    L, G = l.cod, m.cod
    kept_nodes = set(l.node_map)
    kept_edges = set(l.edge_map)
    deleted_nodes = {m.node_map[x] for x in range(L.node_count) if x not in kept_nodes}
    deleted_edges = {m.edge_map[e] for e in range(L.edge_count) if e not in kept_edges}
    incl = gc.subgraph(
        G,
        [y for y in range(G.node_count) if y not in deleted_nodes],
        [f for f in range(G.edge_count) if f not in deleted_edges],
    )
    node_pos = {y: i for i, y in enumerate(incl.node_map)}
    edge_pos = {f: i for i, f in enumerate(incl.edge_map)}
    ml = compose(m, l)
    k_to_e = GraphHom(
        l.dom,
        incl.dom,
        tuple(node_pos[y] for y in ml.node_map),
        tuple(edge_pos[f] for f in ml.edge_map),
    )
    return Complement(incl.dom, k_to_e, incl)


def derive(p: Production, m: GraphHom) -> Optional[Derivation]:
    comp = pushout_complement(p.l, m)
    if comp is None:
        return None
    w = gc.pushout(p.r, comp.k_to_e)
    r_to_d, e_to_d = w.legs
    return Derivation(p, m, comp.context, comp.k_to_e, comp.e_to_g, w.object, r_to_d, e_to_d)


def interface_compatible(p: InterfaceProduction, m: GraphHom, g: OpenGraph) -> bool:
    lhs = p.left_cospan()
    return compose(m, lhs.in_leg).same_maps(g.in_leg) and compose(m, lhs.out_leg).same_maps(g.out_leg)


def io_derive(p: InterfaceProduction, m: GraphHom, g: OpenGraph) -> Optional[IODerivation]:
    """Rewrite the open graph ``g`` at ``m``, keeping its inputs and outputs."""
    if g.left_foot != p.input or g.right_foot != p.output:
        raise FootMismatch("io_derive: open graph feet differ from the production interface")
    if m.dom != p.base.left or m.cod != g.apex:
        raise gc.DomainMismatch("io_derive: match must run from L to the open graph's apex")
    if not interface_compatible(p, m, g):
        raise InterfaceIncompatible("io_derive: match does not send the interface to the open graph's feet")
    d = derive(p.base, m)
    if d is None:
        return None
    to_d = compose(d.e_to_d, d.k_to_e)
    target = OpenGraph(p.input, p.output, d.result, compose(to_d, p.i_map), compose(to_d, p.o_map))
    return IODerivation(d, p, g, target)


def io_matches(p: InterfaceProduction, g: OpenGraph, monic_only: bool = False) -> list[GraphHom]:
    """Matches of ``p`` in ``g`` that respect the interface."""
    lhs = p.left_cospan()
    forced = {}
    for leg, foot_leg in ((lhs.in_leg, g.in_leg), (lhs.out_leg, g.out_leg)):
        for x, y in zip(leg.node_map, foot_leg.node_map):
            if forced.setdefault(x, y) != y:
                return []
    return [
        m
        for m in gc.enumerate_homs(
            p.base.left, g.apex, monic_only=monic_only, node_ok=lambda x, y: forced.get(x, y) == y
        )
        if interface_compatible(p, m, g)
    ]


# ---------------------------------------------------------------- 2-cells


def derivation_to_twocell(d: IODerivation) -> TwoCell:
    """The 2-cell ``G <= E => D`` of an interface derivation."""
    der, p = d.derivation, d.production
    return TwoCell(
        d.source,
        d.target,
        der.context,
        der.e_to_g,
        der.e_to_d,
        compose(der.k_to_e, p.i_map),
        compose(der.k_to_e, p.o_map),
    )


def _trivial_production(alpha: TwoCell) -> InterfaceProduction:
    base = Production(alpha.top.apex, alpha.middle, alpha.bottom.apex, alpha.up_leg, alpha.down_leg)
    return InterfaceProduction(base, alpha.left_foot, alpha.right_foot, alpha.mid_in, alpha.mid_out)


def twocell_to_derivation(
    alpha: TwoCell, p: Optional[InterfaceProduction] = None, match: Optional[GraphHom] = None
) -> Optional[IODerivation]:
    """Read a 2-cell as a one-step derivation, if it is one.

    The middle of ``alpha`` plays the context ``E``. Without ``p`` the
    production is ``top.apex <- middle -> bottom.apex`` itself at the
    identity match. With ``p``, every interface-respecting match of ``p`` in
    the top apex is tried (or only ``match``, if given) and both squares are
    checked to be pushouts; the first that succeeds is returned. A 2-cell
    does not record its match, so distinct matches can yield the same cell.
    """
    if twocell_problems(alpha) or not alpha.top.has_discrete_feet():
        return None
    if p is None:
        p = _trivial_production(alpha)
    if alpha.left_foot != p.input or alpha.right_foot != p.output:
        return None
    base = p.base
    up, down = alpha.up_leg, alpha.down_leg
    up_pos = {y: x for x, y in enumerate(up.node_map)}
    up_epos = {f: e for e, f in enumerate(up.edge_map)}
    candidates = io_matches(p, alpha.top) if match is None else [match]
    for m in candidates:
        if m.dom != base.left or m.cod != alpha.top.apex or not interface_compatible(p, m, alpha.top):
            continue
        ml = compose(m, base.l)
        # up is monic, so K -> E is forced by up . k = m . l
        if not (all(y in up_pos for y in ml.node_map) and all(f in up_epos for f in ml.edge_map)):
            continue
        k = GraphHom(base.glue, alpha.middle, tuple(up_pos[y] for y in ml.node_map), tuple(up_epos[f] for f in ml.edge_map))
        if not (compose(k, p.i_map).same_maps(alpha.mid_in) and compose(k, p.o_map).same_maps(alpha.mid_out)):
            continue
        if not gc.is_pushout_square(base.l, k, m, up):
            continue
        dk = compose(down, k)
        for r_to_d in gc.enumerate_homs(
            base.right, alpha.bottom.apex, node_ok=_agrees_on(base.r, dk, "node"), edge_ok=_agrees_on(base.r, dk, "edge")
        ):
            if not compose(r_to_d, base.r).same_maps(dk):
                continue
            if gc.is_pushout_square(base.r, k, r_to_d, down):
                der = Derivation(base, m, alpha.middle, k, up, alpha.bottom.apex, r_to_d, down)
                return IODerivation(der, p, alpha.top, alpha.bottom)
    return None


def _agrees_on(r: GraphHom, target: GraphHom, kind: str):
    if kind == "node":
        forced = dict(zip(r.node_map, target.node_map))
    else:
        forced = dict(zip(r.edge_map, target.edge_map))
    return lambda x, y: forced.get(x, y) == y


def chain_twocell(steps: Sequence[IODerivation]) -> TwoCell:
    """Vertical composite of the 2-cells of a derivation chain."""
    if not steps:
        raise ValueError("empty derivation chain")
    cells = [derivation_to_twocell(s) for s in steps]
    result = cells[0]
    for cell in cells[1:]:
        result = vcompose(result, cell)
    return result


def derive_chain(start: OpenGraph, productions: Sequence[InterfaceProduction], monic_only: bool = False) -> list[IODerivation]:
    """Apply each production in turn at its first applicable match.

    Raises ``LookupError`` naming the step that has no applicable match.
    """
    steps = []
    current = start
    for i, p in enumerate(productions):
        for m in io_matches(p, current, monic_only):
            step = io_derive(p, m, current)
            if step is not None:
                break
        else:
            raise LookupError(f"step {i}: production has no applicable match")
        steps.append(step)
        current = step.target
    return steps


# ---------------------------------------------------------------- languages


def language(g: Grammar, depth: int, size_cap: int, monic_only: bool = False) -> list[OpenGraph]:
    """Open graphs reachable from the start graphs in at most ``depth`` steps.

    Results whose apex has more than ``size_cap`` nodes plus edges are
    dropped. Members are deduplicated up to isomorphism fixing the feet and
    returned in discovery order.
    """
    members: list[OpenGraph] = []

    def add(h: OpenGraph) -> bool:
        if any(open_graph_iso(h, k) is not None for k in members):
            return False
        members.append(h)
        return True

    frontier = [s for s in g.start_graphs if add(s)]
    for _ in range(depth):
        new = []
        for h in frontier:
            for p in g.productions:
                for m in io_matches(p, h, monic_only):
                    step = io_derive(p, m, h)
                    if step is None or step.target.apex.size > size_cap:
                        continue
                    if add(step.target):
                        new.append(step.target)
        frontier = new
    return members


def same_derivation(a: Derivation, b: Derivation) -> bool:
    """Whether two derivations of one production at one match agree up to iso.

    Compares the contexts and results through isos commuting with the maps
    out of K and into G (for E) and out of R (for D).
    """
    if a.production != b.production or not a.match.same_maps(b.match):
        return False
    e_iso = gc.constrained_iso_search(
        a.context, b.context,
        node_pairs=list(zip(a.k_to_e.node_map, b.k_to_e.node_map)),
        edge_pairs=list(zip(a.k_to_e.edge_map, b.k_to_e.edge_map)),
        node_ok=lambda x, y: a.e_to_g.node_map[x] == b.e_to_g.node_map[y],
        edge_ok=lambda e, f: a.e_to_g.edge_map[e] == b.e_to_g.edge_map[f],
    )
    if e_iso is None:
        return False
    pairs = list(zip(a.r_to_d.node_map, b.r_to_d.node_map))
    pairs += [(a.e_to_d.node_map[x], b.e_to_d.node_map[e_iso.node_map[x]]) for x in range(a.context.node_count)]
    epairs = list(zip(a.r_to_d.edge_map, b.r_to_d.edge_map))
    epairs += [(a.e_to_d.edge_map[e], b.e_to_d.edge_map[e_iso.edge_map[e]]) for e in range(a.context.edge_count)]
    return gc.constrained_iso_search(a.result, b.result, pairs, epairs) is not None
