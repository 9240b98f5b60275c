"""Open graphs (cospans) and 2-cells (spans of cospans with monic legs).

Composition of open graphs is diagrammatic: ``compose_cospans(S, T)`` glues
``S: X -> Y`` to ``T: Y -> Z`` along ``Y``. Vertical composition of 2-cells
pulls back over the shared cospan apex; horizontal composition pushes out
over the shared foot. All structure maps of composites come from mediating
maps, never from hand-threaded indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import graph as gc
from .errors import (
    CellMismatch,
    FootMismatch,
    InternalNonMonic,
    InvalidTwoCell,
    NotComposable,
    NotParallel,
)
from .graph import FinGraph, GraphHom, compose


@dataclass(frozen=True)
class OpenGraph:
    """A cospan ``left_foot -> apex <- right_foot``."""

    left_foot: FinGraph
    right_foot: FinGraph
    apex: FinGraph
    in_leg: GraphHom
    out_leg: GraphHom

    def validate(self, discrete_feet: bool = False) -> None:
        for leg, foot, name in ((self.in_leg, self.left_foot, "in"), (self.out_leg, self.right_foot, "out")):
            if leg.dom != foot or leg.cod != self.apex:
                raise FootMismatch(f"{name}_leg does not run from its foot to the apex")
            gc.validate_hom(leg)
        if discrete_feet and not (self.left_foot.is_discrete() and self.right_foot.is_discrete()):
            raise FootMismatch("feet are required to be discrete")

    def has_discrete_feet(self) -> bool:
        return self.left_foot.is_discrete() and self.right_foot.is_discrete()


Cospan = OpenGraph


def open_graph(apex: FinGraph, inputs, outputs) -> OpenGraph:
    """Open graph whose discrete feet pick out the listed apex nodes."""
    inputs, outputs = tuple(inputs), tuple(outputs)
    x, y = gc.discrete(len(inputs)), gc.discrete(len(outputs))
    return OpenGraph(x, y, apex, GraphHom(x, apex, inputs), GraphHom(y, apex, outputs))


@dataclass(frozen=True)
class TwoCell:
    """A span of cospans ``top <= middle => bottom``.

    ``up_leg: middle -> top.apex`` and ``down_leg: middle -> bottom.apex``
    must be monic and commute with the feet maps. Cells built through
    :func:`unsafe_twocell` skip validation; they exist only to exhibit the
    failure of interchange without monic legs.
    """

    top: OpenGraph
    bottom: OpenGraph
    middle: FinGraph
    up_leg: GraphHom
    down_leg: GraphHom
    mid_in: GraphHom
    mid_out: GraphHom
    unchecked: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.unchecked:
            check_twocell(self)

    @property
    def left_foot(self) -> FinGraph:
        return self.top.left_foot

    @property
    def right_foot(self) -> FinGraph:
        return self.top.right_foot


def twocell_problems(cell: TwoCell, require_monic: bool = True) -> list[str]:
    """Every violated invariant of ``cell``, as human-readable strings."""
    problems = []
    top, bottom = cell.top, cell.bottom
    if top.left_foot != bottom.left_foot or top.right_foot != bottom.right_foot:
        problems.append("top and bottom do not share feet")
    for name, h, dom, cod in (
        ("up_leg", cell.up_leg, cell.middle, top.apex),
        ("down_leg", cell.down_leg, cell.middle, bottom.apex),
        ("mid_in", cell.mid_in, top.left_foot, cell.middle),
        ("mid_out", cell.mid_out, top.right_foot, cell.middle),
        ("top.in_leg", top.in_leg, top.left_foot, top.apex),
        ("top.out_leg", top.out_leg, top.right_foot, top.apex),
        ("bottom.in_leg", bottom.in_leg, bottom.left_foot, bottom.apex),
        ("bottom.out_leg", bottom.out_leg, bottom.right_foot, bottom.apex),
    ):
        if h.dom != dom or h.cod != cod:
            problems.append(f"{name} has the wrong domain or codomain")
            continue
        try:
            gc.validate_hom(h)
        except Exception as exc:  # noqa: BLE001
            problems.append(f"{name}: {exc}")
    if problems:
        return problems
    if require_monic and not gc.is_mono(cell.up_leg):
        problems.append("up_leg is not monic")
    if require_monic and not gc.is_mono(cell.down_leg):
        problems.append("down_leg is not monic")
    if not compose(cell.up_leg, cell.mid_in).same_maps(top.in_leg):
        problems.append("left square into top does not commute")
    if not compose(cell.down_leg, cell.mid_in).same_maps(bottom.in_leg):
        problems.append("left square into bottom does not commute")
    if not compose(cell.up_leg, cell.mid_out).same_maps(top.out_leg):
        problems.append("right square into top does not commute")
    if not compose(cell.down_leg, cell.mid_out).same_maps(bottom.out_leg):
        problems.append("right square into bottom does not commute")
    return problems


def check_twocell(cell: TwoCell, require_monic: bool = True) -> None:
    problems = twocell_problems(cell, require_monic)
    if problems:
        raise InvalidTwoCell("; ".join(problems))


def unsafe_twocell(top, bottom, middle, up_leg, down_leg, mid_in, mid_out) -> TwoCell:
    """Build a 2-cell without checking monic legs or commutation."""
    return TwoCell(top, bottom, middle, up_leg, down_leg, mid_in, mid_out, unchecked=True)


def _make(cell_args, unchecked: bool) -> TwoCell:
    cell = TwoCell(*cell_args, unchecked=True)
    if unchecked:
        return cell
    problems = twocell_problems(cell, require_monic=False)
    if problems:
        raise InvalidTwoCell("; ".join(problems))
    if not (gc.is_mono(cell.up_leg) and gc.is_mono(cell.down_leg)):
        raise InternalNonMonic("composite 2-cell has a non-monic leg")
    return TwoCell(*cell_args)


# ---------------------------------------------------------------- 1-cells


def identity_cospan(x: FinGraph) -> OpenGraph:
    i = gc.identity(x)
    return OpenGraph(x, x, x, i, i)


def compose_cospans_witness(s: OpenGraph, t: OpenGraph) -> tuple[OpenGraph, gc.CoconeWitness]:
    if s.right_foot != t.left_foot:
        raise FootMismatch("compose_cospans: right foot of S differs from left foot of T")
    w = gc.pushout(s.out_leg, t.in_leg)
    composite = OpenGraph(
        s.left_foot,
        t.right_foot,
        w.object,
        compose(w.legs[0], s.in_leg),
        compose(w.legs[1], t.out_leg),
    )
    return composite, w


def compose_cospans(s: OpenGraph, t: OpenGraph) -> OpenGraph:
    return compose_cospans_witness(s, t)[0]


def open_graph_iso(g: OpenGraph, h: OpenGraph) -> Optional[GraphHom]:
    """Apex iso ``g.apex -> h.apex`` commuting with both feet maps (feet fixed)."""
    if g.left_foot != h.left_foot or g.right_foot != h.right_foot:
        return None
    node_pairs = list(zip(g.in_leg.node_map, h.in_leg.node_map))
    node_pairs += zip(g.out_leg.node_map, h.out_leg.node_map)
    edge_pairs = list(zip(g.in_leg.edge_map, h.in_leg.edge_map))
    edge_pairs += zip(g.out_leg.edge_map, h.out_leg.edge_map)
    return gc.constrained_iso_search(g.apex, h.apex, node_pairs, edge_pairs)


# ---------------------------------------------------------------- 2-cells


def identity_twocell(s: OpenGraph) -> TwoCell:
    i = gc.identity(s.apex)
    return TwoCell(s, s, s.apex, i, i, s.in_leg, s.out_leg)


def invert(cell: TwoCell) -> TwoCell:
    """The same span read upside down."""
    return TwoCell(
        cell.bottom, cell.top, cell.middle, cell.down_leg, cell.up_leg,
        cell.mid_in, cell.mid_out, unchecked=cell.unchecked,
    )


def vcompose(alpha: TwoCell, beta: TwoCell) -> TwoCell:
    """``alpha: L => S`` then ``beta: S => L'``; middle is the pullback over S."""
    if alpha.bottom != beta.top:
        raise CellMismatch("vcompose: bottom of the first cell is not the top of the second")
    w = gc.pullback(alpha.down_leg, beta.up_leg)
    p, q = w.legs
    mid_in = gc.mediate_pullback(w, alpha.mid_in, beta.mid_in)
    mid_out = gc.mediate_pullback(w, alpha.mid_out, beta.mid_out)
    return _make(
        (alpha.top, beta.bottom, w.object, compose(alpha.up_leg, p), compose(beta.down_leg, q), mid_in, mid_out),
        alpha.unchecked or beta.unchecked,
    )


def hcompose(alpha: TwoCell, beta: TwoCell) -> TwoCell:
    """``alpha`` over ``X -> Y`` beside ``beta`` over ``Y -> Z``."""
    if alpha.right_foot != beta.left_foot:
        raise FootMismatch("hcompose: cells do not meet at a common foot")
    top, wt = compose_cospans_witness(alpha.top, beta.top)
    bottom, wb = compose_cospans_witness(alpha.bottom, beta.bottom)
    wm = gc.pushout(alpha.mid_out, beta.mid_in)
    up = gc.mediate_pushout(wm, compose(wt.legs[0], alpha.up_leg), compose(wt.legs[1], beta.up_leg))
    down = gc.mediate_pushout(wm, compose(wb.legs[0], alpha.down_leg), compose(wb.legs[1], beta.down_leg))
    return _make(
        (top, bottom, wm.object, up, down, compose(wm.legs[0], alpha.mid_in), compose(wm.legs[1], beta.mid_out)),
        alpha.unchecked or beta.unchecked,
    )


def twocell_iso(alpha: TwoCell, beta: TwoCell) -> Optional[GraphHom]:
    """Iso of middles commuting with both legs and both feet maps, if any."""
    if alpha.top != beta.top or alpha.bottom != beta.bottom:
        raise NotParallel("2-cells do not share top and bottom cospans")
    a_up, a_down, b_up, b_down = alpha.up_leg, alpha.down_leg, beta.up_leg, beta.down_leg

    def node_ok(x, y):
        return b_up.node_map[y] == a_up.node_map[x] and b_down.node_map[y] == a_down.node_map[x]

    def edge_ok(e, f):
        return b_up.edge_map[f] == a_up.edge_map[e] and b_down.edge_map[f] == a_down.edge_map[e]

    node_pairs = list(zip(alpha.mid_in.node_map, beta.mid_in.node_map))
    node_pairs += zip(alpha.mid_out.node_map, beta.mid_out.node_map)
    edge_pairs = list(zip(alpha.mid_in.edge_map, beta.mid_in.edge_map))
    edge_pairs += zip(alpha.mid_out.edge_map, beta.mid_out.edge_map)
    return gc.constrained_iso_search(
        alpha.middle, beta.middle, node_pairs, edge_pairs, node_ok=node_ok, edge_ok=edge_ok
    )


def iso_class_equal(alpha: TwoCell, beta: TwoCell) -> bool:
    return twocell_iso(alpha, beta) is not None


def transport(cell: TwoCell, top: OpenGraph, top_iso: GraphHom, bottom: OpenGraph, bottom_iso: GraphHom) -> TwoCell:
    """Re-express ``cell`` over isomorphic copies of its top and bottom cospans.

    ``top_iso: cell.top.apex -> top.apex`` and likewise for the bottom must
    commute with the feet maps (see :func:`open_graph_iso`).
    """
    return TwoCell(
        top, bottom, cell.middle,
        compose(top_iso, cell.up_leg), compose(bottom_iso, cell.down_leg),
        cell.mid_in, cell.mid_out, unchecked=cell.unchecked,
    )


# ---------------------------------------------------------------- coherence


def associator(r: OpenGraph, s: OpenGraph, t: OpenGraph) -> TwoCell:
    """``(R;S);T => R;(S;T)`` with the ternary pushout as middle."""
    if r.right_foot != s.left_foot or s.right_foot != t.left_foot:
        raise FootMismatch("associator: cospans are not chain-compatible")
    rs, w_rs = compose_cospans_witness(r, s)
    top, w_top = compose_cospans_witness(rs, t)
    st, w_st = compose_cospans_witness(s, t)
    bottom, w_bot = compose_cospans_witness(r, st)

    c1 = gc.coproduct(r.apex, s.apex)
    c2 = gc.coproduct(c1.object, t.apex)
    into_r = compose(c2.legs[0], c1.legs[0])
    into_s = compose(c2.legs[0], c1.legs[1])
    into_t = c2.legs[1]
    feet = gc.coproduct(s.left_foot, s.right_foot)
    coeq = gc.coequalizer(
        gc.copair(feet, compose(into_r, r.out_leg), compose(into_s, s.out_leg)),
        gc.copair(feet, compose(into_s, s.in_leg), compose(into_t, t.in_leg)),
    )
    (q,) = coeq.legs

    def down_to(h_r, h_s, h_t):
        return gc.mediate_coequalizer(coeq, gc.copair(c2, gc.copair(c1, h_r, h_s), h_t))

    up = down_to(
        compose(w_top.legs[0], w_rs.legs[0]),
        compose(w_top.legs[0], w_rs.legs[1]),
        w_top.legs[1],
    )
    down = down_to(
        w_bot.legs[0],
        compose(w_bot.legs[1], w_st.legs[0]),
        compose(w_bot.legs[1], w_st.legs[1]),
    )
    mid_in = gc.compose_all(q, into_r, r.in_leg)
    mid_out = gc.compose_all(q, into_t, t.out_leg)
    return TwoCell(top, bottom, coeq.object, up, down, mid_in, mid_out)


def right_unitor(s: OpenGraph) -> TwoCell:
    """``S ; id_Y => S`` with middle ``S``."""
    top, w = compose_cospans_witness(s, identity_cospan(s.right_foot))
    return TwoCell(top, s, s.apex, w.legs[0], gc.identity(s.apex), s.in_leg, s.out_leg)


def left_unitor(t: OpenGraph) -> TwoCell:
    """``id_Y ; T => T`` with middle ``T``."""
    top, w = compose_cospans_witness(identity_cospan(t.left_foot), t)
    return TwoCell(top, t, t.apex, w.legs[1], gc.identity(t.apex), t.in_leg, t.out_leg)


def pentagon(q: OpenGraph, r: OpenGraph, s: OpenGraph, t: OpenGraph) -> tuple[TwoCell, TwoCell]:
    """Both sides of the pentagon identity for four composable open graphs."""
    rs = compose_cospans(r, s)
    st = compose_cospans(s, t)
    qr = compose_cospans(q, r)
    lhs = vcompose(
        vcompose(hcompose(associator(q, r, s), identity_twocell(t)), associator(q, rs, t)),
        hcompose(identity_twocell(q), associator(r, s, t)),
    )
    rhs = vcompose(associator(qr, s, t), associator(q, r, st))
    return lhs, rhs


def triangle(s: OpenGraph, t: OpenGraph) -> tuple[TwoCell, TwoCell]:
    """Both sides of the triangle identity for ``S: X -> Y`` and ``T: Y -> Z``."""
    y = identity_cospan(s.right_foot)
    lhs = vcompose(associator(s, y, t), hcompose(identity_twocell(s), left_unitor(t)))
    rhs = hcompose(right_unitor(s), identity_twocell(t))
    return lhs, rhs


# ---------------------------------------------------------------- interchange


@dataclass(frozen=True)
class InterchangeResult:
    holds: bool
    lhs: TwoCell
    rhs: TwoCell
    witness: Optional[GraphHom]


def check_interchange(ss: TwoCell, s2: TwoCell, ts: TwoCell, t2: TwoCell) -> InterchangeResult:
    """Compare ``(ss ; s2) beside (ts ; t2)`` with ``(ss beside ts) ; (s2 beside t2)``.

    ``ss: L => S`` and ``s2: S => L'`` live over ``X -> Y``; ``ts: R => T``
    and ``t2: T => R'`` over ``Y -> Z``.
    """
    try:
        lhs = hcompose(vcompose(ss, s2), vcompose(ts, t2))
        rhs = vcompose(hcompose(ss, ts), hcompose(s2, t2))
    except (CellMismatch, FootMismatch) as exc:
        raise NotComposable(str(exc)) from exc
    witness = twocell_iso(lhs, rhs)
    return InterchangeResult(witness is not None, lhs, rhs, witness)
