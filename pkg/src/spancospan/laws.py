"""Counterexamples to interchange and randomized law suites.

The counterexamples show interchange failing for spans with non-monic legs
(finite sets, modelled as discrete graphs) and failing in the two-element
Boolean algebra even with monic legs. The suites check interchange, the
adhesive properties of graphs, and bicategory coherence on seeded random
instances and report pass/fail counts.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional

from . import cospan as ca
from . import gen
from . import graph as gc
from .graph import GraphHom, compose

# ---------------------------------------------------------------- Boolean algebra


class BoolObj(IntEnum):
    """An object of the poset category ``0 -> 1``."""

    BOTTOM = 0
    TOP = 1

    def meet(self, other: "BoolObj") -> "BoolObj":
        return BoolObj(min(self, other))

    def join(self, other: "BoolObj") -> "BoolObj":
        return BoolObj(max(self, other))


def bool_arrow_exists(a: BoolObj, b: BoolObj) -> bool:
    return a <= b


def bool_arrow_is_mono(a: BoolObj, b: BoolObj) -> bool:
    # at most one arrow between any two objects, so every arrow cancels
    return bool_arrow_exists(a, b)


def bool_arrow_is_epi(a: BoolObj, b: BoolObj) -> bool:
    return bool_arrow_exists(a, b)


def bool_arrow_is_iso(a: BoolObj, b: BoolObj) -> bool:
    return bool_arrow_exists(a, b) and bool_arrow_exists(b, a)


@dataclass(frozen=True)
class BoolResult:
    lhs: BoolObj
    rhs: BoolObj

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def bool_counterexample(s1=1, s=1, s2=0, t1=0, t=1, t2=1, y=0) -> BoolResult:
    """Evaluate both sides of interchange in ``0 -> 1``.

    ``s1, s2`` are the middles over ``s`` (the first-then-second pair on the
    left), ``t1, t2`` over ``t``, all receiving ``y``. Pullbacks are meets
    and pushouts under ``y`` are joins. Defaults give the failing instance.
    """
    s1, s, s2, t1, t, t2, y = (BoolObj(v) for v in (s1, s, s2, t1, t, t2, y))
    for lo, hi in ((s1, s), (s2, s), (t1, t), (t2, t), (y, s1), (y, s2), (y, t1), (y, t2)):
        if not bool_arrow_exists(lo, hi):
            raise ValueError(f"no arrow {int(lo)} -> {int(hi)} in the Boolean algebra")
    lhs = s1.meet(s2).join(t1.meet(t2))
    rhs = s1.join(t1).meet(s2.join(t2))
    return BoolResult(lhs, rhs)


# ---------------------------------------------------------------- finite sets


@dataclass(frozen=True)
class SetResult:
    lhs_size: int
    rhs_size: int
    holds: bool


def _point(n):
    return gc.discrete(n)


def _const(dom, cod, value=0):
    return GraphHom(dom, cod, [value] * dom.node_count)


def set_counterexample(s1_size=2, s2_size=2, t1_size=2, points=(0, 0, 0)) -> SetResult:
    """Interchange for finite sets with non-monic legs.

    ``S, Y, T, T''`` are singletons; ``S', S'', T'`` have the given sizes and
    receive ``Y`` at ``points``. The outer cospan apexes ``L, L', R, R'``
    are singletons and the outer feet are empty, so every other map is
    forced. Sets are discrete graphs; sizes are node counts.
    """
    empty, one = gc.empty(), _point(1)
    s1, s2, t1, t2 = _point(s1_size), _point(s2_size), _point(t1_size), one
    p1, p2, p3 = points

    def singleton_cospan(left, right):
        return ca.OpenGraph(left, right, one, _const(left, one), _const(right, one))

    left_c = singleton_cospan(empty, one)
    right_c = singleton_cospan(one, empty)
    from_empty = lambda g: gc.initial_map(g)  # noqa: E731

    def cell(top, bottom, mid, y_point, y_on_right):
        y_map = GraphHom(one, mid, [y_point])
        mid_in, mid_out = (from_empty(mid), y_map) if y_on_right else (y_map, from_empty(mid))
        return ca.unsafe_twocell(top, bottom, mid, _const(mid, one), _const(mid, one), mid_in, mid_out)

    # L, S, L' share one shape, as do R, T, R'; separate names keep roles clear
    L = S = Lp = left_c
    R = T = Rp = right_c
    ss = cell(L, S, s1, p1, True)
    s2c = cell(S, Lp, s2, p2, True)
    ts = cell(R, T, t1, p3, False)
    t2c = cell(T, Rp, t2, 0, False)
    res = ca.check_interchange(ss, s2c, ts, t2c)
    return SetResult(res.lhs.middle.node_count, res.rhs.middle.node_count, res.holds)


def set_counterexample_all_choices() -> list[SetResult]:
    """The failing instance under every choice of where ``Y`` lands."""
    return [set_counterexample(points=p) for p in itertools.product(range(2), repeat=3)]


# ---------------------------------------------------------------- reports


@dataclass
class SuiteReport:
    name: str
    seed: int
    cases: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, check: str, ok: bool, case: int, detail: str = "") -> bool:
        counts = self.checks.setdefault(check, [0, 0])
        counts[0 if ok else 1] += 1
        if not ok:
            self.failures.append(f"case {case}: {check} failed" + (f"\n{detail}" if detail else ""))
        return ok

    @property
    def passed(self) -> int:
        return sum(c[0] for c in self.checks.values())

    @property
    def failed(self) -> int:
        return sum(c[1] for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "checks": {k: {"passed": v[0], "failed": v[1]} for k, v in sorted(self.checks.items())},
            "passed": self.passed,
            "failed": self.failed,
            "failures": list(self.failures),
        }

    def text(self) -> str:
        lines = [f"{self.name} seed={self.seed} cases={self.cases} passed={self.passed} failed={self.failed}"]
        for k, (ok, bad) in sorted(self.checks.items()):
            lines.append(f"  {k}: passed={ok} failed={bad}")
        lines.extend(self.failures)
        return "\n".join(lines)


def dump_cell(cell: ca.TwoCell) -> str:
    return (
        f"    top: {cell.top.apex} in={cell.top.in_leg} out={cell.top.out_leg}\n"
        f"    bottom: {cell.bottom.apex} in={cell.bottom.in_leg} out={cell.bottom.out_leg}\n"
        f"    middle: {cell.middle} up={cell.up_leg} down={cell.down_leg} "
        f"mid_in={cell.mid_in} mid_out={cell.mid_out}"
    )


# ---------------------------------------------------------------- suites


def random_interchange_suite(seed: int, cases: int, max_size: int = 4, allow_nonmonic: bool = False) -> SuiteReport:
    report = SuiteReport("interchange", seed, cases)
    for i in range(cases):
        rng = gen.case_rng(seed, i)
        quad = gen.random_quadruple(rng, max_size, nonmonic=allow_nonmonic)
        res = ca.check_interchange(*quad)
        detail = "" if res.holds else "\n".join(dump_cell(c) for c in quad)
        report.record("interchange", res.holds, i, detail)
    return report


def pullback_by_enumeration(m: GraphHom, f: GraphHom, b: GraphHom, c: GraphHom) -> bool:
    """Whether the square ``b . m = c . f`` has the pullback property.

    Enumerates every hom from the chosen pullback ``Q`` of ``b, c`` into the
    square's corner and requires exactly one to commute with the
    projections, and that it inverts the canonical comparison.
    """
    if not compose(b, m).same_maps(compose(c, f)):
        return False
    q = gc.pullback(b, c)
    p1, p2 = q.legs
    mediators = [
        h for h in gc.enumerate_homs(q.object, m.dom)
        if compose(m, h).same_maps(p1) and compose(f, h).same_maps(p2)
    ]
    if len(mediators) != 1:
        return False
    (h,) = mediators
    u = gc.mediate_pullback(q, m, f)
    return compose(h, u).same_maps(gc.identity(m.dom)) and compose(u, h).same_maps(gc.identity(q.object))


def cube_iff_holds(cube: gen.Cube) -> tuple[bool, bool, bool]:
    """``(hypotheses_hold, bottom_is_pullback, back_faces_are_pushouts)``."""
    monos = (cube.top_ab, cube.top_ac, cube.top_bd, cube.top_cd, cube.bot_ab, cube.bot_ac, cube.bot_bd, cube.bot_cd)
    hyp = (
        all(gc.is_mono(h) for h in monos)
        and gc.is_pullback_square(cube.top_ab, cube.top_ac, cube.top_bd, cube.top_cd)
        and gc.is_pushout_square(cube.top_bd, cube.b, cube.d, cube.bot_bd)
        and gc.is_pushout_square(cube.top_cd, cube.c, cube.d, cube.bot_cd)
    )
    bottom_pb = gc.is_pullback_square(cube.bot_ab, cube.bot_ac, cube.bot_bd, cube.bot_cd)
    back_po = gc.is_pushout_square(cube.top_ab, cube.a, cube.b, cube.bot_ab) and gc.is_pushout_square(
        cube.top_ac, cube.a, cube.c, cube.bot_ac
    )
    return hyp, bottom_pb, back_po


def adhesive_suite(seed: int, cases: int, max_size: int = 5) -> SuiteReport:
    """Monos stable under pushout, pushouts along monos are pullbacks, the dual cube,
    disjoint coproducts, and pullback-stable coequalizers."""
    report = SuiteReport("adhesive", seed, cases)
    for i in range(cases):
        rng = gen.case_rng(seed, i)
        m = gen.random_mono(rng, max_size)
        f = gen.random_map_from(rng, m.dom, max_size)
        w = gc.pushout(m, f)
        to_b, to_c = w.legs
        report.record("mono_stable_under_pushout", gc.is_mono(to_c), i, f"    m={m} {m.cod}\n    f={f} {f.cod}")
        report.record(
            "pushout_along_mono_is_pullback",
            pullback_by_enumeration(m, f, to_b, to_c),
            i,
            f"    m={m} {m.cod}\n    f={f} {f.cod}",
        )

        cube = gen.random_vk_cube(rng, max_size)
        hyp, bottom_pb, back_po = cube_iff_holds(cube)
        report.record("vk_cube", hyp and bottom_pb == back_po, i, f"    {cube}")

        g, h = gen.random_graph(rng, 3), gen.random_graph(rng, 3)
        cop = gc.coproduct(g, h)
        report.record("coproducts_disjoint", gc.pullback(*cop.legs).object.node_count == 0 and
                      gc.pullback(*cop.legs).object.edge_count == 0, i)

        base = gen.random_graph(rng, max_size)
        q = gen.random_quotient(rng, base, rng.randint(0, 2))
        along = gen.random_hom(rng, gen.random_graph(rng, 3), q.cod)
        if along is not None:
            pb = gc.pullback(q, along)
            report.record("regular_epi_stable", gc.is_epi(pb.legs[1]), i)
    return report


def coherence_suite(seed: int, cases: int, max_size: int = 3) -> SuiteReport:
    report = SuiteReport("coherence", seed, cases)
    for i in range(cases):
        rng = gen.case_rng(seed, i)
        q, r, s, t = gen.random_chain(rng, 4, max_size)
        lhs, rhs = ca.pentagon(q, r, s, t)
        report.record("pentagon", ca.iso_class_equal(lhs, rhs), i, dump_cell(lhs) + "\n" + dump_cell(rhs))
        s, t = gen.random_chain(rng, 2, max_size)
        lhs, rhs = ca.triangle(s, t)
        report.record("triangle", ca.iso_class_equal(lhs, rhs), i, dump_cell(lhs) + "\n" + dump_cell(rhs))
    return report


# ---------------------------------------------------------------- configured runs


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    seed: int = 0
    cases: int = 100
    max_size: Optional[int] = None
    allow_nonmonic: bool = False


SUITES = ("interchange", "adhesive", "coherence")


def run_suite(config: SuiteConfig) -> SuiteReport:
    if config.suite == "interchange":
        return random_interchange_suite(config.seed, config.cases, config.max_size or 4, config.allow_nonmonic)
    if config.allow_nonmonic:
        raise ValueError("allow_nonmonic only applies to the interchange suite")
    if config.suite == "adhesive":
        return adhesive_suite(config.seed, config.cases, config.max_size or 5)
    if config.suite == "coherence":
        return coherence_suite(config.seed, config.cases, config.max_size or 3)
    raise ValueError(f"unknown suite {config.suite!r}; expected one of {SUITES}")
