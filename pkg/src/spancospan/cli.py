"""Command-line front end.

Every command except ``laws`` takes a workspace file as its first
argument. Exit status is 0 on success, 1 on a domain failure (no
isomorphism, no pushout complement, a failing law) and 2 on usage errors,
unreadable workspaces and unknown names.

Examples::

    spancospan laws counterexample set
    spancospan graph pushout ws.json f g --out P
    spancospan rewrite apply ws.json --production p --match m0
    spancospan export dot ws.json S --out s.dot
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import cospan as ca
from . import graph as gc
from . import laws
from . import rewrite as rw
from . import workspace as wsio
from .errors import ParseError, SpanCospanError, ValidationError


class DomainFailure(Exception):
    """A well-formed request whose answer is negative."""


def _emit(obj) -> None:
    print(json.dumps(wsio.to_json(obj), sort_keys=True))


def _store(args, ws: wsio.Workspace, obj) -> None:
    if getattr(args, "out", None):
        ws.add(args.out, obj)
        wsio.save(ws, args.workspace)
        print(f"saved {args.out} to {args.workspace}")


def _load(args) -> wsio.Workspace:
    return wsio.load(args.workspace, allow_nonmonic=getattr(args, "allow_nonmonic", False))


# ---------------------------------------------------------------- graph


def cmd_graph_validate(args) -> None:
    ws = _load(args)
    obj = ws.get(args.name)
    kind = wsio._KINDS[type(obj)]
    if isinstance(obj, gc.FinGraph):
        detail = f"nodes={obj.node_count} edges={obj.edge_count}"
    elif isinstance(obj, gc.GraphHom):
        detail = f"mono={gc.is_mono(obj)} epi={gc.is_epi(obj)}"
    elif isinstance(obj, ca.OpenGraph):
        detail = f"apex_nodes={obj.apex.node_count} discrete_feet={obj.has_discrete_feet()}"
    else:
        detail = ""
    print(f"{args.name}: valid {kind[:-1]} {detail}".rstrip())


def cmd_graph_iso(args) -> None:
    ws = _load(args)
    g, h = ws.get_kind(args.g, "graphs"), ws.get_kind(args.h, "graphs")
    iso = gc.iso_search(g, h)
    if iso is None:
        print("not isomorphic")
        raise DomainFailure(f"{args.g} and {args.h} are not isomorphic")
    print(json.dumps({"isomorphic": True, "nodes": list(iso.node_map), "edges": list(iso.edge_map)}))


def _span_legs(ws, args):
    f, g = ws.get_kind(args.f, "homs"), ws.get_kind(args.g, "homs")
    return f, g


def cmd_graph_pushout(args) -> None:
    ws = _load(args)
    f, g = _span_legs(ws, args)
    w = gc.pushout(f, g)
    _emit(w.object)
    for leg in w.legs:
        print(json.dumps({"nodes": list(leg.node_map), "edges": list(leg.edge_map)}))
    _store(args, ws, w.object)


def cmd_graph_pullback(args) -> None:
    ws = _load(args)
    f, g = _span_legs(ws, args)
    w = gc.pullback(f, g)
    _emit(w.object)
    for leg in w.legs:
        print(json.dumps({"nodes": list(leg.node_map), "edges": list(leg.edge_map)}))
    _store(args, ws, w.object)


# ---------------------------------------------------------------- cospan / twocell


def cmd_cospan_compose(args) -> None:
    ws = _load(args)
    c = ca.compose_cospans(ws.get_kind(args.a, "cospans"), ws.get_kind(args.b, "cospans"))
    _emit(c)
    _store(args, ws, c)


def cmd_twocell_vcomp(args) -> None:
    ws = _load(args)
    cell = ca.vcompose(ws.get_kind(args.a, "twocells"), ws.get_kind(args.b, "twocells"))
    _emit(cell)
    _store(args, ws, cell)


def cmd_twocell_hcomp(args) -> None:
    ws = _load(args)
    cell = ca.hcompose(ws.get_kind(args.a, "twocells"), ws.get_kind(args.b, "twocells"))
    _emit(cell)
    _store(args, ws, cell)


def cmd_twocell_isoeq(args) -> None:
    ws = _load(args)
    a, b = ws.get_kind(args.a, "twocells"), ws.get_kind(args.b, "twocells")
    iso = ca.twocell_iso(a, b)
    if iso is None:
        print("not iso-class-equal")
        raise DomainFailure(f"{args.a} and {args.b} are not iso-class-equal")
    print(json.dumps({"iso_class_equal": True, "nodes": list(iso.node_map), "edges": list(iso.edge_map)}))


# ---------------------------------------------------------------- laws


def _report(args, report: laws.SuiteReport) -> None:
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(report.text())
    if report.failed:
        raise DomainFailure(f"{report.name}: {report.failed} checks failed")


def cmd_laws_suite(args) -> None:
    config = laws.SuiteConfig(args.cmd, args.seed, args.cases, args.max_size, getattr(args, "allow_nonmonic", False))
    _report(args, laws.run_suite(config))


def cmd_laws_counterexample(args) -> None:
    if args.which == "set":
        res = laws.set_counterexample()
        print(f"lhs={res.lhs_size} rhs={res.rhs_size}")
    else:
        res = laws.bool_counterexample()
        print(f"lhs={int(res.lhs)} rhs={int(res.rhs)}")


# ---------------------------------------------------------------- rewrite


def _target(ws, name):
    obj = ws.get(name)
    if isinstance(obj, (ca.OpenGraph, gc.FinGraph)):
        return obj
    raise KeyError(f"{name!r} is neither a graph nor a cospan")


def cmd_rewrite_match(args) -> None:
    ws = _load(args)
    p = ws.get_kind(args.production, "productions")
    target = _target(ws, args.graph)
    if isinstance(target, ca.OpenGraph) and isinstance(p, rw.InterfaceProduction):
        matches = rw.io_matches(p, target, args.monic)
    else:
        base = p.base if isinstance(p, rw.InterfaceProduction) else p
        apex = target.apex if isinstance(target, ca.OpenGraph) else target
        matches = rw.find_matches(base.left, apex, args.monic)
    base = p.base if isinstance(p, rw.InterfaceProduction) else p
    print(f"matches={len(matches)}")
    for i, m in enumerate(matches):
        ok = rw.pushout_complement(base.l, m) is not None
        print(json.dumps({"index": i, "nodes": list(m.node_map), "edges": list(m.edge_map), "applicable": ok}))


def cmd_rewrite_apply(args) -> None:
    ws = _load(args)
    p = ws.get_kind(args.production, "productions")
    m = ws.get_kind(args.match, "homs")
    if args.graph:
        g = ws.get_kind(args.graph, "cospans")
        if not isinstance(p, rw.InterfaceProduction):
            raise ValidationError(f"production {args.production} has no interface")
        step = rw.io_derive(p, m, g)
        if step is None:
            print("no pushout complement")
            raise DomainFailure("gluing condition fails: " + "; ".join(rw.gluing_violations(p.base.l, m)))
        _emit(step.target)
        if args.cell:
            cell = rw.derivation_to_twocell(step)
            ws.add(args.cell, cell)
        _store(args, ws, step.target)
        if args.cell and not args.out:
            wsio.save(ws, args.workspace)
        return
    base = p.base if isinstance(p, rw.InterfaceProduction) else p
    if m.dom != base.left:
        raise ValidationError(f"match {args.match} does not start at the production's left graph")
    d = rw.derive(base, m)
    if d is None:
        print("no pushout complement")
        raise DomainFailure("gluing condition fails: " + "; ".join(rw.gluing_violations(base.l, m)))
    _emit(d.result)
    _store(args, ws, d.result)


def cmd_rewrite_derive_chain(args) -> None:
    ws = _load(args)
    start = ws.get_kind(args.start, "cospans")
    prods = [ws.get_kind(n, "productions") for n in args.productions]
    for n, p in zip(args.productions, prods):
        if not isinstance(p, rw.InterfaceProduction):
            raise ValidationError(f"production {n} has no interface")
    try:
        steps = rw.derive_chain(start, prods, args.monic)
    except LookupError as exc:
        raise DomainFailure(str(exc)) from exc
    for i, s in enumerate(steps):
        print(f"step {i}: nodes={s.target.apex.node_count} edges={s.target.apex.edge_count}")
    cell = rw.chain_twocell(steps)
    _emit(cell)
    _store(args, ws, cell)


def cmd_rewrite_language(args) -> None:
    ws = _load(args)
    g = ws.get_kind(args.grammar, "grammars")
    members = rw.language(g, args.depth, args.size_cap, args.monic)
    print(f"members={len(members)}")
    for h in members:
        _emit(h)


# ---------------------------------------------------------------- export


def cmd_export_dot(args) -> None:
    ws = _load(args)
    text = wsio.to_dot(ws.get(args.name), args.name)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spancospan", description="Open graphs, spans of cospans and DPO rewriting.")
    groups = parser.add_subparsers(dest="group", required=True)

    wsp = argparse.ArgumentParser(add_help=False)
    wsp.add_argument("workspace", help="workspace JSON file")
    wsp.add_argument("--allow-nonmonic", action="store_true", help="accept 2-cells marked unchecked")
    outp = argparse.ArgumentParser(add_help=False)
    outp.add_argument("--out", help="store the result under this name in the workspace")

    def sub(group, name, fn, parents=(), help=None):
        p = group.add_parser(name, parents=list(parents), help=help)
        p.set_defaults(fn=fn)
        return p

    graph = groups.add_parser("graph", help="graphs and homs").add_subparsers(dest="cmd", required=True)
    p = sub(graph, "validate", cmd_graph_validate, [wsp], "load and validate one named object")
    p.add_argument("name")
    p = sub(graph, "iso", cmd_graph_iso, [wsp], "search for an isomorphism")
    p.add_argument("g")
    p.add_argument("h")
    for name, fn in (("pushout", cmd_graph_pushout), ("pullback", cmd_graph_pullback)):
        p = sub(graph, name, fn, [wsp, outp], f"{name} of two homs")
        p.add_argument("f")
        p.add_argument("g")

    cospan = groups.add_parser("cospan", help="open graphs").add_subparsers(dest="cmd", required=True)
    p = sub(cospan, "compose", cmd_cospan_compose, [wsp, outp], "compose A: X->Y with B: Y->Z")
    p.add_argument("a")
    p.add_argument("b")

    twocell = groups.add_parser("twocell", help="spans of cospans").add_subparsers(dest="cmd", required=True)
    for name, fn, parents in (
        ("vcomp", cmd_twocell_vcomp, [wsp, outp]),
        ("hcomp", cmd_twocell_hcomp, [wsp, outp]),
        ("isoeq", cmd_twocell_isoeq, [wsp]),
    ):
        p = sub(twocell, name, fn, parents)
        p.add_argument("a", help="2-cell name (id_<cospan> for an identity)")
        p.add_argument("b")

    lawsp = groups.add_parser("laws", help="law suites and counterexamples").add_subparsers(dest="cmd", required=True)
    for name in laws.SUITES:
        p = sub(lawsp, name, cmd_laws_suite)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cases", type=int, default=100)
        p.add_argument("--max-size", type=int)
        p.add_argument("--json", action="store_true", help="print the machine-readable summary")
        if name == "interchange":
            p.add_argument("--allow-nonmonic", action="store_true", help="generate cells with non-monic legs")
    p = sub(lawsp, "counterexample", cmd_laws_counterexample)
    p.add_argument("which", choices=["set", "bool"])

    rewrite = groups.add_parser("rewrite", help="double-pushout rewriting").add_subparsers(dest="cmd", required=True)
    p = sub(rewrite, "match", cmd_rewrite_match, [wsp])
    p.add_argument("--production", required=True)
    p.add_argument("--graph", required=True, help="graph or open graph to match into")
    p.add_argument("--monic", action="store_true")
    p = sub(rewrite, "apply", cmd_rewrite_apply, [wsp, outp])
    p.add_argument("--production", required=True)
    p.add_argument("--match", required=True)
    p.add_argument("--graph", help="open graph to rewrite, keeping its interface")
    p.add_argument("--cell", help="store the derivation's 2-cell under this name")
    p = sub(rewrite, "derive-chain", cmd_rewrite_derive_chain, [wsp, outp])
    p.add_argument("--start", required=True)
    p.add_argument("--productions", nargs="+", required=True)
    p.add_argument("--monic", action="store_true")
    p = sub(rewrite, "language", cmd_rewrite_language, [wsp])
    p.add_argument("--grammar", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--size-cap", type=int, required=True)
    p.add_argument("--monic", action="store_true")

    export = groups.add_parser("export", help="figures").add_subparsers(dest="cmd", required=True)
    p = sub(export, "dot", cmd_export_dot, [wsp])
    p.add_argument("name")
    p.add_argument("--out", help="file to write (stdout if omitted)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.fn(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except (DomainFailure, SpanCospanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
