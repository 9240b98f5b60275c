"""Workspace files: named graphs, homs, open graphs, 2-cells, productions, grammars.

A workspace is one JSON document. Objects refer to each other by name;
names are unique across the whole file. Graphs are written as
``{"nodes": n, "edges": [[s, t], ...]}`` and homs as index lists::

    {
      "format": "spancospan-workspace/1",
      "graphs": {"G": {"nodes": 2, "edges": [[0, 1]]}},
      "homs": {"f": {"dom": "K", "cod": "G", "nodes": [0, 1], "edges": []}},
      "cospans": {"S": {"left": "X", "right": "Y", "apex": "G", "in": "i", "out": "o"}},
      "twocells": {"a": {"top": "S", "bottom": "T", "middle": "M",
                         "up": "u", "down": "d", "mid_in": "mi", "mid_out": "mo"}},
      "productions": {"p": {"l": "l", "r": "r",
                            "input": "I", "output": "O", "i_map": "ki", "o_map": "ko"}},
      "grammars": {"g": {"start": ["S"], "productions": ["p"]}}
    }

The interface keys of a production are optional. Saving is canonical:
``save(load(save(ws)))`` reproduces the same bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from . import cospan as ca
from . import graph as gc
from .errors import ParseError, SpanCospanError, ValidationError
from .graph import FinGraph, GraphHom
from .rewrite import Grammar, InterfaceProduction, Production

FORMAT = "spancospan-workspace/1"
SECTIONS = ("graphs", "homs", "cospans", "twocells", "productions", "grammars")
_KINDS = {
    FinGraph: "graphs",
    GraphHom: "homs",
    ca.OpenGraph: "cospans",
    ca.TwoCell: "twocells",
    Production: "productions",
    InterfaceProduction: "productions",
    Grammar: "grammars",
}

WorkspaceObject = Union[FinGraph, GraphHom, ca.OpenGraph, ca.TwoCell, Production, InterfaceProduction, Grammar]


@dataclass
class Workspace:
    graphs: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    cospans: dict = field(default_factory=dict)
    twocells: dict = field(default_factory=dict)
    productions: dict = field(default_factory=dict)
    grammars: dict = field(default_factory=dict)

    def section(self, name: str) -> dict:
        return getattr(self, name)

    def __contains__(self, name: str) -> bool:
        return any(name in self.section(s) for s in SECTIONS)

    def get(self, name: str) -> WorkspaceObject:
        for s in SECTIONS:
            if name in self.section(s):
                return self.section(s)[name]
        # id_<cospan> names the identity 2-cell on a stored cospan
        if name.startswith("id_") and name[3:] in self.cospans:
            return ca.identity_twocell(self.cospans[name[3:]])
        raise KeyError(f"no object named {name!r}")

    def get_kind(self, name: str, kind: str) -> Any:
        obj = self.get(name)
        if _KINDS.get(type(obj)) != kind:
            raise KeyError(f"{name!r} is not in {kind}")
        return obj

    def add(self, name: str, obj: WorkspaceObject) -> str:
        """Store ``obj`` under ``name``, naming any unnamed parts ``name.part``."""
        kind = _KINDS[type(obj)]
        for s in SECTIONS:
            if s != kind and name in self.section(s):
                raise ValidationError(f"name {name!r} already used in {s}")
        self.section(kind)[name] = obj
        return name

    def names(self) -> list[str]:
        return sorted(n for s in SECTIONS for n in self.section(s))


# ---------------------------------------------------------------- encoding


class _Namer:
    """Assigns names to the parts of stored objects while encoding."""

    def __init__(self, ws: Workspace):
        self.ws = ws
        self.out = {s: {} for s in SECTIONS}
        self.by_value: dict = {}
        self.extra_cospans: dict = {}
        for s in ("graphs", "homs"):
            for n in sorted(ws.section(s)):
                self.by_value.setdefault((s, ws.section(s)[n]), n)

    def _fresh(self, base: str) -> str:
        name, i = base, 1
        while name in self.ws or any(name in d for d in self.out.values()):
            i += 1
            name = f"{base}{i}"
        return name

    def graph(self, g: FinGraph, hint: str, name: Optional[str] = None) -> str:
        key = ("graphs", g)
        if name is None:
            if key not in self.by_value:
                self.by_value[key] = self._fresh(hint)
            name = self.by_value[key]
        self.out["graphs"][name] = {"nodes": g.node_count, "edges": [list(e) for e in g.edges]}
        return name

    def hom(self, h: GraphHom, hint: str, name: Optional[str] = None) -> str:
        key = ("homs", h)
        if name is None:
            if key not in self.by_value:
                self.by_value[key] = self._fresh(hint)
            name = self.by_value[key]
        self.out["homs"][name] = {
            "dom": self.graph(h.dom, hint + ".dom"),
            "cod": self.graph(h.cod, hint + ".cod"),
            "nodes": list(h.node_map),
            "edges": list(h.edge_map),
        }
        return name

    def cospan(self, c: ca.OpenGraph, name: str) -> str:
        self.out["cospans"][name] = {
            "left": self.graph(c.left_foot, name + ".left"),
            "right": self.graph(c.right_foot, name + ".right"),
            "apex": self.graph(c.apex, name + ".apex"),
            "in": self.hom(c.in_leg, name + ".in"),
            "out": self.hom(c.out_leg, name + ".out"),
        }
        return name

    def cospan_ref(self, c: ca.OpenGraph, hint: str) -> str:
        for n in sorted(self.ws.cospans):
            if self.ws.cospans[n] == c:
                return n
        if c not in self.extra_cospans:
            self.extra_cospans[c] = self.cospan(c, self._fresh(hint))
        return self.extra_cospans[c]


def encode(ws: Workspace) -> dict:
    namer = _Namer(ws)
    for n in sorted(ws.graphs):
        namer.graph(ws.graphs[n], n, name=n)
    for n in sorted(ws.homs):
        namer.hom(ws.homs[n], n, name=n)
    for n in sorted(ws.cospans):
        namer.cospan(ws.cospans[n], n)
    for n in sorted(ws.twocells):
        t = ws.twocells[n]
        entry = {
            "top": namer.cospan_ref(t.top, n + ".top"),
            "bottom": namer.cospan_ref(t.bottom, n + ".bottom"),
            "middle": namer.graph(t.middle, n + ".middle"),
            "up": namer.hom(t.up_leg, n + ".up"),
            "down": namer.hom(t.down_leg, n + ".down"),
            "mid_in": namer.hom(t.mid_in, n + ".mid_in"),
            "mid_out": namer.hom(t.mid_out, n + ".mid_out"),
        }
        if t.unchecked:
            entry["unchecked"] = True
        namer.out["twocells"][n] = entry
    for n in sorted(ws.productions):
        p = ws.productions[n]
        base = p.base if isinstance(p, InterfaceProduction) else p
        entry = {"l": namer.hom(base.l, n + ".l"), "r": namer.hom(base.r, n + ".r")}
        if isinstance(p, InterfaceProduction):
            entry.update(
                input=namer.graph(p.input, n + ".input"),
                output=namer.graph(p.output, n + ".output"),
                i_map=namer.hom(p.i_map, n + ".i_map"),
                o_map=namer.hom(p.o_map, n + ".o_map"),
            )
        namer.out["productions"][n] = entry
    for n in sorted(ws.grammars):
        g = ws.grammars[n]
        prod_names = []
        for i, p in enumerate(g.productions):
            found = [k for k in sorted(ws.productions) if ws.productions[k] == p]
            prod_names.append(found[0] if found else _encode_extra_production(namer, p, f"{n}.p{i}"))
        namer.out["grammars"][n] = {
            "start": [namer.cospan_ref(s, f"{n}.start{i}") for i, s in enumerate(g.start_graphs)],
            "productions": prod_names,
        }
    doc = {"format": FORMAT}
    for s in SECTIONS:
        doc[s] = {k: namer.out[s][k] for k in sorted(namer.out[s])}
    return doc


def _encode_extra_production(namer: _Namer, p: InterfaceProduction, name: str) -> str:
    namer.out["productions"][name] = {
        "l": namer.hom(p.base.l, name + ".l"),
        "r": namer.hom(p.base.r, name + ".r"),
        "input": namer.graph(p.input, name + ".input"),
        "output": namer.graph(p.output, name + ".output"),
        "i_map": namer.hom(p.i_map, name + ".i_map"),
        "o_map": namer.hom(p.o_map, name + ".o_map"),
    }
    return name


def _dump(value: Any, indent: int = 0) -> str:
    """JSON with flat lists kept on one line."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) or
                                       (isinstance(v, list) and all(not isinstance(w, (dict, list)) for w in v))
                                       for v in value):
        return json.dumps(value)
    if isinstance(value, list):
        items = [f"{pad}  {_dump(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value)


def dumps(ws: Workspace) -> str:
    return _dump(encode(ws)) + "\n"


def save(ws: Workspace, path) -> None:
    Path(path).write_text(dumps(ws))


# ---------------------------------------------------------------- decoding


def loads(text: str, allow_nonmonic: bool = False) -> Workspace:
    """Parse a workspace. Cells marked ``unchecked`` need ``allow_nonmonic``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("workspace must be a JSON object", 1, 1)
    unknown = set(doc) - set(SECTIONS) - {"format"}
    if unknown:
        raise ValidationError(f"unknown top-level keys: {sorted(unknown)}")
    if doc.get("format", FORMAT) != FORMAT:
        raise ValidationError(f"unsupported format {doc.get('format')!r}")
    raw = {s: doc.get(s, {}) for s in SECTIONS}
    seen: dict[str, str] = {}
    for s in SECTIONS:
        if not isinstance(raw[s], dict):
            raise ValidationError(f"section {s!r} must be an object")
        for n in raw[s]:
            if n in seen:
                raise ValidationError(f"name {n!r} appears in both {seen[n]} and {s}")
            seen[n] = s
    return _Decoder(raw, allow_nonmonic).run()


class _Decoder:
    def __init__(self, raw, allow_nonmonic: bool):
        self.raw = raw
        self.allow_nonmonic = allow_nonmonic
        self.ws = Workspace()

    def ref(self, kind: str, name, owner: str):
        table = self.ws.section(kind)
        if not isinstance(name, str) or name not in table:
            raise ValidationError(f"{owner}: reference {name!r} does not name an object in {kind}")
        return table[name]

    def field(self, entry, key, owner):
        if not isinstance(entry, dict) or key not in entry:
            raise ValidationError(f"{owner}: missing field {key!r}")
        return entry[key]

    def build(self, owner, fn):
        try:
            return fn()
        except ValidationError:
            raise
        except (SpanCospanError, TypeError, ValueError) as exc:
            raise ValidationError(f"{owner}: {exc}") from exc

    def run(self) -> Workspace:
        ws, raw = self.ws, self.raw
        for n, e in raw["graphs"].items():
            nodes, edges = self.field(e, "nodes", n), e.get("edges", []) if isinstance(e, dict) else []
            ws.graphs[n] = self.build(f"graph {n}", lambda: FinGraph(int(nodes), tuple(tuple(x) for x in edges)))
        for n, e in raw["homs"].items():
            dom = self.ref("graphs", self.field(e, "dom", n), f"hom {n}")
            cod = self.ref("graphs", self.field(e, "cod", n), f"hom {n}")
            h = self.build(f"hom {n}", lambda: GraphHom(dom, cod, self.field(e, "nodes", n), e.get("edges", [])))
            self.build(f"hom {n}", lambda: gc.validate_hom(h))
            ws.homs[n] = h
        for n, e in raw["cospans"].items():
            owner = f"cospan {n}"
            parts = [self.ref(k, self.field(e, f, owner), owner) for k, f in
                     (("graphs", "left"), ("graphs", "right"), ("graphs", "apex"), ("homs", "in"), ("homs", "out"))]
            c = ca.OpenGraph(*parts)
            self.build(owner, c.validate)
            ws.cospans[n] = c
        for n, e in raw["twocells"].items():
            owner = f"twocell {n}"
            parts = [self.ref("cospans", self.field(e, "top", owner), owner),
                     self.ref("cospans", self.field(e, "bottom", owner), owner),
                     self.ref("graphs", self.field(e, "middle", owner), owner)]
            parts += [self.ref("homs", self.field(e, f, owner), owner) for f in ("up", "down", "mid_in", "mid_out")]
            if e.get("unchecked"):
                if not self.allow_nonmonic:
                    raise ValidationError(f"{owner}: unchecked 2-cells need --allow-nonmonic")
                cell = ca.unsafe_twocell(*parts)
                problems = ca.twocell_problems(cell, require_monic=False)
                if problems:
                    raise ValidationError(f"{owner}: " + "; ".join(problems))
            else:
                cell = self.build(owner, lambda: ca.TwoCell(*parts))
            ws.twocells[n] = cell
        for n, e in raw["productions"].items():
            owner = f"production {n}"
            l = self.ref("homs", self.field(e, "l", owner), owner)
            r = self.ref("homs", self.field(e, "r", owner), owner)
            base = self.build(owner, lambda: Production(l.cod, l.dom, r.cod, l, r))
            iface = [k for k in ("input", "output", "i_map", "o_map") if k in e]
            if iface and len(iface) != 4:
                raise ValidationError(f"{owner}: interface needs input, output, i_map and o_map")
            if iface:
                parts = (self.ref("graphs", e["input"], owner), self.ref("graphs", e["output"], owner),
                         self.ref("homs", e["i_map"], owner), self.ref("homs", e["o_map"], owner))
                ws.productions[n] = self.build(owner, lambda: InterfaceProduction(base, *parts))
            else:
                ws.productions[n] = base
        for n, e in raw["grammars"].items():
            owner = f"grammar {n}"
            start = [self.ref("cospans", s, owner) for s in self.field(e, "start", owner)]
            prods = [self.ref("productions", p, owner) for p in self.field(e, "productions", owner)]
            if any(not isinstance(p, InterfaceProduction) for p in prods):
                raise ValidationError(f"{owner}: grammar productions need an interface")
            ws.grammars[n] = self.build(owner, lambda: Grammar(tuple(start), tuple(prods)))
        return ws


def load(path, allow_nonmonic: bool = False) -> Workspace:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text, allow_nonmonic)


# ---------------------------------------------------------------- standalone JSON


def to_json(obj: Any) -> Any:
    """Self-contained JSON value for printing results (parts inlined)."""
    if isinstance(obj, FinGraph):
        return {"nodes": obj.node_count, "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, GraphHom):
        return {"dom": to_json(obj.dom), "cod": to_json(obj.cod), "nodes": list(obj.node_map), "edges": list(obj.edge_map)}
    if isinstance(obj, ca.OpenGraph):
        return {"left": to_json(obj.left_foot), "right": to_json(obj.right_foot), "apex": to_json(obj.apex),
                "in": list(obj.in_leg.node_map), "out": list(obj.out_leg.node_map)}
    if isinstance(obj, ca.TwoCell):
        return {"top": to_json(obj.top), "bottom": to_json(obj.bottom), "middle": to_json(obj.middle),
                "up": [list(obj.up_leg.node_map), list(obj.up_leg.edge_map)],
                "down": [list(obj.down_leg.node_map), list(obj.down_leg.edge_map)],
                "mid_in": list(obj.mid_in.node_map), "mid_out": list(obj.mid_out.node_map)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


# ---------------------------------------------------------------- DOT


def _shape(node, inputs, outputs):
    if node in inputs and node in outputs:
        return "Msquare"
    if node in inputs:
        return "circle"
    if node in outputs:
        return "square"
    return "point"


def _dot_body(g: FinGraph, prefix: str, inputs=(), outputs=(), indent="  ") -> list[str]:
    inputs, outputs = set(inputs), set(outputs)
    lines = []
    for x in range(g.node_count):
        shape = _shape(x, inputs, outputs)
        label = "" if shape == "point" else str(x)
        lines.append(f'{indent}{prefix}{x} [shape={shape}, label="{label}"];')
    for s, t in g.edges:
        lines.append(f"{indent}{prefix}{s} -> {prefix}{t};")
    return lines


def _leg_edges(h: GraphHom, src: str, dst: str) -> list[str]:
    return [f"  {src}{x} -> {dst}{y} [style=dotted, arrowhead=empty, constraint=false];"
            for x, y in enumerate(h.node_map)]


def to_dot(obj: Any, name: str = "G") -> str:
    """DOT text: inputs as circles, outputs as squares, interior nodes as dots."""
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    if isinstance(obj, FinGraph):
        lines += _dot_body(obj, "n")
    elif isinstance(obj, ca.OpenGraph):
        lines += _dot_body(obj.apex, "n", obj.in_leg.node_map, obj.out_leg.node_map)
    elif isinstance(obj, ca.TwoCell):
        for tag, g, ins, outs in (
            ("top", obj.top.apex, obj.top.in_leg.node_map, obj.top.out_leg.node_map),
            ("mid", obj.middle, obj.mid_in.node_map, obj.mid_out.node_map),
            ("bot", obj.bottom.apex, obj.bottom.in_leg.node_map, obj.bottom.out_leg.node_map),
        ):
            lines.append(f'  subgraph "cluster_{tag}" {{')
            lines.append(f'    label="{tag}";')
            lines += _dot_body(g, tag, ins, outs, indent="    ")
            lines.append("  }")
        lines += _leg_edges(obj.up_leg, "mid", "top") + _leg_edges(obj.down_leg, "mid", "bot")
    elif isinstance(obj, (Production, InterfaceProduction)):
        base = obj.base if isinstance(obj, InterfaceProduction) else obj
        ins = outs = ()
        if isinstance(obj, InterfaceProduction):
            ins, outs = obj.i_map.node_map, obj.o_map.node_map
        marks = {
            "L": (base.left, [base.l.node_map[x] for x in ins], [base.l.node_map[x] for x in outs]),
            "K": (base.glue, ins, outs),
            "R": (base.right, [base.r.node_map[x] for x in ins], [base.r.node_map[x] for x in outs]),
        }
        for tag, (g, i, o) in marks.items():
            lines.append(f'  subgraph "cluster_{tag}" {{')
            lines.append(f'    label="{tag}";')
            lines += _dot_body(g, tag, i, o, indent="    ")
            lines.append("  }")
        lines += _leg_edges(base.l, "K", "L") + _leg_edges(base.r, "K", "R")
    else:
        raise TypeError(f"cannot export {type(obj).__name__} to DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"
