"""Rewrite the three-node example and write DOT files for each stage.

    python3 scripts/worked_example.py [--dot-dir figures/]

Prints the rewritten graph, the context, and whether the derivation's
2-cell agrees with the one stored in the workspace.
"""
import argparse
from pathlib import Path

from spancospan import cospan as ca
from spancospan import rewrite as rw
from spancospan import workspace as wsio

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--workspace", type=Path, default=ROOT / "workspaces" / "rewrite_example.json")
    parser.add_argument("--dot-dir", type=Path)
    args = parser.parse_args()

    ws = wsio.load(args.workspace)
    p, m0, g = ws.get("p"), ws.get("m0"), ws.get("G_open")
    step = rw.io_derive(p, m0, g)
    d = step.derivation
    print(f"G: {g.apex}")
    print(f"E: {d.context}")
    print(f"D: {d.result}")
    cell = rw.derivation_to_twocell(step)
    expected = ws.get("expected_cell")
    top_iso = ca.open_graph_iso(cell.top, expected.top)
    bottom_iso = ca.open_graph_iso(cell.bottom, expected.bottom)
    moved = ca.transport(cell, expected.top, top_iso, expected.bottom, bottom_iso)
    print(f"2-cell matches the stored one: {ca.iso_class_equal(moved, expected)}")

    if args.dot_dir:
        args.dot_dir.mkdir(parents=True, exist_ok=True)
        for name, obj in (("production", p), ("source", g), ("target", step.target), ("cell", cell)):
            (args.dot_dir / f"{name}.dot").write_text(wsio.to_dot(obj, name))
        print(f"wrote DOT files to {args.dot_dir}")


if __name__ == "__main__":
    main()
