"""Write workspaces/rewrite_example.json: the three-node rewriting example.

G has nodes a, b, c (0, 1, 2) with edges a->b, b->c, a->c, input a and
output c. The production replaces the edge a->c by a loop on c, keeping
a and c as interface. The file also holds two open edges for composition
and a grammar generated by the production.
"""
import sys
from pathlib import Path

from spancospan import cospan as ca
from spancospan import graph as gc
from spancospan import workspace as wsio
from spancospan.graph import FinGraph, GraphHom
from spancospan.rewrite import Grammar, InterfaceProduction, Production


def build() -> wsio.Workspace:
    ws = wsio.Workspace()
    one = gc.discrete(1)
    L = FinGraph(2, [(0, 1)])
    K = gc.discrete(2)
    R = FinGraph(2, [(1, 1)])
    G = FinGraph(3, [(0, 1), (1, 2), (0, 2)])
    D = FinGraph(3, [(0, 1), (1, 2), (2, 2)])
    E = FinGraph(3, [(0, 1), (1, 2)])
    for name, g in (("I", one), ("O", one), ("L", L), ("K", K), ("R", R), ("G", G), ("D", D), ("E", E)):
        ws.add(name, g)

    l = GraphHom(K, L, [0, 1])
    r = GraphHom(K, R, [0, 1])
    p = InterfaceProduction(Production(L, K, R, l, r), one, one, GraphHom(one, K, [0]), GraphHom(one, K, [1]))
    m0 = GraphHom(L, G, [0, 2], [2])
    ws.add("l", l)
    ws.add("r", r)
    ws.add("m0", m0)
    ws.add("p", p)

    src = ca.open_graph(G, [0], [2])
    dst = ca.open_graph(D, [0], [2])
    ws.add("G_open", src)
    ws.add("D_open", dst)
    cell = ca.TwoCell(src, dst, E, GraphHom(E, G, [0, 1, 2], [0, 1]), GraphHom(E, D, [0, 1, 2], [0, 1]),
                      GraphHom(one, E, [0]), GraphHom(one, E, [2]))
    ws.add("expected_cell", cell)

    # open edges {x} -> x->y <- {y} for composition demos
    edge = FinGraph(2, [(0, 1)])
    ws.add("S", ca.open_graph(edge, [0], [1]))
    ws.add("T", ca.open_graph(edge, [0], [1]))
    ws.add("grammar", Grammar((src,), (p,)))
    return ws


if __name__ == "__main__":
    out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "workspaces" / "rewrite_example.json")
    wsio.save(build(), out)
    print(f"wrote {out}")
