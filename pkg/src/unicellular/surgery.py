"""Surgery on codings and the combinatorial surgery graph.

Two oriented edges ``x, y`` on distinct edges are intertwined when ``x`` and
``y`` separate ``x``-bar from ``y``-bar on the cyclic word, i.e. the four
occurrences read ``x .. X .. y .. Y`` or ``x .. Y .. y .. X``.  The second
shape is the first one for the pair ``(X, Y)``, which makes the relation
symmetric under reversing both edges.

Surgery swaps the block following ``X`` with the block following ``Y``.  On
``w1 x w2 X w3 y w4 Y`` this gives ``w3 x w2 X w1 y w4 Y``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Literal, Sequence

import networkx as nx

from unicellular.coding import (
    Coding,
    CodingError,
    analyze,
    canonical_form,
    canonical_key,
    chain_collection,
    chain_ribbon,
    enumerate_maps,
    equivalent,
    format_letter,
)

# Recorded bound diam(K_{d,g}) <= DIAMETER_CONSTANT * g**2 over every graph this
# package builds (largest observed: 3 for d4 at g = 2).
DIAMETER_CONSTANT = 1


@dataclass(frozen=True, order=True)
class OrientedEdge:
    edge: int
    barred: bool = False

    @property
    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.barred)

    def __str__(self) -> str:
        return format_letter(self.edge, self.barred)

    @classmethod
    def parse(cls, text: str) -> "OrientedEdge":
        text = text.strip()
        if len(text) == 1 and text.isalpha():
            return cls(ord(text.lower()) - ord("a") + 1, text.isupper())
        k = int(text)
        if k == 0:
            raise ValueError("edge id 0 is not allowed")
        return cls(abs(k), k < 0)


def _locate(c: Coding, x: OrientedEdge, y: OrientedEdge) -> tuple[int, int, int, int]:
    for o in (x, y):
        if not 1 <= o.edge <= c.num_edges:
            raise CodingError(f"edge {o} is not present in {c}")
    if x.edge == y.edge:
        raise ValueError("x and y lie on the same edge; self-surgery acts as the identity")
    return (c.position(x.edge, x.barred), c.position(x.edge, not x.barred),
            c.position(y.edge, y.barred), c.position(y.edge, not y.barred))


def intertwined(c: Coding, x: OrientedEdge, y: OrientedEdge) -> bool:
    px, pxb, py, pyb = _locate(c, x, y)
    n = len(c)
    xb, y_, yb = (pxb - px) % n, (py - px) % n, (pyb - px) % n
    return xb < y_ < yb or yb < y_ < xb


def do_surgery(c: Coding, x: OrientedEdge, y: OrientedEdge) -> Coding:
    if not intertwined(c, x, y):
        raise ValueError(f"{x} and {y} are not intertwined in {c}: "
                         f"need x..X..y..Y or x..Y..y..X cyclically")
    px, pxb, py, pyb = _locate(c, x, y)
    n = len(c)
    w = c.slots[px:] + c.slots[:px]
    i, j, k = (pxb - px) % n, (py - px) % n, (pyb - px) % n
    if i < j < k:
        # x w2 X w3 y w4 Y w1  ->  x w2 X w1 y w4 Y w3
        w2, w3, w4, w1 = w[1:i], w[i + 1:j], w[j + 1:k], w[k + 1:]
        out = w[:1] + w2 + w[i:i + 1] + w1 + w[j:j + 1] + w4 + w[k:k + 1] + w3
    else:
        # x A Y B y C X D  ->  x A Y D y C X B
        a, b, cc, d = w[1:k], w[k + 1:j], w[j + 1:i], w[i + 1:]
        out = w[:1] + a + w[k:k + 1] + d + w[j:j + 1] + cc + w[i:i + 1] + b
    result = Coding(out)
    before, after = analyze(c), analyze(result)
    assert len(result) == len(c)
    assert (after.genus, after.degree_partition) == (before.genus, before.degree_partition)
    return result


def oriented_edges(c: Coding) -> list[OrientedEdge]:
    return [OrientedEdge(e, b) for e in range(1, c.num_edges + 1) for b in (False, True)]


def all_surgeries(c: Coding) -> list[tuple[OrientedEdge, OrientedEdge, Coding]]:
    """Every ordered intertwined pair on distinct edges, with its canonical result."""
    out = []
    for x in oriented_edges(c):
        for y in oriented_edges(c):
            if y.edge != x.edge and intertwined(c, x, y):
                out.append((x, y, canonical_form(do_surgery(c, x, y))))
    return out


def double_surgery_identity(c: Coding, x: OrientedEdge, y: OrientedEdge) -> bool:
    once = do_surgery(c, x, y)
    return equivalent(do_surgery(once, x.reverse, y.reverse), c)


# -- seeds ------------------------------------------------------------------

def trivalent_seed(genus: int) -> Coding:
    """A trivalent one-face map, obtained by splitting every vertex of the chain collection."""
    return Coding(tuple(chain_ribbon(genus).split_vertices().face_word()))


def default_seed(genus: int, degrees: Sequence[int]) -> Coding:
    d = set(degrees)
    if d == {4}:
        return chain_collection(genus)
    if d == {3}:
        return trivalent_seed(genus)
    raise ValueError(f"no default seed for degree partition {tuple(degrees)}; pass one explicitly")


# -- surgery graph ----------------------------------------------------------

@dataclass
class SurgeryGraph:
    nodes: list[Coding]
    edges: dict[tuple[int, int], tuple[OrientedEdge, OrientedEdge]]
    mode: Literal["full", "bfs"]
    genus: int
    degrees: tuple[int, ...]
    _index: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def index(self, c: Coding) -> int:
        return self._index[canonical_key(c)]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.nodes)))
        g.add_edges_from(self.edges)
        return g

    def to_json(self, metrics: dict | None = None) -> dict:
        return {
            "genus": self.genus,
            "degrees": list(self.degrees),
            "mode": self.mode,
            "nodes": [str(c) for c in self.nodes],
            "edges": [[i, j, {"x": str(x), "y": str(y)}] for (i, j), (x, y) in sorted(self.edges.items())],
            "metrics": metrics if metrics is not None else graph_metrics(self),
        }

    def to_dot(self) -> str:
        lines = [f"graph K_{self.genus} {{"]
        for i, c in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{c}"];')
        for (i, j), (x, y) in sorted(self.edges.items()):
            lines.append(f'  n{i} -- n{j} [label="{x},{y}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _add_node(graph: SurgeryGraph, c: Coding) -> tuple[int, bool]:
    key = canonical_key(c)
    if key in graph._index:
        return graph._index[key], False
    graph._index[key] = len(graph.nodes)
    graph.nodes.append(canonical_form(c))
    return graph._index[key], True


def build_surgery_graph(genus: int, degrees: Sequence[int], mode: str = "full",
                        seed: Coding | None = None, threads: int = 1) -> SurgeryGraph:
    d = tuple(sorted(degrees))
    graph = SurgeryGraph([], {}, mode, genus, d)
    if mode == "full":
        for c in sorted(enumerate_maps(genus, d, threads=threads), key=canonical_key):
            _add_node(graph, c)
        pending = list(range(len(graph.nodes)))
    elif mode == "bfs":
        if seed is None:
            seed = default_seed(genus, d)
        s = analyze(seed)
        if (s.genus, s.degree_partition) != (genus, d):
            raise ValueError(f"seed {seed} has genus {s.genus} and degrees {s.degree_partition}, "
                             f"expected {genus} and {d}")
        _add_node(graph, seed)
        pending = [0]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    queue = deque(pending)
    done = set()
    while queue:
        i = queue.popleft()
        if i in done:
            continue
        done.add(i)
        for x, y, result in all_surgeries(graph.nodes[i]):
            j, new = _add_node(graph, result)
            if new:
                if mode == "full":
                    raise RuntimeError(f"surgery left the enumerated set: {result}")
                queue.append(j)
            if i != j:
                graph.edges.setdefault((min(i, j), max(i, j)), (x, y) if i < j else _witness_from(graph, j, i, x, y))
    return graph


def _witness_from(graph: SurgeryGraph, i: int, j: int, x: OrientedEdge, y: OrientedEdge):
    """Witness stored on an edge ``(i, j)`` found from ``j``: search node ``i`` for one."""
    target = canonical_key(graph.nodes[j])
    for a, b, result in all_surgeries(graph.nodes[i]):
        if canonical_key(result) == target:
            return a, b
    raise RuntimeError("surgery graph is not symmetric")


def graph_metrics(graph: SurgeryGraph) -> dict:
    g = graph.to_networkx()
    comps = sorted((sorted(cc) for cc in nx.connected_components(g)), key=lambda cc: cc[0])
    diameters = [nx.diameter(g.subgraph(cc)) for cc in comps]
    return {
        "nodes": g.number_of_nodes(),
        "edges": g.number_of_edges(),
        "components": len(comps),
        "diameters": diameters,
    }


def graph_json(graph: SurgeryGraph) -> str:
    return json.dumps(graph.to_json(), indent=2)
