"""Ribbon graphs (rotation systems) on oriented surfaces.

Darts are the integers ``0..2E-1``.  A ribbon graph is the pair of
permutations ``(sigma, alpha)``: ``alpha`` is the fixed-point-free edge
involution and ``sigma`` rotates darts counter-clockwise around their
origin vertex.  Faces are the cycles of ``phi = sigma o alpha``.

Codings and ribbon graphs are related through the polygon picture: slot ``i``
of a coding is dart ``i``, the face permutation is ``i -> i + 1`` and
``sigma(i) = alpha(i) + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

Slot = tuple[int, bool]


def cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of a permutation, each starting at its smallest element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class RibbonGraph:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    edge_of: tuple[int, ...]

    def __post_init__(self):
        n = len(self.alpha)
        if len(self.sigma) != n or len(self.edge_of) != n:
            raise ValueError("sigma, alpha and edge_of must have equal length")
        if sorted(self.sigma) != list(range(n)):
            raise ValueError("sigma is not a permutation")
        for d in range(n):
            a = self.alpha[d]
            if a == d or self.alpha[a] != d:
                raise ValueError(f"alpha is not a fixed-point-free involution at dart {d}")
            if self.edge_of[a] != self.edge_of[d]:
                raise ValueError(f"darts {d} and {a} are paired but carry different edges")

    @classmethod
    def from_rotations(cls, rotations: Sequence[Sequence[int]], alpha: Sequence[int],
                       edge_of: Sequence[int] | None = None) -> "RibbonGraph":
        n = len(alpha)
        sigma = [-1] * n
        for rot in rotations:
            for k, d in enumerate(rot):
                sigma[d] = rot[(k + 1) % len(rot)]
        if edge_of is None:
            edge_of = [min(d, alpha[d]) for d in range(n)]
        return cls(tuple(sigma), tuple(alpha), tuple(edge_of))

    @classmethod
    def from_slots(cls, slots: Sequence[Slot]) -> "RibbonGraph":
        """Ribbon graph of the one-face map whose polygon reads ``slots``."""
        n = len(slots)
        where = {s: i for i, s in enumerate(slots)}
        alpha = [where[(e, not b)] for e, b in slots]
        sigma = [(alpha[i] + 1) % n for i in range(n)]
        return cls(tuple(sigma), tuple(alpha), tuple(e for e, _ in slots))

    @property
    def num_darts(self) -> int:
        return len(self.alpha)

    @property
    def num_edges(self) -> int:
        return len(self.alpha) // 2

    def vertices(self) -> list[list[int]]:
        return cycles(self.sigma)

    def faces(self) -> list[list[int]]:
        phi = [self.sigma[self.alpha[d]] for d in range(self.num_darts)]
        return cycles(phi)

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - self.num_edges + len(self.faces())

    def genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2:
            raise ValueError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(len(v) for v in self.vertices()))

    def is_connected(self) -> bool:
        return len(self.spanning_tree()[1]) == len(self.vertices())

    def spanning_tree(self) -> tuple[list[int], list[int]]:
        """BFS spanning tree from the vertex holding dart 0.

        Returns ``(tree_darts, visited_vertex_indices)``, where each tree dart
        points away from the root.  Vertex indices refer to ``vertices()``.
        """
        verts = self.vertices()
        vertex_of = {d: k for k, rot in enumerate(verts) for d in rot}
        seen = {0}
        order = [0]
        tree = []
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for d in verts[v]:
                w = vertex_of[self.alpha[d]]
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    tree.append(d)
                    queue.append(w)
        return tree, order

    def contract_tree(self) -> tuple["RibbonGraph", list[int]]:
        """Contract a BFS spanning tree; return the one-vertex graph and tree edge ids.

        Contracting the non-loop edge ``{d, e}`` merges the rotations
        ``(d, u1..uk)`` and ``(e, v1..vm)`` into ``(u1..uk, v1..vm)``.
        Surviving darts are renumbered in rotation order of the merged vertex.
        """
        tree, visited = self.spanning_tree()
        if len(visited) != len(self.vertices()):
            raise ValueError("ribbon graph is disconnected")
        rotations = {k: list(rot) for k, rot in enumerate(self.vertices())}
        owner = {d: k for k, rot in rotations.items() for d in rot}
        for d in tree:
            e = self.alpha[d]
            u, v = owner[d], owner[e]
            ru, rv = rotations.pop(u), rotations.pop(v)
            i, j = ru.index(d), rv.index(e)
            merged = ru[i + 1:] + ru[:i] + rv[j + 1:] + rv[:j]
            rotations[u] = merged
            for x in merged:
                owner[x] = u
        (rot,) = rotations.values()
        index = {d: k for k, d in enumerate(rot)}
        alpha = [index[self.alpha[d]] for d in rot]
        contracted = RibbonGraph.from_rotations([list(range(len(rot)))], alpha,
                                                [self.edge_of[d] for d in rot])
        return contracted, sorted(self.edge_of[d] for d in tree)

    def split_vertices(self) -> "RibbonGraph":
        """Split every 4-valent vertex ``(d0 d1 d2 d3)`` into ``(d0 d1 n)(n' d2 d3)``.

        The new edge is a non-loop, so the face structure is unchanged.
        """
        n = self.num_darts
        alpha = list(self.alpha)
        edge_of = list(self.edge_of)
        next_edge = max(edge_of) + 1
        rotations = []
        for rot in self.vertices():
            if len(rot) != 4:
                rotations.append(rot)
                continue
            a, b = n, n + 1
            n += 2
            alpha += [b, a]
            edge_of += [next_edge, next_edge]
            next_edge += 1
            rotations.append([rot[0], rot[1], a])
            rotations.append([b, rot[2], rot[3]])
        return RibbonGraph.from_rotations(rotations, alpha, edge_of)

    def face_word(self, start: int = 0) -> list[Slot]:
        """Trace the face through ``start`` and label it as a coding.

        The dart of each edge met first along the face is written unbarred.
        Edges are renumbered ``1..E`` by first appearance.
        """
        labels: dict[int, int] = {}
        first: dict[int, int] = {}
        out = []
        d = start
        while True:
            e = self.edge_of[d]
            if e not in labels:
                labels[e] = len(labels) + 1
                first[e] = d
            out.append((labels[e], first[e] != d))
            d = self.sigma[self.alpha[d]]
            if d == start:
                break
        if len(out) != self.num_darts:
            raise ValueError("ribbon graph has more than one face")
        return out
