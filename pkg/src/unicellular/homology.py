"""Mod-2 homology of unicellular maps.

The single face traverses each edge twice, so its boundary vanishes mod 2
and ``H_1(surface; Z/2)`` is the cycle space of the embedded graph.  We
use the fundamental-cycle basis of a BFS spanning tree: after contracting
the tree, the non-tree edges become ``2g`` loops at one vertex, and two
loops meet oddly iff their ends interleave in the rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from unicellular.coding import Coding, CodingError, analyze
from unicellular.ribbon import RibbonGraph


@dataclass(frozen=True)
class CycleVector:
    bits: tuple[int, ...]
    basis_edges: tuple[int, ...]

    def __add__(self, other: "CycleVector") -> "CycleVector":
        if self.basis_edges != other.basis_edges:
            raise ValueError("cycle vectors live in different bases")
        return CycleVector(tuple(a ^ b for a, b in zip(self.bits, other.bits)), self.basis_edges)

    def is_zero(self) -> bool:
        return not any(self.bits)


@dataclass(frozen=True, eq=False)
class Mod2Form:
    matrix: np.ndarray
    basis_edges: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis_edges)

    def to_json(self) -> dict:
        return {"basis_edges": list(self.basis_edges), "form": self.matrix.tolist()}


def gf2_rank(m: np.ndarray) -> int:
    a = np.array(m, dtype=np.uint8) % 2
    rows, cols = a.shape if a.size else (0, 0)
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, col]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, col]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def ribbon_from_coding(c: Coding) -> RibbonGraph:
    r = RibbonGraph.from_slots(c.slots)
    summary = analyze(c)
    if len(r.faces()) != 1:
        raise RuntimeError(f"{c}: ribbon graph has {len(r.faces())} faces")
    if r.genus() != summary.genus or r.degrees() != summary.degree_partition:
        raise RuntimeError(f"{c}: rotation system disagrees with corner tracing")
    return r


def contract_to_one_vertex(r: RibbonGraph) -> tuple[RibbonGraph, list[int]]:
    """Contract a spanning tree; returns the one-vertex graph and its cyclic edge word."""
    if not r.is_connected():
        raise ValueError("ribbon graph is disconnected")
    if len(r.vertices()) == 1:
        return r, [r.edge_of[d] for d in r.vertices()[0]]
    contracted, _ = r.contract_tree()
    if contracted.num_darts == 0:  # a plane tree contracts to a point
        return contracted, []
    if contracted.genus() != r.genus() or len(contracted.faces()) != len(r.faces()):
        raise RuntimeError("tree contraction changed the surface")
    return contracted, [contracted.edge_of[d] for d in contracted.vertices()[0]]


def _interleave_form(word: list[int]) -> tuple[np.ndarray, tuple[int, ...]]:
    spots: dict[int, list[int]] = {}
    for k, e in enumerate(word):
        spots.setdefault(e, []).append(k)
    basis = tuple(sorted(spots))
    n = len(basis)
    m = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        p1, p2 = spots[basis[i]]
        for j in range(i + 1, n):
            q1, q2 = spots[basis[j]]
            if (p1 < q1 < p2) != (p1 < q2 < p2):
                m[i, j] = m[j, i] = 1
    return m, basis


def intersection_form(c: Coding) -> Mod2Form:
    r = ribbon_from_coding(c)
    _, word = contract_to_one_vertex(r)
    m, basis = _interleave_form(word)
    g = r.genus()
    if len(basis) != 2 * g:
        raise RuntimeError(f"{len(basis)} surviving loops for genus {g}")
    if (m != m.T).any() or m.diagonal().any():
        raise RuntimeError("intersection form is not alternating")
    if gf2_rank(m) != 2 * g:
        raise RuntimeError(f"intersection form has rank {gf2_rank(m)}, expected {2 * g}")
    return Mod2Form(m, basis)


def cycle_vector(c: Coding, edges: Iterable[int], form: Mod2Form | None = None) -> CycleVector:
    """Class of the mod-2 edge chain ``edges`` (must be a cycle)."""
    r = RibbonGraph.from_slots(c.slots)
    chain = {}
    for e in edges:
        chain[e] = chain.get(e, 0) ^ 1
    for rot in r.vertices():
        if sum(chain.get(r.edge_of[d], 0) for d in rot) % 2:
            raise ValueError("edge chain is not a cycle")
    if form is None:
        form = intersection_form(c)
    return CycleVector(tuple(chain.get(e, 0) for e in form.basis_edges), form.basis_edges)


def graph_class(c: Coding, form: Mod2Form | None = None) -> CycleVector:
    """The surgery invariant: the sum of all edges, in fundamental-cycle coordinates."""
    summary = analyze(c)
    if any(d % 2 for d in summary.degree_partition):
        raise CodingError("graph class needs every vertex of even degree")
    v = cycle_vector(c, range(1, c.num_edges + 1), form)
    if summary.genus >= 1 and v.is_zero():
        raise RuntimeError(f"{c}: surgery invariant vanished")
    return v


def pair_classes(a: CycleVector, b: CycleVector, form: Mod2Form) -> int:
    if a.basis_edges != form.basis_edges or b.basis_edges != form.basis_edges:
        raise ValueError("dimension or basis mismatch")
    x = np.array(a.bits, dtype=np.int64)
    y = np.array(b.bits, dtype=np.int64)
    return int(x @ form.matrix.astype(np.int64) @ y) % 2


def homology_json(c: Coding) -> dict:
    form = intersection_form(c)
    out = form.to_json()
    if all(d % 2 == 0 for d in analyze(c).degree_partition):
        out["graph_class"] = list(graph_class(c, form).bits)
    return out
