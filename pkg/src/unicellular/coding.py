"""Codings of unicellular maps.

A coding is the cyclic word read around the boundary of the single
complementary polygon.  Every edge contributes two sides, one written
unbarred (``x``) and one barred (``X`` in compact text).  Codings are
equal as unicellular maps when they agree up to rotation and relabelling,
where relabelling may also reverse an edge (swap its bars).
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from string import ascii_lowercase
from typing import Iterable, Sequence

from unicellular.ribbon import RibbonGraph, Slot

MAX_ENUMERATION_LENGTH = 16


class CodingError(ValueError):
    pass


class InfeasibleError(ValueError):
    """Requested enumeration exceeds the supported size."""


@dataclass(frozen=True)
class Coding:
    slots: tuple[Slot, ...]

    def __post_init__(self):
        slots = tuple((int(e), bool(b)) for e, b in self.slots)
        object.__setattr__(self, "slots", slots)
        if not slots:
            raise CodingError("empty coding")
        if len(slots) % 2:
            raise CodingError(f"odd word length {len(slots)}")
        counts = Counter(slots)
        edges = {e for e, _ in slots}
        if edges != set(range(1, len(slots) // 2 + 1)):
            raise CodingError(f"edge ids must be exactly 1..{len(slots) // 2}, got {sorted(edges)}")
        for e in edges:
            if counts[(e, False)] != 1 or counts[(e, True)] != 1:
                raise CodingError(f"edge {e} must appear once barred and once unbarred")

    def __len__(self) -> int:
        return len(self.slots)

    def __str__(self) -> str:
        return format_coding(self)

    @property
    def num_edges(self) -> int:
        return len(self.slots) // 2

    def position(self, edge: int, barred: bool) -> int:
        return self.slots.index((edge, barred))

    def partner(self, i: int) -> int:
        e, b = self.slots[i]
        return self.position(e, not b)

    def rotate(self, r: int) -> "Coding":
        r %= len(self.slots)
        return Coding(self.slots[r:] + self.slots[:r])


@dataclass(frozen=True)
class MapSummary:
    genus: int
    vertex_count: int
    edge_count: int
    degree_partition: tuple[int, ...]
    vertex_orbits: tuple[tuple[int, ...], ...] = field(repr=False)

    def to_json(self, coding: Coding) -> dict:
        return {
            "coding": str(coding),
            "genus": self.genus,
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "degrees": list(self.degree_partition),
        }


@dataclass(frozen=True)
class CurveDecomposition:
    curves: tuple[tuple[int, ...], ...]
    self_intersections: tuple[int, ...]
    crossing_matrix: tuple[tuple[int, ...], ...]

    def one_simple(self) -> list[bool]:
        """Simple curves that meet the rest of the collection exactly once."""
        out = []
        for i, row in enumerate(self.crossing_matrix):
            out.append(self.self_intersections[i] == 0 and sum(row) - row[i] == 1)
        return out

    def total_crossings(self) -> int:
        n = len(self.curves)
        pairs = sum(self.crossing_matrix[i][j] for i in range(n) for j in range(i + 1, n))
        return pairs + sum(self.self_intersections)


# -- text I/O ---------------------------------------------------------------

_EXTENDED = re.compile(r"^[+-]?\d+(\s+[+-]?\d+)*$")


def parse_coding(text: str) -> Coding:
    """Parse compact (``abAB``) or extended (``1 2 -1 -2``) text.

    Edge ids are renumbered densely by first appearance.
    """
    text = text.strip()
    if not text:
        raise CodingError("empty coding")
    if _EXTENDED.match(text):
        raw = []
        for tok in text.split():
            k = int(tok)
            if k == 0:
                raise CodingError("edge id 0 is not allowed")
            raw.append((abs(k), k < 0))
    elif text.isalpha() and text.isascii():
        raw = [(ch.lower(), ch.isupper()) for ch in text]
    else:
        raise CodingError(f"cannot parse coding {text!r}")

    seen: dict = {}
    for key, _ in raw:
        seen.setdefault(key, len(seen) + 1)
    counts = Counter(key for key, _ in raw)
    for key, n in counts.items():
        if n != 2:
            raise CodingError(f"letter {key!r} appears {n} times, expected 2")
    bars = Counter(raw)
    for key in counts:
        if bars[(key, True)] != 1:
            raise CodingError(f"letter {key!r} must appear once barred and once unbarred")
    return Coding(tuple((seen[key], b) for key, b in raw))


def format_coding(c: Coding, extended: bool | None = None) -> str:
    if extended is None:
        extended = c.num_edges > len(ascii_lowercase)
    if extended:
        return " ".join(f"-{e}" if b else f"+{e}" for e, b in c.slots)
    return "".join(ascii_lowercase[e - 1].upper() if b else ascii_lowercase[e - 1] for e, b in c.slots)


def format_letter(edge: int, barred: bool) -> str:
    if edge <= len(ascii_lowercase):
        ch = ascii_lowercase[edge - 1]
        return ch.upper() if barred else ch
    return f"-{edge}" if barred else f"+{edge}"


# -- structure --------------------------------------------------------------

def vertex_orbits(c: Coding) -> list[list[int]]:
    """Partition the polygon corners into vertices.

    Corner ``i`` is the vertex where side ``i`` starts (the gap between slots
    ``i-1`` and ``i``).  Gluing side ``i`` (``x``) to side ``j`` (``x``-bar)
    with reversal identifies corner ``i`` with corner ``j+1`` and corner
    ``i+1`` with corner ``j``.
    """
    n = len(c)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, (e, b) in enumerate(c.slots):
        if b:
            continue
        j = c.position(e, True)
        for p, q in ((i, (j + 1) % n), ((i + 1) % n, j)):
            parent[find(p)] = find(q)

    groups: dict[int, list[int]] = {}
    for corner in range(n):
        groups.setdefault(find(corner), []).append(corner)
    return sorted(groups.values())


def analyze(c: Coding) -> MapSummary:
    orbits = vertex_orbits(c)
    v, e = len(orbits), c.num_edges
    chi = v - e + 1
    if chi % 2 or chi > 2:
        raise CodingError(f"impossible Euler characteristic {chi}")
    genus = (2 - chi) // 2
    degrees = tuple(sorted(len(o) for o in orbits))
    assert sum(degrees) == 2 * e == 2 * v + 4 * genus - 2
    return MapSummary(genus, v, e, degrees, tuple(tuple(o) for o in orbits))


# -- canonical form ---------------------------------------------------------

def _relabelled_key(slots: Sequence[Slot], start: int) -> list[int]:
    """Word read from ``start`` with first occurrences unbarred, as ints ``2*label + bar``."""
    n = len(slots)
    labels: dict[int, tuple[int, bool]] = {}
    out = []
    for k in range(n):
        e, b = slots[(start + k) % n]
        if e not in labels:
            labels[e] = (len(labels) + 1, b)
        lab, flip = labels[e]
        out.append(2 * lab + (b != flip))
    return out


def canonical_key(c: Coding) -> tuple[int, ...]:
    return tuple(min(_relabelled_key(c.slots, r) for r in range(len(c))))


def _from_key(key: Iterable[int]) -> Coding:
    return Coding(tuple((k // 2, bool(k % 2)) for k in key))


def canonical_form(c: Coding) -> Coding:
    """Lexicographically least relabelled rotation.

    Each rotation is relabelled by first occurrence with the first occurrence
    unbarred; no reflection is taken.
    """
    return _from_key(canonical_key(c))


def equivalent(c1: Coding, c2: Coding) -> bool:
    return len(c1) == len(c2) and canonical_key(c1) == canonical_key(c2)


# -- enumeration ------------------------------------------------------------

def _check_partition(genus: int, degrees: Sequence[int]) -> tuple[int, ...]:
    d = tuple(sorted(int(x) for x in degrees))
    if not d or min(d) < 1 or genus < 0:
        raise ValueError(f"bad genus/degree data: g={genus}, d={d}")
    if sum(d) % 2 or sum(d) != 2 * len(d) + 4 * genus - 2:
        raise ValueError(f"degree partition {d} violates 2|E| = 2|V| + 4g - 2 at genus {genus}")
    return d


def enumerate_maps(genus: int, degrees: Sequence[int], threads: int = 1) -> set[Coding]:
    """All unicellular maps of the given genus and degree partition, canonically.

    Backtracks over perfect matchings of the polygon sides.  Bars are fixed by
    the matching (first occurrence unbarred), which loses nothing because
    reversing an edge is part of the equivalence.  A partial matching is
    pruned as soon as one vertex collects more corners than the largest
    allowed degree.
    """
    d = _check_partition(genus, degrees)
    n = sum(d)
    if n > MAX_ENUMERATION_LENGTH:
        raise InfeasibleError(
            f"word length {n} exceeds the enumeration cap {MAX_ENUMERATION_LENGTH}; "
            "build the surgery graph by BFS closure from a seed instead")
    first_partners = range(1, n)
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(_enumerate_branch, [(d, j) for j in first_partners])
            keys = set().union(*parts)
    else:
        keys = set().union(*(_enumerate_branch((d, j)) for j in first_partners))
    return {_from_key(k) for k in keys}


def _enumerate_branch(args: tuple[tuple[int, ...], int]) -> set[tuple[int, ...]]:
    d, first = args
    n = sum(d)
    vcount = len(d)
    dmax = d[-1]
    word: list[Slot | None] = [None] * n
    found: set[tuple[int, ...]] = set()

    def find(parent, a):
        while parent[a] != a:
            a = parent[a]
        return a

    def place(parent, size, i, j):
        parent, size = parent[:], size[:]
        for p, q in ((i, (j + 1) % n), ((i + 1) % n, j)):
            rp, rq = find(parent, p), find(parent, q)
            if rp != rq:
                if size[rp] < size[rq]:
                    rp, rq = rq, rp
                parent[rq] = rp
                size[rp] += size[rq]
                if size[rp] > dmax:
                    return None
        return parent, size

    def rec(label, parent, size):
        try:
            i = word.index(None)
        except ValueError:
            roots = [r for r in range(n) if parent[r] == r]
            if len(roots) == vcount and tuple(sorted(size[r] for r in roots)) == d:
                found.add(canonical_key(Coding(tuple(word))))
            return
        candidates = [first] if label == 1 else range(i + 1, n)
        for j in candidates:
            if word[j] is not None:
                continue
            state = place(parent, size, i, j)
            if state is None:
                continue
            word[i], word[j] = (label, False), (label, True)
            rec(label + 1, *state)
            word[i] = word[j] = None

    rec(1, list(range(n)), [1] * n)
    return found


# -- constituent curves -----------------------------------------------------

def constituent_curves(c: Coding) -> CurveDecomposition:
    """Split a 4-valent map into closed strands.

    A strand entering a 4-valent vertex leaves through the opposite dart in
    the rotation, i.e. ``sigma^2``.
    """
    r = RibbonGraph.from_slots(c.slots)
    verts = r.vertices()
    if any(len(v) != 4 for v in verts):
        raise CodingError("constituent curves need every vertex 4-valent")
    opposite = {}
    for rot in verts:
        for k in range(4):
            opposite[rot[k]] = rot[(k + 2) % 4]

    curve_of_edge: dict[int, int] = {}
    curves = []
    for start in range(r.num_darts):
        if r.edge_of[start] in curve_of_edge:
            continue
        idx = len(curves)
        edges = []
        d = start
        while True:
            e = r.edge_of[d]
            if e not in curve_of_edge:
                curve_of_edge[e] = idx
                edges.append(e)
            d = opposite[r.alpha[d]]
            if d == start:
                break
        curves.append(tuple(edges))

    k = len(curves)
    selfx = [0] * k
    cross = [[0] * k for _ in range(k)]
    for rot in verts:
        s = curve_of_edge[r.edge_of[rot[0]]]
        t = curve_of_edge[r.edge_of[rot[1]]]
        if s == t:
            selfx[s] += 1
        else:
            cross[s][t] += 1
            cross[t][s] += 1
    return CurveDecomposition(tuple(curves), tuple(selfx), tuple(tuple(row) for row in cross))


# -- chain collection -------------------------------------------------------

def chain_ribbon(genus: int) -> RibbonGraph:
    """Ribbon graph of a chain of ``2g`` simple closed curves.

    Vertex ``v_i`` is the crossing of curves ``i`` and ``i+1``.  The two end
    curves are loops at ``v_1`` and ``v_{2g-1}``; each middle curve ``i`` is
    split into an edge ``v_{i-1} -> v_i`` and an edge ``v_i -> v_{i-1}``.
    At every vertex the rotation alternates the two curves.
    """
    if genus < 1:
        raise ValueError("chain collections need genus >= 1")
    n_curves = 2 * genus
    alpha: list[int] = []
    # (out_dart, in_dart) of each curve's edges, keyed by vertex
    leaving: dict[tuple[int, int], int] = {}
    arriving: dict[tuple[int, int], int] = {}

    def new_edge(curve, tail, head):
        d = len(alpha)
        alpha.extend([d + 1, d])
        leaving[(curve, tail)] = d
        arriving[(curve, head)] = d + 1

    for i in range(1, n_curves + 1):
        if i == 1:
            new_edge(i, 1, 1)
        elif i == n_curves:
            new_edge(i, n_curves - 1, n_curves - 1)
        else:
            new_edge(i, i - 1, i)
            new_edge(i, i, i - 1)

    rotations = []
    for v in range(1, n_curves):
        a, b = v, v + 1
        rotations.append([leaving[(a, v)], leaving[(b, v)], arriving[(a, v)], arriving[(b, v)]])
    edge_of = [d // 2 + 1 for d in range(len(alpha))]
    return RibbonGraph.from_rotations(rotations, alpha, edge_of)


def chain_collection(genus: int) -> Coding:
    r = chain_ribbon(genus)
    if len(r.faces()) != 1:
        raise RuntimeError(f"chain construction produced {len(r.faces())} faces")
    if r.genus() != genus:
        raise RuntimeError(f"chain construction produced genus {r.genus()}")
    return Coding(tuple(r.face_word()))


def summary_json(c: Coding) -> str:
    return json.dumps(analyze(c).to_json(c))
