import itertools
import random

import pytest
from hypothesis import strategies as st

from unicellular.coding import Coding, parse_coding

GENUS2_WORD = "abcdBeCfAEFD"


@pytest.fixture
def quartic_coding():
    return parse_coding(GENUS2_WORD)


def all_matchings(n):
    """Every perfect matching of range(n); no pruning, independent of the library."""
    if n == 0:
        yield []
        return
    first, rest = 0, list(range(1, n))

    def rec(free):
        if not free:
            yield []
            return
        i = free[0]
        for k in range(1, len(free)):
            for m in rec(free[1:k] + free[k + 1:]):
                yield [(i, free[k])] + m

    yield from rec([first] + rest)


def word_from_matching(m, n):
    w = [None] * n
    for label, (i, j) in enumerate(sorted(m), 1):
        w[i], w[j] = (label, False), (label, True)
    return Coding(tuple(w))


def random_coding(rng: random.Random, edges: int) -> Coding:
    slots = [(e, b) for e in range(1, edges + 1) for b in (False, True)]
    rng.shuffle(slots)
    return Coding(tuple(slots))


@st.composite
def codings(draw, min_edges=1, max_edges=7):
    e = draw(st.integers(min_edges, max_edges))
    slots = [(k, b) for k in range(1, e + 1) for b in (False, True)]
    return Coding(tuple(draw(st.permutations(slots))))


def relabel(c: Coding, perm: dict, flips: set) -> Coding:
    return Coding(tuple((perm[e], b != (e in flips)) for e, b in c.slots))


def is_rotation(a, b) -> bool:
    a, b = list(a), list(b)
    return len(a) == len(b) and any(a[r:] + a[:r] == b for r in range(len(a)))


def reference_swap(slots, x, y):
    """Rewrite ``w1 x w2 X w3 y w4 Y`` as ``w3 x w2 X w1 y w4 Y`` by direct slicing.

    Returns None when the occurrences are not in cyclic order x, X, y, Y.
    """
    slots = list(slots)
    n = len(slots)
    at = {s: i for i, s in enumerate(slots)}
    px, pX = at[(x.edge, x.barred)], at[(x.edge, not x.barred)]
    py, pY = at[(y.edge, y.barred)], at[(y.edge, not y.barred)]
    if not ((pX - px) % n < (py - px) % n < (pY - px) % n):
        return None
    w = slots[pY + 1:] + slots[:pY + 1]  # ends with Y
    ix, iX, iy = w.index(slots[px]), w.index(slots[pX]), w.index(slots[py])
    w1, w2, w3, w4 = w[:ix], w[ix + 1:iX], w[iX + 1:iy], w[iy + 1:-1]
    return w3 + [w[ix]] + w2 + [w[iX]] + w1 + [w[iy]] + w4 + [w[-1]]


def first_occurrence_key(slots):
    labels = {}
    return tuple(labels.setdefault(e, len(labels)) for e, _ in slots)


def automorphisms(c) -> int:
    """Rotations of the cyclic word that preserve its chord pattern."""
    n = len(c)
    key = first_occurrence_key(c.slots)
    return sum(first_occurrence_key(c.slots[r:] + c.slots[:r]) == key for r in range(n))


def rooted_count(codings) -> int:
    total = 0
    for c in codings:
        n = len(c)
        assert n % automorphisms(c) == 0
        total += n // automorphisms(c)
    return total
