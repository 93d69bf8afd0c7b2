"""Transvections on H_1 of a closed genus-g surface, over Z and over GF(2).

Coordinates are ordered ``(x1, y1, ..., xg, yg)`` with ``<x_i, y_i> = +1``.
A twist about a curve of class ``c`` acts by ``a -> a + k <a, c> c``.
With this convention ``T_{y1}^{-2}(x1 + 2 y1) = x1``.

Over GF(2), matrices are stored as tuples of row bitmasks (bit ``j`` of
row ``i`` is entry ``(i, j)``); that keeps subgroup closures of
``Sp(6, 2)`` (1451520 elements) within desk budgets.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Literal, Sequence

import numpy as np

Field = Literal["Z", "GF2"]
Tag = Literal["xi", "eta", "complement"]

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


# -- basics -----------------------------------------------------------------

def basis_vector(g: int, name: str) -> tuple[int, ...]:
    """``basis_vector(3, "y2")`` -> unit vector of ``y2`` in rank 6."""
    kind, i = name[0], int(name[1:])
    if kind not in "xy" or not 1 <= i <= g:
        raise ValueError(f"bad basis name {name!r} for genus {g}")
    v = [0] * (2 * g)
    v[2 * (i - 1) + (kind == "y")] = 1
    return tuple(v)


def vec(g: int, **coeffs: int) -> tuple[int, ...]:
    """``vec(2, x1=1, y1=2)`` -> ``(1, 2, 0, 0)``."""
    out = [0] * (2 * g)
    for name, k in coeffs.items():
        for i, b in enumerate(basis_vector(g, name)):
            out[i] += k * b
    return tuple(out)


def standard_form(g: int) -> np.ndarray:
    j = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        j[2 * i, 2 * i + 1] = 1
        j[2 * i + 1, 2 * i] = -1
    return j


def pairing(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b) or len(a) % 2:
        raise ValueError("dimension mismatch")
    return sum(a[i] * b[i + 1] - a[i + 1] * b[i] for i in range(0, len(a), 2))


def is_symplectic(m: np.ndarray, modulus: int | None = None) -> bool:
    j = standard_form(m.shape[0] // 2)
    lhs = m.T.astype(object) @ j @ m.astype(object)
    if modulus:
        return bool(((lhs - j) % modulus == 0).all())
    return bool((lhs == j).all())


def sp_order(g: int) -> int:
    """|Sp(2g, 2)| = 2^(g^2) * prod_{i=1..g} (4^i - 1)."""
    return 2 ** (g * g) * math.prod(4 ** i - 1 for i in range(1, g + 1))


# -- transvections ----------------------------------------------------------

def transvection(c: Sequence[int], power: int = 1, field: Field = "Z") -> np.ndarray:
    """Matrix of ``a -> a + power * <a, c> c`` acting on column vectors."""
    c = tuple(int(x) for x in c)
    if not any(c):
        raise ValueError("transvection needs a nonzero class")
    n = len(c)
    col = np.array(c, dtype=object).reshape(n, 1)
    # <a, c> = (J c) . a
    jc = (standard_form(n // 2) @ col).reshape(1, n)
    m = np.eye(n, dtype=object) + power * (col @ jc)
    if field == "GF2":
        m = (m % 2).astype(np.uint8)
        assert is_symplectic(m, 2)
    else:
        assert is_symplectic(m)
    return m


def apply_transvection(c: Sequence[int], power: int, v: Sequence[int]) -> tuple[int, ...]:
    k = power * pairing(v, c)
    return tuple(a + k * b for a, b in zip(v, c))


# -- moves ------------------------------------------------------------------

@dataclass(frozen=True)
class TransvectionMove:
    cls: tuple[int, ...]
    power: int
    tag: Tag

    def validate(self) -> None:
        g = len(self.cls) // 2
        if len(self.cls) != 2 * g or g < 1:
            raise ValueError(f"malformed class {self.cls}")
        if self.tag == "xi":
            ok = self.cls == basis_vector(g, "x1")
        elif self.tag == "eta":
            ok = self.cls == basis_vector(g, "y1") and self.power % 2 == 0
        elif self.tag == "complement":
            ok = self.cls[1] == 0 and any(self.cls)
        else:
            ok = False
        if not ok:
            raise ValueError(f"invalid {self.tag} move: class {self.cls}, power {self.power}")

    def to_json(self) -> dict:
        return {"class": list(self.cls), "power": self.power, "tag": self.tag}


MoveWord = list[TransvectionMove]


def apply_move_word(word: Iterable[TransvectionMove], v: Sequence[int]) -> tuple[int, ...]:
    v = tuple(v)
    for move in word:
        move.validate()
        if len(move.cls) != len(v):
            raise ValueError("move and vector dimensions differ")
        v = apply_transvection(move.cls, move.power, v)
    return v


def inverse_word(word: Sequence[TransvectionMove]) -> MoveWord:
    return [TransvectionMove(m.cls, -m.power, m.tag) for m in reversed(word)]


# -- GF(2) closures ---------------------------------------------------------

def _to_rows(m: np.ndarray) -> tuple[int, ...]:
    m = np.asarray(m) % 2
    return tuple(sum(int(bit) << j for j, bit in enumerate(row)) for row in m)


def _row_table(rows: tuple[int, ...]) -> list[int]:
    """``table[r] = r . M`` for every row bitmask ``r``."""
    n = len(rows)
    table = [0] * (1 << n)
    for r in range(1, 1 << n):
        low = r & -r
        table[r] = table[r ^ low] ^ rows[low.bit_length() - 1]
    return table


def _apply_rows(rows: tuple[int, ...], v: int) -> int:
    """``M v`` for a column bitmask ``v``."""
    return sum((bin(r & v).count("1") & 1) << i for i, r in enumerate(rows))


def group_bfs(generators: Iterable[np.ndarray], budget: int = DEFAULT_BUDGET,
              keep_elements: bool = False) -> dict:
    """Order of the subgroup of Sp(2g, 2) generated by ``generators``."""
    generators = list(generators)
    gens = [_to_rows(m) for m in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    for m, rows in zip(generators, gens):
        if not is_symplectic(np.asarray(m), 2):
            raise ValueError("generator is not symplectic over GF(2)")
    tables = [_row_table(rows) for rows in gens]
    identity = tuple(1 << i for i in range(n))
    shift = n

    def pack(rows):
        return reduce(lambda acc, r: (acc << shift) | r, rows, 0)

    seen = {pack(identity)}
    frontier = [identity]
    while frontier:
        nxt = []
        for m in frontier:
            for t in tables:
                prod = tuple(t[r] for r in m)
                key = pack(prod)
                if key not in seen:
                    seen.add(key)
                    nxt.append(prod)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"closure exceeded {budget} elements")
        frontier = nxt
    out = {"order": len(seen)}
    if keep_elements:
        out["elements"] = seen
    return out


def orbit_of(v: Sequence[int], generators: Iterable[np.ndarray]) -> int:
    """Size of the orbit of a nonzero GF(2) vector."""
    bits = sum((int(x) % 2) << i for i, x in enumerate(v))
    if not bits:
        raise ValueError("orbit_of needs a nonzero vector")
    gens = [_to_rows(m) for m in generators]
    seen = {bits}
    queue = deque([bits])
    while queue:
        u = queue.popleft()
        for rows in gens:
            w = _apply_rows(rows, u)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen)


def nonzero_vectors(g: int) -> list[tuple[int, ...]]:
    return [tuple((k >> i) & 1 for i in range(2 * g)) for k in range(1, 1 << (2 * g))]


def full_transvections(g: int) -> list[np.ndarray]:
    return [transvection(c, 1, "GF2") for c in nonzero_vectors(g)]


def standard_generators(g: int) -> list[np.ndarray]:
    """Transvections at x_i, y_i and y_i + y_{i+1}; these generate Sp(2g, Z/2)."""
    classes = [basis_vector(g, f"{k}{i}") for i in range(1, g + 1) for k in "xy"]
    for i in range(1, g):
        classes.append(tuple(a + b for a, b in zip(basis_vector(g, f"y{i}"), basis_vector(g, f"y{i + 1}"))))
    return [transvection(c, 1, "GF2") for c in classes]


def allowed_span_classes(g: int) -> list[tuple[int, ...]]:
    """Nonzero GF(2) classes with zero y1 coordinate, i.e. disjoint-from-xi classes."""
    return [c for c in nonzero_vectors(g) if c[1] == 0]


def humphries_classes(g: int) -> list[tuple[int, ...]]:
    """Default 2g disjoint-from-xi classes in Humphries shape.

    A chain ``y2, x2, y2+y3, x3, ..., y_{g-1}+y_g, x_g, y_g+x1`` of length
    ``2g-1`` plus one branch class: ``y3``, meeting only the fourth chain
    class, when ``g >= 3``; ``x1`` when ``g == 2``.
    """
    if g < 2:
        raise ValueError("the default configuration needs g >= 2")
    groups = [("y2",), ("x2",)]
    for i in range(3, g + 1):
        groups += [(f"y{i - 1}", f"y{i}"), (f"x{i}",)]
    groups.append((f"y{g}", "x1"))
    groups.append(("y3",) if g >= 3 else ("x1",))
    return [tuple(sum(col) % 2 for col in zip(*(basis_vector(g, n) for n in grp))) for grp in groups]


def stabilizer_check(g: int, classes: Sequence[Sequence[int]], budget: int = DEFAULT_BUDGET) -> dict:
    for c in classes:
        if len(c) != 2 * g or c[1] % 2:
            raise ValueError(f"class {tuple(c)} is not disjoint from xi (nonzero y1 coordinate)")
    generated = group_bfs([transvection(c, 1, "GF2") for c in classes], budget)["order"]
    stab = sp_order(g) // (4 ** g - 1)
    return {"generated_order": generated, "stabilizer_order": stab, "equal": generated == stab}


# -- integral vector reduction ----------------------------------------------

def _gcd(values: Sequence[int]) -> int:
    return math.gcd(*values) if values else 0


def _nearest(a: int, b: int) -> int:
    """Integer nearest to a / b, exact for big ints."""
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


class _Reducer:
    """Accumulates moves while tracking the current vector."""

    def __init__(self, v: Sequence[int]):
        self.v = tuple(v)
        self.g = len(v) // 2
        self.word: MoveWord = []

    def move(self, cls: Sequence[int], power: int, tag: Tag) -> None:
        if power == 0:
            return
        m = TransvectionMove(tuple(cls), power, tag)
        m.validate()
        self.word.append(m)
        self.v = apply_transvection(m.cls, power, self.v)

    def b(self, name: str) -> tuple[int, ...]:
        return basis_vector(self.g, name)

    def plus(self, *names: str) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*(self.b(n) for n in names)))

    def coeff(self, name: str) -> int:
        return self.v[self.b(name).index(1)]

    # (x_i, y_i) pair -> (p, 0) by twists at x_i and y_i
    def clear_pair(self, i: int) -> None:
        x, y = f"x{i}", f"y{i}"
        while self.coeff(y):
            p, q = self.coeff(x), self.coeff(y)
            if p == 0:
                # T_x^-1: p -> p + q
                self.move(self.b(x), -1, "complement")
            elif abs(q) >= abs(p):
                # T_y^k: q -> q + k p
                self.move(self.b(y), -_nearest(q, p), "complement")
            else:
                # T_x^k: p -> p - k q
                self.move(self.b(x), _nearest(p, q), "complement")

    def make_positive(self, i: int) -> None:
        if self.coeff(f"x{i}") < 0:
            # (p, 0) -> (p, p) -> (-p, p) -> (-p, 0)
            self.move(self.b(f"y{i}"), 1, "complement")
            self.move(self.b(f"x{i}"), 2, "complement")
            self.move(self.b(f"y{i}"), 1, "complement")

    def normalize_h_prime(self) -> None:
        """Bring the H' = <x2, y2, ..., xg, yg> part to gcd * x2."""
        for i in range(2, self.g + 1):
            self.clear_pair(i)
        for i in range(3, self.g + 1):
            while self.coeff(f"x{i}"):
                p2, pi = self.coeff("x2"), self.coeff(f"x{i}")
                if p2 and abs(p2) <= abs(pi):
                    # (p2, pi) -> (p2, pi + k p2) via T_{y2+xi}^k then T_{y2}^-k
                    k = -_nearest(pi, p2)
                    self.move(self.plus("y2", f"x{i}"), k, "complement")
                    self.move(self.b("y2"), -k, "complement")
                else:
                    # (p2, pi) -> (p2 + k pi, pi) via T_{yi+x2}^k then T_{yi}^-k
                    k = 1 if p2 == 0 else -_nearest(p2, pi)
                    self.move(self.plus(f"y{i}", "x2"), k, "complement")
                    self.move(self.b(f"y{i}"), -k, "complement")
        self.make_positive(2)

    def euclid(self) -> None:
        """Kill the y1 coefficient: xi moves a -> a - k b, even eta moves b -> b + k a."""
        while self.coeff("y1"):
            a, b = self.coeff("x1"), self.coeff("y1")
            if abs(b) < abs(a):
                self.move(self.b("x1"), _nearest(a, b), "xi")
            else:
                self.move(self.b("y1"), -2 * _nearest(b, 2 * a), "eta")

    def flip_x1(self) -> None:
        """(-a) x1 -> a x1 when the y1 coefficient is zero: eta^2, xi^1, eta^2 on -x1."""
        if self.coeff("x1") < 0 and self.coeff("y1") == 0:
            self.move(self.b("y1"), 2, "eta")
            self.move(self.b("x1"), 1, "xi")
            self.move(self.b("y1"), 2, "eta")


def vector_reduce(v: Sequence[int], g: int | None = None) -> MoveWord:
    """Move word taking a primitive ``v = x1 (mod 2)`` to exactly ``x1``.

    Uses twists at x1 (any power), at y1 (even powers only) and at classes
    with zero y1 coordinate.  The stages follow the integral part of the
    stabilizer argument: normalize the H' part, run a parity-respecting
    Euclid on the (x1, y1) coefficients, trade through ``x1 + y2``, repeat,
    then clear the remaining ``2d' x2`` with ``x1 + x2``.
    """
    v = tuple(int(a) for a in v)
    if g is None:
        g = len(v) // 2
    if len(v) != 2 * g:
        raise ValueError(f"vector of length {len(v)} does not match genus {g}")
    if g < 2:
        raise ValueError("vector reduction needs g >= 2")
    if _gcd(v) != 1:
        raise ValueError(f"{v} is not primitive")
    if v[0] % 2 != 1 or any(a % 2 for a in v[1:]):
        raise ValueError(f"{v} is not congruent to x1 mod 2")

    r = _Reducer(v)
    x1 = r.b("x1")
    if r.v == x1:
        return r.word
    r.normalize_h_prime()
    r.euclid()
    if r.v == x1:
        return r.word
    if r.coeff("x2") == 0:
        # H' part vanished, so primitivity forces -x1
        r.flip_x1()
        assert r.v == x1, r.v
        return r.word

    # d x1 + 2d y1 + c x2
    r.move(r.b("y1"), 2, "eta")
    # zeta = x1 + y2: -> (c - d) x1 + 2d y1 + c x2 + (c - 2d) y2
    r.move(r.plus("x1", "y2"), 1, "complement")
    r.normalize_h_prime()
    # gcd(c - d, 2d) = 1
    r.euclid()
    r.flip_x1()
    assert r.coeff("x1") == 1 and r.coeff("y1") == 0
    d_prime = r.coeff("x2") // 2
    r.move(r.b("y1"), 2, "eta")
    r.move(r.plus("x1", "x2"), d_prime, "complement")
    r.move(r.b("x1"), -d_prime, "xi")
    r.move(r.b("y1"), -2, "eta")
    assert r.v == x1, r.v
    return r.word


def random_reducible_vector(g: int, bound: int, rng: random.Random) -> tuple[int, ...]:
    """Rejection-sample a primitive vector = x1 (mod 2) with entries in [-bound, bound]."""
    while True:
        v = [rng.randint(-bound, bound) for _ in range(2 * g)]
        if v[0] % 2 == 1 and all(a % 2 == 0 for a in v[1:]) and math.gcd(*v) == 1:
            return tuple(v)
