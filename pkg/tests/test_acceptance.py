"""Acceptance criteria, one test each.

Every test prints a ``[PASS]`` or ``[FAIL]`` line with its observed numbers
and wall time, then asserts.  Runtime budgets are part of each criterion.
"""

import random
import time

import pytest

from conftest import GENUS2_WORD, is_rotation, reference_swap
from unicellular.coding import Coding, analyze, chain_collection, enumerate_maps, equivalent, parse_coding
from unicellular.homology import gf2_rank, graph_class, intersection_form
from unicellular.surgery import (
    DIAMETER_CONSTANT,
    OrientedEdge,
    all_surgeries,
    build_surgery_graph,
    do_surgery,
    double_surgery_identity,
    graph_metrics,
)
from unicellular.symplectic import (
    TransvectionMove,
    allowed_span_classes,
    apply_move_word,
    basis_vector,
    full_transvections,
    humphries_classes,
    orbit_of,
    random_reducible_vector,
    stabilizer_check,
    vec,
    vector_reduce,
)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def report(capsys, number, ok, timer, budget, detail):
    in_budget = timer.elapsed < budget
    with capsys.disabled():
        print(f"\n[{'PASS' if ok and in_budget else 'FAIL'}] criterion {number}: {detail} "
              f"({timer.elapsed:.2f}s of {budget}s)")
    assert ok, detail
    assert in_budget, f"criterion {number} took {timer.elapsed:.1f}s, budget {budget}s"


def even_partitions(total, parts, smallest=2):
    """Partitions of ``total`` into ``parts`` even parts >= smallest, non-decreasing."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // parts + 1, 2):
        for rest in even_partitions(total - first, parts - 1, first):
            yield (first,) + rest


def feasible_even_data(max_genus=2, max_length=16):
    for g in range(max_genus + 1):
        v = 1
        while 2 * v + 4 * g - 2 <= max_length:
            for d in even_partitions(2 * v + 4 * g - 2, v):
                yield g, d
            v += 1


def test_criterion_1_genus2_example(capsys):
    with Timer() as t:
        s = analyze(parse_coding(GENUS2_WORD))
    got = (s.genus, s.vertex_count, s.degree_partition)
    report(capsys, 1, got == (2, 3, (4, 4, 4)), t, 1,
           f"genus {s.genus}, V = {s.vertex_count}, degrees {s.degree_partition}")


def symbolic_instances(count, rng):
    for _ in range(count):
        k = rng.randint(2, 7)
        inner = [(e, b) for e in range(1, k + 1) for b in (False, True)]
        rng.shuffle(inner)
        cuts = sorted(rng.sample(range(1, 2 * k), 3))
        blocks = [inner[a:b] for a, b in zip([0] + cuts, cuts + [2 * k])]
        xb, yb = rng.random() < 0.5, rng.random() < 0.5
        x, y = OrientedEdge(k + 1, xb), OrientedEdge(k + 2, yb)
        w1, w2, w3, w4 = blocks
        word = Coding(tuple(w1 + [(x.edge, xb)] + w2 + [(x.edge, not xb)] + w3
                            + [(y.edge, yb)] + w4 + [(y.edge, not yb)]))
        expected = (w3 + [(x.edge, xb)] + w2 + [(x.edge, not xb)] + w1
                    + [(y.edge, yb)] + w4 + [(y.edge, not yb)])
        yield word, x, y, expected


def test_criterion_2_surgery_formula(capsys):
    rng = random.Random(20261018)
    bad = checked = 0
    with Timer() as t:
        for c, x, y, expected in symbolic_instances(500, rng):
            checked += 1
            bad += not is_rotation(do_surgery(c, x, y).slots, expected)
        for genus, d in [(1, (4,)), (2, (4, 4, 4))]:
            for node in build_surgery_graph(genus, d).nodes:
                before = analyze(node)
                for x, y, _ in all_surgeries(node):
                    checked += 1
                    out = do_surgery(node, x, y)
                    direct = reference_swap(node.slots, x, y)
                    if direct is not None:
                        ok = is_rotation(out.slots, direct)
                    else:
                        # x..Y..y..X: the literal pattern belongs to (X, Y)
                        ok = equivalent(out, Coding(tuple(reference_swap(node.slots, x.reverse, y.reverse))))
                    after = analyze(out)
                    ok &= (after.genus, after.degree_partition) == (before.genus, before.degree_partition)
                    bad += not ok
    report(capsys, 2, checked > 500 and bad == 0, t, 60, f"{checked} surgeries checked, {bad} mismatches")


def test_criterion_3_double_surgery(capsys):
    with Timer() as t:
        graph = build_surgery_graph(2, (4, 4, 4))
        triples = [(node, x, y) for node in graph.nodes for x, y, _ in all_surgeries(node)]
        failures = sum(not double_surgery_identity(*tr) for tr in triples)
    report(capsys, 3, triples and failures == 0, t, 300,
           f"{len(triples)} admissible triples on {len(graph.nodes)} nodes, {failures} failures")


def test_criterion_4_connectivity(capsys):
    lines, ok = [], True
    with Timer() as t:
        for genus, d, mode in [(1, (4,), "full"), (2, (4, 4, 4), "full"), (1, (3, 3), "full"),
                               (2, (3,) * 6, "bfs")]:
            m = graph_metrics(build_surgery_graph(genus, d, mode))
            if d[0] == 4:
                ok &= m["components"] == 1
            ok &= max(m["diameters"]) <= DIAMETER_CONSTANT * genus ** 2
            lines.append(f"K_{d},{genus} {mode}: {m['nodes']} nodes, {m['components']} component(s), "
                         f"diameter {max(m['diameters'])}")
    report(capsys, 4, ok, t, 600, "; ".join(lines))


def test_criterion_5_invariants(capsys):
    maps = violations = 0
    data = list(feasible_even_data())
    with Timer() as t:
        cases = [(g, c) for g, d in data for c in enumerate_maps(g, d)]
        cases += [(g, chain_collection(g)) for g in range(1, 6)]
        for g, c in cases:
            maps += 1
            form = intersection_form(c)
            m = form.matrix
            ok = (m == m.T).all() and not m.diagonal().any() and gf2_rank(m) == 2 * g
            ok = ok and not graph_class(c, form).is_zero()
            violations += not ok
    report(capsys, 5, maps > 0 and violations == 0, t, 300,
           f"{maps} maps over {len(data)} (genus, degree) pairs plus 5 chains, {violations} violations")


def test_criterion_6_orbits(capsys):
    with Timer() as t:
        sizes = [orbit_of(basis_vector(g, "x1"), full_transvections(g)) for g in range(1, 5)]
    report(capsys, 6, sizes == [3, 15, 63, 255], t, 120, f"orbit sizes {sizes}")


def test_criterion_7_stabilizer(capsys):
    rows, ok = [], True
    with Timer() as t:
        for g, expected in [(2, 48), (3, 23040)]:
            for label, classes in [("full span", allowed_span_classes(g)), ("2g default", humphries_classes(g))]:
                res = stabilizer_check(g, classes)
                ok &= res["generated_order"] == expected == res["stabilizer_order"]
                rows.append(f"g={g} {label} ({len(classes)} classes): {res['generated_order']}")
    report(capsys, 7, ok, t, 600, "; ".join(rows))


def test_criterion_8_vector_reduction(capsys):
    rng = random.Random(8)
    failures, longest = 0, 0
    with Timer() as t:
        for _ in range(1000):
            g = rng.choice((2, 3, 4))
            v = random_reducible_vector(g, 50, rng)
            word = vector_reduce(v, g)
            try:
                for move in word:
                    move.validate()
                ok = apply_move_word(word, v) == basis_vector(g, "x1")
            except ValueError:
                ok = False
            failures += not ok
            longest = max(longest, len(word))
        finale = vector_reduce(vec(2, x1=1, y1=2))
    single_eta = finale == [TransvectionMove(vec(2, y1=1), -2, "eta")]
    report(capsys, 8, failures == 0 and single_eta, t, 60,
           f"1000 vectors, {failures} failures, longest word {longest}; x1+2y1 -> {len(finale)} eta move")


@pytest.mark.parametrize("g,d", list(feasible_even_data()))
def test_feasible_partitions_are_consistent(g, d):
    assert sum(d) == 2 * len(d) + 4 * g - 2 and sum(d) <= 16
