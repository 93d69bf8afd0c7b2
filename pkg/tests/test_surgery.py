import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import codings, is_rotation, reference_swap, rooted_count
from unicellular.coding import (
    Coding,
    CodingError,
    analyze,
    canonical_form,
    enumerate_maps,
    equivalent,
    parse_coding,
)
from unicellular.surgery import (
    DIAMETER_CONSTANT,
    OrientedEdge,
    all_surgeries,
    build_surgery_graph,
    default_seed,
    do_surgery,
    double_surgery_identity,
    graph_metrics,
    intertwined,
    oriented_edges,
    trivalent_seed,
)

E = OrientedEdge.parse


@st.composite
def patterned(draw):
    """A coding w1 x w2 X w3 y w4 Y with nonempty blocks, plus the letters x and y."""
    inner = draw(codings(min_edges=2, max_edges=6))
    n = len(inner)
    cuts = sorted(draw(st.lists(st.integers(1, n - 1), min_size=3, max_size=3, unique=True)))
    w1, w2, w3, w4 = (list(inner.slots[a:b]) for a, b in zip([0] + cuts, cuts + [n]))
    k = inner.num_edges
    x, xb, y, yb = (k + 1, False), (k + 1, True), (k + 2, False), (k + 2, True)
    if draw(st.booleans()):
        x, xb = xb, x
    if draw(st.booleans()):
        y, yb = yb, y
    word = Coding(tuple(w1 + [x] + w2 + [xb] + w3 + [y] + w4 + [yb]))
    return word, OrientedEdge(*x), OrientedEdge(*y), (w1, w2, w3, w4)


class TestIntertwined:
    def test_torus_is_not(self):
        assert not intertwined(parse_coding("abAB"), E("a"), E("b"))

    def test_genus2_example(self, quartic_coding):
        assert intertwined(quartic_coding, E("f"), E("D"))

    def test_errors(self, quartic_coding):
        with pytest.raises(CodingError):
            intertwined(quartic_coding, E("a"), E("z"))
        with pytest.raises(ValueError):
            intertwined(quartic_coding, E("a"), E("A"))

    @given(patterned())
    def test_pattern_is_intertwined(self, data):
        c, x, y, _ = data
        assert intertwined(c, x, y)

    @given(codings(min_edges=2), st.data())
    def test_symmetric_under_reversal(self, c, data):
        x = data.draw(st.sampled_from(oriented_edges(c)))
        y = data.draw(st.sampled_from([o for o in oriented_edges(c) if o.edge != x.edge]))
        assert intertwined(c, x, y) == intertwined(c, x.reverse, y.reverse)

    def test_parse(self):
        assert E("a") == OrientedEdge(1) and E("C") == OrientedEdge(3, True)
        assert E("-4") == OrientedEdge(4, True) and E("+2") == OrientedEdge(2)
        with pytest.raises(ValueError):
            E("0")


class TestSurgery:
    @given(patterned())
    def test_symbolic_block_swap(self, data):
        c, x, y, (w1, w2, w3, w4) = data
        expected = w3 + [(x.edge, x.barred)] + w2 + [(x.edge, not x.barred)] + w1 \
            + [(y.edge, y.barred)] + w4 + [(y.edge, not y.barred)]
        out = do_surgery(c, x, y)
        assert is_rotation(out.slots, expected)
        assert reference_swap(c.slots, x, y) == expected

    @given(patterned())
    def test_involution_with_same_witness(self, data):
        c, x, y, _ = data
        once = do_surgery(c, x, y)
        assert is_rotation(do_surgery(once, x, y).slots, c.slots)

    def test_equal_blocks_swap_is_trivial(self):
        # w1 = w3 = () in a b A c B C with x = a, y = c
        c = parse_coding("abAcBC")
        assert is_rotation(do_surgery(c, E("a"), E("c")).slots, c.slots)

    @given(patterned())
    def test_preserves_invariants(self, data):
        c, x, y, _ = data
        a, b = analyze(c), analyze(do_surgery(c, x, y))
        assert (len(c), a.genus, a.degree_partition) == (len(c), b.genus, b.degree_partition)

    def test_genus2_example(self, quartic_coding):
        out = do_surgery(quartic_coding, E("f"), E("D"))
        s = analyze(out)
        assert (len(out), s.genus, s.degree_partition) == (12, 2, (4, 4, 4))

    def test_refuses_non_intertwined(self):
        with pytest.raises(ValueError, match="not intertwined"):
            do_surgery(parse_coding("abAB"), E("a"), E("b"))


class TestAllSurgeries:
    @pytest.mark.parametrize("word", ["abAB", "aA"])
    def test_empty(self, word):
        assert all_surgeries(parse_coding(word)) == []

    def test_genus2_word(self, quartic_coding):
        out = all_surgeries(quartic_coding)
        assert out
        for x, y, r in out:
            assert x.edge != y.edge
            assert canonical_form(r) == r
            s = analyze(r)
            assert (s.genus, s.degree_partition) == (2, (4, 4, 4))


class TestDoubleSurgery:
    def test_genus2_example(self, quartic_coding):
        assert double_surgery_identity(quartic_coding, E("f"), E("D"))

    @given(patterned())
    def test_symbolic_composite_word(self, data):
        c, x, y, (w1, w2, w3, w4) = data
        twice = do_surgery(do_surgery(c, x, y), x.reverse, y.reverse)
        composite = w3 + [(x.edge, x.barred)] + w4 + [(x.edge, not x.barred)] + w1 \
            + [(y.edge, y.barred)] + w2 + [(y.edge, not y.barred)]
        assert is_rotation(twice.slots, composite)
        assert equivalent(twice, c)

    @settings(max_examples=60, deadline=None)
    @given(codings(min_edges=3, max_edges=8))
    def test_random_codings(self, c):
        for x, y, _ in all_surgeries(c):
            assert double_surgery_identity(c, x, y)


class TestGraph:
    def test_torus(self):
        g = build_surgery_graph(1, (4,))
        assert (len(g.nodes), len(g.edges)) == (1, 0)
        assert graph_metrics(g) == {"nodes": 1, "edges": 0, "components": 1, "diameters": [0]}

    def test_genus2_quartic(self):
        g = build_surgery_graph(2, (4, 4, 4))
        m = graph_metrics(g)
        assert m["components"] == 1 and m["nodes"] == 6
        assert max(m["diameters"]) <= DIAMETER_CONSTANT * 2 ** 2

    def test_bfs_matches_full(self):
        full = build_surgery_graph(2, (4, 4, 4))
        bfs = build_surgery_graph(2, (4, 4, 4), mode="bfs")
        assert set(full.nodes) == set(bfs.nodes)
        assert graph_metrics(full) == graph_metrics(bfs)

    def test_nodes_are_the_enumeration(self):
        g = build_surgery_graph(1, (2, 2, 4))
        assert set(g.nodes) == enumerate_maps(1, (2, 2, 4))

    def test_witnesses_are_valid(self):
        g = build_surgery_graph(2, (4, 4, 4))
        for (i, j), (x, y) in g.edges.items():
            assert i < j
            assert equivalent(do_surgery(g.nodes[i], x, y), g.nodes[j])

    def test_json_schema(self):
        g = build_surgery_graph(2, (4, 4, 4))
        out = json.loads(json.dumps(g.to_json()))
        assert set(out) == {"genus", "degrees", "mode", "nodes", "edges", "metrics"}
        assert out["degrees"] == [4, 4, 4] and out["mode"] == "full"
        for i, j, w in out["edges"]:
            assert 0 <= i < j < len(out["nodes"]) and set(w) == {"x", "y"}

    def test_dot(self):
        dot = build_surgery_graph(2, (4, 4, 4)).to_dot()
        assert dot.startswith("graph ") and dot.rstrip().endswith("}")
        assert dot.count(" -- ") == len(build_surgery_graph(2, (4, 4, 4)).edges)

    def test_bad_seed(self):
        with pytest.raises(ValueError):
            build_surgery_graph(2, (4, 4, 4), mode="bfs", seed=parse_coding("abAB"))
        with pytest.raises(ValueError):
            build_surgery_graph(1, (4,), mode="sideways")
        with pytest.raises(ValueError):
            default_seed(2, (6, 2, 2, 2))


def walsh_lehman(g: int) -> int:
    """Rooted trivalent one-face maps of genus g."""
    return 2 * math.factorial(6 * g - 3) // (12 ** g * math.factorial(g) * math.factorial(3 * g - 2))


class TestTrivalent:
    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_seed(self, g):
        s = analyze(trivalent_seed(g))
        assert s.genus == g and set(s.degree_partition) == {3}
        assert s.vertex_count == 4 * g - 2

    def test_genus1_full_matches_formula(self):
        nodes = enumerate_maps(1, (3, 3))
        assert rooted_count(nodes) == walsh_lehman(1) == 1

    @pytest.mark.slow
    def test_genus2_closure_is_everything(self):
        g = build_surgery_graph(2, (3,) * 6, mode="bfs")
        assert graph_metrics(g)["components"] == 1
        assert rooted_count(g.nodes) == walsh_lehman(2) == 105
        assert max(graph_metrics(g)["diameters"]) <= DIAMETER_CONSTANT * 2 ** 2


def test_quartic_genus2_rooted_count():
    assert rooted_count(enumerate_maps(2, (4, 4, 4))) == 45
