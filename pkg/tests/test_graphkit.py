import itertools
import math
import random

import pytest

from koszulres.graphkit import Graph, cut_polynomial, hilbert_dims_from_graph, monomial_K
from koszulres.koszul import GradedDims, w_dim, w_dims_scan


def graphs_on(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


def test_one_edge_cut_polynomial():
    g = Graph(3, [(1, 2)])
    assert cut_polynomial(g) == {2: 2, 3: 1}
    dims = hilbert_dims_from_graph(g, 4).dims
    assert dims == [2 * (q + 1) + math.comb(q + 1, 2) for q in range(5)]


def test_complete_graph_vanishes_at_zero():
    for n in range(1, 7):
        assert hilbert_dims_from_graph(Graph.complete(n)) == GradedDims([0], 0)


def test_edgeless_graph_never_vanishes():
    scan = hilbert_dims_from_graph(Graph(4), 6)
    assert scan.vanished_at is None
    assert scan.dims[0] == 6


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_all_small_graphs_match_direct_computation(n):
    for g in graphs_on(n):
        K = monomial_K(g)
        oracle = hilbert_dims_from_graph(g, 3)
        assert oracle.dims == [w_dim(K, q) for q in range(len(oracle.dims))], g.sorted_edges()
        assert oracle.dims[0] == math.comb(n, 2) - len(g.edges)


def test_random_five_vertex_graphs_match():
    rng = random.Random(4)
    pairs = list(itertools.combinations(range(1, 6), 2))
    for _ in range(40):
        g = Graph(5, [p for p in pairs if rng.random() < 0.6])
        assert hilbert_dims_from_graph(g, 3) == w_dims_scan(monomial_K(g), 3)


def test_path_on_four_vertices():
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    dims = hilbert_dims_from_graph(g, 3).dims
    assert dims == [w_dim(monomial_K(g), q) for q in range(4)]
    assert dims[0] == 3


def test_parse_and_dump(tmp_path):
    text = "# a triangle with a tail\n4\n1 2\n2 3\n3 1  # closing edge\n3 4\n"
    g = Graph.parse(text)
    assert g.vertex_count == 4
    assert g.sorted_edges() == [(1, 2), (1, 3), (2, 3), (3, 4)]
    path = tmp_path / "g.graph"
    path.write_text(g.dumps())
    assert Graph.read(path) == g


@pytest.mark.parametrize(
    "text",
    ["", "3\n1 1\n", "3\n1 4\n", "3\n1 2\n2 1\n", "3\n1 2 3\n", "x\n"],
)
def test_parse_errors(text):
    with pytest.raises(ValueError):
        Graph.parse(text)


def test_monomial_K_generators():
    K = monomial_K(Graph(3, [(2, 3)]))
    assert K.generators == ((0, 0, 1),)


def test_vertex_cap():
    with pytest.raises(ValueError):
        cut_polynomial(Graph(21))
