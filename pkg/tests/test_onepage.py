from collections import defaultdict

import numpy as np
import pytest

from gen import NESTED_EDGES, random_nested_edges
from segsum.errors import NestingError, NotFoundError, RangeError
from segsum.onepage import OnePageGraph, check_nesting, find_crossing


def adjacency(n, edges):
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return {u: sorted(adj[u]) for u in range(1, n + 1)}


def check_graph(n, edges):
    g = OnePageGraph(n, edges)
    adj = adjacency(n, edges)
    assert g.m == len(edges)
    assert len(g.bp) == 2 * (n + len(edges))
    for u in range(1, n + 1):
        nb = adj[u]
        assert g.degree(u) == len(nb)
        assert g.indegree(u) == sum(v < u for v in nb)
        assert g.outdegree(u) == sum(v > u for v in nb)
        assert g.neighbours(u) == nb
        for v in set(nb):
            assert g.order(u, v) == nb.index(v) + 1
    want = sorted((min(e), max(e)) for e in edges)
    assert [tuple(e) for e in g.edges().tolist()] == want
    return g


def test_nested_example_graph():
    g = check_graph(12, NESTED_EDGES)
    assert (g.degree(1), g.degree(5), g.degree(9)) == (3, 0, 3)
    assert g.neighbour(1, 2) == 6
    assert g.neighbour(2, 1) == 1
    assert g.neighbour(9, 3) == 12
    assert g.order(9, 11) == 2
    assert g.order(2, 1) == 1


def test_empty_graph():
    g = check_graph(3, [])
    assert [g.degree(u) for u in (1, 2, 3)] == [0, 0, 0]


def test_multi_edge_order_is_smallest():
    g = OnePageGraph(3, [(1, 3), (1, 3)])
    assert g.order(1, 3) == 1
    assert g.order(3, 1) == 1
    assert g.neighbours(3) == [1, 1]


def test_crossing_rejected():
    with pytest.raises(NestingError) as info:
        OnePageGraph(4, [(1, 3), (2, 4)])
    assert {info.value.first, info.value.second} == {(1, 3), (2, 4)}
    assert find_crossing(np.array([1, 2]), np.array([3, 4])) is not None
    check_nesting(4, [(1, 4), (2, 3), (1, 2)])


def test_bad_edges():
    with pytest.raises(ValueError):
        OnePageGraph(3, [(2, 2)])
    with pytest.raises(RangeError):
        OnePageGraph(3, [(1, 4)])
    g = OnePageGraph(3, [(1, 2)])
    with pytest.raises(NotFoundError):
        g.order(1, 3)
    with pytest.raises(RangeError):
        g.neighbour(1, 2)
    with pytest.raises(RangeError):
        g.degree(4)


def test_random_multigraphs_match_adjacency():
    rng = np.random.default_rng(5)
    for _ in range(10_000):
        n = int(rng.integers(1, 257)) if rng.random() < 0.1 else int(rng.integers(1, 24))
        edges = random_nested_edges(rng, n, int(rng.integers(0, 2 * n + 1)))
        check_graph(n, edges)


def test_roundtrip_from_words():
    rng = np.random.default_rng(8)
    edges = random_nested_edges(rng, 200, 300)
    g = OnePageGraph(200, edges)
    h = OnePageGraph.from_words(200, g.bp.words, len(g.bp))
    assert h == g and hash(h) == hash(g)
    assert OnePageGraph(200, h.edges()) == g


def test_neighbours_non_decreasing():
    rng = np.random.default_rng(9)
    g = OnePageGraph(300, random_nested_edges(rng, 300, 500))
    for u in range(1, 301):
        nb = g.neighbours(u)
        assert nb == sorted(nb)


def test_space_overhead():
    # long chain of nested edges plus many short ones, n + m >= 2^20
    n = 1 << 19
    lo = np.arange(1, n // 2)
    edges = np.concatenate([np.stack((lo, n + 1 - lo), 1), np.stack((np.arange(1, n, 2), np.arange(2, n + 1, 2)), 1)])
    edges = edges[edges[:, 0] < edges[:, 1]]
    g = OnePageGraph(n, edges)
    core = 2 * (n + g.m)
    assert g.size_in_bits() - core <= 0.5 * core
