import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottleneck.core.exceptions import InvalidInstanceError
from bottleneck.core.graph import Graph, component_labels
from bottleneck.services.instrumentation import CounterSet
from bottleneck.services.tree_partition import build_spanning_tree, partition_tree

from .strategies import graphs, random_tree_graph


def assert_valid_partition(tree, part, s, counters=None):
    n = tree.n
    assert part.b * s <= n + part.b
    if counters is not None:
        assert counters.touched_elements <= 8 * n
    covered = set()
    seen_edges = []
    for gi, group in enumerate(part.groups):
        root = part.roots[gi]
        assert group[0] == root
        assert len(set(group)) == len(group)
        if n >= s:
            assert s <= len(group) < 3 * s
        members = set(group)
        for x in group:
            if x != root:
                assert tree.parent[x] in members
        assert sorted(part.subtree_edges[gi]) == sorted(x for x in group if x != root)
        seen_edges.extend(part.subtree_edges[gi])
        covered |= members
    assert covered == set(range(n))
    assert sorted(seen_edges) == tree.edges()
    owned = part.owned()
    assert sorted(v for nodes in owned for v in nodes) == list(range(n))
    for v in range(n):
        first = next(gi for gi, group in enumerate(part.groups) if v in group)
        assert part.owner[v] == first


def test_single_node_tree():
    tree = build_spanning_tree(Graph.from_edges(1, []))
    assert tree.edges() == []
    assert partition_tree(tree, 1).groups == [[0]]


def test_directed_path_gives_undirected_tree():
    tree = build_spanning_tree(Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]))
    assert tree.parent == [0, 0, 1]
    assert tree.edges() == [1, 2]


def test_tree_follows_reversed_edges():
    tree = build_spanning_tree(Graph.from_edges(3, [(1, 0, 1.0), (2, 1, 1.0)]))
    assert tree.parent == [0, 0, 1]


def test_spanning_tree_rejects_disconnected_and_empty():
    with pytest.raises(InvalidInstanceError):
        build_spanning_tree(Graph.from_edges(3, [(0, 1, 1.0)]))
    with pytest.raises(InvalidInstanceError):
        build_spanning_tree(Graph.from_edges(0, []))


@given(graphs(max_nodes=20, max_edges=40, connected=True))
def test_spanning_tree_of_connected_graph(g):
    tree = build_spanning_tree(g)
    assert len(tree.edges()) == g.n - 1
    tree_graph = Graph.from_edges(g.n, [(tree.parent[v], v, 1.0) for v in tree.edges()])
    assert component_labels(tree_graph)[1] == 1


def test_path_of_nine_with_s_three():
    g = Graph.from_edges(9, [(v, v + 1, 1.0) for v in range(8)])
    tree = build_spanning_tree(g)
    part = partition_tree(tree, 3)
    assert all(3 <= len(group) < 9 for group in part.groups)
    assert_valid_partition(tree, part, 3)


def test_s_equal_n_gives_one_group():
    g = Graph.from_edges(5, [(0, 1, 1.0), (0, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)])
    tree = build_spanning_tree(g)
    part = partition_tree(tree, 5)
    assert part.b == 1
    assert sorted(part.groups[0]) == list(range(5))


def test_star_shares_center_but_owns_it_once():
    g = Graph.from_edges(7, [(0, leaf, 1.0) for leaf in range(1, 7)])
    tree = build_spanning_tree(g)
    part = partition_tree(tree, 2)
    assert all(2 <= len(group) < 6 for group in part.groups)
    assert all(0 in group for group in part.groups)
    owned = part.owned()
    assert sum(nodes.count(0) for nodes in owned) == 1
    assert_valid_partition(tree, part, 2)


def test_partition_rejects_bad_s():
    tree = build_spanning_tree(Graph.from_edges(2, [(0, 1, 1.0)]))
    with pytest.raises(InvalidInstanceError):
        partition_tree(tree, 0)
    with pytest.raises(InvalidInstanceError):
        partition_tree(tree, 3)


def check_partition(tree, s):
    counters = CounterSet()
    assert_valid_partition(tree, partition_tree(tree, s, counters), s, counters)


def _sizes(n):
    return sorted({1, 2, min(n, max(1, math.ceil(math.log2(n)))), n} & set(range(1, n + 1)))


@given(st.integers(min_value=1, max_value=80), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_random_trees_partition(n, seed):
    tree = build_spanning_tree(random_tree_graph(np.random.default_rng(seed), n))
    for s in _sizes(n):
        check_partition(tree, s)


@pytest.mark.slow
def test_random_trees_partition_bulk():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(1, 501))
        tree = build_spanning_tree(random_tree_graph(rng, n))
        for s in _sizes(n):
            check_partition(tree, s)
