import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottleneck.core.exceptions import InvalidInstanceError
from bottleneck.core.graph import INF, NEG_INF, CsssbpInstance, Graph, SsbpInstance, ssbp_to_csssbp
from bottleneck.services.baselines import (
    dijkstra_csssbp,
    dijkstra_ssbp,
    oracle_csssbp,
    oracle_paths_ssbp,
)
from bottleneck.services.instrumentation import CounterSet

from .strategies import CAPACITIES, csssbp_instances, ssbp_instances


def test_dijkstra_ssbp_single_path():
    g = Graph.from_edges(3, [(0, 1, 7.0), (1, 2, 3.0)])
    assert dijkstra_ssbp(SsbpInstance(g, 0)) == [INF, 7.0, 3.0]


def test_dijkstra_ssbp_diamond(diamond):
    assert dijkstra_ssbp(diamond) == [INF, 2.0, 9.0, 3.0]


def test_dijkstra_ssbp_unreachable():
    g = Graph.from_edges(3, [(0, 1, 7.0), (2, 1, 9.0)])
    assert dijkstra_ssbp(SsbpInstance(g, 0)) == [INF, 7.0, NEG_INF]


def test_dijkstra_csssbp_without_edges():
    inst = CsssbpInstance(Graph.from_edges(2, []), [5.0, 1.0])
    assert dijkstra_csssbp(inst) == [5.0, 1.0]


def test_dijkstra_csssbp_one_relaxation():
    inst = CsssbpInstance(Graph.from_edges(2, [(1, 0, 6.0)]), [NEG_INF, 8.0])
    assert dijkstra_csssbp(inst) == [6.0, 8.0]


def test_oracle_two_cycle():
    g = Graph.from_edges(2, [(0, 1, 4.0), (1, 0, 9.0)])
    assert oracle_csssbp(CsssbpInstance(g, [10.0, NEG_INF])) == [10.0, 4.0]


def test_oracle_without_edges_returns_h():
    h = [3.0, NEG_INF, INF]
    assert oracle_csssbp(CsssbpInstance(Graph.from_edges(3, []), h)) == h


def test_path_oracle_single_edge():
    g = Graph.from_edges(2, [(0, 1, 5.0)])
    assert oracle_paths_ssbp(SsbpInstance(g, 0)) == [INF, 5.0]


def test_path_oracle_triangle_matches_fixpoint():
    g = Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)])
    inst = SsbpInstance(g, 0)
    d = oracle_csssbp(ssbp_to_csssbp(inst)).d
    d[0] = INF
    assert oracle_paths_ssbp(inst) == d == [INF, 1.0, 3.0]


def test_path_oracle_disconnected_target():
    g = Graph.from_edges(3, [(0, 1, 5.0)])
    assert oracle_paths_ssbp(SsbpInstance(g, 0))[2] == NEG_INF


def test_path_oracle_rejects_large_graphs():
    g = Graph.from_edges(12, [])
    with pytest.raises(InvalidInstanceError):
        oracle_paths_ssbp(SsbpInstance(g, 0), max_nodes=10)


def test_dijkstra_counts_heap_operations(diamond):
    counters = CounterSet()
    dijkstra_ssbp(diamond, counters)
    assert counters.bucket_ops >= 2 * diamond.graph.n
    assert counters.touched_elements >= diamond.graph.m


@given(csssbp_instances())
def test_dijkstra_csssbp_matches_fixpoint(inst):
    assert dijkstra_csssbp(inst) == oracle_csssbp(inst)


@given(ssbp_instances())
def test_dijkstra_ssbp_matches_path_oracle(inst):
    assert dijkstra_ssbp(inst) == oracle_paths_ssbp(inst)


@given(csssbp_instances(), st.data())
def test_raising_a_capacity_never_lowers_answers(inst, data):
    v = data.draw(st.integers(min_value=0, max_value=inst.graph.n - 1))
    raised = list(inst.h)
    raised[v] = max(raised[v], data.draw(CAPACITIES))
    before = oracle_csssbp(inst)
    after_oracle = oracle_csssbp(CsssbpInstance(inst.graph, raised))
    after_dijkstra = dijkstra_csssbp(CsssbpInstance(inst.graph, raised))
    assert all(a >= b for a, b in zip(after_oracle, before))
    assert after_dijkstra == after_oracle
