"""
Baselines - reference bottleneck solvers used for cross-checking and
benchmarking: heap-based Dijkstra for SSBP and CSSSBP, a max-min fixpoint
oracle, and exhaustive simple-path enumeration for tiny graphs.
"""
import heapq
import logging
from typing import List, Optional

from bottleneck.core.config import settings
from bottleneck.core.exceptions import InvalidInstanceError
from bottleneck.core.graph import (
    INF,
    NEG_INF,
    BottleneckResult,
    CsssbpInstance,
    Graph,
    SsbpInstance,
)
from bottleneck.services.instrumentation import CounterSet

logger = logging.getLogger(__name__)

UNSEARCHED = 0
LABELED = 1
SCANNED = 2


class LabelState:
    """Labels d'(v) and the unsearched / labeled / scanned status of each node."""

    __slots__ = ("label", "status")

    def __init__(self, label: List[float], status: List[int]):
        self.label = label
        self.status = status


def _run_dijkstra(g: Graph, state: LabelState, counters: Optional[CounterSet]) -> List[float]:
    """
    Repeatedly scan the labeled node with maximum label, relaxing its
    out-edges with d'(v) <- max(d'(v), min(d'(u), w(u, v))).
    Max-heap through negated keys with lazy deletion of stale entries.
    """
    label = state.label
    status = state.status
    offsets, dst, weight = g.offsets, g.dst, g.weight
    heap = [(-label[v], v) for v in range(g.n) if status[v] == LABELED]
    heapq.heapify(heap)
    pushes = len(heap)
    pops = 0
    touched = 0

    while heap:
        neg, u = heapq.heappop(heap)
        pops += 1
        if status[u] == SCANNED or -neg != label[u]:
            continue
        status[u] = SCANNED
        du = label[u]
        for e in range(offsets[u], offsets[u + 1]):
            touched += 1
            v = dst[e]
            if status[v] == SCANNED:
                continue
            cand = du if du < weight[e] else weight[e]
            if cand > label[v]:
                label[v] = cand
                status[v] = LABELED
                heapq.heappush(heap, (-cand, v))
                pushes += 1

    if counters is not None:
        counters.bucket_ops += pushes + pops
        counters.touched_elements += touched + g.n
    return label


def dijkstra_csssbp(inst: CsssbpInstance, counters: Optional[CounterSet] = None) -> BottleneckResult:
    """All nodes start labeled with d'(v) = h(v)."""
    g = inst.graph
    state = LabelState(list(inst.h), [LABELED] * g.n)
    return BottleneckResult(_run_dijkstra(g, state, counters))


def dijkstra_ssbp(inst: SsbpInstance, counters: Optional[CounterSet] = None) -> BottleneckResult:
    """b(s, t) for all t; b(s, s) = +inf (empty path), unreachable nodes -inf."""
    g = inst.graph
    label = [NEG_INF] * g.n
    status = [UNSEARCHED] * g.n
    label[inst.source] = INF
    status[inst.source] = LABELED
    return BottleneckResult(_run_dijkstra(g, LabelState(label, status), counters))


def oracle_csssbp(inst: CsssbpInstance) -> BottleneckResult:
    """
    Max-min fixpoint: start from d = h and sweep all edges in array order
    with the Dijkstra update until a sweep changes nothing.
    """
    g = inst.graph
    d = list(inst.h)
    src, dst, weight = g.src, g.dst, g.weight
    for _ in range(g.n + 1):
        changed = False
        for e in range(g.m):
            du = d[src[e]]
            cand = du if du < weight[e] else weight[e]
            if cand > d[dst[e]]:
                d[dst[e]] = cand
                changed = True
        if not changed:
            break
    return BottleneckResult(d)


def oracle_paths_ssbp(inst: SsbpInstance, max_nodes: Optional[int] = None) -> BottleneckResult:
    """
    Enumerate every simple path from the source; b(s, t) is the best
    bottleneck over them. Exponential, so limited to tiny graphs.
    """
    limit = settings.PATH_ORACLE_MAX_NODES if max_nodes is None else max_nodes
    g = inst.graph
    if g.n > limit:
        raise InvalidInstanceError(f"path oracle supports n <= {limit}, got {g.n}")

    best = [NEG_INF] * g.n
    best[inst.source] = INF
    on_path = [False] * g.n
    on_path[inst.source] = True
    # explicit stack of (node, capacity so far, next out-edge position)
    stack = [[inst.source, INF, g.offsets[inst.source]]]
    while stack:
        frame = stack[-1]
        u, cap, e = frame
        if e == g.offsets[u + 1]:
            on_path[u] = False
            stack.pop()
            continue
        frame[2] = e + 1
        v = g.dst[e]
        if on_path[v]:
            continue
        c = cap if cap < g.weight[e] else g.weight[e]
        if c > best[v]:
            best[v] = c
        on_path[v] = True
        stack.append([v, c, g.offsets[v]])
    return BottleneckResult(best)
