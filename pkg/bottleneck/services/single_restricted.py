"""
Single Restricted - linear-time CSSSBP for graphs with at most one restricted
edge, the base case of the recursive solver.

With only unrestricted edges d(v) is the largest h(u) over nodes u reaching v:
contract strongly connected components (Tarjan, explicit stack), give each
component the max h of its members, and push values along the condensed DAG
in topological order. One restricted edge e0 = (u0, v0) adds a second phase
that lifts every node reachable from v0 to min(d(u0), w(e0)).
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

from bottleneck.core.exceptions import InvalidInstanceError
from bottleneck.core.graph import NEG_INF, BottleneckResult, CsssbpInstance, Graph
from bottleneck.services.instrumentation import CounterSet

logger = logging.getLogger(__name__)

NO_EDGE = -1


class CondensedDag:
    """
    SCC condensation. Component ids are topological: every condensed edge
    goes from a smaller id to a larger one.
    """

    __slots__ = ("comp", "count", "edges", "capacity")

    def __init__(
        self,
        comp: List[int],
        count: int,
        edges: Dict[Tuple[int, int], float],
        capacity: List[float],
    ):
        self.comp = comp
        self.count = count
        # (cu, cv) -> max weight over the original edges joining the two components
        self.edges = edges
        self.capacity = capacity


def strongly_connected_components(
    g: Graph,
    skip_edge: int = NO_EDGE,
    counters: Optional[CounterSet] = None,
) -> Tuple[List[int], int]:
    """
    Tarjan's algorithm with an explicit work stack. Returns per-node component
    ids numbered in topological order, and the component count.
    """
    n = g.n
    offsets, dst = g.offsets, g.dst
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: List[int] = []
    next_index = 0
    emitted = 0
    touched = 0

    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = next_index
        next_index += 1
        stack.append(root)
        on_stack[root] = True
        work = [[root, offsets[root]]]
        while work:
            frame = work[-1]
            v, e = frame
            end = offsets[v + 1]
            while e < end:
                if e != skip_edge:
                    w = dst[e]
                    if index[w] == -1:
                        break
                    if on_stack[w] and index[w] < low[v]:
                        low[v] = index[w]
                e += 1
            touched += e - frame[1]
            if e < end:
                frame[1] = e + 1
                w = dst[e]
                index[w] = low[w] = next_index
                next_index += 1
                stack.append(w)
                on_stack[w] = True
                work.append([w, offsets[w]])
                continue
            frame[1] = e
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    x = stack.pop()
                    on_stack[x] = False
                    comp[x] = emitted
                    if x == v:
                        break
                emitted += 1

    # Tarjan emits sinks first; reverse to get topological ids
    last = emitted - 1
    comp = [last - c for c in comp]
    if counters is not None:
        counters.touched_elements += touched + 2 * n
    return comp, emitted


def condense(
    inst: CsssbpInstance,
    skip_edge: int = NO_EDGE,
    counters: Optional[CounterSet] = None,
) -> CondensedDag:
    g = inst.graph
    comp, count = strongly_connected_components(g, skip_edge, counters)
    capacity = [NEG_INF] * count
    for v, hv in enumerate(inst.h):
        c = comp[v]
        if hv > capacity[c]:
            capacity[c] = hv
    edges: Dict[Tuple[int, int], float] = {}
    for e in range(g.m):
        if e == skip_edge:
            continue
        cu, cv = comp[g.src[e]], comp[g.dst[e]]
        if cu == cv:
            continue
        w = g.weight[e]
        if edges.get((cu, cv), NEG_INF) < w:
            edges[(cu, cv)] = w
    if counters is not None:
        counters.touched_elements += g.n + g.m
    return CondensedDag(comp, count, edges, capacity)


def _propagate(dag: CondensedDag, counters: Optional[CounterSet]) -> List[float]:
    """Dijkstra on a DAG: settle components in topological order."""
    adj: List[List[Tuple[int, float]]] = [[] for _ in range(dag.count)]
    for (cu, cv), w in dag.edges.items():
        adj[cu].append((cv, w))
    cap = list(dag.capacity)
    for c in range(dag.count):
        cc = cap[c]
        for cv, w in adj[c]:
            cand = cc if cc < w else w
            if cand > cap[cv]:
                cap[cv] = cand
    if counters is not None:
        counters.touched_elements += dag.count + 2 * len(dag.edges)
    return [cap[c] for c in dag.comp]


def _solve_unrestricted(
    inst: CsssbpInstance,
    skip_edge: int,
    counters: Optional[CounterSet],
) -> List[float]:
    return _propagate(condense(inst, skip_edge, counters), counters)


def solve_zero_restricted(
    inst: CsssbpInstance,
    counters: Optional[CounterSet] = None,
) -> BottleneckResult:
    """d(v) = max h(u) over all u reaching v; every edge must be unrestricted."""
    restricted = inst.graph.restricted_count()
    if restricted:
        raise InvalidInstanceError(f"expected no restricted edges, found {restricted}")
    return BottleneckResult(_solve_unrestricted(inst, NO_EDGE, counters))


def solve_one_restricted(
    inst: CsssbpInstance,
    counters: Optional[CounterSet] = None,
) -> BottleneckResult:
    g = inst.graph
    restricted = g.restricted_edges()
    if len(restricted) != 1:
        raise InvalidInstanceError(f"expected exactly one restricted edge, found {len(restricted)}")
    e0 = restricted[0]
    u0, v0, w0 = g.src[e0], g.dst[e0], g.weight[e0]

    # paths avoiding e0
    d = _solve_unrestricted(inst, e0, counters)

    # paths through e0: everything reachable from v0 gets min(d(u0), w0)
    lift = d[u0] if d[u0] < w0 else w0
    seen = [False] * g.n
    seen[v0] = True
    queue = deque([v0])
    touched = 0
    while queue:
        x = queue.popleft()
        if lift > d[x]:
            d[x] = lift
        for e in range(g.offsets[x], g.offsets[x + 1]):
            touched += 1
            y = g.dst[e]
            if not seen[y]:
                seen[y] = True
                queue.append(y)
    if counters is not None:
        counters.touched_elements += touched + g.n
    return BottleneckResult(d)


def solve_base_case(inst: CsssbpInstance, counters: Optional[CounterSet] = None) -> BottleneckResult:
    """Dispatch on the restricted-edge count (0 or 1)."""
    if inst.graph.restricted_count() == 0:
        return solve_zero_restricted(inst, counters)
    return solve_one_restricted(inst, counters)

