"""
Graph Core - compressed adjacency graphs, bottleneck problem instances,
TieBreak ordering and the linear-time SSBP <-> CSSSBP reductions.

Weights are floats; math.inf marks an unrestricted edge. Capacities are floats
in [-inf, +inf]. All comparisons that must be strict go through TieBreak keys:
(weight, edge id) for edges, (value, -1) for capacities, so a capacity equal to
an edge weight sorts strictly below that edge.
"""
import logging
import math
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from bottleneck.core.exceptions import InvalidInstanceError

logger = logging.getLogger(__name__)

INF = math.inf
NEG_INF = -math.inf

TieBreak = Tuple[float, int]
CAPACITY_ID = -1


def edge_key(weight: float, edge_id: int) -> TieBreak:
    return (weight, edge_id)


def capacity_key(value: float) -> TieBreak:
    return (value, CAPACITY_ID)


def is_restricted(weight: float) -> bool:
    return weight != INF


class Graph:
    """
    Directed multigraph in compressed adjacency form.

    Edges are stored in contiguous arrays sorted by source; the out-edges of
    node u are positions offsets[u] .. offsets[u+1]-1. `eid` holds the
    original id of each edge and is the second component of its TieBreak key,
    so sub-graphs keep the tie order of the graph they came from.
    Instances are treated as immutable once built.
    """

    __slots__ = ("n", "src", "dst", "weight", "eid", "offsets")

    def __init__(
        self,
        n: int,
        src: List[int],
        dst: List[int],
        weight: List[float],
        eid: List[int],
        offsets: List[int],
    ):
        self.n = n
        self.src = src
        self.dst = dst
        self.weight = weight
        self.eid = eid
        self.offsets = offsets

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Sequence[Tuple[int, int, float]],
        edge_ids: Optional[Sequence[int]] = None,
    ) -> "Graph":
        """Validate and build a graph from (src, dst, weight) triples."""
        if edges:
            src, dst, weight = zip(*edges)
        else:
            src, dst, weight = (), (), ()
        return cls.from_arrays(n, src, dst, weight, edge_ids)

    @classmethod
    def from_arrays(
        cls,
        n: int,
        src: Sequence[int],
        dst: Sequence[int],
        weight: Sequence[float],
        edge_ids: Optional[Sequence[int]] = None,
    ) -> "Graph":
        if n < 0:
            raise InvalidInstanceError(f"node count must be non-negative, got {n}")
        src_a = np.asarray(src, dtype=np.int64).reshape(-1)
        dst_a = np.asarray(dst, dtype=np.int64).reshape(-1)
        w_a = np.asarray(weight, dtype=np.float64).reshape(-1)
        m = src_a.shape[0]
        if dst_a.shape[0] != m or w_a.shape[0] != m:
            raise InvalidInstanceError("src, dst and weight must have the same length")
        if edge_ids is None:
            id_a = np.arange(m, dtype=np.int64)
        else:
            id_a = np.asarray(edge_ids, dtype=np.int64).reshape(-1)
            if id_a.shape[0] != m:
                raise InvalidInstanceError("edge_ids must have one entry per edge")
            if m and (id_a.min() < 0 or np.unique(id_a).shape[0] != m):
                raise InvalidInstanceError("edge ids must be distinct non-negative integers")
        if m:
            if min(src_a.min(), dst_a.min()) < 0 or max(src_a.max(), dst_a.max()) >= n:
                raise InvalidInstanceError(f"edge endpoint outside [0, {n})")
            if np.isnan(w_a).any():
                raise InvalidInstanceError("edge weight is NaN")
            if np.isneginf(w_a).any():
                raise InvalidInstanceError("edge weight is -inf")

        order = np.argsort(src_a, kind="stable")
        offsets = np.zeros(n + 1, dtype=np.int64)
        if n:
            np.cumsum(np.bincount(src_a, minlength=n), out=offsets[1:])
        return cls(
            n,
            src_a[order].tolist(),
            dst_a[order].tolist(),
            w_a[order].tolist(),
            id_a[order].tolist(),
            offsets.tolist(),
        )

    @classmethod
    def from_sorted(
        cls,
        n: int,
        src: List[int],
        dst: List[int],
        weight: List[float],
        eid: List[int],
    ) -> "Graph":
        """
        Trusted builder for arrays already sorted by source (internal callers
        that derive sub-graphs). Skips validation and numpy round-trips.
        """
        counts = [0] * (n + 1)
        for u in src:
            counts[u + 1] += 1
        for u in range(n):
            counts[u + 1] += counts[u]
        return cls(n, src, dst, weight, eid, counts)

    @property
    def m(self) -> int:
        return len(self.src)

    def out_edges(self, u: int) -> range:
        return range(self.offsets[u], self.offsets[u + 1])

    def edges(self) -> Iterator[Tuple[int, int, float]]:
        return zip(self.src, self.dst, self.weight)

    def edge_key(self, e: int) -> TieBreak:
        return (self.weight[e], self.eid[e])

    def restricted_edges(self) -> List[int]:
        return [e for e, w in enumerate(self.weight) if w != INF]

    def restricted_count(self) -> int:
        return sum(1 for w in self.weight if w != INF)

    def max_weight(self) -> float:
        """Largest edge weight; +inf for a graph without edges."""
        return max(self.weight) if self.weight else INF

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class SsbpInstance:
    """(G, w, s): single-source bottleneck path instance."""

    __slots__ = ("graph", "source")

    def __init__(self, graph: Graph, source: int):
        if not 0 <= source < graph.n:
            raise InvalidInstanceError(f"source {source} outside [0, {graph.n})")
        self.graph = graph
        self.source = source

    def __repr__(self) -> str:
        return f"SsbpInstance(n={self.graph.n}, m={self.graph.m}, source={self.source})"


class CsssbpInstance:
    """(G, w, h): bottleneck instance with a per-node initial capacity h."""

    __slots__ = ("graph", "h")

    def __init__(self, graph: Graph, h: Sequence[float]):
        h = [float(x) for x in h]
        if len(h) != graph.n:
            raise InvalidInstanceError(f"h has {len(h)} entries, graph has {graph.n} nodes")
        if any(math.isnan(x) for x in h):
            raise InvalidInstanceError("initial capacity is NaN")
        self.graph = graph
        self.h = h

    def __repr__(self) -> str:
        return f"CsssbpInstance(n={self.graph.n}, m={self.graph.m})"


class BottleneckResult:
    """d(v) for every node: the maximum capacity of a path ending at v."""

    __slots__ = ("d",)

    def __init__(self, d: Sequence[float]):
        self.d = list(d)

    def __len__(self) -> int:
        return len(self.d)

    def __getitem__(self, v: int) -> float:
        return self.d[v]

    def __iter__(self) -> Iterator[float]:
        return iter(self.d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BottleneckResult):
            return self.d == other.d
        if isinstance(other, (list, tuple)):
            return self.d == list(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"BottleneckResult({self.d!r})"


class SsbpReduction(NamedTuple):
    instance: SsbpInstance
    # node_map[v] is the node of the reduced graph standing for input node v
    node_map: List[int]


class Component(NamedTuple):
    # nodes[local] is the id in the decomposed graph; doubles as the remapping
    nodes: List[int]
    graph: Graph


# ============================================================
# Reductions
# ============================================================
def ssbp_to_csssbp(inst: SsbpInstance) -> CsssbpInstance:
    """h(s) = max edge weight (+inf without edges), h(v) = -inf elsewhere."""
    g = inst.graph
    h = [NEG_INF] * g.n
    h[inst.source] = g.max_weight()
    return CsssbpInstance(g, h)


def csssbp_to_ssbp(inst: CsssbpInstance) -> SsbpReduction:
    """
    Add a super-source (node n) with an edge of weight h(v) to every v with
    h(v) > -inf. Edges with h(v) = +inf are unrestricted. Original edges keep
    their ids; the new edges take ids above them.
    """
    g = inst.graph
    n = g.n
    base = max(g.eid) + 1 if g.eid else 0
    src = list(g.src)
    dst = list(g.dst)
    weight = list(g.weight)
    eid = list(g.eid)
    for v, hv in enumerate(inst.h):
        if hv > NEG_INF:
            src.append(n)
            dst.append(v)
            weight.append(hv)
            eid.append(base + v)
    graph = Graph.from_sorted(n + 1, src, dst, weight, eid)
    return SsbpReduction(SsbpInstance(graph, n), list(range(n)))


# ============================================================
# Weakly connected components
# ============================================================
def component_labels(g: Graph) -> Tuple[List[int], int]:
    """Label nodes by weak component, numbered in order of smallest member."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in zip(g.src, g.dst):
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv

    label = [-1] * g.n
    count = 0
    for v in range(g.n):
        r = find(v)
        if label[r] < 0:
            label[r] = count
            count += 1
        label[v] = label[r]
    return label, count


def is_weakly_connected(g: Graph) -> bool:
    return component_labels(g)[1] <= 1


def weakly_connected_components(g: Graph) -> List[Component]:
    """
    Split g into weak components. Node sets partition V and every edge lands
    in exactly one induced sub-graph, with local ids assigned in increasing
    order of the original ids.
    """
    label, count = component_labels(g)
    nodes: List[List[int]] = [[] for _ in range(count)]
    local = [0] * g.n
    for v in range(g.n):
        members = nodes[label[v]]
        local[v] = len(members)
        members.append(v)

    parts = [([], [], [], []) for _ in range(count)]
    for e in range(g.m):
        u = g.src[e]
        src, dst, weight, eid = parts[label[u]]
        src.append(local[u])
        dst.append(local[g.dst[e]])
        weight.append(g.weight[e])
        eid.append(g.eid[e])

    components = [
        Component(nodes[c], Graph.from_sorted(len(nodes[c]), *parts[c]))
        for c in range(count)
    ]
    logger.debug(f"Decomposed {g!r} into {count} weak components")
    return components
