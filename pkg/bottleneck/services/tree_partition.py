"""
Tree Partition - spanning tree of the undirected view of a graph and its
partition into edge-disjoint subtrees with node counts in [s, 3s).

The partition is the recursive accumulation: a node starts its set U with
itself, absorbs each child's returned set in turn, and reports U as a group
(resetting U to itself) whenever |U| >= s. The set returned by the root is
merged into the last reported group, which shares its root with it.
"""
import logging
from collections import deque
from typing import List, Optional

from bottleneck.core.exceptions import InvalidInstanceError
from bottleneck.core.graph import Graph
from bottleneck.services.instrumentation import CounterSet

logger = logging.getLogger(__name__)

NONE = -1


class SpanningTree:
    """
    Rooted spanning tree. parent[root] == root; parent_edge[v] is the
    position in the source graph of the edge that connected v to its parent.
    A tree edge is named by its child endpoint.
    """

    __slots__ = ("root", "parent", "children", "parent_edge")

    def __init__(self, root: int, parent: List[int], children: List[List[int]], parent_edge: List[int]):
        self.root = root
        self.parent = parent
        self.children = children
        self.parent_edge = parent_edge

    @property
    def n(self) -> int:
        return len(self.parent)

    def edges(self) -> List[int]:
        """Child endpoints of the n - 1 tree edges."""
        return [v for v in range(self.n) if v != self.root]


class TreePartition:
    """
    groups[i]: node ids of subtree i (its root first); subtree_edges[i]: the
    tree edges of subtree i named by child endpoint; owner[v]: the first
    reported group containing v.
    """

    __slots__ = ("s", "groups", "subtree_edges", "roots", "owner")

    def __init__(
        self,
        s: int,
        groups: List[List[int]],
        subtree_edges: List[List[int]],
        roots: List[int],
        owner: List[int],
    ):
        self.s = s
        self.groups = groups
        self.subtree_edges = subtree_edges
        self.roots = roots
        self.owner = owner

    @property
    def b(self) -> int:
        return len(self.groups)

    def owned(self) -> List[List[int]]:
        """Node lists by owning group; these partition V."""
        members: List[List[int]] = [[] for _ in self.groups]
        for v, g in enumerate(self.owner):
            members[g].append(v)
        return members


def build_spanning_tree(g: Graph, root: int = 0, counters: Optional[CounterSet] = None) -> SpanningTree:
    """BFS over the undirected view of g. Rejects graphs that are not weakly connected."""
    n = g.n
    if n == 0:
        raise InvalidInstanceError("cannot build a spanning tree of an empty graph")
    # undirected incidence lists of edge positions
    incident: List[List[int]] = [[] for _ in range(n)]
    for e in range(g.m):
        incident[g.src[e]].append(e)
        incident[g.dst[e]].append(e)

    parent = [NONE] * n
    parent_edge = [NONE] * n
    children: List[List[int]] = [[] for _ in range(n)]
    parent[root] = root
    queue = deque([root])
    reached = 1
    touched = 0
    while queue:
        u = queue.popleft()
        for e in incident[u]:
            touched += 1
            v = g.dst[e] if g.src[e] == u else g.src[e]
            if parent[v] == NONE:
                parent[v] = u
                parent_edge[v] = e
                children[u].append(v)
                queue.append(v)
                reached += 1
    if reached != n:
        raise InvalidInstanceError(f"graph is not weakly connected ({reached} of {n} nodes reached)")
    if counters is not None:
        counters.touched_elements += touched + 2 * g.m + n
    return SpanningTree(root, parent, children, parent_edge)


def partition_tree(t: SpanningTree, s: int, counters: Optional[CounterSet] = None) -> TreePartition:
    """
    Post-order accumulation with an explicit stack. Each pending set is kept
    as its root plus a linked chain of non-root members, so absorbing a
    child's set is O(1) and every node is materialized once.
    """
    n = t.n
    if not 1 <= s <= n:
        raise InvalidInstanceError(f"s must be in [1, {n}], got {s}")

    size = [1] * n
    head = [NONE] * n
    tail = [NONE] * n
    nxt = [NONE] * n
    groups: List[List[int]] = []
    roots: List[int] = []
    touched = 0

    def materialize(v: int) -> List[int]:
        nodes = [v]
        x = head[v]
        while x != NONE:
            nodes.append(x)
            x = nxt[x] if x != tail[v] else NONE
        return nodes

    children = t.children
    stack = [[t.root, 0]]
    while stack:
        frame = stack[-1]
        v, i = frame
        if i < len(children[v]):
            frame[1] = i + 1
            stack.append([children[v][i], 0])
            continue
        stack.pop()
        touched += 1
        if not stack:
            break
        p = stack[-1][0]
        # U(p) <- U(p) + returned set of v
        if tail[p] == NONE:
            head[p] = v
        else:
            nxt[tail[p]] = v
        if head[v] == NONE:
            tail[p] = v
        else:
            nxt[v] = head[v]
            tail[p] = tail[v]
        size[p] += size[v]
        if size[p] >= s:
            group = materialize(p)
            touched += len(group)
            groups.append(group)
            roots.append(p)
            size[p] = 1
            head[p] = tail[p] = NONE

    root = t.root
    remnant = materialize(root)
    touched += len(remnant)
    if groups:
        # the remnant contains the last group's root; keep one copy of it
        groups[-1] = remnant + groups[-1][1:]
        roots[-1] = root
    else:
        groups.append(remnant)
        roots.append(root)

    owner = [NONE] * n
    subtree_edges: List[List[int]] = []
    for gi, group in enumerate(groups):
        group_root = roots[gi]
        edges = []
        for x in group:
            if owner[x] == NONE:
                owner[x] = gi
            if x != group_root:
                edges.append(x)
        subtree_edges.append(edges)
        touched += len(group)

    if counters is not None:
        counters.touched_elements += touched + n
    logger.debug(f"Partitioned tree of {n} nodes with s={s} into {len(groups)} subtrees")
    return TreePartition(s, groups, subtree_edges, roots, owner)
