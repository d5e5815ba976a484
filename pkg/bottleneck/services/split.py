"""
Split - assign every node its level I(d(v)) against sampled thresholds
without evaluating most indices.

A bucket Dijkstra over levels l, l-1, ..., 0. Edge weights are mapped to a
level only when they fall below the scanning node's threshold (such edges
never survive into a child instance). Initial capacities are kept per group
of a tree partition, and only each group's current maximum is evaluated.
"""
import logging
import math
from bisect import bisect_right
from typing import List, NamedTuple, Optional, Sequence, Union

from pydantic import BaseModel

from bottleneck.core.exceptions import InvalidInstanceError
from bottleneck.core.graph import (
    CAPACITY_ID,
    INF,
    NEG_INF,
    CsssbpInstance,
    TieBreak,
    capacity_key,
)
from bottleneck.services.instrumentation import CounterSet
from bottleneck.services.tree_partition import build_spanning_tree, partition_tree

logger = logging.getLogger(__name__)

NONE = -1


class Thresholds:
    """
    Sorted TieBreak keys lambda_1 < ... < lambda_l, with implicit sentinels
    lambda_0 = -inf and lambda_{l+1} = +inf.
    """

    __slots__ = ("keys",)

    def __init__(self, keys: Sequence[TieBreak]):
        keys = [(float(w), int(i)) for w, i in keys]
        for a, b in zip(keys, keys[1:]):
            if not a < b:
                raise InvalidInstanceError(f"thresholds must be strictly increasing: {a} !< {b}")
        if any(not math.isfinite(w) for w, _ in keys):
            raise InvalidInstanceError("thresholds must be finite edge weights")
        self.keys = keys

    @property
    def l(self) -> int:
        return len(self.keys)

    def lam(self, i: int) -> float:
        """Numeric value of lambda_i, sentinels included."""
        if i <= 0:
            return NEG_INF
        if i > self.l:
            return INF
        return self.keys[i - 1][0]

    def index_of(self, x: Union[float, TieBreak]) -> int:
        """The unique i with lambda_i <= x < lambda_{i+1}; plain floats are capacities."""
        key = x if isinstance(x, tuple) else capacity_key(x)
        return bisect_right(self.keys, key)

    def __repr__(self) -> str:
        return f"Thresholds({[w for w, _ in self.keys]})"


def index_of(th: Thresholds, x: Union[float, TieBreak]) -> int:
    return th.index_of(x)


class SplitCounters(BaseModel):
    """Per-split accounting checked against the split cost bounds."""

    edge_evals: int = 0
    group_evals: int = 0
    r_removed: int = 0
    brute_searches: int = 0
    bucket_ops: int = 0
    b: int = 0
    lazy_edge_violations: int = 0
    group_eval_violations: int = 0
    scan_order_violations: int = 0


class SplitResult(NamedTuple):
    levels: List[int]
    # None when neither counters nor verification were requested
    counters: Optional[SplitCounters]
    # positions of edges whose weight index was evaluated, in evaluation order
    evaluated_edges: List[int]
    # bucket index of every scan, in scan order
    scan_sequence: List[int]


def group_size(l: int, n: int) -> int:
    """s = min(ceil(log2 l), n), at least 1."""
    s = math.ceil(math.log2(l)) if l > 1 else 1
    return max(1, min(s, n))


def classify_removed(inst: CsssbpInstance, th: Thresholds, levels: Sequence[int]) -> List[bool]:
    """Per edge: True if cross-level or below-level (absent from every child)."""
    g = inst.graph
    keys = th.keys
    removed = []
    for e in range(g.m):
        lu = levels[g.src[e]]
        if lu != levels[g.dst[e]]:
            removed.append(True)
        else:
            removed.append(lu > 0 and (g.weight[e], g.eid[e]) < keys[lu - 1])
    return removed


def split_levels(
    inst: CsssbpInstance,
    th: Thresholds,
    counters: Optional[CounterSet] = None,
    verify: bool = True,
) -> SplitResult:
    """
    levels[v] = I(d(v)) for every v. `verify` adds the post-hoc cost checks
    (which edges were evaluated, evaluations per group) to the counters.
    """
    g = inst.graph
    h = inst.h
    n = g.n
    l = th.l
    if l < 1:
        raise InvalidInstanceError("split needs at least one threshold")
    keys = th.keys
    offsets, dst, weight, eid = g.offsets, g.dst, g.weight, g.eid

    # spanning tree, partition, groups (one owner per node)
    s = group_size(l, n)
    tree = build_spanning_tree(g, counters=counters)
    part = partition_tree(tree, s, counters)
    owner = part.owner
    members = part.owned()
    b = part.b

    alive = [True] * n
    galive = [len(nodes) for nodes in members]
    gdead = [0] * b
    gevals = [0] * b
    dp = [NONE] * n
    c_head = [NONE] * (l + 1)
    c_prev = [NONE] * n
    c_next = [NONE] * n
    in_c = [False] * n
    buckets: List[List[int]] = [[] for _ in range(l + 1)]

    edge_evals = 0
    group_evals = 0
    brute = 0
    bucket_ops = 0
    touched = 0
    evaluated: List[int] = []
    scan_sequence: List[int] = []

    def c_insert(v: int, i: int) -> None:
        head = c_head[i]
        c_prev[v] = NONE
        c_next[v] = head
        if head != NONE:
            c_prev[head] = v
        c_head[i] = v
        in_c[v] = True

    def c_remove(v: int, i: int) -> None:
        p, q = c_prev[v], c_next[v]
        if p != NONE:
            c_next[p] = q
        else:
            c_head[i] = q
        if q != NONE:
            c_prev[q] = p
        in_c[v] = False

    def kill(v: int) -> None:
        gi = owner[v]
        alive[v] = False
        galive[gi] -= 1
        gdead[gi] += 1

    def group_max(gi: int) -> int:
        """Brute-force scan for the alive member with largest h; compacts lazily."""
        nodes = members[gi]
        if gdead[gi] > galive[gi]:
            nodes = members[gi] = [x for x in nodes if alive[x]]
            gdead[gi] = 0
        best = NONE
        best_h = NEG_INF
        for x in nodes:
            if alive[x] and (best == NONE or h[x] > best_h):
                best = x
                best_h = h[x]
        return best

    # capacities +inf sit at level l without any evaluation
    for v in range(n):
        if h[v] == INF:
            kill(v)
            dp[v] = l
            c_insert(v, l)
            bucket_ops += 1

    # evaluate each group's maximum and bucket the group
    for gi in range(b):
        if galive[gi]:
            u = group_max(gi)
            brute += 1
            idx = bisect_right(keys, (h[u], CAPACITY_ID))
            group_evals += 1
            gevals[gi] += 1
            buckets[idx].append(gi)
            bucket_ops += 1

    last_scan = l
    scan_violations = 0
    for i in range(l, -1, -1):
        lam_i = keys[i - 1] if i else None
        bucket = buckets[i]

        # drain initializing members with h(u) >= lambda_i
        for gi in bucket:
            if not galive[gi]:
                continue
            for u in members[gi]:
                touched += 1
                if alive[u] and (i == 0 or (h[u], CAPACITY_ID) >= lam_i):
                    kill(u)
                    dp[u] = i
                    c_insert(u, i)
                    bucket_ops += 1

        # scan C_i
        while c_head[i] != NONE:
            u = c_head[i]
            c_remove(u, i)
            bucket_ops += 1
            if verify:
                scan_sequence.append(i)
            if i > last_scan:
                scan_violations += 1
            last_scan = i
            lam_u = keys[i - 1] if i else None
            for e in range(offsets[u], offsets[u + 1]):
                touched += 1
                v = dst[e]
                if i:
                    key = (weight[e], eid[e])
                    if key < lam_u:
                        wbar = bisect_right(keys, key)
                        edge_evals += 1
                        if verify:
                            evaluated.append(e)
                    else:
                        wbar = i
                else:
                    wbar = 0
                if wbar and keys[wbar - 1] > (h[v], CAPACITY_ID):
                    dv = dp[v]
                    if dv == NONE or wbar > dv:
                        if in_c[v]:
                            c_remove(v, dv)
                            bucket_ops += 1
                        if alive[v]:
                            kill(v)
                        dp[v] = wbar
                        c_insert(v, wbar)
                        bucket_ops += 1

        # re-bucket groups that still hold initializing members
        for gi in bucket:
            if not galive[gi]:
                continue
            u = group_max(gi)
            brute += 1
            idx = bisect_right(keys, (h[u], CAPACITY_ID))
            group_evals += 1
            gevals[gi] += 1
            if idx >= i:
                raise AssertionError(f"group {gi} re-bucketed from {i} to {idx}; expected a lower bucket")
            buckets[idx].append(gi)
            bucket_ops += 1
        buckets[i] = []

    levels = dp
    if counters is None and not verify:
        logger.debug(f"Split n={n} m={g.m} l={l} s={s} b={b}")
        return SplitResult(levels, None, evaluated, scan_sequence)

    removed = classify_removed(inst, th, levels)
    split_counters = SplitCounters(
        edge_evals=edge_evals,
        group_evals=group_evals,
        r_removed=sum(removed),
        brute_searches=brute,
        bucket_ops=bucket_ops,
        b=b,
        scan_order_violations=scan_violations,
    )
    if verify:
        split_counters.lazy_edge_violations = sum(1 for e in evaluated if not removed[e])
        distinct = [len({levels[x] for x in nodes}) for nodes in part.owned()]
        split_counters.group_eval_violations = sum(1 for gi in range(b) if gevals[gi] > distinct[gi])

    if counters is not None:
        counters.edge_index_evals += edge_evals
        counters.group_index_evals += group_evals
        counters.brute_searches += brute
        counters.bucket_ops += bucket_ops
        counters.touched_elements += touched + n + g.m
    logger.debug(
        f"Split n={n} m={g.m} l={l} s={s} b={b}: edge_evals={edge_evals} "
        f"group_evals={group_evals} r={split_counters.r_removed}"
    )
    return SplitResult(levels, split_counters, evaluated, scan_sequence)


def split_levels_naive(
    inst: CsssbpInstance,
    th: Thresholds,
    counters: Optional[CounterSet] = None,
) -> SplitResult:
    """
    Reference split: evaluate I(w) for every edge and I(h) for every node,
    then run a bucket Dijkstra over indices.
    """
    g = inst.graph
    n = g.n
    l = th.l
    if l < 1:
        raise InvalidInstanceError("split needs at least one threshold")
    keys = th.keys
    windex = [bisect_right(keys, (w, i)) for w, i in zip(g.weight, g.eid)]
    dp = [bisect_right(keys, capacity_key(x)) for x in inst.h]
    buckets: List[List[int]] = [[] for _ in range(l + 1)]
    for v in range(n):
        buckets[dp[v]].append(v)
    bucket_ops = n
    scanned = [False] * n
    scan_sequence: List[int] = []
    for i in range(l, -1, -1):
        bucket = buckets[i]
        while bucket:
            u = bucket.pop()
            bucket_ops += 1
            if scanned[u] or dp[u] != i:
                continue
            scanned[u] = True
            scan_sequence.append(i)
            for e in range(g.offsets[u], g.offsets[u + 1]):
                v = g.dst[e]
                wbar = i if i < windex[e] else windex[e]
                if wbar > dp[v]:
                    dp[v] = wbar
                    buckets[wbar].append(v)
                    bucket_ops += 1

    split_counters = SplitCounters(
        edge_evals=g.m,
        group_evals=n,
        r_removed=sum(classify_removed(inst, th, dp)),
        bucket_ops=bucket_ops,
        b=n,
    )
    if counters is not None:
        counters.edge_index_evals += g.m
        counters.group_index_evals += n
        counters.bucket_ops += bucket_ops
        counters.touched_elements += 2 * (n + g.m)
    return SplitResult(dp, split_counters, list(range(g.m)), scan_sequence)

