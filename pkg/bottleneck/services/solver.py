"""
Recursive Solver - randomized divide and conquer on edge ranks for CSSSBP,
and the public SSBP entry point.

Each call decomposes its graph into weak components, hands components with at
most one restricted edge to the linear base case, and otherwise samples
l = min(k, q) restricted edges as thresholds, splits the nodes into levels
and recurses on one smaller instance per non-empty level. Recursion runs on
an explicit work stack; answers are written back through node maps.
"""
import logging
import math
import time
from functools import cmp_to_key
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from bottleneck.core.config import settings
from bottleneck.core.exceptions import DepthLimitExceeded, InvalidInstanceError
from bottleneck.core.graph import (
    INF,
    NEG_INF,
    BottleneckResult,
    CsssbpInstance,
    Graph,
    SsbpInstance,
    TieBreak,
    ssbp_to_csssbp,
    weakly_connected_components,
)
from bottleneck.services.instrumentation import CallRecord, CounterSet, SolveStats
from bottleneck.services.single_restricted import solve_base_case
from bottleneck.services.split import Thresholds, split_levels, split_levels_naive

logger = logging.getLogger(__name__)


class SolverConfig(BaseModel):
    """
    k is fixed for a whole solve; None derives it from the top-level node
    count. depth_limit None means the sound cap (restricted edges + 2).
    """

    k: Optional[int] = Field(default=None, ge=2)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    depth_limit: Optional[int] = Field(default=None, ge=1)
    counters_enabled: bool = True
    verify: bool = True
    # evaluate every index in each split (reference cost, used by bench)
    naive_split: bool = False

    @classmethod
    def from_settings(cls, **overrides) -> "SolverConfig":
        values = {
            "k": settings.DEFAULT_K or None,
            "seed": settings.DEFAULT_SEED,
            "depth_limit": settings.DEPTH_LIMIT or None,
            "counters_enabled": settings.COUNTERS_ENABLED,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def default_k(n: int) -> int:
    """k = max(2, 2^ceil(sqrt(log2 n)))."""
    if n < 1:
        raise InvalidInstanceError(f"n must be positive, got {n}")
    return max(2, 2 ** math.ceil(math.sqrt(math.log2(n))))


def sample_thresholds(
    restricted: Sequence[TieBreak],
    k: int,
    rng: np.random.Generator,
    counters: Optional[CounterSet] = None,
) -> Thresholds:
    """
    Pick l = min(k, q) distinct restricted edges uniformly (partial
    Fisher-Yates over an index array) and sort their keys.
    """
    q = len(restricted)
    if q < 2:
        raise InvalidInstanceError(f"sampling needs at least 2 restricted edges, got {q}")
    l = min(k, q)
    pool = list(range(q))
    for j in range(l):
        pick = int(rng.integers(j, q))
        pool[j], pool[pick] = pool[pick], pool[j]
    chosen = [restricted[pool[j]] for j in range(l)]

    if counters is None:
        chosen.sort()
    else:
        comparisons = 0

        def compare(a: TieBreak, b: TieBreak) -> int:
            nonlocal comparisons
            comparisons += 1
            return -1 if a < b else (1 if b < a else 0)

        chosen.sort(key=cmp_to_key(compare))
        counters.sort_comparisons += comparisons
    return Thresholds(chosen)


class SubInstance(NamedTuple):
    level: int
    # nodes[local] is the id of the node in the parent instance
    nodes: List[int]
    instance: CsssbpInstance
    restricted: int


class SubInstanceSet(NamedTuple):
    children: List[SubInstance]
    r: int
    r_prime: int


def build_subinstances(inst: CsssbpInstance, th: Thresholds, levels: Sequence[int]) -> SubInstanceSet:
    """
    One linear scan over nodes and edges. Level-i child keeps edges inside V_i
    that are not below lambda_i, relaxes those at or above lambda_{i+1} to
    unrestricted, and raises h_i(v) by the weights of edges entering v from
    higher levels.
    """
    g = inst.graph
    l = th.l
    keys = th.keys

    local = [0] * g.n
    nodes: List[List[int]] = [[] for _ in range(l + 1)]
    for v in range(g.n):
        bucket = nodes[levels[v]]
        local[v] = len(bucket)
        bucket.append(v)
    hs = [[inst.h[v] for v in bucket] for bucket in nodes]
    parts = [([], [], [], []) for _ in range(l + 1)]
    restricted = [0] * (l + 1)

    r = 0
    for e in range(g.m):
        u, v, w = g.src[e], g.dst[e], g.weight[e]
        lu, lv = levels[u], levels[v]
        if lu == lv:
            key = (w, g.eid[e])
            if lu and key < keys[lu - 1]:
                r += 1
                continue
            if lu < l and key >= keys[lu]:
                w = INF
            src, dst, weight, eid = parts[lu]
            src.append(local[u])
            dst.append(local[v])
            weight.append(w)
            eid.append(g.eid[e])
            if w != INF:
                restricted[lu] += 1
        else:
            r += 1
            if lu > lv and w > hs[lv][local[v]]:
                hs[lv][local[v]] = w

    children = []
    for i in range(l + 1):
        if not nodes[i]:
            continue
        graph = Graph.from_sorted(len(nodes[i]), *parts[i])
        children.append(SubInstance(i, nodes[i], CsssbpInstance(graph, hs[i]), restricted[i]))
    q = g.restricted_count()
    return SubInstanceSet(children, r, q - sum(restricted))


class _Task(NamedTuple):
    graph: Graph
    h: List[float]
    # node_map[local] = node id in the top-level instance
    node_map: List[int]
    depth: int
    connected: bool


def solve_csssbp(
    inst: CsssbpInstance,
    cfg: Optional[SolverConfig] = None,
) -> Tuple[BottleneckResult, SolveStats]:
    cfg = cfg or SolverConfig.from_settings()
    g0 = inst.graph
    k = cfg.k or default_k(max(g0.n, 1))
    cap = cfg.depth_limit or g0.restricted_count() + 2
    rng = np.random.default_rng(cfg.seed)
    counters = CounterSet() if cfg.counters_enabled else None
    verify = cfg.verify and cfg.counters_enabled
    stats = SolveStats(n=g0.n, m=g0.m, k=k, seed=cfg.seed, counters_enabled=cfg.counters_enabled)
    started = time.perf_counter()

    d = [NEG_INF] * g0.n
    stack = [_Task(g0, list(inst.h), list(range(g0.n)), 0, False)]
    while stack:
        task = stack.pop()
        g = task.graph
        if g.n == 0:
            continue
        if not task.connected:
            components = weakly_connected_components(g)
            if len(components) > 1:
                for comp in reversed(components):
                    stack.append(_Task(
                        comp.graph,
                        [task.h[x] for x in comp.nodes],
                        [task.node_map[x] for x in comp.nodes],
                        task.depth,
                        True,
                    ))
                continue

        if task.depth > cap:
            raise DepthLimitExceeded(
                f"recursion depth {task.depth} exceeded the cap {cap} "
                f"(call n={g.n} m={g.m}, k={k}, seed={cfg.seed})"
            )
        stats.calls += 1
        if task.depth > stats.max_depth:
            stats.max_depth = task.depth
        sub = CsssbpInstance(g, task.h)
        restricted = [(w, i) for w, i in zip(g.weight, g.eid) if w != INF]
        q = len(restricted)
        if q <= 1:
            answer = solve_base_case(sub, counters)
            for x, dx in zip(task.node_map, answer.d):
                d[x] = dx
            stats.base_calls += 1
            continue

        sort_before = counters.sort_comparisons if counters is not None else 0
        th = sample_thresholds(restricted, k, rng, counters)
        if cfg.naive_split:
            split = split_levels_naive(sub, th, counters)
        else:
            split = split_levels(sub, th, counters, verify=verify)
        children, r, r_prime = build_subinstances(sub, th, split.levels)

        if counters is not None:
            sc = split.counters
            stats.records.append(CallRecord(
                call_id=stats.calls - 1,
                depth=task.depth,
                n=g.n,
                m=g.m,
                q=q,
                k=k,
                l=th.l,
                r=r,
                r_prime=r_prime,
                b=sc.b,
                edge_evals=sc.edge_evals,
                group_evals=sc.group_evals,
                brute_searches=sc.brute_searches,
                sort_comparisons=counters.sort_comparisons - sort_before,
                children=len(children),
                child_edges=sum(c.instance.graph.m for c in children),
                child_restricted=sum(c.restricted for c in children),
                q_max_child=max((c.restricted for c in children), default=0),
                lazy_edge_violations=sc.lazy_edge_violations,
                group_eval_violations=sc.group_eval_violations,
                scan_order_violations=sc.scan_order_violations,
            ))
        logger.debug(
            f"depth={task.depth} n={g.n} m={g.m} q={q} l={th.l} r={r} "
            f"r'={r_prime} children={len(children)}"
        )

        for child in reversed(children):
            stack.append(_Task(
                child.instance.graph,
                child.instance.h,
                [task.node_map[x] for x in child.nodes],
                task.depth + 1,
                False,
            ))

    if counters is not None:
        stats.counters = counters
    elapsed = time.perf_counter() - started
    logger.info(
        f"Solved n={g0.n} m={g0.m} k={k} in {elapsed:.3f}s: calls={stats.calls} "
        f"max_depth={stats.max_depth} index_evals={stats.total_index_evals}"
    )
    return BottleneckResult(d), stats


def solve_ssbp(
    inst: SsbpInstance,
    cfg: Optional[SolverConfig] = None,
) -> Tuple[BottleneckResult, SolveStats]:
    """b(s, t) for every t through the CSSSBP reduction; b(s, s) = +inf."""
    result, stats = solve_csssbp(ssbp_to_csssbp(inst), cfg)
    result.d[inst.source] = INF
    return result, stats
