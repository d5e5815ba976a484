"""
Instrumentation - per-solve counters, per-call records and the bound checks
that turn the split-cost and recursion bounds into assertions over data.

Counters are plain per-solve accumulators handed down through call context;
nothing here is global, so concurrent solves never interfere.
"""
import logging
import math
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, NonNegativeInt

logger = logging.getLogger(__name__)

COUNTER_NAMES = (
    "edge_index_evals",
    "group_index_evals",
    "sort_comparisons",
    "bucket_ops",
    "touched_elements",
    "brute_searches",
)


class CounterSet(BaseModel):
    """Named monotone counters; snapshot/diff give per-phase deltas."""

    edge_index_evals: NonNegativeInt = 0
    group_index_evals: NonNegativeInt = 0
    sort_comparisons: NonNegativeInt = 0
    bucket_ops: NonNegativeInt = 0
    touched_elements: NonNegativeInt = 0
    brute_searches: NonNegativeInt = 0

    @property
    def total_index_evals(self) -> int:
        return self.edge_index_evals + self.group_index_evals

    def snapshot(self) -> "CounterSet":
        return self.model_copy()

    def add(self, other: "CounterSet") -> None:
        for name in COUNTER_NAMES:
            setattr(self, name, getattr(self, name) + getattr(other, name))

    def as_dict(self) -> Dict[str, int]:
        return self.model_dump()


def snapshot(c: CounterSet) -> CounterSet:
    return c.snapshot()


def diff(a: CounterSet, b: CounterSet) -> CounterSet:
    """Componentwise b - a; b must have been taken after a."""
    values = {}
    for name in COUNTER_NAMES:
        delta = getattr(b, name) - getattr(a, name)
        if delta < 0:
            raise ValueError(f"counter {name} went backwards ({getattr(a, name)} -> {getattr(b, name)})")
        values[name] = delta
    return CounterSet(**values)


class CallRecord(BaseModel):
    """One split call of the recursive solver."""

    call_id: int
    depth: int
    n: int
    m: int
    q: int = Field(description="restricted edges |E^(r)| of the call")
    k: int
    l: int = Field(description="sampled thresholds")
    r: int = Field(description="cross-level plus below-level edges")
    r_prime: int = Field(description="restricted edges absent or unrestricted in children")
    b: int = Field(description="tree-partition groups used by the split")
    edge_evals: int = 0
    group_evals: int = 0
    brute_searches: int = 0
    sort_comparisons: int = 0
    children: int = 0
    child_edges: int = 0
    child_restricted: int = 0
    q_max_child: int = 0
    lazy_edge_violations: int = 0
    group_eval_violations: int = 0
    scan_order_violations: int = 0

    def as_line(self) -> str:
        return " ".join(f"{key}={value}" for key, value in self.model_dump().items())


class SolveStats(BaseModel):
    """Everything one solve recorded. Aggregates equal sums over `records`."""

    n: int
    m: int
    k: int
    seed: int
    counters_enabled: bool = True
    calls: int = 0
    base_calls: int = 0
    max_depth: int = 0
    counters: CounterSet = Field(default_factory=CounterSet)
    records: List[CallRecord] = Field(default_factory=list)

    @property
    def total_index_evals(self) -> int:
        return self.counters.total_index_evals

    @property
    def total_groups(self) -> int:
        return sum(rec.b for rec in self.records)

    @property
    def depth_target(self) -> float:
        """Empirical depth expectation 3 * log2(n) / log2(k) + 3."""
        return 3 * math.log2(max(self.n, 2)) / math.log2(max(self.k, 2)) + 3

    @property
    def depth_advisory_cap(self) -> float:
        return math.log2(max(self.m, 1)) + 2

    @property
    def max_child_ratio(self) -> float:
        ratios = [rec.q_max_child / rec.q for rec in self.records if rec.q > rec.k]
        return max(ratios) if ratios else 0.0

    def summary(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "seed": self.seed,
            "calls": self.calls,
            "split_calls": len(self.records),
            "base_calls": self.base_calls,
            "max_depth": self.max_depth,
            "total_index_evals": self.total_index_evals,
        }
        out.update(self.counters.as_dict())
        out["total_groups"] = self.total_groups
        out["depth_target"] = round(self.depth_target, 3)
        out["depth_advisory_cap"] = round(self.depth_advisory_cap, 3)
        out["max_child_ratio"] = round(self.max_child_ratio, 4)
        return out

    def to_report(self, mode: str = "summary") -> str:
        """Line-oriented key=value report; `per-call` appends one line per record."""
        lines = [f"{key}={value}" for key, value in self.summary().items()]
        if mode == "per-call":
            lines.extend(rec.as_line() for rec in self.records)
        elif mode != "summary":
            raise ValueError(f"unknown report mode {mode!r}")
        return "\n".join(lines)


def check_bounds(stats: SolveStats) -> List[str]:
    """
    Evaluate every counter inequality over all call records; an empty list
    means all bounds held. Violations are returned, never raised.
    """
    violations: List[str] = []

    def fail(rec: Optional[CallRecord], message: str) -> None:
        where = f"call {rec.call_id} (depth {rec.depth})" if rec is not None else "aggregate"
        violations.append(f"{where}: {message}")

    for rec in stats.records:
        if rec.edge_evals > rec.r:
            fail(rec, f"edge_evals {rec.edge_evals} > r {rec.r}")
        if rec.group_evals > rec.r + rec.b:
            fail(rec, f"group_evals {rec.group_evals} > r + b {rec.r + rec.b}")
        if rec.edge_evals + rec.group_evals > 2 * rec.r + rec.b:
            fail(rec, f"index evals {rec.edge_evals + rec.group_evals} > 2r + b {2 * rec.r + rec.b}")
        if rec.lazy_edge_violations:
            fail(rec, f"{rec.lazy_edge_violations} evaluated edges stayed in a child instance")
        if rec.group_eval_violations:
            fail(rec, f"{rec.group_eval_violations} groups evaluated more often than their distinct levels")
        if rec.scan_order_violations:
            fail(rec, f"scan order increased {rec.scan_order_violations} times")
        if rec.m != rec.child_edges + rec.r:
            fail(rec, f"edge conservation m {rec.m} != sum |E_i| {rec.child_edges} + r {rec.r}")
        if rec.q != rec.child_restricted + rec.r_prime:
            fail(rec, f"restricted conservation q {rec.q} != {rec.child_restricted} + r' {rec.r_prime}")
        if rec.l > rec.r + rec.r_prime + 1:
            fail(rec, f"thresholds l {rec.l} > r + r' + 1 {rec.r + rec.r_prime + 1}")
        if rec.q <= rec.k and rec.q_max_child > 1:
            fail(rec, f"q {rec.q} <= k {rec.k} but a child keeps {rec.q_max_child} restricted edges")
        if rec.q_max_child > rec.q - 1:
            fail(rec, f"child keeps {rec.q_max_child} of {rec.q} restricted edges")

    if stats.counters_enabled:
        c = stats.counters
        edge_sum = sum(rec.edge_evals for rec in stats.records)
        group_sum = sum(rec.group_evals for rec in stats.records)
        sort_sum = sum(rec.sort_comparisons for rec in stats.records)
        if c.edge_index_evals != edge_sum:
            fail(None, f"edge_index_evals {c.edge_index_evals} != sum over calls {edge_sum}")
        if c.group_index_evals != group_sum:
            fail(None, f"group_index_evals {c.group_index_evals} != sum over calls {group_sum}")
        if c.sort_comparisons != sort_sum:
            fail(None, f"sort_comparisons {c.sort_comparisons} != sum over calls {sort_sum}")
        if c.total_index_evals > 2 * stats.m + stats.total_groups:
            fail(None, f"total index evals {c.total_index_evals} > 2m + sum b {2 * stats.m + stats.total_groups}")
    if stats.records and stats.max_depth < max(rec.depth for rec in stats.records):
        fail(None, f"max_depth {stats.max_depth} below a recorded call depth")

    if violations:
        logger.warning(f"check_bounds found {len(violations)} violations")
    return violations
