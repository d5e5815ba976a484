"""
Checker - cross-checks the recursive solver against the baselines and the
per-call bound checks, stopping at the first divergence.

A divergence carries the instance in the graph text format (plus source and
seed) so it can be replayed with `solve`.
"""
import logging
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from bottleneck.core.config import settings
from bottleneck.core.graph import (
    INF,
    BottleneckResult,
    CsssbpInstance,
    Graph,
    SsbpInstance,
    ssbp_to_csssbp,
)
from bottleneck.core.graph_io import ParsedGraph, format_value, serialize_graph
from bottleneck.services.baselines import (
    dijkstra_csssbp,
    dijkstra_ssbp,
    oracle_csssbp,
    oracle_paths_ssbp,
)
from bottleneck.services.generators import random_endpoints
from bottleneck.services.instrumentation import SolveStats, check_bounds
from bottleneck.services.solver import SolverConfig, solve_csssbp

logger = logging.getLogger(__name__)

CsssbpSolver = Callable[[CsssbpInstance, SolverConfig], Tuple[BottleneckResult, SolveStats]]


class Divergence(BaseModel):
    seed: int
    problem: str
    message: str
    witness: str


class CheckReport(BaseModel):
    instances: int = 0
    passed: int = 0
    failure: Optional[Divergence] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def render(self) -> str:
        if self.ok:
            return f"PASS {self.passed}/{self.instances}"
        f = self.failure
        return (
            f"FAIL after {self.passed}/{self.instances} passed\n"
            f"seed={f.seed} problem={f.problem}: {f.message}\n"
            f"--- witness\n{f.witness}"
        )


def random_check_instance(seed: int, n: Optional[int] = None) -> ParsedGraph:
    """
    Small random graph with few distinct weights (so ties are common), a few
    unrestricted edges, and random capacities for the CSSSBP side.
    """
    rng = np.random.default_rng(seed)
    n = n or settings.CHECK_RANDOM_NODES
    m = int(rng.integers(0, 3 * n + 1)) if n > 1 else 0
    src, dst = random_endpoints(rng, n, m)
    weight = rng.integers(1, 6, size=m).astype(np.float64)
    weight[rng.random(m) < 0.1] = INF
    h = rng.integers(0, 7, size=n).astype(np.float64)
    h[rng.random(n) < 0.1] = INF
    h[rng.random(n) < 0.1] = -INF
    return ParsedGraph(Graph.from_arrays(n, src, dst, weight), h.tolist())


def _first_mismatch(got: BottleneckResult, want: BottleneckResult) -> Optional[int]:
    for v, (a, b) in enumerate(zip(got, want)):
        if a != b:
            return v
    return None


def _compare(name: str, got: BottleneckResult, want: BottleneckResult) -> Optional[str]:
    v = _first_mismatch(got, want)
    if v is None:
        return None
    return f"recursive d({v})={format_value(got[v])} but {name} gives {format_value(want[v])}"


def check_ssbp(inst: SsbpInstance, cfg: SolverConfig, solver: CsssbpSolver = solve_csssbp) -> Optional[str]:
    result, stats = solver(ssbp_to_csssbp(inst), cfg)
    d = list(result)
    d[inst.source] = INF
    got = BottleneckResult(d)
    message = _compare("dijkstra", got, dijkstra_ssbp(inst))
    if message is None and inst.graph.n <= settings.PATH_ORACLE_MAX_NODES:
        message = _compare("path oracle", got, oracle_paths_ssbp(inst))
    if message is None:
        violations = check_bounds(stats)
        if violations:
            message = f"bound violated: {violations[0]}"
    return message


def check_csssbp(inst: CsssbpInstance, cfg: SolverConfig, solver: CsssbpSolver = solve_csssbp) -> Optional[str]:
    got, stats = solver(inst, cfg)
    message = _compare("dijkstra", got, dijkstra_csssbp(inst))
    if message is None:
        message = _compare("fixpoint oracle", got, oracle_csssbp(inst))
    if message is None:
        violations = check_bounds(stats)
        if violations:
            message = f"bound violated: {violations[0]}"
    return message


def _witness(parsed: ParsedGraph, problem: str, source: int, seed: int) -> str:
    header = f"# problem={problem} seed={seed}"
    if problem == "ssbp":
        header += f" source={source}"
        return header + "\n" + serialize_graph(parsed.graph)
    return header + "\n" + serialize_graph(parsed.graph, parsed.h)


def run_check(
    seeds: int,
    parsed: Optional[ParsedGraph] = None,
    source: int = 0,
    k: Optional[int] = None,
    solver: CsssbpSolver = solve_csssbp,
) -> CheckReport:
    """
    With an input graph every seed re-solves it (SSBP from `source`, and
    CSSSBP too if it carries capacities); without one each seed draws a
    fresh random instance and checks both problems on it.
    `solver` exists so tests can inject a faulty implementation.
    """
    report = CheckReport()
    for seed in range(seeds):
        instance = parsed if parsed is not None else random_check_instance(seed)
        cfg = SolverConfig.from_settings(seed=seed, k=k)
        problems: List[str] = []
        if instance.graph.n:
            problems.append("ssbp")
        if instance.h is not None:
            problems.append("csssbp")
        for problem in problems:
            report.instances += 1
            if problem == "ssbp":
                message = check_ssbp(SsbpInstance(instance.graph, source), cfg, solver)
            else:
                message = check_csssbp(instance.as_csssbp(), cfg, solver)
            if message is not None:
                logger.warning(f"check diverged at seed {seed} ({problem}): {message}")
                report.failure = Divergence(
                    seed=seed,
                    problem=problem,
                    message=message,
                    witness=_witness(instance, problem, source, seed),
                )
                return report
            report.passed += 1
    logger.info(f"check passed {report.passed} instances")
    return report
