"""
Bench - sweep sizes, densities and k over uniform-random graphs and time the
recursive solver against heap Dijkstra.

Counter columns are deterministic for a fixed seed; only wall time varies
between repeats.
"""
import logging
import time
from typing import List, Optional

from pydantic import BaseModel, Field

from bottleneck.core.graph import SsbpInstance
from bottleneck.services.baselines import dijkstra_ssbp
from bottleneck.services.generators import GenSpec, generate
from bottleneck.services.instrumentation import CounterSet
from bottleneck.services.solver import SolverConfig, default_k, solve_ssbp

logger = logging.getLogger(__name__)

COLUMNS = (
    "algo",
    "n",
    "m",
    "k",
    "repeat",
    "wall_s",
    "max_depth",
    "depth_target",
    "depth_cap",
    "total_index_evals",
    "sort_comparisons",
)


class BenchConfig(BaseModel):
    sizes: List[int] = Field(default_factory=lambda: [1000])
    # edges per node; m = round(density * n)
    densities: List[float] = Field(default_factory=lambda: [4.0])
    # empty means default_k(n) only
    k_sweep: List[int] = Field(default_factory=list)
    repeats: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0)
    naive: bool = False


class BenchRow(BaseModel):
    algo: str
    n: int
    m: int
    k: int = 0
    repeat: int = 0
    wall_s: float
    max_depth: int = 0
    depth_target: float = 0.0
    depth_cap: float = 0.0
    total_index_evals: int = 0
    sort_comparisons: int = 0

    def as_record(self) -> str:
        return " ".join(f"{key}={value}" for key, value in self.model_dump().items())


def _recursive_row(algo: str, inst: SsbpInstance, k: int, seed: int, repeat: int, naive: bool) -> BenchRow:
    cfg = SolverConfig.from_settings(k=k, seed=seed, counters_enabled=True, naive_split=naive, verify=False)
    started = time.perf_counter()
    _, stats = solve_ssbp(inst, cfg)
    wall = time.perf_counter() - started
    return BenchRow(
        algo=algo,
        n=inst.graph.n,
        m=inst.graph.m,
        k=k,
        repeat=repeat,
        wall_s=round(wall, 6),
        max_depth=stats.max_depth,
        depth_target=round(stats.depth_target, 3),
        depth_cap=round(stats.depth_advisory_cap, 3),
        total_index_evals=stats.total_index_evals,
        sort_comparisons=stats.counters.sort_comparisons,
    )


def run_bench(cfg: Optional[BenchConfig] = None) -> List[BenchRow]:
    cfg = cfg or BenchConfig()
    rows: List[BenchRow] = []
    for n in cfg.sizes:
        for density in cfg.densities:
            m = int(round(density * n)) if n > 1 else 0
            graph = generate(GenSpec(family="uniform-random", n=n, m=m, weights="ranks", seed=cfg.seed))
            inst = SsbpInstance(graph, 0)
            ks = cfg.k_sweep or [default_k(n)]
            for repeat in range(cfg.repeats):
                for k in ks:
                    rows.append(_recursive_row("recursive", inst, k, cfg.seed, repeat, naive=False))
                    if cfg.naive:
                        rows.append(_recursive_row("recursive-naive", inst, k, cfg.seed, repeat, naive=True))
                counters = CounterSet()
                started = time.perf_counter()
                dijkstra_ssbp(inst, counters)
                wall = time.perf_counter() - started
                rows.append(BenchRow(
                    algo="dijkstra",
                    n=n,
                    m=graph.m,
                    repeat=repeat,
                    wall_s=round(wall, 6),
                    # heap comparisons are not counted; report pushes + pops
                    sort_comparisons=counters.bucket_ops,
                ))
            logger.info(f"bench n={n} m={graph.m}: {len(ks)} k values x {cfg.repeats} repeats")
    return rows


def format_table(rows: List[BenchRow]) -> str:
    cells = [list(COLUMNS)]
    for row in rows:
        values = row.model_dump()
        cells.append([str(values[name]) for name in COLUMNS])
    widths = [max(len(line[i]) for line in cells) for i in range(len(COLUMNS))]
    out = []
    for line in cells:
        out.append("  ".join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip())
    return "\n".join(out)


def format_records(rows: List[BenchRow]) -> str:
    return "\n".join(row.as_record() for row in rows)