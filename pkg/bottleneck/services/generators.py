"""
Generators - seeded graph families for `gen`, `check` and `bench`.

Every family yields exactly the node and edge counts its parameters state;
weights are finite (uniform reals in [lo, hi] or a permutation of 1..m).
"""
import logging
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from bottleneck.core.graph import Graph

logger = logging.getLogger(__name__)

Family = Literal["uniform-random", "grid", "path", "complete", "layered-dag"]
WeightMode = Literal["uniform", "ranks"]


class GenSpec(BaseModel):
    family: Family
    n: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = Field(default=None, ge=0)
    rows: Optional[int] = Field(default=None, ge=1)
    cols: Optional[int] = Field(default=None, ge=1)
    layers: Optional[int] = Field(default=None, ge=1)
    width: Optional[int] = Field(default=None, ge=1)
    weights: WeightMode = "uniform"
    lo: float = 0.0
    hi: float = 1.0
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_family_params(self) -> "GenSpec":
        required = {
            "uniform-random": ("n", "m"),
            "grid": ("rows", "cols"),
            "path": ("n",),
            "complete": ("n",),
            "layered-dag": ("layers", "width"),
        }[self.family]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"family {self.family} needs {', '.join(missing)}")
        if self.family == "uniform-random" and self.n == 1 and self.m:
            raise ValueError("uniform-random with n=1 cannot have edges")
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.lo > self.hi:
            raise ValueError(f"weight range [{self.lo}, {self.hi}] must be finite and ordered")
        return self

    @property
    def node_count(self) -> int:
        if self.family == "grid":
            return self.rows * self.cols
        if self.family == "layered-dag":
            return self.layers * self.width
        return self.n

    @property
    def edge_count(self) -> int:
        if self.family == "uniform-random":
            return self.m
        if self.family == "grid":
            return self.rows * (self.cols - 1) + self.cols * (self.rows - 1)
        if self.family == "path":
            return self.n - 1
        if self.family == "complete":
            return self.n * (self.n - 1)
        return (self.layers - 1) * self.width * self.width


def _grid_edges(rows: int, cols: int):
    ids = np.arange(rows * cols).reshape(rows, cols)
    right = (ids[:, :-1].ravel(), ids[:, 1:].ravel())
    down = (ids[:-1, :].ravel(), ids[1:, :].ravel())
    return np.concatenate([right[0], down[0]]), np.concatenate([right[1], down[1]])


def _layered_edges(layers: int, width: int):
    src: List[np.ndarray] = []
    dst: List[np.ndarray] = []
    for j in range(layers - 1):
        here = np.arange(j * width, (j + 1) * width)
        nxt = here + width
        src.append(np.repeat(here, width))
        dst.append(np.tile(nxt, width))
    if not src:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(src), np.concatenate(dst)


def random_endpoints(rng: np.random.Generator, n: int, m: int):
    """m directed edges between uniformly random distinct endpoints (self loops only when n=1)."""
    src = rng.integers(0, n, size=m)
    if n == 1:
        return src, src.copy()
    dst = (src + 1 + rng.integers(0, n - 1, size=m)) % n
    return src, dst


def generate(spec: GenSpec) -> Graph:
    rng = np.random.default_rng(spec.seed)
    n = spec.node_count
    if spec.family == "uniform-random":
        src, dst = random_endpoints(rng, n, spec.m)
    elif spec.family == "grid":
        src, dst = _grid_edges(spec.rows, spec.cols)
    elif spec.family == "path":
        src, dst = np.arange(n - 1), np.arange(1, n)
    elif spec.family == "complete":
        u, v = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        mask = u != v
        src, dst = u[mask], v[mask]
    else:
        src, dst = _layered_edges(spec.layers, spec.width)

    m = src.shape[0]
    if spec.weights == "ranks":
        weight = (rng.permutation(m) + 1).astype(np.float64)
    else:
        weight = rng.uniform(spec.lo, spec.hi, size=m)
    graph = Graph.from_arrays(n, src, dst, weight)
    logger.info(f"Generated {spec.family} graph n={graph.n} m={graph.m} seed={spec.seed}")
    return graph
