import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from bottleneck.core.graph import INF, NEG_INF, CsssbpInstance, Graph, SsbpInstance

settings.register_profile(
    "bottleneck",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("bottleneck")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def diamond():
    """s=0, a=1, b=2, t=3: s->a 2, s->b 9, a->t 9, b->t 3."""
    g = Graph.from_edges(4, [(0, 1, 2.0), (0, 2, 9.0), (1, 3, 9.0), (2, 3, 3.0)])
    return SsbpInstance(g, 0)


@pytest.fixture
def decreasing_path():
    """0 -> 1 -> ... -> 19 with weights 19, 18, ..., 1 and h(0) = +inf."""
    n = 20
    g = Graph.from_edges(n, [(v, v + 1, float(n - 1 - v)) for v in range(n - 1)])
    h = [INF] + [NEG_INF] * (n - 1)
    return CsssbpInstance(g, h)
