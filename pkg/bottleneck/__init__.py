"""Single-source bottleneck paths: randomized recursive solver, baselines and instrumentation."""

__version__ = "1.0.0"
