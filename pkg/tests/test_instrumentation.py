import pytest

from bottleneck.services.instrumentation import CallRecord, CounterSet, SolveStats, check_bounds, diff, snapshot
from bottleneck.services.solver import SolverConfig, solve_csssbp

from .strategies import random_csssbp


def test_diff_of_same_snapshot_is_zero():
    c = CounterSet(edge_index_evals=3, bucket_ops=5)
    assert diff(c, c) == CounterSet()


def test_diff_isolates_one_evaluation():
    c = CounterSet(edge_index_evals=3, group_index_evals=2)
    before = snapshot(c)
    c.edge_index_evals += 1
    delta = diff(before, c)
    assert delta.edge_index_evals == 1
    assert delta.total_index_evals == 1
    assert sum(delta.as_dict().values()) == 1


def test_diff_rejects_reversed_order():
    with pytest.raises(ValueError):
        diff(CounterSet(bucket_ops=2), CounterSet(bucket_ops=1))


def test_add_accumulates():
    total = CounterSet(sort_comparisons=2)
    total.add(CounterSet(sort_comparisons=3, brute_searches=1))
    assert total.sort_comparisons == 5 and total.brute_searches == 1


def test_same_seed_gives_identical_counters(rng):
    inst = random_csssbp(rng, 300, 1200)
    _, a = solve_csssbp(inst, SolverConfig(seed=5))
    _, b = solve_csssbp(inst, SolverConfig(seed=5))
    assert a.counters == b.counters
    assert a.records == b.records


def test_passing_solve_has_no_violations(decreasing_path):
    _, stats = solve_csssbp(decreasing_path, SolverConfig(k=2, seed=4))
    assert stats.records
    assert check_bounds(stats) == []


def test_injected_edge_evals_are_reported(decreasing_path):
    _, stats = solve_csssbp(decreasing_path, SolverConfig(k=2, seed=4))
    rec = stats.records[0]
    rec.edge_evals = rec.r + 1
    violations = check_bounds(stats)
    assert any(v.startswith(f"call {rec.call_id} (depth {rec.depth}): edge_evals") for v in violations)


def test_conservation_violation_is_reported():
    rec = CallRecord(call_id=0, depth=0, n=4, m=10, q=6, k=4, l=4, r=3, r_prime=5, b=2, child_edges=6)
    stats = SolveStats(n=4, m=10, k=4, seed=0, calls=1, records=[rec], counters_enabled=False)
    violations = check_bounds(stats)
    assert any("edge conservation" in v for v in violations)


def test_report_modes(decreasing_path):
    _, stats = solve_csssbp(decreasing_path, SolverConfig(k=2, seed=4))
    summary = stats.to_report("summary")
    keys = {line.split("=", 1)[0] for line in summary.splitlines()}
    assert {"max_depth", "total_index_evals", "depth_target", "max_child_ratio"} <= keys
    per_call = stats.to_report("per-call")
    assert len(per_call.splitlines()) == len(summary.splitlines()) + len(stats.records)
    assert per_call.splitlines()[-1].startswith("call_id=")
    with pytest.raises(ValueError):
        stats.to_report("verbose")


def test_depth_figures():
    stats = SolveStats(n=2 ** 16, m=2 ** 18, k=16, seed=0)
    assert stats.depth_target == pytest.approx(15.0)
    assert stats.depth_advisory_cap == pytest.approx(20.0)
