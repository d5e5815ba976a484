import pytest

from bottleneck import main as cli
from bottleneck.core.config import settings
from bottleneck.core.graph import BottleneckResult
from bottleneck.core.graph_io import parse_graph
from bottleneck.services.bench import BenchConfig, run_bench
from bottleneck.services.checker import CheckReport, Divergence, run_check
from bottleneck.services.generators import GenSpec, generate
from bottleneck.services.solver import solve_csssbp


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_path(capsys):
    code, out, _ = run(capsys, "gen", "path", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "3 2"
    assert [line.split()[:2] for line in lines[1:]] == [["0", "1"], ["1", "2"]]


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = run(capsys, "gen", "uniform-random", "--n", "100", "--m", "500", "--seed", "7", "-o", str(path))
        assert code == 0
    assert a.read_text() == b.read_text()
    assert a.read_text().splitlines()[0] == "100 500"


def test_gen_grid_counts(capsys):
    code, out, _ = run(capsys, "gen", "grid", "--rows", "4", "--cols", "4")
    assert code == 0
    g = parse_graph(out).graph
    assert (g.n, g.m) == (16, 24)
    assert all(v in (u + 1, u + 4) for u, v, _ in g.edges())


@pytest.mark.parametrize(
    "spec, n, m",
    [
        (GenSpec(family="complete", n=4), 4, 12),
        (GenSpec(family="layered-dag", layers=3, width=2), 6, 8),
        (GenSpec(family="path", n=1), 1, 0),
        (GenSpec(family="uniform-random", n=5, m=9, weights="ranks"), 5, 9),
    ],
)
def test_generator_families(spec, n, m):
    g = generate(spec)
    assert (g.n, g.m) == (n, m) == (spec.node_count, spec.edge_count)
    assert all(w != float("inf") for w in g.weight)


def test_rank_weights_are_a_permutation():
    g = generate(GenSpec(family="uniform-random", n=20, m=50, weights="ranks", seed=3))
    assert sorted(g.weight) == [float(i) for i in range(1, 51)]


def test_gen_rejects_missing_parameters(capsys):
    code, _, err = run(capsys, "gen", "grid", "--rows", "4")
    assert code == 2
    assert "error" in err


def test_solve_single_edge_with_dijkstra(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("2 1\n0 1 5\n")
    code, out, _ = run(capsys, "solve", str(path), "--algo", "dijkstra")
    assert code == 0
    assert out == "0 inf\n1 5\n"


def test_solve_algorithms_print_identical_results(tmp_path, capsys):
    path = tmp_path / "g.txt"
    run(capsys, "gen", "uniform-random", "--n", "60", "--m", "240", "--weights", "ranks", "--seed", "3",
        "-o", str(path))
    _, recursive, _ = run(capsys, "solve", str(path), "--algo", "recursive", "--k", "4")
    _, dijkstra, _ = run(capsys, "solve", str(path), "--algo", "dijkstra")
    assert recursive == dijkstra


def test_solve_csssbp_file_with_oracle(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("2 2\n0 1 4\n1 0 9\nh\n10\n-inf\n")
    code, out, _ = run(capsys, "solve", str(path), "--algo", "oracle")
    assert code == 0
    assert out == "0 10\n1 4\n"


def test_solve_stats_summary(tmp_path, capsys):
    path = tmp_path / "g.txt"
    run(capsys, "gen", "uniform-random", "--n", "40", "--m", "160", "-o", str(path))
    code, out, _ = run(capsys, "solve", str(path), "--stats", "summary")
    assert code == 0
    results, stats = out.split("---\n")
    assert len(results.splitlines()) == 40
    keys = {line.split("=", 1)[0] for line in stats.splitlines()}
    assert {"max_depth", "total_index_evals"} <= keys


def test_solve_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 1\n0 1 oops\n")
    code, out, err = run(capsys, "solve", str(path))
    assert code == 2
    assert out == ""
    assert "line 2" in err


def test_solve_binary_garbage_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"2 1\n0 1 5 \xff\xfe\n")
    code, out, err = run(capsys, "solve", str(path))
    assert code == 2
    assert out == ""
    assert "line 2" in err


def test_solve_unknown_source_exits_2(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("2 1\n0 1 5\n")
    code, _, err = run(capsys, "solve", str(path), "--source", "7")
    assert code == 2
    assert "source" in err


def test_stats_with_counters_disabled_warns(tmp_path, capsys, caplog, monkeypatch):
    monkeypatch.setattr(settings, "COUNTERS_ENABLED", False)
    path = tmp_path / "g.txt"
    path.write_text("3 2\n0 1 5\n1 2 4\n")
    code, out, _ = run(capsys, "solve", str(path), "--stats", "summary")
    assert code == 0
    assert out.startswith("0 inf\n1 5\n2 4\n---\n")
    assert any(r.levelname == "WARNING" and "counters are disabled" in r.getMessage() for r in caplog.records)


def test_unknown_log_level_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(settings, "LOG_LEVEL", "LOUD")
    code, _, err = run(capsys, "check", "--seeds", "1")
    assert code == 2
    assert "LOUD" in err


def test_usage_error_exits_2(capsys):
    code, _, _ = run(capsys, "solve")
    assert code == 2


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--seeds", "10")
    assert code == 0
    assert out.startswith("PASS")


def test_check_input_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("3 3\n0 1 2\n1 2 2\n2 0 7\nh\n1\n-inf\ninf\n")
    code, out, _ = run(capsys, "check", str(path), "--seeds", "3")
    assert code == 0
    assert out.strip() == "PASS 6/6"


def test_check_reports_faulty_solver_with_witness():
    def faulty(inst, cfg):
        result, stats = solve_csssbp(inst, cfg)
        return BottleneckResult([x if x == float("-inf") else x + 1 for x in result]), stats

    report = run_check(50, solver=faulty)
    assert not report.ok
    assert report.failure.problem in ("ssbp", "csssbp")
    assert report.render().startswith("FAIL")
    witness = report.failure.witness
    body = "\n".join(line for line in witness.splitlines() if not line.startswith("#"))
    assert parse_graph(body).graph.n > 0


def test_check_failure_exits_1(monkeypatch, capsys):
    failing = CheckReport(
        instances=1,
        failure=Divergence(seed=0, problem="ssbp", message="mismatch", witness="1 0\n"),
    )
    monkeypatch.setattr(cli, "run_check", lambda *args, **kwargs: failing)
    code, out, _ = run(capsys, "check", "--seeds", "1")
    assert code == 1
    assert out.startswith("FAIL")


@pytest.mark.slow
def test_check_hundred_random_instances():
    report = run_check(100)
    assert report.ok
    assert report.passed == report.instances == 200


def test_bench_single_config_one_row_per_algorithm(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "30", "--densities", "3", "--format", "records")
    assert code == 0
    rows = out.splitlines()
    assert [row.split()[0] for row in rows] == ["algo=recursive", "algo=dijkstra"]


def test_bench_table_has_header(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "30", "--naive")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["algo", "n", "m"]
    assert [line.split()[0] for line in lines[1:]] == ["recursive", "recursive-naive", "dijkstra"]


def test_bench_repeats_keep_counters():
    rows = run_bench(BenchConfig(sizes=[200], densities=[4.0], repeats=3, seed=1))
    recursive = [r.model_dump(exclude={"wall_s", "repeat"}) for r in rows if r.algo == "recursive"]
    assert len(recursive) == 3
    assert recursive[0] == recursive[1] == recursive[2]


def test_bench_k_sweep_rows():
    rows = run_bench(BenchConfig(sizes=[300], k_sweep=[2, 8, 32, 128]))
    recursive = [r for r in rows if r.algo == "recursive"]
    assert [r.k for r in recursive] == [2, 8, 32, 128]
    assert all(r.sort_comparisons > 0 and r.total_index_evals > 0 for r in recursive)
