"""Tests for the egobw command line."""

import pytest

from egobw.cli import main
from egobw.commands import EXIT_IO, EXIT_OK, EXIT_USAGE


@pytest.fixture
def run(settings_dir, capsys):
    """
    Run the CLI in a clean working directory and return the exit status
    with the lines printed to standard output.
    """
    settings_dir({})

    def invoke(*argv: str) -> tuple[int, list[str]]:
        code = main(list(argv))
        return code, capsys.readouterr().out.splitlines()

    return invoke


def test_topk_ego_example(run, ego_example_file):
    """Test the top-1 answer of the seven-vertex example."""
    code, lines = run("topk", ego_example_file, "--k", "1")
    assert code == EXIT_OK
    assert lines[0].startswith("# rank\tvertex\tscore\texact_computations=")
    assert lines[1:] == ["1\t3\t4.66666666667"]


def test_topk_base_and_opt_agree(run, ego_example_file):
    """Test that both algorithms print the same rows."""
    _, base = run("topk", ego_example_file, "--k", "7", "--algo", "base")
    _, opt = run("topk", ego_example_file, "--k", "7", "--theta", "1.3")
    assert base[1:] == opt[1:]
    vertices = [line.split("\t")[1] for line in base[1:]]
    assert vertices == ["3", "2", "4", "5", "6", "0", "1"]


@pytest.mark.parametrize(
    "argv", [["--k", "0"], ["--k", "x"], ["--k", "1", "--theta", "0.5"]]
)
def test_topk_rejects_bad_arguments(run, ego_example_file, argv):
    """Test that argument errors exit with the usage status."""
    with pytest.raises(SystemExit) as err:
        run("topk", ego_example_file, *argv)
    assert err.value.code == EXIT_USAGE


def test_score_is_the_same_in_parallel(run, ego_example_file):
    """Test that parallel scoring prints exactly the sequential output."""
    _, sequential = run("score", ego_example_file)
    assert sequential[0] == "# vertex\tscore"
    assert sequential[1:4] == ["0\t0", "1\t0", "2\t2.5"]
    for mode in ("vertex", "edge"):
        _, parallel = run(
            "score", ego_example_file, "--parallel", mode, "--threads", "4"
        )
        assert parallel == sequential


def test_update_local_four_cycle(run, four_cycle_file, write_file):
    """Test the printed score changes when a chord closes the four-cycle."""
    stream = write_file("stream.txt", "# chord\n+ 3 0\n")
    code, lines = run("update", four_cycle_file, "--stream", stream)
    assert code == EXIT_OK
    assert lines == ["# + 3 0", "0\t1\t0.5", "1\t1\t0", "2\t1\t0", "3\t1\t0.5"]


def test_update_lazy_four_cycle(run, four_cycle_file, write_file):
    """Test that lazy mode prints the top-k after every operation."""
    stream = write_file("stream.txt", "+ 3 0\n- 3 0\n")
    code, lines = run(
        "update", four_cycle_file, "--stream", stream, "--mode", "lazy", "--k", "2"
    )
    assert code == EXIT_OK
    assert lines == [
        "# + 3 0",
        "1\t0\t0.5",
        "2\t3\t0.5",
        "# - 3 0",
        "1\t0\t1",
        "2\t1\t1",
    ]


def test_update_empty_stream(run, four_cycle_file, write_file):
    """Test that an empty stream prints nothing and succeeds."""
    stream = write_file("empty.txt", "# no operations\n")
    assert run("update", four_cycle_file, "--stream", stream) == (EXIT_OK, [])


def test_update_lazy_requires_k(run, four_cycle_file, write_file):
    """Test that lazy mode without --k is a usage error."""
    stream = write_file("stream.txt", "+ 3 0\n")
    code, lines = run("update", four_cycle_file, "--stream", stream, "--mode", "lazy")
    assert (code, lines) == (EXIT_USAGE, [])


def test_update_inconsistent_stream(run, four_cycle_file, write_file, caplog):
    """Test that deleting a missing edge is an input error naming the line."""
    stream = write_file("stream.txt", "+ 3 0\n- 1 2\n")
    code, _ = run("update", four_cycle_file, "--stream", stream)
    assert code == EXIT_IO
    assert "line 2" in caplog.text


def test_compare_path_and_star(run, write_file):
    """Test the overlap on graphs where both rankings agree."""
    path = write_file("path.txt", "0 1\n1 2\n2 3\n3 4\n")
    star = write_file("star.txt", "0 1\n0 2\n0 3\n0 4\n")
    for graph in (path, star):
        code, lines = run("compare", graph, "--k", "1")
        assert code == EXIT_OK
        assert lines[-1] == "overlap\t1.0"


def test_compare_refuses_large_graph(run, settings_dir, write_file):
    """Test the betweenness size guard and its override."""
    settings_dir({"brandes_limit": 3})
    path = write_file("path.txt", "0 1\n1 2\n2 3\n")
    assert run("compare", path, "--k", "2") == (EXIT_USAGE, [])
    code, lines = run("compare", path, "--k", "2", "--force")
    assert code == EXIT_OK
    assert lines[-1] == "overlap\t1.0"


def test_verify_passes(run):
    """Test a short verify run."""
    code, lines = run("verify", "--trials", "3", "--max-n", "10", "--seed", "5")
    assert code == EXIT_OK
    assert lines[-1] == "# result: PASS"
    assert not any(line.startswith("FAIL") for line in lines)


def test_verify_smallest_graphs(run):
    """Test verify on graphs with at most two vertices."""
    code, _ = run("verify", "--trials", "2", "--max-n", "2")
    assert code == EXIT_OK


def test_bench(run, ego_example_file):
    """Test the rows printed by bench."""
    code, lines = run(
        "bench", ego_example_file, "--k", "1", "--theta", "1.0", "--theta", "1.3"
    )
    assert code == EXIT_OK
    assert lines[0] == "# graph: n=7 m=13"
    rows = [line.split("\t") for line in lines[2:]]
    assert [row[:3] for row in rows] == [
        ["base", "1", "-"],
        ["opt", "1", "1.0"],
        ["opt", "1", "1.3"],
    ]
    assert all(int(row[3]) <= int(rows[0][3]) for row in rows)
    assert not any(line.startswith(("# mode", "# parallel")) for line in lines)


def test_bench_with_sample(run, ego_example_file):
    """Test that sampling keeps every vertex and is reported."""
    code, lines = run("bench", ego_example_file, "--sample", "0.5", "--seed", "2")
    assert code == EXIT_OK
    assert lines[0].startswith("# graph: n=7 m=")
    assert lines[0].endswith("sample=0.5 seed=2")


def test_bench_updates_and_threads(run, ego_example_file):
    """Test the update timing and parallel speedup sections of bench."""
    code, lines = run(
        "bench",
        ego_example_file,
        "--k",
        "1",
        "--theta",
        "1.05",
        "--updates",
        "6",
        "--threads",
        "2",
    )
    assert code == EXIT_OK
    start = lines.index("# mode\tk\top\tcount\tavg_seconds")
    split = lines.index("# parallel\tthreads\tseconds\tspeedup")
    updates = [line.split("\t") for line in lines[start + 1 : split]]
    assert [row[:4] for row in updates] == [
        ["local", "-", "insert", "3"],
        ["local", "-", "delete", "3"],
        ["lazy", "1", "insert", "3"],
        ["lazy", "1", "delete", "3"],
    ]
    parallel = [line.split("\t") for line in lines[split + 1 :]]
    assert [row[:2] for row in parallel] == [
        ["vertex", "1"],
        ["vertex", "2"],
        ["edge", "1"],
        ["edge", "2"],
    ]
    assert parallel[0][3] == parallel[2][3] == "1.00"


@pytest.mark.parametrize(
    "name, text", [("bad.txt", "0 1\n1 two\n"), ("empty.txt", "# nothing\n")]
)
def test_malformed_graph_exits_with_input_error(run, write_file, name, text):
    """Test the exit status for graphs that cannot be parsed."""
    assert run("topk", write_file(name, text), "--k", "1") == (EXIT_IO, [])


def test_missing_graph_file(run, tmp_path):
    """Test the exit status for a missing input file."""
    assert run("score", str(tmp_path / "missing.txt")) == (EXIT_IO, [])


def test_mistyped_settings_exit_with_usage_error(run, settings_dir, ego_example_file):
    """Test that a settings value of the wrong type is a usage error."""
    settings_dir({"theta": "fast"})
    assert run("topk", ego_example_file, "--k", "1") == (EXIT_USAGE, [])


def test_score_single_vertex_graph(run, write_file):
    """Test a graph whose only line is a self-loop."""
    graph = write_file("single.txt", "5 5\n")
    assert run("score", graph) == (EXIT_OK, ["# vertex\tscore", "5\t0"])
