"""Tests for the data_loader module."""

import io
import logging

import pytest

from egobw.data_loader import (
    DEFAULT_SETTINGS,
    EdgeListLoader,
    SettingsLoader,
    UpdateStreamLoader,
    load_edge_list,
    parse_update_stream,
)
from egobw.errors import GraphFormatError, ParameterError


def load_text(text: str):
    """Load an edge list from a string."""
    return load_edge_list(io.BytesIO(text.encode("utf-8")))


def test_load_edge_list_path_graph():
    """Test loading a two-edge path."""
    g = load_text("0 1\n1 2")
    assert (g.n, g.m) == (3, 2)


def test_load_edge_list_degenerate_input(caplog):
    """Test that self-loops and duplicates are dropped with a warning."""
    with caplog.at_level(logging.WARNING):
        g = load_text("0 0\n0 1\n0 1\n")
    assert (g.n, g.m) == (2, 1)
    assert g.ingest.self_loops == 1
    assert g.ingest.duplicates == 1
    assert "1 self-loop(s) and 1 duplicate edge(s)" in caplog.text


def test_load_edge_list_ego_example(ego_example_file):
    """Test loading the seven-vertex example from a file."""
    g = EdgeListLoader(ego_example_file).load()
    assert (g.n, g.m) == (7, 13)


def test_load_edge_list_skips_comments_and_blank_lines():
    """Test that comment and blank lines are ignored."""
    g = load_text("# header\n\n5 6\n   \n# 1 2\n6 7\n")
    assert g.original_ids == [5, 6, 7]
    assert g.m == 2


def test_load_edge_list_accepts_tabs_and_crlf():
    """Test whitespace handling of edge lines."""
    g = load_text("1\t2\r\n2 3\r\n")
    assert g.m == 2


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("0 1\n1 x\n", 2),
        ("0 1\n\n1 2 3\n", 3),
        ("-1 2\n", 1),
        ("7\n", 1),
    ],
)
def test_load_edge_list_reports_line_number(text, line_no):
    """Test that malformed lines raise GraphFormatError with the line number."""
    with pytest.raises(GraphFormatError) as err:
        load_text(text)
    assert err.value.line_no == line_no
    assert f"line {line_no}" in str(err.value)


def test_load_edge_list_accepts_full_unsigned_range():
    """Test that IDs up to 2**64 - 1 load and one past it is rejected."""
    g = load_text("0 18446744073709551615\n")
    assert g.original_ids == [0, 2**64 - 1]
    with pytest.raises(GraphFormatError) as err:
        load_text("0 1\n1 18446744073709551616\n")
    assert err.value.line_no == 2


def test_load_edge_list_rejects_empty_graph():
    """Test that input without vertices is an error."""
    with pytest.raises(GraphFormatError):
        load_text("# nothing here\n\n")


def test_parse_update_stream():
    """Test parsing of insert and delete operations."""
    ops = list(parse_update_stream(io.BytesIO(b"# ops\n+ 1 2\n\n- 3 4\n")))
    assert [(op.op, op.u, op.v, op.line_no) for op in ops] == [
        ("+", 1, 2, 2),
        ("-", 3, 4, 4),
    ]
    assert ops[0].is_insert and not ops[1].is_insert
    assert ops[0].echo() == "# + 1 2"


@pytest.mark.parametrize("line", ["* 1 2", "+ 1", "+ 1 b", "1 2"])
def test_parse_update_stream_rejects_bad_lines(line):
    """Test that malformed update lines raise GraphFormatError."""
    with pytest.raises(GraphFormatError) as err:
        list(parse_update_stream(io.BytesIO(f"+ 0 1\n{line}\n".encode())))
    assert err.value.line_no == 2


def test_update_stream_loader_reads_file(write_file):
    """Test the UpdateStreamLoader class."""
    path = write_file("stream.txt", "+ 0 1\n- 0 1\n")
    ops = UpdateStreamLoader(path).load()
    assert len(ops) == 2


@pytest.mark.usefixtures("settings_dir")
def test_settings_loader_defaults_without_file(tmp_path):
    """Test that missing settings fall back to the defaults."""
    data = SettingsLoader(str(tmp_path)).data
    assert data == DEFAULT_SETTINGS
    assert data["theta"] == 1.05
    assert data["vertex_chunk_size"] == 64
    assert data["edge_chunk_size"] == 1024


def test_settings_loader_overrides(settings_dir, caplog):
    """Test that settings from the file override the defaults."""
    root = settings_dir({"theta": 1.3, "verify_trials": 5, "colour": "blue"})
    with caplog.at_level(logging.WARNING):
        data = SettingsLoader(str(root)).data
    assert data["theta"] == 1.3
    assert data["verify_trials"] == 5
    assert data["brandes_limit"] == DEFAULT_SETTINGS["brandes_limit"]
    assert "colour" not in data
    assert "colour" in caplog.text


def test_settings_loader_caches_data(settings_dir):
    """Test that the data property loads the file once."""
    root = settings_dir({"theta": 1.2})
    loader = SettingsLoader(str(root))
    first = loader.data
    (root / "egobw_settings.json").write_text('{"theta": 2.0}', encoding="utf-8")
    assert loader.data is first


@pytest.mark.parametrize(
    "settings",
    [
        {"theta": "fast"},
        {"verify_trials": 2.5},
        {"score_digits": True},
        {"bench_ks": [1, "5"]},
        {"bench_thetas": 1.3},
    ],
)
def test_settings_loader_rejects_wrong_types(settings_dir, settings):
    """Test that mistyped settings raise ParameterError naming the key."""
    root = settings_dir(settings)
    with pytest.raises(ParameterError) as err:
        SettingsLoader(str(root)).data
    assert repr(next(iter(settings))) in str(err.value)


def test_settings_loader_accepts_integer_theta(settings_dir):
    """Test that whole numbers are valid for float settings."""
    root = settings_dir({"theta": 2, "bench_thetas": [1, 1.5]})
    data = SettingsLoader(str(root)).data
    assert data["theta"] == 2
    assert data["bench_thetas"] == [1, 1.5]
