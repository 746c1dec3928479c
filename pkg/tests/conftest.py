"""Pytest global fixtures and configuration for the egobw package."""

import json

import pytest

from tests.graph_builders import (
    DELETION_EDGES,
    DELETION_IDS,
    EGO_EXAMPLE_EDGES,
    EGO_EXAMPLE_IDS,
    FOUR_CYCLE_EDGES,
    FOUR_CYCLE_IDS,
    edge_list_text,
    er_corpus,
    lettered_graph,
)


@pytest.fixture
def ego_example():
    """
    The seven-vertex ego network of d, with the letter-to-vertex mapping.
    """
    return lettered_graph(EGO_EXAMPLE_IDS, EGO_EXAMPLE_EDGES), EGO_EXAMPLE_IDS


@pytest.fixture
def four_cycle():
    """
    The four-cycle k-f-i-j used for the insertion example.
    """
    return lettered_graph(FOUR_CYCLE_IDS, FOUR_CYCLE_EDGES), FOUR_CYCLE_IDS


@pytest.fixture
def deletion_graph():
    """
    The five-vertex graph used for the deletion example.
    """
    return lettered_graph(DELETION_IDS, DELETION_EDGES), DELETION_IDS


@pytest.fixture(scope="session")
def corpus():
    """
    A seeded set of small Erdos-Renyi graphs shared by the oracle tests.
    """
    return er_corpus(count=30, max_n=40, seed=7)


@pytest.fixture
def write_file(tmp_path):
    """
    Return a helper that writes text to a file in the temporary directory
    and returns its path as a string.
    """

    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def ego_example_file(write_file):  # pylint: disable=redefined-outer-name
    """
    The seven-vertex example graph as an edge-list file.
    """
    text = edge_list_text(EGO_EXAMPLE_IDS, EGO_EXAMPLE_EDGES)
    return write_file("ego_example.txt", text)


@pytest.fixture
def four_cycle_file(write_file):  # pylint: disable=redefined-outer-name
    """
    The four-cycle fixture as an edge-list file.
    """
    text = edge_list_text(FOUR_CYCLE_IDS, FOUR_CYCLE_EDGES)
    return write_file("four_cycle.txt", text)


@pytest.fixture
def settings_dir(tmp_path, monkeypatch):
    """
    Run in a temporary working directory and return a helper that writes
    egobw_settings.json there.
    """
    monkeypatch.chdir(tmp_path)

    def write(settings: dict):
        (tmp_path / "egobw_settings.json").write_text(
            json.dumps(settings), encoding="utf-8"
        )
        return tmp_path

    return write
