"""Tests for the parallel module."""

import networkx as nx
import numpy as np
import pytest

from egobw.egoscore import EnumerationStats, compute_all_scores, new_maps, triangle_pass
from egobw.errors import ParameterError
from egobw.graph import from_networkx, orient
from egobw.parallel import chunked, edge_pebw, vertex_pebw
from tests.graph_builders import star_graph

ALGORITHMS = [vertex_pebw, edge_pebw]
THREAD_COUNTS = [1, 2, 4, 8]


def sequential_triangles(og) -> int:
    """Triangle count of the sequential triangle pass."""
    stats = EnumerationStats()
    triangle_pass(og, new_maps(og), stats)
    return stats.triangles


@pytest.mark.parametrize("algo", ALGORITHMS)
@pytest.mark.parametrize("threads", THREAD_COUNTS)
def test_parallel_matches_sequential_on_ego_example(ego_example, algo, threads):
    """Test bit-identical scores on the seven-vertex example."""
    g, ids = ego_example
    og = orient(g)
    stats = EnumerationStats()
    scores = algo(og, threads, stats)
    assert np.array_equal(scores, compute_all_scores(g))
    assert abs(scores[ids["d"]] - 14 / 3) < 1e-12
    assert stats.triangles == sequential_triangles(og)


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_parallel_on_star(algo):
    """Test a triangle-free graph, where only the center scores."""
    og = orient(star_graph(12))
    stats = EnumerationStats()
    scores = algo(og, 4, stats)
    assert scores[0] == 66
    assert not scores[1:].any()
    assert stats.triangles == 0


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_parallel_small_chunks_on_corpus(corpus, algo):
    """Test that tiny task chunks still give bit-identical scores."""
    for g in corpus[:10]:
        og = orient(g)
        expected = compute_all_scores(g)
        for threads in (2, 8):
            assert np.array_equal(algo(og, threads, chunk_size=3), expected)


@pytest.fixture(scope="module")
def scale_free():
    """
    A ten-thousand-vertex scale-free graph with its orientation, sequential
    scores and sequential triangle count.
    """
    g = from_networkx(nx.barabasi_albert_graph(10_000, 3, seed=1))
    og = orient(g)
    return og, compute_all_scores(g), sequential_triangles(og)


@pytest.mark.parametrize("algo", ALGORITHMS)
@pytest.mark.parametrize("threads", THREAD_COUNTS)
def test_parallel_large_scale_free_graph(scale_free, algo, threads):  # pylint: disable=redefined-outer-name
    """Test bit-identical scores and triangle counts for every thread count."""
    og, expected, triangles = scale_free
    stats = EnumerationStats()
    assert np.array_equal(algo(og, threads, stats), expected)
    assert stats.triangles == triangles


@pytest.mark.parametrize("algo", ALGORITHMS)
@pytest.mark.parametrize("threads", [0, -2])
def test_parallel_rejects_bad_thread_count(ego_example, algo, threads):
    """Test that fewer than one thread raises ParameterError."""
    g, _ = ego_example
    with pytest.raises(ParameterError):
        algo(orient(g), threads)


def test_chunked():
    """Test splitting a sequence into fixed-size chunks."""
    assert chunked(list(range(5)), 2) == [[0, 1], [2, 3], [4]]
    assert chunked([], 4) == []
