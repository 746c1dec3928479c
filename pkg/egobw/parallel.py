"""
Parallel computation of every vertex's ego-betweenness.

Phase 1 enumerates triangles on a thread pool. ``vertex_pebw`` hands out
chunks of vertices, each worker intersecting out-neighborhoods of its
vertices; ``edge_pebw`` hands out chunks of directed edges, which keeps a
single high out-degree vertex from becoming one oversized task. Workers
batch the triangles per owner vertex and absorb each batch into the
owner's map under that owner's lock.

Phase 2 scores every vertex from its COMPLETE map. Maps are only read and
each task writes a disjoint slice of the score array. Connector counts do
not depend on absorption order and scores are summed in canonical pair
order, so the result is identical for every thread count.
"""

import logging
import threading
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from egobw.egoscore import (
    ConnectorMap,
    EnumerationStats,
    MapState,
    new_maps,
    score_from_map,
)
from egobw.errors import ParameterError
from egobw.graph import Graph, OrderedGraph

VERTEX_CHUNK_SIZE = 64
EDGE_CHUNK_SIZE = 1024

TriangleBatch = dict[int, list[tuple[int, int]]]


def validate_threads(threads: int):
    if isinstance(threads, bool) or not isinstance(threads, int) or threads < 1:
        raise ParameterError(f"threads must be a positive integer, got {threads!r}")


def chunked(items: Sequence, size: int) -> list[Sequence]:
    return [items[start : start + size] for start in range(0, len(items), size)]


class _Accumulator:
    """
    Shared state of phase 1: the maps, one lock per owner and the triangle tally.
    """

    def __init__(self, og: OrderedGraph):
        self.og = og
        self.maps = new_maps(og)
        self.locks = [threading.Lock() for _ in range(og.graph.n)]

    def flush(self, batch: TriangleBatch):
        g = self.og.graph
        for owner, triangles in batch.items():
            with self.locks[owner]:
                s = self.maps[owner]
                for y, z in triangles:
                    s.absorb_triangle(g, y, z)


def _record(batch: TriangleBatch, u: int, v: int, w: int):
    batch[u].append((v, w))
    batch[v].append((u, w))
    batch[w].append((u, v))


def _vertex_task(acc: _Accumulator, vertices: Sequence[int]) -> int:
    out = acc.og.out_adjacency
    marker = np.zeros(acc.og.graph.n, dtype=bool)
    batch: TriangleBatch = defaultdict(list)
    found = 0
    for u in vertices:
        out_u = out[u]
        if len(out_u) < 2:
            continue
        marker[out_u] = True
        for v in out_u:
            for w in out[v]:
                if marker[w]:
                    _record(batch, u, v, w)
                    found += 1
        marker[out_u] = False
    acc.flush(batch)
    return found


def _edge_task(
    acc: _Accumulator, out_sets: list[frozenset], edges: Sequence[tuple[int, int]]
) -> int:
    out = acc.og.out_adjacency
    batch: TriangleBatch = defaultdict(list)
    found = 0
    for u, v in edges:
        for w in out_sets[u].intersection(out[v]):
            _record(batch, u, v, w)
            found += 1
    acc.flush(batch)
    return found


def _score_task(
    maps: list[ConnectorMap], g: Graph, scores: np.ndarray, vertices: range
):
    for p in vertices:
        scores[p] = score_from_map(maps[p], g)


def _run(
    og: OrderedGraph,
    threads: int,
    tasks: list,
    task_fn: Callable[..., int],
    stats: EnumerationStats | None,
    chunk_size: int,
) -> np.ndarray:
    acc = _Accumulator(og)
    g = og.graph
    with ThreadPoolExecutor(max_workers=threads) as pool:
        found = sum(pool.map(lambda work: task_fn(acc, work), tasks))
    for s in acc.maps:
        s.state = MapState.COMPLETE
    if stats is not None:
        stats.triangles += found

    scores = np.zeros(g.n, dtype=np.float64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(
            pool.map(
                lambda vertices: _score_task(acc.maps, g, scores, vertices),
                chunked(range(g.n), chunk_size),
            )
        )
    logging.info(
        "\033[94mScored %d vertices from %d triangles on %d thread(s)\033[0m",
        g.n,
        found,
        threads,
    )
    return scores


def vertex_pebw(
    og: OrderedGraph,
    threads: int,
    stats: EnumerationStats | None = None,
    chunk_size: int = VERTEX_CHUNK_SIZE,
) -> np.ndarray:
    """
    Score all vertices, distributing triangle enumeration by vertex.

    :param og: Oriented graph.
    :param threads: Number of worker threads, at least 1.
    :param stats: Optional counter receiving the number of triangles found.
    :param chunk_size: Vertices per task.
    :return: float64 score array indexed by internal vertex ID.
    """
    validate_threads(threads)
    tasks = chunked(og.order.tolist(), chunk_size)
    return _run(og, threads, tasks, _vertex_task, stats, chunk_size)


def edge_pebw(
    og: OrderedGraph,
    threads: int,
    stats: EnumerationStats | None = None,
    chunk_size: int = EDGE_CHUNK_SIZE,
) -> np.ndarray:
    """
    Score all vertices, distributing triangle enumeration by directed edge.

    :param og: Oriented graph.
    :param threads: Number of worker threads, at least 1.
    :param stats: Optional counter receiving the number of triangles found.
    :param chunk_size: Directed edges per task.
    :return: float64 score array indexed by internal vertex ID.
    """
    validate_threads(threads)
    out_sets = [frozenset(out) for out in og.out_adjacency]
    directed = [(u, v) for u in og.order.tolist() for v in og.out_adjacency[u]]

    def edge_task(acc: _Accumulator, edges: Sequence[tuple[int, int]]) -> int:
        return _edge_task(acc, out_sets, edges)

    tasks = chunked(directed, chunk_size)
    return _run(og, threads, tasks, edge_task, stats, VERTEX_CHUNK_SIZE)
