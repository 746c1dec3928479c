"""
Top-k ego-betweenness search.

Two searches are provided. ``base_search`` sweeps the vertices in degree
order and stops once no remaining static bound can beat the k-th best exact
score. ``opt_search`` pops vertices from a priority queue keyed by their
current bound, tightening the bound from the connector maps built so far
and re-queueing a vertex when the bound has dropped by more than the
gradient ratio ``theta``.

Ties are resolved by a unique key ``(score, -original_id)``: among equal
scores the smaller original ID ranks higher. Pruning compares bound keys
against the worst key in the result, so both searches return the same
vertices for every ``theta``.
"""

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from egobw.egoscore import (
    ComputeScratch,
    dynamic_bound,
    ego_bw_cal,
    new_maps,
    pair_count,
    static_bound,
)
from egobw.errors import ParameterError
from egobw.graph import Graph, orient

DEFAULT_THETA = 1.05

BoundObserver = Callable[[int, float], None]


@dataclass
class TopKResult:
    """
    Answer of a top-k query.

    :param k: Requested number of vertices.
    :param entries: ``(vertex, score)`` pairs, best first.
    :param exact_computations: Number of vertices scored exactly.
    """

    k: int
    entries: list[tuple[int, float]] = field(default_factory=list)
    exact_computations: int = 0

    @property
    def vertices(self) -> list[int]:
        return [v for v, _ in self.entries]

    @property
    def scores(self) -> list[float]:
        return [score for _, score in self.entries]


class BoundQueue:
    """
    Max-priority queue of ``(vertex, bound)`` pairs holding each vertex at
    most once. Among equal bounds the smaller original ID pops first.
    """

    def __init__(self, original_ids: list[int]):
        self._heap: list[tuple[float, int, int]] = []
        self._queued: set[int] = set()
        self._original_ids = original_ids

    def push(self, v: int, bound: float):
        if v in self._queued:
            raise ValueError(f"vertex {v} is already queued")
        self._queued.add(v)
        heapq.heappush(self._heap, (-bound, self._original_ids[v], v))

    def pop(self) -> tuple[int, float]:
        neg_bound, _, v = heapq.heappop(self._heap)
        self._queued.discard(v)
        return v, -neg_bound

    def __len__(self):
        return len(self._heap)

    def __contains__(self, v):
        return v in self._queued


class TopKCollector:
    """
    Keeps the k best ``(score, -original_id)`` keys seen so far.
    """

    def __init__(self, k: int, original_ids: list[int]):
        self.k = k
        self._heap: list[tuple[float, int, int]] = []
        self._original_ids = original_ids

    @property
    def full(self) -> bool:
        return len(self._heap) >= self.k

    def worst_key(self) -> tuple[float, int]:
        """
        Key of the lowest-ranked member; only meaningful when full.
        """
        score, neg_orig, _ = self._heap[0]
        return score, neg_orig

    def offer(self, v: int, score: float):
        item = (score, -self._original_ids[v], v)
        if not self.full:
            heapq.heappush(self._heap, item)
        elif item > self._heap[0]:
            heapq.heapreplace(self._heap, item)

    def beats_worst(self, v: int, value: float) -> bool:
        """
        True if a vertex ``v`` scoring ``value`` would enter the result.
        """
        return not self.full or (value, -self._original_ids[v]) > self.worst_key()

    def entries(self) -> list[tuple[int, float]]:
        ordered = sorted(self._heap, reverse=True)
        return [(v, score) for score, _, v in ordered]


def validate_k(k: int):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")


def validate_theta(theta: float):
    if not math.isfinite(theta) or theta < 1.0:
        raise ParameterError(f"theta must be a finite ratio >= 1, got {theta!r}")


def rank_vertices(scores: np.ndarray, g: Graph, k: int | None = None) -> list[int]:
    """
    Vertices sorted by descending score, smaller original ID first among
    ties, truncated to ``k`` when given.
    """
    original = np.asarray(g.original_ids, dtype=np.uint64)
    ranked = np.lexsort((original, -np.asarray(scores, dtype=np.float64))).tolist()
    return ranked if k is None else ranked[:k]


def _run_min_original(order: list[int], bounds: list[int], g: Graph) -> list[int]:
    """
    For each position of the sweep, the smallest original ID among the
    remaining vertices that share its static bound.
    """
    ids = g.original_ids
    run_min = [0] * len(order)
    for i in range(len(order) - 1, -1, -1):
        orig = ids[order[i]]
        if i + 1 < len(order) and bounds[i + 1] == bounds[i]:
            orig = min(orig, run_min[i + 1])
        run_min[i] = orig
    return run_min


def base_search(g: Graph, k: int) -> TopKResult:
    """
    Sweep vertices in degree order, scoring each exactly, until the best
    remaining static bound cannot beat the k-th best score found.

    :param g: The graph.
    :param k: Number of vertices wanted.
    :return: The top-k vertices with their exact scores.
    """
    validate_k(k)
    og = orient(g)
    maps = new_maps(og)
    scratch = ComputeScratch(g.n)
    collector = TopKCollector(k, g.original_ids)

    order = og.order.tolist()
    bounds = [pair_count(g.degree(v)) for v in order]
    run_min = _run_min_original(order, bounds, g)

    exact = 0
    for i, u in enumerate(order):
        if collector.full and (float(bounds[i]), -run_min[i]) <= collector.worst_key():
            break
        collector.offer(u, ego_bw_cal(g, u, scratch, maps))
        exact += 1

    return TopKResult(k, collector.entries(), exact)


def opt_search(
    g: Graph,
    k: int,
    theta: float = DEFAULT_THETA,
    bound_observer: BoundObserver | None = None,
) -> TopKResult:
    """
    Priority-driven top-k search with dynamically tightened bounds.

    Each popped vertex has its bound recomputed from its connector map. If
    the bound shrank below ``1 / theta`` of the popped value the vertex is
    re-queued with the new bound, or dropped when it can no longer enter the
    result. Otherwise it is scored exactly. The search ends when the result
    is full and the popped bound cannot beat its worst member.

    :param g: The graph.
    :param k: Number of vertices wanted.
    :param theta: Gradient ratio, at least 1.
    :param bound_observer: Called with ``(vertex, bound)`` after every bound
        recomputation.
    :return: The top-k vertices with their exact scores.
    """
    validate_k(k)
    validate_theta(theta)
    og = orient(g)
    maps = new_maps(og)
    scratch = ComputeScratch(g.n)
    collector = TopKCollector(k, g.original_ids)

    queue = BoundQueue(g.original_ids)
    for v in range(g.n):
        queue.push(v, static_bound(g, v))

    exact = 0
    while queue:
        v, popped = queue.pop()
        bound = dynamic_bound(maps[v], g)
        if bound_observer is not None:
            bound_observer(v, bound)
        if theta * bound < popped:
            if collector.beats_worst(v, bound):
                queue.push(v, bound)
            continue
        if not collector.beats_worst(v, popped):
            break
        collector.offer(v, ego_bw_cal(g, v, scratch, maps))
        exact += 1

    return TopKResult(k, collector.entries(), exact)
