"""
Maintenance of ego-betweenness under single-edge insertions and deletions.

Inserting or deleting ``(u, v)`` can only change the scores of ``u``, ``v``
and their common neighbors. ``local_insert`` and ``local_delete`` adjust
exactly those scores from the connector maps of the affected vertices,
rebuilt on the graph that contains the edge. A deletion undoes what the
matching insertion would add, so both share one set of update terms.

``LazyIndex`` keeps only a top-k answer valid. Scores it does not need are
left stale and guarded by upper bounds, and are recomputed only when a
stale vertex could enter or leave the answer.
"""

import heapq
import logging
import math
from itertools import combinations

import numpy as np

from egobw.data_loader import UpdateOp
from egobw.egoscore import (
    ConnectorMap,
    PairCodec,
    compute_all_scores,
    ego_connector_map,
    pair_count,
    vertex_score,
)
from egobw.errors import GraphError, GraphFormatError
from egobw.graph import DynamicGraph, Graph, common_neighbors, orient
from egobw.parallel import edge_pebw
from egobw.topk import rank_vertices, validate_k

# the outsider heap is compacted once it holds this many entries per vertex
HEAP_SLACK = 2


def initial_scores(g: Graph, threads: int = 1) -> np.ndarray:
    """
    Exact scores of every vertex, computed in parallel when threads > 1.
    """
    if threads > 1:
        return edge_pebw(orient(g), threads)
    return compute_all_scores(g)


def local_upt_smap(
    g: Graph, u: int, v: int, codec: PairCodec | None = None
) -> dict[int, ConnectorMap]:
    """
    COMPLETE connector maps of ``u``, ``v`` and every common neighbor of the
    two, on a graph that contains the edge ``(u, v)``.

    :raises GraphError: If ``(u, v)`` is not an edge of ``g``.
    """
    g.validate_vertex(u)
    g.validate_vertex(v)
    if u == v or not g.has_edge(u, v):
        raise GraphError(
            f"edge ({g.original_ids[u]}, {g.original_ids[v]}) not present"
        )
    codec = codec if codec is not None else PairCodec.identity(g.n)
    affected = [u, v, *common_neighbors(g, u, v)]
    return {w: ego_connector_map(g, w, codec) for w in affected}


def _connector_count(s: ConnectorMap, a: int, b: int) -> int:
    return s.get(a, b) or 0


def _endpoint_terms(
    g: Graph, s: ConnectorMap, u: int, v: int, shared: set[int]
) -> list[float]:
    """
    Score gained by ``u`` when the edge to ``v`` appears: new pairs with
    ``v`` and pairs of common neighbors that gain ``v`` as a connector.
    """
    terms = [
        1.0 / (_connector_count(s, v, x) + 1)
        for x in g.neighbors(u)
        if x != v and x not in shared
    ]
    for x, y in combinations(sorted(shared), 2):
        if not g.has_edge(x, y):
            count = _connector_count(s, x, y)
            terms.append(1.0 / (count + 1) - 1.0 / count)
    return terms


def _common_neighbor_terms(
    g: Graph, s: ConnectorMap, w: int, u: int, v: int, shared: set[int]
) -> list[float]:
    """
    Score gained by the common neighbor ``w`` when ``(u, v)`` appears: the
    pair stops counting, and pairs through ``u`` or ``v`` gain a connector.
    """
    nbrs_w = g.neighbors(w)
    terms = [-1.0 / (len(shared.intersection(nbrs_w)) + 1)]
    for end, other in ((u, v), (v, u)):
        end_nbrs = set(g.neighbors(end))
        for y in nbrs_w:
            if y != other and y in end_nbrs and not g.has_edge(other, y):
                count = _connector_count(s, other, y)
                terms.append(1.0 / (count + 1) - 1.0 / count)
    return terms


def _insertion_gains(
    g: Graph, u: int, v: int, codec: PairCodec | None
) -> dict[int, float]:
    """
    Change of each affected score between the graph without ``(u, v)`` and
    ``g``, which contains it.
    """
    maps = local_upt_smap(g, u, v, codec)
    shared = set(maps) - {u, v}
    gains = {
        u: math.fsum(_endpoint_terms(g, maps[u], u, v, shared)),
        v: math.fsum(_endpoint_terms(g, maps[v], v, u, shared)),
    }
    for w in sorted(shared):
        gains[w] = math.fsum(_common_neighbor_terms(g, maps[w], w, u, v, shared))
    return gains


def local_insert(
    g: DynamicGraph,
    scores: np.ndarray,
    u: int,
    v: int,
    codec: PairCodec | None = None,
) -> np.ndarray:
    """
    Insert ``(u, v)`` into ``g`` and update ``scores`` in place.

    :raises GraphError: If the edge exists or ``u == v``.
    :return: The updated score array.
    """
    g.insert_edge(u, v)
    for w, gain in _insertion_gains(g, u, v, codec).items():
        scores[w] += gain
    return scores


def local_delete(
    g: DynamicGraph,
    scores: np.ndarray,
    u: int,
    v: int,
    codec: PairCodec | None = None,
) -> np.ndarray:
    """
    Delete ``(u, v)`` from ``g`` and update ``scores`` in place. The update
    terms are read from maps built while the edge still exists.

    :raises GraphError: If the edge is absent.
    :return: The updated score array.
    """
    gains = _insertion_gains(g, u, v, codec)
    g.delete_edge(u, v)
    for w, gain in gains.items():
        scores[w] -= gain
    return scores


def resolve_op(g: Graph, op: UpdateOp) -> tuple[int, int]:
    """
    Internal IDs of an update's endpoints, checked against the current graph.

    :raises GraphFormatError: Naming the stream line when the op is inconsistent.
    """
    try:
        u = g.internal_id(op.u)
        v = g.internal_id(op.v)
        if u == v:
            raise GraphError(f"self-loop on vertex {op.u}")
        if op.is_insert == g.has_edge(u, v):
            state = "already present" if op.is_insert else "not present"
            raise GraphError(f"edge ({op.u}, {op.v}) {state}")
    except GraphError as err:
        raise GraphFormatError(str(err), op.line_no) from err
    return u, v


class ScoreMaintainer:
    """
    Keeps the exact scores of every vertex up to date under an update stream.
    """

    def __init__(self, g: Graph, threads: int = 1):
        """
        :param g: Initial graph; it is copied, not modified.
        :param threads: Worker threads for the initial computation.
        """
        self.graph = DynamicGraph.from_graph(g)
        self.scores = initial_scores(self.graph, threads)
        self.codec = PairCodec.identity(self.graph.n)

    def apply(self, op: UpdateOp) -> dict[int, tuple[float, float]]:
        """
        Apply one update and return ``{vertex: (old, new)}`` for every
        vertex whose score changed.
        """
        u, v = resolve_op(self.graph, op)
        before = self.scores.copy()
        if op.is_insert:
            local_insert(self.graph, self.scores, u, v, self.codec)
        else:
            local_delete(self.graph, self.scores, u, v, self.codec)
        changed = np.flatnonzero(~np.isclose(before, self.scores, rtol=0, atol=1e-12))
        return {w: (float(before[w]), float(self.scores[w])) for w in changed.tolist()}


class LazyIndex:
    """
    Top-k answer maintained lazily under edge updates.

    ``scores[v]`` is the last computed score of ``v`` and ``stale[v]`` says
    whether it may be out of date. Stale members of ``R`` can only have
    gained since their last computation, so their stored score is a lower
    bound. Every vertex outside ``R`` sits in a max-heap under an upper bound
    of its current score, which is its exact score when it is fresh.
    """

    def __init__(self, g: Graph, k: int, threads: int = 1):
        """
        :param g: Initial graph; it is copied, not modified.
        :param k: Size of the maintained answer.
        :param threads: Worker threads for the initial computation.
        """
        validate_k(k)
        self.graph = DynamicGraph.from_graph(g)
        self.k = min(k, self.graph.n)
        self.codec = PairCodec.identity(self.graph.n)
        self.scores = initial_scores(self.graph, threads)
        self.stale = np.zeros(self.graph.n, dtype=bool)
        self.recomputations = 0

        self._original_ids = self.graph.original_ids
        self._version = [0] * self.graph.n
        self._heap: list[tuple[float, int, int, int, bool]] = []
        self.R: set[int] = set(rank_vertices(self.scores, self.graph, self.k))
        for x in range(self.graph.n):
            if x not in self.R:
                self._queue(x, float(self.scores[x]), exact=True)

    def _key(self, x: int, value: float) -> tuple[float, int]:
        return value, -self._original_ids[x]

    def _queue(self, x: int, value: float, exact: bool):
        self._version[x] += 1
        heapq.heappush(
            self._heap,
            (-value, self._original_ids[x], x, self._version[x], exact),
        )
        if len(self._heap) > HEAP_SLACK * self.graph.n:
            self._compact()

    def _compact(self):
        """
        Drop outdated heap entries in place; at most one live entry per
        outsider remains.
        """
        heap = self._heap
        heap[:] = [
            entry
            for entry in heap
            if entry[2] not in self.R and entry[3] == self._version[entry[2]]
        ]
        heapq.heapify(heap)

    def _recompute(self, x: int) -> float:
        self.scores[x] = vertex_score(self.graph, x, self.codec)
        self.stale[x] = False
        self.recomputations += 1
        return float(self.scores[x])

    def refresh(self, x: int):
        """
        Recompute ``x`` exactly and requeue it if it is outside R.
        """
        value = self._recompute(x)
        if x not in self.R:
            self._queue(x, value, exact=True)

    def mark_stale(self, x: int, bound: float | None = None):
        """
        Flag ``x`` as stale. An outsider is requeued under ``bound`` when
        one is given and otherwise keeps its current heap key.
        """
        self.stale[x] = True
        if x not in self.R and bound is not None:
            self._queue(x, bound, exact=False)

    def worst_member(self) -> int | None:
        """
        Member of R with the lowest exact key. Stale members are recomputed
        until the lowest stored key belongs to a fresh one.
        """
        while self.R:
            y = min(self.R, key=lambda x: self._key(x, float(self.scores[x])))
            if not self.stale[y]:
                return y
            self._recompute(y)
        return None

    def worst_key(self) -> tuple[float, int] | None:
        y = self.worst_member()
        return None if y is None else self._key(y, float(self.scores[y]))

    def _has_outsider(self) -> bool:
        """
        Drop outdated heap entries from the top; True if a live one remains.
        """
        heap = self._heap
        while heap:
            _, _, x, version, _ = heap[0]
            if x not in self.R and version == self._version[x]:
                return True
            heapq.heappop(heap)
        return False

    def best_outsider(self, threshold: tuple[float, int]) -> int | None:
        """
        The outsider with the highest exact key, if that key beats
        ``threshold``. Outsiders queued under a bound are recomputed on pop.
        """
        heap = self._heap
        while self._has_outsider():
            neg_value, _, x, _, exact = heap[0]
            if self._key(x, -neg_value) <= threshold:
                return None
            if exact and not self.stale[x]:
                return x
            heapq.heappop(heap)
            self.refresh(x)
        return None

    def rebalance(self):
        """
        Swap members and outsiders until no outsider beats the worst member.
        """
        while self._has_outsider():
            y = self.worst_member()
            if y is None:
                return
            x = self.best_outsider(self._key(y, float(self.scores[y])))
            if x is None:
                return
            self.R.remove(y)
            self.R.add(x)
            self._version[x] += 1
            self._queue(y, float(self.scores[y]), exact=True)

    def _gate_outsider(self, x: int):
        """
        Recompute an outsider only if its static bound could enter R.
        """
        bound = float(pair_count(self.graph.degree(x)))
        worst = self.worst_key()
        if worst is None or self._key(x, bound) > worst:
            self.refresh(x)
        else:
            self.mark_stale(x, bound)

    def _update_endpoint(self, x: int):
        if x in self.R:
            self.refresh(x)
        else:
            self._gate_outsider(x)

    def lazy_insert(self, u: int, v: int):
        """
        Insert ``(u, v)`` and restore a valid top-k answer.
        """
        self.graph.insert_edge(u, v)
        shared = common_neighbors(self.graph, u, v)
        for x in (u, v):
            self._update_endpoint(x)
        for x in shared:
            if x in self.R:
                self.refresh(x)
            else:
                self.mark_stale(x)
        self.rebalance()

    def lazy_delete(self, u: int, v: int):
        """
        Delete ``(u, v)`` and restore a valid top-k answer.
        """
        self.graph.delete_edge(u, v)
        shared = common_neighbors(self.graph, u, v)
        for x in (u, v):
            self._update_endpoint(x)
        for x in shared:
            if x in self.R:
                self.mark_stale(x)
            else:
                self._gate_outsider(x)
        self.rebalance()

    def apply(self, op: UpdateOp):
        u, v = resolve_op(self.graph, op)
        if op.is_insert:
            self.lazy_insert(u, v)
        else:
            self.lazy_delete(u, v)

    def top_k(self) -> list[tuple[int, float]]:
        """
        The current answer as ``(vertex, score)`` pairs, best first. Stale
        members are recomputed first.
        """
        for y in sorted(self.R):
            if self.stale[y]:
                self._recompute(y)
        members = sorted(
            self.R,
            key=lambda x: (-float(self.scores[x]), self._original_ids[x]),
        )
        return [(x, float(self.scores[x])) for x in members]

    def log_summary(self):
        logging.info(
            "\033[94mLazy index: k=%d, %d exact recomputation(s), %d stale\033[0m",
            self.k,
            self.recomputations,
            int(self.stale.sum()),
        )
