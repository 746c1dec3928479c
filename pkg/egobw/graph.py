"""
Graph structures shared by every other module: an undirected simple graph
with dense internal vertex IDs, its mutable variant used for streaming
updates, and the degree-ordered orientation used for triangle enumeration.
"""

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx
import numpy as np

from egobw.errors import GraphError, ParameterError

MAX_ORIGINAL_ID = 2**64 - 1


@dataclass(frozen=True)
class IngestStats:
    """
    Counters for degenerate input dropped while building a graph.
    """

    self_loops: int = 0
    duplicates: int = 0


class Graph:
    """
    Undirected simple graph. Vertices are dense internal IDs ``0..n-1``; each
    one maps back to the non-negative original ID it was read with.

    Neighbor lists are strictly sorted by internal ID and symmetric. Instances
    are treated as immutable; see DynamicGraph for the mutable variant.
    """

    def __init__(
        self,
        adjacency: list[list[int]],
        original_ids: list[int],
        ingest: IngestStats | None = None,
    ):
        """
        :param adjacency: Per-vertex sorted neighbor lists, already symmetric.
        :param original_ids: Original ID of every internal vertex.
        :param ingest: Counters of dropped self-loops and duplicates.
        """
        self._adjacency = adjacency
        self.original_ids = original_ids
        self._internal_ids = {orig: v for v, orig in enumerate(original_ids)}
        self.ingest = ingest if ingest is not None else IngestStats()
        self.m = sum(len(nbrs) for nbrs in adjacency) // 2

    @classmethod
    def from_edges(
        cls,
        pairs: Iterable[tuple[int, int]],
        vertices: Iterable[int] = (),
    ):
        """
        Build a graph from pairs of original IDs. Internal IDs are handed out in
        order of first appearance, starting with the optional ``vertices``
        (which lets isolated vertices survive). Self-loops register their vertex
        but add no edge; repeated edges are kept once.
        """
        internal: dict[int, int] = {}
        original_ids: list[int] = []
        neighbor_sets: list[set[int]] = []

        def register(orig: int) -> int:
            if orig < 0 or orig > MAX_ORIGINAL_ID:
                raise GraphError(f"vertex id {orig} is outside the supported range")
            vertex = internal.get(orig)
            if vertex is None:
                vertex = len(original_ids)
                internal[orig] = vertex
                original_ids.append(orig)
                neighbor_sets.append(set())
            return vertex

        for orig in vertices:
            register(orig)

        self_loops = 0
        duplicates = 0
        for orig_u, orig_v in pairs:
            u = register(orig_u)
            v = register(orig_v)
            if u == v:
                self_loops += 1
            elif v in neighbor_sets[u]:
                duplicates += 1
            else:
                neighbor_sets[u].add(v)
                neighbor_sets[v].add(u)

        adjacency = [sorted(nbrs) for nbrs in neighbor_sets]
        return cls(adjacency, original_ids, IngestStats(self_loops, duplicates))

    @property
    def n(self) -> int:
        """
        Number of vertices
        """
        return len(self._adjacency)

    def validate_vertex(self, u: int):
        """
        Raise GraphError unless ``u`` is an internal vertex ID of this graph.
        """
        if not 0 <= u < self.n:
            raise GraphError(f"invalid vertex {u} for a graph with {self.n} vertices")

    def internal_id(self, original_id: int) -> int:
        """
        Map an original vertex ID to its internal ID.
        """
        try:
            return self._internal_ids[original_id]
        except KeyError:
            raise GraphError(f"unknown vertex id {original_id}") from None

    def neighbors(self, u: int) -> list[int]:
        """
        Sorted neighbor list of ``u``. The list is shared; do not mutate it.
        """
        return self._adjacency[u]

    def degree(self, u: int) -> int:
        return len(self._adjacency[u])

    def degrees(self) -> np.ndarray:
        """
        Degrees of all vertices as an int64 array indexed by internal ID.
        """
        return np.fromiter(
            (len(nbrs) for nbrs in self._adjacency), dtype=np.int64, count=self.n
        )

    def has_edge(self, u: int, v: int) -> bool:
        """
        Membership test by binary search over the shorter neighbor list.
        """
        if len(self._adjacency[u]) > len(self._adjacency[v]):
            u, v = v, u
        nbrs = self._adjacency[u]
        pos = bisect_left(nbrs, v)
        return pos < len(nbrs) and nbrs[pos] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """
        Yield each undirected edge once as ``(u, v)`` with ``u < v``.
        """
        for u, nbrs in enumerate(self._adjacency):
            start = bisect_left(nbrs, u + 1)
            for v in nbrs[start:]:
                yield u, v

    def canonical_edge_list(self) -> list[tuple[int, int]]:
        """
        Edges in original IDs as ``(min, max)`` tuples, sorted.
        """
        ids = self.original_ids
        return sorted(
            (min(ids[u], ids[v]), max(ids[u], ids[v])) for u, v in self.edges()
        )

    def isolated_original_ids(self) -> list[int]:
        return sorted(
            self.original_ids[u] for u in range(self.n) if not self._adjacency[u]
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return sorted(self.original_ids) == sorted(
            other.original_ids
        ) and self.canonical_edge_list() == other.canonical_edge_list()

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class DynamicGraph(Graph):
    """
    Graph that accepts single-edge insertions and deletions while keeping
    every Graph invariant. The vertex set is fixed.
    """

    @classmethod
    def from_graph(cls, g: Graph):
        """
        Independent mutable copy of ``g`` with the same internal IDs.
        """
        adjacency = [list(g.neighbors(u)) for u in range(g.n)]
        return cls(adjacency, list(g.original_ids), g.ingest)

    def _check_pair(self, u: int, v: int):
        self.validate_vertex(u)
        self.validate_vertex(v)
        if u == v:
            raise GraphError(f"self-loop on vertex {self.original_ids[u]}")

    def insert_edge(self, u: int, v: int):
        """
        Add the edge ``(u, v)``. Raises GraphError if it already exists.
        """
        self._check_pair(u, v)
        if self.has_edge(u, v):
            raise GraphError(
                f"edge ({self.original_ids[u]}, {self.original_ids[v]}) already present"
            )
        insort(self._adjacency[u], v)
        insort(self._adjacency[v], u)
        self.m += 1

    def delete_edge(self, u: int, v: int):
        """
        Remove the edge ``(u, v)``. Raises GraphError if it is absent.
        """
        self._check_pair(u, v)
        if not self.has_edge(u, v):
            raise GraphError(
                f"edge ({self.original_ids[u]}, {self.original_ids[v]}) not present"
            )
        self._adjacency[u].remove(v)
        self._adjacency[v].remove(u)
        self.m -= 1


@dataclass(frozen=True)
class OrderedGraph:
    """
    A graph together with its total vertex order and the orientation it
    induces. ``rank[v]`` is the position of ``v`` in the order, ``order`` its
    inverse, and ``out_adjacency[u]`` lists the out-neighbors of ``u`` (the
    neighbors ranked after it) in increasing rank.
    """

    graph: Graph
    rank: np.ndarray
    order: np.ndarray
    out_adjacency: list[list[int]] = field(repr=False)

    def out_neighbors(self, u: int) -> list[int]:
        return self.out_adjacency[u]

    def out_edge_count(self) -> int:
        return sum(len(out) for out in self.out_adjacency)


def degree_order(g: Graph) -> np.ndarray:
    """
    Vertices sorted by decreasing degree; among equal degrees the larger
    original ID comes first.
    """
    degrees = g.degrees()
    original = np.asarray(g.original_ids, dtype=np.uint64)
    # keys are unique, so reversing the ascending sort is exact
    return np.lexsort((original, degrees))[::-1].copy()


def orient(g: Graph) -> OrderedGraph:
    """
    Rank the vertices by degree order and direct every edge from the
    earlier-ranked endpoint to the later one.
    """
    order = degree_order(g)
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n, dtype=np.int64)
    rank_list = rank.tolist()

    out_adjacency: list[list[int]] = []
    for u in range(g.n):
        ru = rank_list[u]
        out = [v for v in g.neighbors(u) if rank_list[v] > ru]
        out.sort(key=rank_list.__getitem__)
        out_adjacency.append(out)
    return OrderedGraph(g, rank, order, out_adjacency)


def common_neighbors(g: Graph, u: int, v: int) -> list[int]:
    """
    Sorted list of vertices adjacent to both ``u`` and ``v``. The edge
    ``(u, v)`` itself need not exist.
    """
    g.validate_vertex(u)
    g.validate_vertex(v)
    if u == v:
        raise GraphError("common neighbors need two distinct vertices")
    return sorted(set(g.neighbors(u)).intersection(g.neighbors(v)))


def serialize_edge_list(g: Graph) -> str:
    """
    Canonical edge-list text: one ``min max`` pair of original IDs per line,
    sorted, LF line endings. Isolated vertices are written as ``v v`` so they
    survive a reload (the loader registers them and drops the loop).
    """
    rows = g.canonical_edge_list()
    rows.extend((orig, orig) for orig in g.isolated_original_ids())
    rows.sort()
    return "".join(f"{a} {b}\n" for a, b in rows)


def from_networkx(nxg: nx.Graph) -> Graph:
    """
    Build a Graph from a networkx graph whose nodes are non-negative integers.
    """
    return Graph.from_edges(nxg.edges(), vertices=nxg.nodes())


def to_networkx(g: Graph) -> nx.Graph:
    """
    networkx view of ``g`` keyed by internal IDs.
    """
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nxg


def sample_edges(g: Graph, fraction: float, seed: int) -> Graph:
    """
    Keep a uniformly random ``fraction`` of the edges of ``g``. All vertices
    are retained, in the same internal order, so IDs stay comparable with
    the full graph.
    """
    if not 0.0 < fraction <= 1.0:
        raise ParameterError(f"sample fraction must be in (0, 1], got {fraction}")
    edges = list(g.edges())
    keep = round(fraction * len(edges))
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(len(edges), size=keep, replace=False))
    ids = g.original_ids
    pairs = ((ids[edges[i][0]], ids[edges[i][1]]) for i in chosen.tolist())
    return Graph.from_edges(pairs, vertices=ids)
