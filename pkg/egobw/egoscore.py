"""
Connector bookkeeping and exact ego-betweenness scoring.

For a vertex ``p`` every pair of neighbors ``(i, j)`` contributes to the
score of ``p`` unless ``i`` and ``j`` are adjacent. A non-adjacent pair with
``c`` other common neighbors inside the ego network of ``p`` contributes
``1 / (c + 1)``. A ConnectorMap records what is known about these pairs:

- ``val == 0``: ``i`` and ``j`` are adjacent,
- ``val == c > 0``: ``c`` connectors other than ``p`` have been found,
- absent: nothing is known yet (or, once COMPLETE, ``p`` is the sole connector).

Both pieces of knowledge come from triangles through ``p``. A connector
``w`` of ``(x, z)`` closes the two triangles ``(p, w, x)`` and ``(p, w, z)``;
it is recorded when the later of the two is absorbed. Each map remembers,
per neighbor, the partners it has already formed triangles with, so every
connector is counted exactly once regardless of discovery order.
"""

import math
from dataclasses import dataclass
from enum import Enum
from itertools import chain

import numpy as np

from egobw.errors import ConnectorMapError
from egobw.graph import Graph, OrderedGraph, orient


class MapState(Enum):
    """
    How much of a vertex's ego network its ConnectorMap reflects.
    """

    EMPTY = "empty"
    PARTIAL = "partial"
    COMPLETE = "complete"


class PairCodec:
    """
    Packs an unordered vertex pair into one integer ``rank(a) * n + rank(b)``
    with the lower rank first. Sorting packed keys gives the canonical pair
    order used for every score summation.
    """

    __slots__ = ("rank", "order", "n")

    def __init__(self, rank: list[int], order: list[int]):
        self.rank = rank
        self.order = order
        self.n = len(rank)

    @classmethod
    def from_ordered(cls, og: OrderedGraph):
        """
        Codec keyed by the degree order of ``og``.
        """
        return cls(og.rank.tolist(), og.order.tolist())

    @classmethod
    def identity(cls, n: int):
        """
        Codec keyed by internal ID, for graphs whose degree order drifts.
        """
        ids = list(range(n))
        return cls(ids, list(ids))

    def encode(self, a: int, b: int) -> int:
        ra = self.rank[a]
        rb = self.rank[b]
        if ra == rb:
            raise ConnectorMapError(f"pair key needs two distinct vertices, got {a}")
        if ra > rb:
            ra, rb = rb, ra
        return ra * self.n + rb

    def decode(self, key: int) -> tuple[int, int]:
        ra, rb = divmod(key, self.n)
        return self.order[ra], self.order[rb]


class ConnectorMap:
    """
    Per-vertex map from neighbor pairs to connector counts (see module docs).

    :param owner: The vertex whose ego network the map describes.
    :param codec: Pair codec shared by all maps of one computation.
    """

    __slots__ = ("owner", "codec", "entries", "partners", "state")

    def __init__(self, owner: int, codec: PairCodec):
        self.owner = owner
        self.codec = codec
        self.entries: dict[int, int] = {}
        self.partners: dict[int, list[int]] = {}
        self.state = MapState.EMPTY

    def _touch(self):
        if self.state is MapState.EMPTY:
            self.state = MapState.PARTIAL

    def get(self, a: int, b: int) -> int | None:
        """
        Stored value for the pair, or None when the pair is absent.
        """
        return self.entries.get(self.codec.encode(a, b))

    def insert_edge(self, a: int, b: int):
        """
        Mark ``(a, b)`` as an adjacent pair (value 0).

        :raises ConnectorMapError: If connectors were already recorded for the pair.
        """
        key = self.codec.encode(a, b)
        current = self.entries.get(key)
        if current is None:
            self.entries[key] = 0
            self._touch()
        elif current > 0:
            raise ConnectorMapError(
                f"map of {self.owner}: pair ({a}, {b}) has {current} connectors "
                "and cannot become an edge"
            )

    def record_connector(self, a: int, b: int, count: int = 1):
        """
        Add ``count`` connectors to the non-adjacent pair ``(a, b)``. Pairs
        already marked adjacent are left untouched.
        """
        key = self.codec.encode(a, b)
        current = self.entries.get(key)
        if current == 0:
            return
        self.entries[key] = count if current is None else current + count
        self._touch()

    def absorb_triangle(self, g: Graph, y: int, z: int):
        """
        Take in the triangle ``(owner, y, z)``: mark ``(y, z)`` adjacent and
        record ``y`` (resp. ``z``) as a connector for every earlier partner of
        ``y`` (resp. ``z``) that is not adjacent to the other vertex.
        """
        self.insert_edge(y, z)
        partners = self.partners
        y_partners = partners.setdefault(y, [])
        z_partners = partners.setdefault(z, [])
        for x in y_partners:
            if not g.has_edge(x, z):
                self.record_connector(x, z)
        for x in z_partners:
            if not g.has_edge(x, y):
                self.record_connector(x, y)
        y_partners.append(z)
        z_partners.append(y)

    def zero_count(self) -> int:
        return sum(1 for val in self.entries.values() if val == 0)

    def positive_count(self) -> int:
        return sum(1 for val in self.entries.values() if val > 0)

    def items(self) -> list[tuple[int, int, int]]:
        """
        ``(a, b, val)`` triples in canonical pair order.
        """
        decode = self.codec.decode
        return [(*decode(key), val) for key, val in sorted(self.entries.items())]

    def __len__(self):
        return len(self.entries)


@dataclass
class EnumerationStats:
    """
    Instrumentation counters for triangle enumeration.
    """

    triangles: int = 0


class ComputeScratch:
    """
    Reusable working state of ego_bw_cal.

    ``processed`` flags vertices already scored exactly, ``visit`` marks the
    unprocessed neighbors of the vertex at hand, listed in ``en``.
    """

    def __init__(self, n: int):
        self.processed = np.zeros(n, dtype=bool)
        self.visit = np.zeros(n, dtype=bool)
        self.en: list[int] = []

    def split(self, g: Graph, u: int):
        """
        Collect the neighbors of ``u`` not yet scored; triangles through a
        processed neighbor are already in the map of ``u``.
        """
        processed = self.processed
        self.en = [i for i in g.neighbors(u) if not processed[i]]


def new_maps(og: OrderedGraph) -> list[ConnectorMap]:
    """
    One empty ConnectorMap per vertex, keyed by the degree order of ``og``.
    """
    codec = PairCodec.from_ordered(og)
    return [ConnectorMap(v, codec) for v in range(og.graph.n)]


def pair_count(d: int) -> int:
    return d * (d - 1) // 2


def static_bound(g: Graph, u: int) -> float:
    """
    Number of neighbor pairs of ``u``, the largest score ``u`` can have.
    """
    return float(pair_count(g.degree(u)))


def _reciprocal_total(s: ConnectorMap, g: Graph) -> float:
    entries = s.entries
    zeros = 0
    positives = []
    for key in sorted(entries):
        val = entries[key]
        if val == 0:
            zeros += 1
        else:
            positives.append(1.0 / (val + 1))
    base = pair_count(g.degree(s.owner)) - zeros - len(positives)
    return math.fsum(chain((float(base),), positives))


def dynamic_bound(s: ConnectorMap, g: Graph) -> float:
    """
    Upper bound on the score of ``s.owner`` given what its map knows so far.
    Equals the exact score once the map is COMPLETE.
    """
    if s.state is MapState.EMPTY:
        return static_bound(g, s.owner)
    return _reciprocal_total(s, g)


def score_from_map(s: ConnectorMap, g: Graph) -> float:
    """
    Exact ego-betweenness of ``s.owner``; the map must be COMPLETE.
    """
    return _reciprocal_total(s, g)


def discover_triangle(
    maps: list[ConnectorMap],
    g: Graph,
    a: int,
    b: int,
    c: int,
    stats: EnumerationStats | None = None,
):
    """
    Absorb the triangle ``(a, b, c)`` into the maps of all three corners.
    """
    maps[a].absorb_triangle(g, b, c)
    maps[b].absorb_triangle(g, a, c)
    maps[c].absorb_triangle(g, a, b)
    if stats is not None:
        stats.triangles += 1


def ego_bw_cal(
    g: Graph,
    u: int,
    scratch: ComputeScratch,
    maps: list[ConnectorMap],
    stats: EnumerationStats | None = None,
) -> float:
    """
    Score ``u`` exactly and complete its map.

    Triangles through ``u`` and an already processed vertex were absorbed
    when that vertex was processed, so only triangles whose other two corners
    are both unprocessed are discovered here. Each is absorbed into all three
    corner maps, which also advances the maps of the unprocessed neighbors.

    :param g: The graph.
    :param u: Vertex to score.
    :param scratch: Working state whose ``processed`` flags are kept up to date.
    :param maps: ConnectorMaps of all vertices.
    :param stats: Optional triangle counter.
    :return: The ego-betweenness of ``u``.
    """
    g.validate_vertex(u)
    s = maps[u]
    if g.degree(u) <= 1:
        scratch.processed[u] = True
        return 0.0

    scratch.split(g, u)
    visit = scratch.visit
    en = scratch.en
    visit[en] = True
    for i in en:
        for j in g.neighbors(i):
            if i < j and visit[j]:
                discover_triangle(maps, g, u, i, j, stats)
    visit[en] = False

    scratch.processed[u] = True
    s.state = MapState.COMPLETE
    return score_from_map(s, g)


def process_top(
    og: OrderedGraph,
    u: int,
    maps: list[ConnectorMap],
    marker: np.ndarray,
    stats: EnumerationStats | None = None,
):
    """
    Discover every triangle whose highest-ranked corner is ``u`` by
    intersecting out-neighborhoods.
    """
    g = og.graph
    out = og.out_adjacency
    out_u = out[u]
    if len(out_u) < 2:
        return
    marker[out_u] = True
    for v in out_u:
        for w in out[v]:
            if marker[w]:
                discover_triangle(maps, g, u, v, w, stats)
    marker[out_u] = False


def triangle_pass(
    og: OrderedGraph,
    maps: list[ConnectorMap],
    stats: EnumerationStats | None = None,
):
    """
    Enumerate every triangle once and leave every map COMPLETE.
    """
    marker = np.zeros(og.graph.n, dtype=bool)
    for u in og.order.tolist():
        process_top(og, u, maps, marker, stats)
    for s in maps:
        s.state = MapState.COMPLETE


def score_all(maps: list[ConnectorMap], g: Graph) -> np.ndarray:
    """
    Score every vertex from its COMPLETE map.
    """
    return np.fromiter(
        (score_from_map(s, g) for s in maps), dtype=np.float64, count=len(maps)
    )


def compute_all_scores(g: Graph) -> np.ndarray:
    """
    Sequential full computation of every vertex's ego-betweenness.
    """
    og = orient(g)
    maps = new_maps(og)
    triangle_pass(og, maps)
    return score_all(maps, g)


def ego_connector_map(
    g: Graph, p: int, codec: PairCodec | None = None
) -> ConnectorMap:
    """
    Build the COMPLETE map of ``p`` from its neighborhood alone. Without a
    codec the map is keyed by internal ID.
    """
    g.validate_vertex(p)
    s = ConnectorMap(p, codec if codec is not None else PairCodec.identity(g.n))
    nbrs = g.neighbors(p)
    members = set(nbrs)
    for y in nbrs:
        for z in g.neighbors(y):
            if y < z and z in members:
                s.absorb_triangle(g, y, z)
    s.state = MapState.COMPLETE
    return s


def vertex_score(g: Graph, p: int, codec: PairCodec | None = None) -> float:
    """
    Exact ego-betweenness of a single vertex, computed locally.
    """
    if g.degree(p) <= 1:
        return 0.0
    return score_from_map(ego_connector_map(g, p, codec), g)
