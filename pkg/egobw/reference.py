"""
Independent oracles used to validate the fast algorithms: exact
ego-betweenness evaluated on explicitly built ego networks, Brandes
betweenness, a naive all-pairs betweenness, and a tie-aware top-k overlap.

The oracles use exact rational arithmetic wherever the result is compared
against the float pipeline.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import networkx as nx
import numpy as np

from egobw.errors import OracleMismatchError, ParameterError
from egobw.graph import Graph, to_networkx


@dataclass(frozen=True)
class EgoNetwork:
    """
    The subgraph induced by a center vertex and its neighbors.
    """

    center: int
    members: frozenset[int]
    adjacency: dict[int, frozenset[int]]

    @classmethod
    def build(cls, g: Graph, p: int, nxg: nx.Graph | None = None):
        """
        Extract the ego network of ``p``. Pass ``nxg`` (from ``to_networkx``)
        to reuse one networkx view across many centers.
        """
        g.validate_vertex(p)
        view = nxg if nxg is not None else to_networkx(g)
        ego = nx.ego_graph(view, p, radius=1)
        adjacency = {v: frozenset(ego.neighbors(v)) for v in ego.nodes}
        return cls(p, frozenset(ego.nodes), adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency.values()) // 2


@dataclass(frozen=True)
class OracleScore:
    """
    An ego-betweenness value as an exact rational and as a float.
    """

    exact: Fraction
    value: float


def _bfs_counts(
    adjacency: dict[int, frozenset[int]], source: int
) -> tuple[dict[int, int], dict[int, int]]:
    """
    Hop distances and shortest-path counts from ``source``.
    """
    dist = {source: 0}
    sigma = {source: 1}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                sigma[w] = 0
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    return dist, sigma


def _formula_score(ego: EgoNetwork) -> Fraction:
    p = ego.center
    total = Fraction(0)
    neighbors = sorted(ego.members - {p})
    for u, v in combinations(neighbors, 2):
        if ego.has_edge(u, v):
            continue
        connectors = (ego.adjacency[u] & ego.adjacency[v]) - {p}
        total += Fraction(1, len(connectors) + 1)
    return total


def _path_count_score(ego: EgoNetwork) -> Fraction:
    p = ego.center
    dist_p, sigma_p = _bfs_counts(ego.adjacency, p)
    total = Fraction(0)
    neighbors = sorted(ego.members - {p})
    for u in neighbors:
        dist_u, sigma_u = _bfs_counts(ego.adjacency, u)
        for v in neighbors:
            if v <= u:
                continue
            if dist_u[p] + dist_p[v] == dist_u[v]:
                total += Fraction(sigma_u[p] * sigma_p[v], sigma_u[v])
    return total


def brute_force_cb(g: Graph, p: int, nxg: nx.Graph | None = None) -> OracleScore:
    """
    Ego-betweenness of ``p`` evaluated directly on its ego network, once by
    the connector formula and once by counting shortest paths.

    :raises OracleMismatchError: If the two evaluations disagree.
    """
    ego = EgoNetwork.build(g, p, nxg)
    by_formula = _formula_score(ego)
    by_paths = _path_count_score(ego)
    if by_formula != by_paths:
        raise OracleMismatchError(
            f"vertex {g.original_ids[p]}: formula gives {by_formula}, "
            f"path counting gives {by_paths}"
        )
    return OracleScore(by_formula, float(by_formula))


def brute_force_scores(g: Graph) -> list[OracleScore]:
    """
    brute_force_cb for every vertex.
    """
    nxg = to_networkx(g)
    return [brute_force_cb(g, p, nxg) for p in range(g.n)]


def brandes_betweenness(g: Graph) -> np.ndarray:
    """
    Exact betweenness of every vertex of an unweighted undirected graph.
    """
    n = g.n
    betweenness = np.zeros(n, dtype=np.float64)
    for s in range(n):
        stack = []
        predecessors: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)

        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                betweenness[w] += delta[w]
    # every unordered pair was counted from both ends
    return betweenness / 2.0


def naive_betweenness(g: Graph) -> list[Fraction]:
    """
    Exact betweenness by checking every vertex against every pair of
    endpoints. Cubic in n; meant for small graphs.
    """
    n = g.n
    adjacency = {v: frozenset(g.neighbors(v)) for v in range(n)}
    dist = np.full((n, n), -1, dtype=np.int64)
    sigma: list[dict[int, int]] = []
    for s in range(n):
        dist_s, sigma_s = _bfs_counts(adjacency, s)
        for t, d in dist_s.items():
            dist[s, t] = d
        sigma.append(sigma_s)

    totals = [Fraction(0)] * n
    for s in range(n):
        for t in range(s + 1, n):
            d_st = dist[s, t]
            if d_st < 2:
                continue
            on_path = (dist[s] >= 0) & (dist[t] >= 0) & (dist[s] + dist[t] == d_st)
            for v in np.flatnonzero(on_path).tolist():
                if v in (s, t):
                    continue
                totals[v] += Fraction(sigma[s][v] * sigma[t][v], sigma[s][t])
    return totals


def topk_overlap(
    a: Sequence[float], b: Sequence[float], k: int, tol: float = 1e-9
) -> float:
    """
    Share of vertices two top-k selections have in common, choosing among
    tied vertices at the k-th place so that the overlap is largest.

    :param a: Scores of every vertex under the first ranking.
    :param b: Scores of the same vertices under the second ranking.
    :param k: Selection size, at most the number of vertices.
    :param tol: Scores closer than this count as tied.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ParameterError("rankings must cover the same vertices")
    n = a.shape[0]
    if k < 1 or k > n:
        raise ParameterError(f"k must be between 1 and {n}, got {k}")

    def split(scores: np.ndarray) -> tuple[set[int], set[int], int]:
        threshold = np.sort(scores)[::-1][k - 1]
        strict = set(np.flatnonzero(scores > threshold + tol).tolist())
        tied = set(np.flatnonzero(np.abs(scores - threshold) <= tol).tolist())
        return strict, tied, k - len(strict)

    strict_a, tied_a, slots_a = split(a)
    strict_b, tied_b, slots_b = split(b)
    from_b = min(len(strict_a & tied_b), slots_b)
    from_a = min(len(tied_a & strict_b), slots_a)
    both = min(len(tied_a & tied_b), slots_b - from_b, slots_a - from_a)
    return (len(strict_a & strict_b) + from_a + from_b + both) / k
