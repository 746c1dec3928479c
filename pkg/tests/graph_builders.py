"""Utility functions for building test graphs and oracle answers"""

import networkx as nx
import numpy as np

from egobw.graph import Graph, from_networkx
from egobw.reference import brute_force_scores

# Vertex letters of the seven-vertex ego network example
EGO_EXAMPLE_IDS = {"a": 0, "b": 1, "c": 2, "d": 3, "g": 4, "h": 5, "i": 6}
EGO_EXAMPLE_EDGES = [
    ("d", "a"),
    ("d", "b"),
    ("d", "c"),
    ("d", "g"),
    ("d", "h"),
    ("d", "i"),
    ("a", "b"),
    ("a", "c"),
    ("b", "c"),
    ("c", "g"),
    ("c", "h"),
    ("g", "i"),
    ("h", "i"),
]

# Four-cycle k-f-i-j-k; inserting (i, k) halves the scores of i and k
FOUR_CYCLE_IDS = {"k": 0, "f": 1, "j": 2, "i": 3}
FOUR_CYCLE_EDGES = [("k", "f"), ("k", "j"), ("i", "f"), ("i", "j")]

# N(g) = {c, d, e, i}; deleting (c, g) takes the score of g from 2/3 to 1/2
DELETION_IDS = {"c": 0, "d": 1, "e": 2, "g": 3, "i": 4}
DELETION_EDGES = [
    ("g", "c"),
    ("g", "d"),
    ("g", "e"),
    ("g", "i"),
    ("c", "d"),
    ("c", "e"),
    ("i", "d"),
    ("i", "e"),
]


def lettered_graph(ids: dict[str, int], edges: list[tuple[str, str]]) -> Graph:
    """Build a graph from lettered edges, keeping letter order as internal order"""
    return Graph.from_edges(
        ((ids[a], ids[b]) for a, b in edges), vertices=sorted(ids.values())
    )


def edge_list_text(ids: dict[str, int], edges: list[tuple[str, str]]) -> str:
    """Edge-list file contents for lettered edges"""
    return "".join(f"{ids[a]} {ids[b]}\n" for a, b in edges)


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves 1..leaves"""
    return from_networkx(nx.star_graph(leaves))


def path_graph(n: int) -> Graph:
    return from_networkx(nx.path_graph(n))


def complete_graph(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n))


def cycle_graph(n: int) -> Graph:
    return from_networkx(nx.cycle_graph(n))


def er_graph(n: int, p: float, seed: int) -> Graph:
    return from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def er_corpus(count: int, max_n: int, seed: int) -> list[Graph]:
    """Seeded Erdos-Renyi graphs cycling through three edge densities"""
    rng = np.random.default_rng(seed)
    graphs = []
    for index in range(count):
        p = (0.05, 0.2, 0.5)[index % 3]
        n = int(rng.integers(2, max_n + 1))
        graphs.append(er_graph(n, p, int(rng.integers(2**31))))
    return graphs


def oracle_scores(g: Graph) -> np.ndarray:
    """Float scores of every vertex from the ego-network oracle"""
    return np.array([score.value for score in brute_force_scores(g)])


def oracle_top_scores(g: Graph, k: int) -> np.ndarray:
    """The min(k, n) largest oracle scores, descending"""
    return np.sort(oracle_scores(g))[::-1][:k]
