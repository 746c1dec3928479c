"""
Seeded property suite run by ``egobw verify``.

Each trial draws an Erdos-Renyi graph and checks the fast algorithms
against the reference oracles and against each other. Results are counted
per property; the suite passes when no property records a failure.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from egobw.data_loader import UpdateOp
from egobw.dynamic import LazyIndex, ScoreMaintainer
from egobw.egoscore import (
    ComputeScratch,
    EnumerationStats,
    compute_all_scores,
    ego_bw_cal,
    new_maps,
    pair_count,
    static_bound,
    triangle_pass,
)
from egobw.graph import Graph, common_neighbors, from_networkx, orient
from egobw.parallel import edge_pebw, vertex_pebw
from egobw.reference import brute_force_scores
from egobw.topk import base_search, opt_search, rank_vertices

EDGE_PROBABILITIES = (0.05, 0.2, 0.5)
THETAS = (1.0, 1.05, 1.3)
LAZY_KS = (1, 5, 10)
THREAD_COUNTS = (1, 2, 4, 8)
UPDATES_PER_TRIAL = 10
TOLERANCE = 1e-9
DOMINANCE_MIN_N = 32
DOMINANCE_SHARE = 0.5


def strict_gain_holds(strict: int, instances: int) -> bool:
    """
    Whether opt search beat base search on at least ``DOMINANCE_SHARE`` of
    the counted instances. No instances means nothing to hold against.
    """
    return instances == 0 or strict >= DOMINANCE_SHARE * instances


@dataclass
class PropertyResult:
    """
    Outcome of one property across the whole suite.
    """

    name: str
    description: str
    checks: int = 0
    failures: int = 0
    first_failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, condition: bool, detail: str):
        self.checks += 1
        if not condition:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = detail


@dataclass
class SuiteReport:
    """
    Results of a run of the property suite.
    """

    trials: int
    max_n: int
    seed: int
    properties: list[PropertyResult] = field(default_factory=list)
    strict_gains: int = 0
    gain_instances: int = 0

    @property
    def passed(self) -> bool:
        return all(prop.passed for prop in self.properties)


def random_graph(rng: np.random.Generator, max_n: int, p: float) -> Graph:
    n = int(rng.integers(2, max(max_n, 2) + 1))
    return from_networkx(nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31))))


def _absent_pair(
    rng: np.random.Generator, ids: list[int], present: set, pair_total: int
) -> tuple[int, int]:
    """
    A uniformly drawn pair of sorted original IDs that is not an edge.
    """
    if 2 * len(present) <= pair_total:
        while True:
            i, j = sorted(rng.choice(len(ids), size=2, replace=False).tolist())
            if (ids[i], ids[j]) not in present:
                return ids[i], ids[j]
    absent = [
        (a, b)
        for i, a in enumerate(ids)
        for b in ids[i + 1 :]
        if (a, b) not in present
    ]
    return absent[int(rng.integers(len(absent)))]


def random_update_stream(
    rng: np.random.Generator, g: Graph, count: int
) -> list[UpdateOp]:
    """
    Alternate insertions of absent pairs and deletions of present edges,
    falling back to the other kind when one is impossible.
    """
    ids = sorted(g.original_ids)
    pair_total = len(ids) * (len(ids) - 1) // 2
    edges = g.canonical_edge_list()
    present = set(edges)
    ops = []
    for step in range(count):
        can_insert = len(present) < pair_total
        insert = (step % 2 == 0 and can_insert) or not present
        if insert and not can_insert:
            break
        if insert:
            a, b = _absent_pair(rng, ids, present, pair_total)
            present.add((a, b))
            edges.append((a, b))
        else:
            index = int(rng.integers(len(edges)))
            a, b = edges[index]
            edges[index] = edges[-1]
            edges.pop()
            present.remove((a, b))
        ops.append(UpdateOp("+" if insert else "-", a, b, step + 1))
    return ops


def _top_k_ks(n: int) -> list[int]:
    return sorted({1, 5, max(n // 2, 1)})


def _close(a, b) -> bool:
    return np.allclose(a, b, rtol=0, atol=TOLERANCE)


class PropertySuite:
    """
    Runs every property over a seeded corpus of random graphs.
    """

    def __init__(self, trials: int, max_n: int, seed: int):
        self.trials = trials
        self.max_n = max_n
        self.seed = seed
        self.props = {
            "oracle_equivalence": PropertyResult(
                "oracle_equivalence",
                "scores from connector maps equal the ego-network oracle",
            ),
            "map_classification": PropertyResult(
                "map_classification",
                "complete maps classify every neighbor pair correctly",
            ),
            "completion_order": PropertyResult(
                "completion_order",
                "scoring vertices one by one in any order matches the triangle pass",
            ),
            "topk_correctness": PropertyResult(
                "topk_correctness",
                "base and opt search return the oracle top-k for every theta",
            ),
            "pruning_dominance": PropertyResult(
                "pruning_dominance",
                "opt search never scores more vertices than base search "
                "and scores fewer on at least half of the larger graphs",
            ),
            "bound_properties": PropertyResult(
                "bound_properties",
                "recomputed bounds are sound and never grow",
            ),
            "dynamic_local": PropertyResult(
                "dynamic_local",
                "local updates match recomputation and stay local",
            ),
            "dynamic_lazy": PropertyResult(
                "dynamic_lazy",
                "the lazy top-k matches the recomputed top-k after every update",
            ),
            "parallel_agreement": PropertyResult(
                "parallel_agreement",
                "parallel scores equal the sequential scores bit for bit",
            ),
        }
        self._dominance_instances = 0
        self._dominance_strict = 0

    def run(self) -> SuiteReport:
        rng = np.random.default_rng(self.seed)
        for trial in range(self.trials):
            p = EDGE_PROBABILITIES[trial % len(EDGE_PROBABILITIES)]
            g = random_graph(rng, self.max_n, p)
            label = f"trial {trial} (n={g.n}, m={g.m}, p={p})"
            scores = compute_all_scores(g)
            self._check_static(g, scores, rng, label)
            self._check_topk(g, scores, label)
            self._check_parallel(g, scores, label)
            ops = random_update_stream(rng, g, UPDATES_PER_TRIAL)
            self._check_dynamic(g, ops, label)

        if self._dominance_instances:
            self.props["pruning_dominance"].check(
                strict_gain_holds(self._dominance_strict, self._dominance_instances),
                f"opt search beat base search on only {self._dominance_strict} of "
                f"{self._dominance_instances} instances with n >= {DOMINANCE_MIN_N}",
            )

        logging.info(
            "\033[94mStrict pruning gain on %d of %d instances with n >= %d\033[0m",
            self._dominance_strict,
            self._dominance_instances,
            DOMINANCE_MIN_N,
        )
        return SuiteReport(
            self.trials,
            self.max_n,
            self.seed,
            list(self.props.values()),
            strict_gains=self._dominance_strict,
            gain_instances=self._dominance_instances,
        )

    def _check_static(self, g: Graph, scores: np.ndarray, rng, label: str):
        oracle = brute_force_scores(g)
        expected = np.array([o.value for o in oracle])
        self.props["oracle_equivalence"].check(
            _close(scores, expected), f"{label}: scores differ from the oracle"
        )

        og = orient(g)
        maps = new_maps(og)
        triangle_pass(og, maps)
        classification = self.props["map_classification"]
        for s in maps:
            nbrs = g.neighbors(s.owner)
            adjacent = sum(
                1 for i, a in enumerate(nbrs) for b in nbrs[i + 1 :] if g.has_edge(a, b)
            )
            absent = pair_count(len(nbrs)) - len(s)
            sole = sum(
                1
                for i, a in enumerate(nbrs)
                for b in nbrs[i + 1 :]
                if not g.has_edge(a, b)
                and len(set(common_neighbors(g, a, b)).intersection(nbrs)) == 0
            )
            classification.check(
                s.zero_count() == adjacent and absent == sole,
                f"{label}: map of vertex {g.original_ids[s.owner]} misclassifies pairs",
            )

        order = rng.permutation(g.n).tolist()
        maps = new_maps(og)
        scratch = ComputeScratch(g.n)
        one_by_one = np.zeros(g.n)
        for u in order:
            one_by_one[u] = ego_bw_cal(g, u, scratch, maps)
        self.props["completion_order"].check(
            np.allclose(one_by_one, scores, rtol=0, atol=1e-12),
            f"{label}: ego_bw_cal in random order disagrees",
        )

    def _check_topk(self, g: Graph, scores: np.ndarray, label: str):
        correctness = self.props["topk_correctness"]
        dominance = self.props["pruning_dominance"]
        bounds_prop = self.props["bound_properties"]
        descending = np.sort(scores)[::-1]

        for k in _top_k_ks(g.n):
            expected_vertices = rank_vertices(scores, g, k)
            expected_scores = descending[: min(k, g.n)]
            base = base_search(g, k)
            correctness.check(
                base.vertices == expected_vertices
                and _close(base.scores, expected_scores),
                f"{label}: base search k={k} returned the wrong answer",
            )
            for theta in THETAS:
                seen: dict[int, list[float]] = {}
                result = opt_search(
                    g,
                    k,
                    theta,
                    bound_observer=lambda v, b: seen.setdefault(v, []).append(b),
                )
                correctness.check(
                    result.vertices == expected_vertices
                    and _close(result.scores, expected_scores),
                    f"{label}: opt search k={k} theta={theta} returned the wrong answer",
                )
                dominance.check(
                    result.exact_computations <= base.exact_computations <= g.n,
                    f"{label}: k={k} theta={theta} opt={result.exact_computations} "
                    f"base={base.exact_computations}",
                )
                for v, observed in seen.items():
                    within = all(
                        scores[v] - TOLERANCE <= b <= static_bound(g, v) + TOLERANCE
                        for b in observed
                    )
                    shrinking = all(
                        later <= earlier
                        for earlier, later in zip(observed, observed[1:])
                    )
                    bounds_prop.check(
                        within and shrinking,
                        f"{label}: bounds of vertex {g.original_ids[v]} were {observed}",
                    )
                if theta == 1.05 and g.n >= DOMINANCE_MIN_N:
                    self._dominance_instances += 1
                    if result.exact_computations < base.exact_computations:
                        self._dominance_strict += 1

    def _check_parallel(self, g: Graph, scores: np.ndarray, label: str):
        agreement = self.props["parallel_agreement"]
        og = orient(g)
        sequential = EnumerationStats()
        triangle_pass(og, new_maps(og), sequential)
        for algo in (vertex_pebw, edge_pebw):
            for threads in THREAD_COUNTS:
                stats = EnumerationStats()
                result = algo(og, threads, stats)
                agreement.check(
                    np.array_equal(result, scores)
                    and stats.triangles == sequential.triangles,
                    f"{label}: {algo.__name__} with {threads} thread(s) disagrees",
                )

    def _check_dynamic(self, g: Graph, ops: list[UpdateOp], label: str):
        local_prop = self.props["dynamic_local"]
        lazy_prop = self.props["dynamic_lazy"]
        maintainer = ScoreMaintainer(g)
        lazies = [LazyIndex(g, k) for k in LAZY_KS]

        for op in ops:
            step = f"{label}, line {op.line_no} ({op.op} {op.u} {op.v})"
            before = maintainer.scores.copy()
            maintainer.apply(op)
            current = maintainer.graph
            u = current.internal_id(op.u)
            v = current.internal_id(op.v)
            fresh = compute_all_scores(current)
            affected = {u, v, *common_neighbors(current, u, v)}
            moved = set(
                np.flatnonzero(np.abs(before - fresh) > TOLERANCE).tolist()
            )
            shared = affected - {u, v}
            if op.is_insert:
                monotone = all(fresh[w] <= before[w] + TOLERANCE for w in shared)
            else:
                monotone = all(fresh[w] >= before[w] - TOLERANCE for w in shared)
            local_prop.check(
                _close(maintainer.scores, fresh) and moved <= affected and monotone,
                f"{step}: local maintenance diverged",
            )

            for lazy in lazies:
                lazy.apply(op)
                answer = lazy.top_k()
                expected = rank_vertices(fresh, current, lazy.k)
                lazy_prop.check(
                    [x for x, _ in answer] == expected
                    and _close([s for _, s in answer], fresh[expected]),
                    f"{step}: lazy top-{lazy.k} diverged",
                )


def run_property_suite(trials: int, max_n: int, seed: int) -> SuiteReport:
    """
    Run the property suite over ``trials`` seeded random graphs with at
    most ``max_n`` vertices.
    """
    logging.info(
        "\033[94mRunning property suite: %d trial(s), n <= %d, seed %d\033[0m",
        trials,
        max_n,
        seed,
    )
    return PropertySuite(trials, max_n, seed).run()
