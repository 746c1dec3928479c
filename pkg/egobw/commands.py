"""
This module wires loading, computation and reporting together for each
CLI subcommand. Every command takes the parsed arguments and the loaded
settings, writes its machine-readable output to standard output and
returns the process exit status.
"""

import logging
import math
import sys
import time
from argparse import Namespace
from dataclasses import dataclass

import numpy as np

from egobw.data_loader import EdgeListLoader, SettingsDict, UpdateStreamLoader
from egobw.dynamic import LazyIndex, ScoreMaintainer
from egobw.egoscore import compute_all_scores
from egobw.graph import Graph, orient, sample_edges
from egobw.parallel import edge_pebw, vertex_pebw
from egobw.reference import brandes_betweenness, topk_overlap
from egobw.report_renderer import ReportRenderer, format_score, tsv
from egobw.topk import TopKResult, base_search, opt_search, rank_vertices
from egobw.verification import random_update_stream, run_property_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


@dataclass
class BenchRow:
    """
    One measured search run.
    """

    algo: str
    k: int
    theta: str
    exact_computations: int
    seconds: float


@dataclass
class UpdateRow:
    """
    Average time of one kind of update in one maintenance mode.
    """

    mode: str
    k: str
    op: str
    count: int
    seconds: float


@dataclass
class ParallelRow:
    """
    One timed parallel scoring run and its speedup over one thread.
    """

    algo: str
    threads: int
    seconds: float
    speedup: float


def load_graph(path: str) -> Graph:
    """
    Loads the graph named on the command line.
    """
    return EdgeListLoader(path).load()


def emit(line: str):
    sys.stdout.write(line + "\n")


def run_search(g: Graph, k: int, algo: str, theta: float) -> TopKResult:
    if algo == "base":
        return base_search(g, k)
    return opt_search(g, k, theta)


def cmd_topk(args: Namespace, settings: SettingsDict) -> int:
    """
    Print the top-k vertices by ego-betweenness.
    """
    g = load_graph(args.graph)
    theta = settings["theta"] if args.theta is None else args.theta
    result = run_search(g, args.k, args.algo, theta)
    digits = settings["score_digits"]

    emit(f"# rank\tvertex\tscore\texact_computations={result.exact_computations}")
    for rank, (v, score) in enumerate(result.entries, start=1):
        emit(tsv([rank, g.original_ids[v], format_score(score, digits)]))
    logging.info(
        "\033[92m%s search scored %d of %d vertices\033[0m",
        args.algo,
        result.exact_computations,
        g.n,
    )
    return EXIT_OK


def cmd_score(args: Namespace, settings: SettingsDict) -> int:
    """
    Print the score of every vertex, ordered by original ID.
    """
    g = load_graph(args.graph)
    if args.parallel == "vertex":
        scores = vertex_pebw(
            orient(g), args.threads, chunk_size=settings["vertex_chunk_size"]
        )
    elif args.parallel == "edge":
        scores = edge_pebw(
            orient(g), args.threads, chunk_size=settings["edge_chunk_size"]
        )
    else:
        scores = compute_all_scores(g)

    digits = settings["score_digits"]
    emit("# vertex\tscore")
    for v in sorted(range(g.n), key=g.original_ids.__getitem__):
        emit(tsv([g.original_ids[v], format_score(scores[v], digits)]))
    return EXIT_OK


def cmd_update(args: Namespace, settings: SettingsDict) -> int:
    """
    Replay an update stream, printing the effect of every operation.
    """
    if args.mode == "lazy" and args.k is None:
        logging.error("--k is required with --mode lazy")
        return EXIT_USAGE

    g = load_graph(args.graph)
    ops = UpdateStreamLoader(args.stream).load()
    digits = settings["score_digits"]

    if args.mode == "local":
        maintainer = ScoreMaintainer(g, args.threads)
        ids = maintainer.graph.original_ids
        for op in ops:
            changed = maintainer.apply(op)
            emit(op.echo())
            for w in sorted(changed, key=ids.__getitem__):
                old, new = changed[w]
                emit(
                    tsv([ids[w], format_score(old, digits), format_score(new, digits)])
                )
    else:
        index = LazyIndex(g, args.k, args.threads)
        ids = index.graph.original_ids
        for op in ops:
            index.apply(op)
            emit(op.echo())
            for rank, (w, score) in enumerate(index.top_k(), start=1):
                emit(tsv([rank, ids[w], format_score(score, digits)]))
        index.log_summary()

    logging.info("\033[92mApplied %d update(s)\033[0m", len(ops))
    return EXIT_OK


def cmd_verify(args: Namespace, settings: SettingsDict) -> int:
    """
    Run the property suite and print its report.
    """
    trials = settings["verify_trials"] if args.trials is None else args.trials
    max_n = settings["verify_max_n"] if args.max_n is None else args.max_n
    seed = settings["verify_seed"] if args.seed is None else args.seed

    report = run_property_suite(trials, max_n, seed)
    renderer = ReportRenderer(digits=settings["score_digits"])
    sys.stdout.write(renderer.render("verify_report.jinja", report=report))
    if report.passed:
        logging.info("\033[92mAll properties passed\033[0m")
        return EXIT_OK
    logging.error("Property suite failed")
    return EXIT_FAILED


def cmd_compare(args: Namespace, settings: SettingsDict) -> int:
    """
    Compare the top-k by ego-betweenness with the top-k by betweenness.
    """
    g = load_graph(args.graph)
    limit = settings["brandes_limit"]
    if g.n > limit and not args.force:
        logging.error(
            "Graph has %d vertices, above the betweenness limit of %d; use --force",
            g.n,
            limit,
        )
        return EXIT_USAGE

    k = min(args.k, g.n)
    ego = compute_all_scores(g)
    betweenness = brandes_betweenness(g)
    overlap = topk_overlap(ego, betweenness, k)
    ids = g.original_ids

    renderer = ReportRenderer(digits=settings["score_digits"])
    sys.stdout.write(
        renderer.render(
            "compare_report.jinja",
            k=k,
            ego_rows=[(ids[v], ego[v]) for v in rank_vertices(ego, g, k)],
            betweenness_rows=[
                (ids[v], betweenness[v])
                for v in rank_vertices(betweenness, g, k)
            ],
            overlap=overlap,
        )
    )
    return EXIT_OK


def _timed(call, *call_args, **call_kwargs):
    start = time.perf_counter()
    result = call(*call_args, **call_kwargs)
    return result, time.perf_counter() - start


def bench_updates(g: Graph, count: int, ks: list[int], seed: int) -> list[UpdateRow]:
    """
    Replay ``count`` random updates through local maintenance and through a
    lazy index for every k, timing each insertion and deletion.
    """
    ops = random_update_stream(np.random.default_rng(seed), g, count)
    runs = [("local", "-", ScoreMaintainer(g))]
    runs += [("lazy", str(k), LazyIndex(g, k)) for k in ks]
    rows = []
    for mode, k, index in runs:
        times: dict[str, list[float]] = {"insert": [], "delete": []}
        for op in ops:
            _, seconds = _timed(index.apply, op)
            times["insert" if op.is_insert else "delete"].append(seconds)
        for kind, observed in times.items():
            if observed:
                average = math.fsum(observed) / len(observed)
                rows.append(UpdateRow(mode, k, kind, len(observed), average))
    return rows


def bench_parallel(
    g: Graph, threads: list[int], settings: SettingsDict
) -> list[ParallelRow]:
    """
    Time both parallel scorers for one thread and for every count in
    ``threads``, with the speedup relative to one thread.
    """
    og = orient(g)
    counts = sorted({1, *threads})
    scorers = (
        ("vertex", vertex_pebw, settings["vertex_chunk_size"]),
        ("edge", edge_pebw, settings["edge_chunk_size"]),
    )
    rows = []
    for name, scorer, chunk_size in scorers:
        single = None
        for count in counts:
            _, seconds = _timed(scorer, og, count, chunk_size=chunk_size)
            single = seconds if single is None else single
            speedup = single / seconds if seconds > 0 else float("nan")
            rows.append(ParallelRow(name, count, seconds, speedup))
    return rows


def cmd_bench(args: Namespace, settings: SettingsDict) -> int:
    """
    Time base and opt search over several k and theta values, and
    optionally update maintenance and parallel scoring.
    """
    g = load_graph(args.graph)
    if args.sample is not None:
        g = sample_edges(g, args.sample, args.seed)
        logging.info("\033[94mSampled subgraph with m=%d\033[0m", g.m)

    ks = args.k or settings["bench_ks"]
    thetas = args.theta or settings["bench_thetas"]
    rows = []
    for k in ks:
        result, seconds = _timed(base_search, g, k)
        rows.append(BenchRow("base", k, "-", result.exact_computations, seconds))
        for theta in thetas:
            result, seconds = _timed(opt_search, g, k, theta)
            rows.append(
                BenchRow("opt", k, str(theta), result.exact_computations, seconds)
            )

    updates = []
    if args.updates:
        logging.info("\033[94mTiming %d random update(s)...\033[0m", args.updates)
        updates = bench_updates(g, args.updates, ks, args.seed)
    parallel = []
    if args.threads:
        parallel = bench_parallel(g, args.threads, settings)

    renderer = ReportRenderer(digits=settings["score_digits"])
    sys.stdout.write(
        renderer.render(
            "bench_report.jinja",
            n=g.n,
            m=g.m,
            sample=args.sample,
            seed=args.seed,
            rows=rows,
            updates=updates,
            parallel=parallel,
        )
    )
    return EXIT_OK
