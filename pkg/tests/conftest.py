"""Shared fixtures and graph-building helpers."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jobpath.graph import TransitionGraph, build_full_graph
from jobpath.synthetic import GeneratorConfig, generate_synthetic
from jobpath.trajectories import (
    CareerTrajectory,
    DateStamp,
    JobKey,
    WorkStint,
    clean,
)

DESK_CONFIG = GeneratorConfig()  # ~200 jobs, ~5000 trajectories
SMALL_CONFIG = GeneratorConfig(jobs=40, persons=400, mean_len=4.0)


def job(tag: str) -> JobKey:
    return JobKey(industry="ind00", company_size="[51-200]", title=f"role {tag}")


def month(k: int) -> DateStamp:
    """Month k of a fixed epoch; keeps stint fixtures terse."""
    return DateStamp(2000, 1).plus_months(k)


def trajectory(person: str, jobs_and_spans, graduation: int = 0) -> CareerTrajectory:
    """Build a trajectory from (tag, start_month, end_month) triples."""
    stints = tuple(
        WorkStint(job(tag), month(start), month(end)) for tag, start, end in jobs_and_spans
    )
    return CareerTrajectory(person, month(graduation), stints)


def make_graph(
    n_nodes: int,
    edges,
    hop_count=None,
    duration=None,
    level_gain=None,
    desirability=None,
) -> TransitionGraph:
    """Construct a TransitionGraph directly from edge tuples (test-only).

    Node levels and pageranks are synthesized (zeros / uniform) unless the
    per-edge stats imply otherwise; planner and utility code only read the
    edge arrays and offsets.
    """
    order = sorted(range(len(edges)), key=lambda i: edges[i])
    edges = [edges[i] for i in order]

    def arranged(values, default):
        if values is None:
            return np.full(len(edges), float(default))
        return np.array([values[i] for i in order], dtype=float)

    jobs = tuple(job(f"{i:04d}") for i in range(n_nodes))
    graph = TransitionGraph(
        jobs=jobs,
        job_ids={j: i for i, j in enumerate(jobs)},
        src=np.array([e[0] for e in edges], dtype=np.int64),
        dst=np.array([e[1] for e in edges], dtype=np.int64),
        hop_count=arranged(hop_count, 1).astype(np.int64),
    )
    graph.duration_cost = arranged(duration, 0.0)
    graph.level_gain = arranged(level_gain, 0.0)
    graph.desirability_gain = arranged(desirability, 0.0)
    graph.level = np.zeros(n_nodes)
    graph.pagerank = np.full(n_nodes, 1.0 / max(n_nodes, 1))
    return graph


def random_dag(seed: int, max_nodes: int = 12, edge_prob: float = 0.35):
    """Seeded random DAG: edge list plus payoffs, forward edges only."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, max_nodes + 1))
    edges = [
        (s, d) for s in range(n) for d in range(s + 1, n) if rng.random() < edge_prob
    ]
    if not edges:
        edges = [(0, n - 1)]
    payoffs = rng.uniform(-5.0, 5.0, len(edges))
    return n, edges, payoffs


@pytest.fixture(scope="session")
def small_corpus():
    return clean(generate_synthetic(SMALL_CONFIG, seed=42), min_support=2)


@pytest.fixture(scope="session")
def small_graph(small_corpus):
    return build_full_graph(small_corpus)


@pytest.fixture(scope="session")
def desk_corpus():
    return clean(generate_synthetic(DESK_CONFIG, seed=42), min_support=2)


@pytest.fixture(scope="session")
def desk_graph(desk_corpus):
    return build_full_graph(desk_corpus)


@pytest.fixture(scope="session")
def artifact_dir(tmp_path_factory):
    """Artifacts of a full CLI pipeline run over a small seeded corpus."""
    from click.testing import CliRunner

    from jobpath.cli import main

    root = tmp_path_factory.mktemp("pipeline")
    config = root / "jobpath.cfg"
    config.write_text(
        "\n".join(
            [
                "[pipeline]",
                "gamma = 0.7",
                "t_max = 50",
                "h = 4",
                "min_support = 2",
                "max_len = 10",
                f"corpus_path = {root / 'corpus.jsonl'}",
                f"graph_dir = {root / 'graph'}",
                f"tables_dir = {root / 'tables'}",
                f"report_dir = {root / 'report'}",
                "",
                "[generator]",
                "jobs = 40",
                "persons = 400",
                "seed = 42",
            ]
        ),
        encoding="utf-8",
    )
    runner = CliRunner()
    steps = [
        ["generate", "--config", str(config), "--out", str(root / "raw.jsonl")],
        ["ingest", "--config", str(config), "--in", str(root / "raw.jsonl")],
        ["build", "--config", str(config)],
        ["learn", "--config", str(config)],
        ["select", "--config", str(config)],
        ["benchmark", "--config", str(config)],
        ["stats", "--config", str(config)],
    ]
    for step in steps:
        result = runner.invoke(main, step, catch_exceptions=False)
        assert result.exit_code == 0, f"{step}: {result.output}"
    return root
