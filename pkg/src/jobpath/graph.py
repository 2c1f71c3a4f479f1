"""Job-transition graph: construction and per-edge/per-node payoff statistics.

Nodes are jobs; an edge (s, d) exists for every consecutive pair of
distinct jobs observed in cleaned trajectories. Consecutive stints at the
same job are merged into one stint spanning both periods, so the graph has
no self-loops. Construction runs in stages (build_graph, then the
compute_* passes); after that the graph is treated as read-only and is
safe to share across threads.

Per-edge criteria:
  duration_cost      mean months spent in the source job by the people who
                     made the hop (each person's first hop per (s, d) pair)
  level_gain         destination level minus source level, where a job's
                     level is the mean post-graduation experience at the
                     end of each stint of that job
  desirability_gain  ln(pagerank[d]) - ln(pagerank[s]) under hop-volume
                     weighted PageRank with uniform teleport
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import MissingArtifactError
from .trajectories import CareerTrajectory, JobKey, WorkStint

logger = logging.getLogger(__name__)

EDGE_CSV_HEADER = ("s_id", "d_id", "hop_count", "duration_cost", "level_gain", "desirability_gain")
NODE_CSV_HEADER = ("job_id", "industry", "company_size", "title", "level", "pagerank", "out_degree")


@dataclass(frozen=True)
class EdgeStats:
    hop_count: int
    duration_cost: float
    level_gain: float
    desirability_gain: float


@dataclass(frozen=True)
class NodeStats:
    level: float
    pagerank: float
    out_degree: int


@dataclass
class TransitionGraph:
    """Edge-list graph with stable integer job ids.

    Edges are stored sorted by (src, dst); _out_offsets is the CSR-style
    segment table over that ordering. Stat arrays start as None and are
    filled by the compute_* passes.
    """

    jobs: tuple[JobKey, ...]
    job_ids: dict[JobKey, int]
    src: np.ndarray
    dst: np.ndarray
    hop_count: np.ndarray
    duration_cost: np.ndarray | None = None
    level_gain: np.ndarray | None = None
    desirability_gain: np.ndarray | None = None
    level: np.ndarray | None = None
    pagerank: np.ndarray | None = None
    pagerank_converged: bool = True
    pagerank_iterations: int = 0
    _edge_index: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)
    _out_offsets: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not self._edge_index:
            self._edge_index = {
                (int(s), int(d)): e for e, (s, d) in enumerate(zip(self.src, self.dst))
            }
        if self._out_offsets is None:
            counts = np.bincount(self.src, minlength=self.n_jobs) if self.n_edges else np.zeros(
                self.n_jobs, dtype=int
            )
            self._out_offsets = np.concatenate(([0], np.cumsum(counts)))

    @property
    def n_jobs(self) -> int:
        return len(self.jobs)

    @property
    def n_edges(self) -> int:
        return int(self.src.size)

    @property
    def out_degree(self) -> np.ndarray:
        return np.diff(self._out_offsets)

    def job_id(self, job: JobKey) -> int:
        return self.job_ids[job]

    def edge_id(self, s: int, d: int) -> int:
        return self._edge_index[(s, d)]

    def has_edge(self, s: int, d: int) -> bool:
        return (s, d) in self._edge_index

    def out_slice(self, s: int) -> tuple[int, int]:
        """Half-open range of edge ids leaving node s."""
        return int(self._out_offsets[s]), int(self._out_offsets[s + 1])

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        for s, d in zip(self.src, self.dst):
            yield int(s), int(d)

    def edge_stats(self, s: int, d: int) -> EdgeStats:
        e = self.edge_id(s, d)
        self._require_criteria()
        return EdgeStats(
            hop_count=int(self.hop_count[e]),
            duration_cost=float(self.duration_cost[e]),
            level_gain=float(self.level_gain[e]),
            desirability_gain=float(self.desirability_gain[e]),
        )

    def node_stats(self, job_id: int) -> NodeStats:
        if self.level is None or self.pagerank is None:
            raise RuntimeError("node statistics not computed yet")
        return NodeStats(
            level=float(self.level[job_id]),
            pagerank=float(self.pagerank[job_id]),
            out_degree=int(self.out_degree[job_id]),
        )

    def _require_criteria(self) -> None:
        if self.duration_cost is None or self.level_gain is None or self.desirability_gain is None:
            raise RuntimeError("payoff criteria not computed yet")


def merge_consecutive_stints(traj: CareerTrajectory) -> tuple[WorkStint, ...]:
    """Merge runs of consecutive stints at the same job into one stint.

    The merged stint spans from the first start to the last end, so the
    Markov state only changes on actual job changes.
    """
    merged: list[WorkStint] = []
    for stint in traj.stints:
        if merged and merged[-1].job == stint.job:
            prev = merged[-1]
            merged[-1] = WorkStint(prev.job, prev.start, stint.end)
        else:
            merged.append(stint)
    return tuple(merged)


def iter_transitions(traj: CareerTrajectory) -> Iterator[tuple[WorkStint, WorkStint]]:
    """Consecutive (source stint, destination stint) pairs after merging."""
    merged = merge_consecutive_stints(traj)
    for a, b in zip(merged, merged[1:]):
        yield a, b


def build_graph(trajs: Sequence[CareerTrajectory]) -> TransitionGraph:
    """Build the transition graph; hop_count counts distinct persons per edge."""
    job_ids: dict[JobKey, int] = {}
    jobs: list[JobKey] = []

    def intern(job: JobKey) -> int:
        jid = job_ids.get(job)
        if jid is None:
            jid = len(jobs)
            job_ids[job] = jid
            jobs.append(job)
        return jid

    hoppers: dict[tuple[int, int], set[str]] = {}
    for traj in trajs:
        merged = merge_consecutive_stints(traj)
        ids = [intern(s.job) for s in merged]
        for a, b in zip(ids, ids[1:]):
            hoppers.setdefault((a, b), set()).add(traj.person_id)

    edges = sorted(hoppers)
    src = np.array([e[0] for e in edges], dtype=np.int64)
    dst = np.array([e[1] for e in edges], dtype=np.int64)
    hop_count = np.array([len(hoppers[e]) for e in edges], dtype=np.int64)
    return TransitionGraph(tuple(jobs), job_ids, src, dst, hop_count)


def compute_duration_cost(
    graph: TransitionGraph, trajs: Sequence[CareerTrajectory]
) -> TransitionGraph:
    """Fill duration_cost: mean source-stint months over each edge's hoppers.

    A person who makes the same (s, d) hop more than once contributes only
    the first hop's source duration (the per-hop alternative would weight
    repeat hoppers more heavily).
    """
    sums = np.zeros(graph.n_edges, dtype=np.int64)
    counts = np.zeros(graph.n_edges, dtype=np.int64)
    seen: set[tuple[str, int, int]] = set()
    for traj in trajs:
        for src_stint, dst_stint in iter_transitions(traj):
            s = graph.job_ids[src_stint.job]
            d = graph.job_ids[dst_stint.job]
            key = (traj.person_id, s, d)
            if key in seen:
                continue
            seen.add(key)
            e = graph.edge_id(s, d)
            sums[e] += src_stint.duration_months
            counts[e] += 1
    if graph.n_edges and not np.array_equal(counts, graph.hop_count):
        raise ValueError("trajectories do not match the graph they built")
    graph.duration_cost = sums / np.maximum(counts, 1)
    return graph


def compute_job_levels(
    graph: TransitionGraph, trajs: Sequence[CareerTrajectory]
) -> TransitionGraph:
    """Fill per-node level and per-edge level_gain.

    A job's level is the mean work experience (months from graduation to
    stint end) over every merged stint of that job; level_gain on (s, d)
    is level[d] - level[s]. Requires a graduation date on every person.
    """
    sums = np.zeros(graph.n_jobs, dtype=np.int64)
    counts = np.zeros(graph.n_jobs, dtype=np.int64)
    for traj in trajs:
        if traj.graduation is None:
            raise ValueError(f"{traj.person_id} has no graduation date; clean first")
        for stint in merge_consecutive_stints(traj):
            jid = graph.job_ids[stint.job]
            sums[jid] += stint.end - traj.graduation
            counts[jid] += 1
    graph.level = sums / np.maximum(counts, 1)
    graph.level_gain = graph.level[graph.dst] - graph.level[graph.src]
    return graph


def compute_pagerank(
    graph: TransitionGraph,
    alpha: float = 0.15,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> TransitionGraph:
    """Fill pagerank and desirability_gain via weighted power iteration.

    Each node spreads its mass over out-edges proportionally to hop_count;
    sink rows are redistributed uniformly over all nodes; with probability
    alpha the walker teleports uniformly. Iteration stops when the L1
    change drops below tol; hitting max_iter first leaves the last iterate
    with pagerank_converged=False and a logged warning.
    """
    if graph.n_jobs == 0:
        raise ValueError("pagerank is undefined on an empty graph")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")

    n = graph.n_jobs
    weights = graph.hop_count.astype(float)
    out_weight = np.zeros(n)
    if graph.n_edges:
        np.add.at(out_weight, graph.src, weights)
    sinks = out_weight == 0.0

    rank = np.full(n, 1.0 / n)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        if graph.n_edges:
            contrib = rank[graph.src] * weights / out_weight[graph.src]
            nxt = np.bincount(graph.dst, weights=contrib, minlength=n)
        else:
            nxt = np.zeros(n)
        nxt += rank[sinks].sum() / n
        nxt = alpha / n + (1.0 - alpha) * nxt
        delta = np.abs(nxt - rank).sum()
        rank = nxt
        if delta < tol:
            converged = True
            break
    if not converged:
        logger.warning("pagerank did not converge within %d iterations", max_iter)

    graph.pagerank = rank
    graph.pagerank_converged = converged
    graph.pagerank_iterations = iterations
    if graph.n_edges:
        graph.desirability_gain = np.log(rank[graph.dst]) - np.log(rank[graph.src])
    else:
        graph.desirability_gain = np.zeros(0)
    return graph


def build_full_graph(
    trajs: Sequence[CareerTrajectory],
    alpha: float = 0.15,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> TransitionGraph:
    """build_graph plus all three compute passes."""
    graph = build_graph(trajs)
    compute_duration_cost(graph, trajs)
    compute_job_levels(graph, trajs)
    if graph.n_jobs:
        compute_pagerank(graph, alpha=alpha, tol=tol, max_iter=max_iter)
    return graph


def payoff_vector(graph: TransitionGraph, s: int, d: int) -> np.ndarray:
    """Payoff of one transition: [-duration_cost, level_gain, desirability_gain]."""
    e = graph.edge_id(s, d)
    graph._require_criteria()
    return np.array(
        [-graph.duration_cost[e], graph.level_gain[e], graph.desirability_gain[e]]
    )


def payoff_matrix(graph: TransitionGraph) -> np.ndarray:
    """(n_edges, 3) matrix of per-edge payoff vectors."""
    graph._require_criteria()
    return np.column_stack(
        (-graph.duration_cost, graph.level_gain, graph.desirability_gain)
    )


def out_degree_distribution(graph: TransitionGraph) -> dict[int, int]:
    """Histogram out-degree -> number of jobs, zero bucket included."""
    if graph.n_jobs == 0:
        return {}
    counts = np.bincount(graph.out_degree)
    return {deg: int(c) for deg, c in enumerate(counts) if c > 0}


def write_graph_csv(graph: TransitionGraph, nodes_path: str | Path, edges_path: str | Path) -> None:
    graph._require_criteria()
    if graph.level is None or graph.pagerank is None:
        raise RuntimeError("node statistics not computed yet")
    with Path(nodes_path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(NODE_CSV_HEADER)
        degrees = graph.out_degree
        for jid, job in enumerate(graph.jobs):
            writer.writerow(
                [
                    jid,
                    job.industry,
                    job.company_size,
                    job.title,
                    repr(float(graph.level[jid])),
                    repr(float(graph.pagerank[jid])),
                    int(degrees[jid]),
                ]
            )
    with Path(edges_path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(EDGE_CSV_HEADER)
        for e in range(graph.n_edges):
            writer.writerow(
                [
                    int(graph.src[e]),
                    int(graph.dst[e]),
                    int(graph.hop_count[e]),
                    repr(float(graph.duration_cost[e])),
                    repr(float(graph.level_gain[e])),
                    repr(float(graph.desirability_gain[e])),
                ]
            )


def write_histogram_csv(histogram: dict[int, int], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("out_degree", "job_count"))
        for degree in sorted(histogram):
            writer.writerow((degree, histogram[degree]))


def load_graph(nodes_path: str | Path, edges_path: str | Path) -> TransitionGraph:
    """Rebuild a graph from the CSV exports (exact float round-trip)."""
    nodes_path, edges_path = Path(nodes_path), Path(edges_path)
    for p in (nodes_path, edges_path):
        if not p.exists():
            raise MissingArtifactError(f"graph artifact not found: {p}")

    jobs: list[JobKey] = []
    levels: list[float] = []
    ranks: list[float] = []
    with nodes_path.open("r", newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = tuple(next(reader))
        if header != NODE_CSV_HEADER:
            raise ValueError(f"unexpected node CSV header: {header}")
        for row in reader:
            jid, industry, size, title, level, rank, _deg = row
            if int(jid) != len(jobs):
                raise ValueError("node ids must be dense and ordered")
            jobs.append(JobKey(industry, size, title))
            levels.append(float(level))
            ranks.append(float(rank))

    rows = []
    with edges_path.open("r", newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = tuple(next(reader))
        if header != EDGE_CSV_HEADER:
            raise ValueError(f"unexpected edge CSV header: {header}")
        for row in reader:
            rows.append(
                (int(row[0]), int(row[1]), int(row[2]), float(row[3]), float(row[4]), float(row[5]))
            )
    rows.sort(key=lambda r: (r[0], r[1]))

    graph = TransitionGraph(
        jobs=tuple(jobs),
        job_ids={job: jid for jid, job in enumerate(jobs)},
        src=np.array([r[0] for r in rows], dtype=np.int64),
        dst=np.array([r[1] for r in rows], dtype=np.int64),
        hop_count=np.array([r[2] for r in rows], dtype=np.int64),
    )
    graph.duration_cost = np.array([r[3] for r in rows])
    graph.level_gain = np.array([r[4] for r in rows])
    graph.desirability_gain = np.array([r[5] for r in rows])
    graph.level = np.array(levels)
    graph.pagerank = np.array(ranks)
    return graph
