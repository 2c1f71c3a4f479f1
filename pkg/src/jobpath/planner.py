"""Path extraction: utility-following plans plus greedy baselines.

Every planner walks the graph from an origin job, always taking the
out-edge with the best score (ties broken by smallest destination job id),
and stops at a sink, at max_len hops, or when the chosen next job was
already visited (cycle guard). Scores are utility values for the learned
planners and a single edge statistic for the greedy ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import TransitionGraph
from .trajectories import JobKey
from .utility import UtilityTable

GREEDY_CRITERIA = ("most_common", "shortest_duration", "level_gain", "desirability_gain")

DEFAULT_MAX_LEN = 10
DEFAULT_EQUAL_WEIGHTS = (1.0, 1.0, 500.0)


@dataclass(frozen=True)
class PlannedPath:
    """A simple (no repeated node) walk with per-criterion payoff totals.

    criterion_totals are sums of the payoff vector components
    [-duration_cost, level_gain, desirability_gain] over the hops.
    """

    origin: int
    hops: tuple[tuple[int, int], ...]
    criterion_totals: tuple[float, float, float]
    method: str

    @property
    def length(self) -> int:
        return len(self.hops)

    @property
    def destination(self) -> int:
        return self.hops[-1][1] if self.hops else self.origin


def resolve_job(graph: TransitionGraph, origin: int | JobKey) -> int:
    if isinstance(origin, JobKey):
        if origin not in graph.job_ids:
            raise KeyError(f"job not in graph: {origin}")
        return graph.job_ids[origin]
    origin = int(origin)
    if not 0 <= origin < graph.n_jobs:
        raise KeyError(f"job id not in graph: {origin}")
    return origin


def successor_policy(graph: TransitionGraph, edge_scores: np.ndarray) -> np.ndarray:
    """Per-node id of the best-scoring out-edge, or -1 for sinks.

    np.argmax keeps the first maximum and edges are sorted by destination,
    so ties resolve to the smallest destination job id.
    """
    policy = np.full(graph.n_jobs, -1, dtype=np.int64)
    for node in range(graph.n_jobs):
        lo, hi = graph.out_slice(node)
        if hi > lo:
            policy[node] = lo + int(np.argmax(edge_scores[lo:hi]))
    return policy


def totals_for_hops(
    graph: TransitionGraph, hops: tuple[tuple[int, int], ...]
) -> tuple[float, float, float]:
    """Sum the payoff vector over a hop sequence using the graph's edge stats."""
    graph._require_criteria()
    d_total = 0.0
    l_total = 0.0
    r_total = 0.0
    for s, d in hops:
        e = graph.edge_id(s, d)
        d_total += float(graph.duration_cost[e])
        l_total += float(graph.level_gain[e])
        r_total += float(graph.desirability_gain[e])
    return (-d_total, l_total, r_total)


def follow_policy(
    graph: TransitionGraph,
    policy: np.ndarray,
    origin: int | JobKey,
    max_len: int = DEFAULT_MAX_LEN,
    method: str = "policy",
) -> PlannedPath:
    """Walk a precomputed successor policy with the standard stop rules."""
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    current = resolve_job(graph, origin)
    origin_id = current
    visited = {current}
    hops: list[tuple[int, int]] = []
    while len(hops) < max_len:
        e = int(policy[current])
        if e < 0:
            break
        nxt = int(graph.dst[e])
        if nxt in visited:
            break
        hops.append((current, nxt))
        visited.add(nxt)
        current = nxt
    hop_tuple = tuple(hops)
    return PlannedPath(
        origin=origin_id,
        hops=hop_tuple,
        criterion_totals=totals_for_hops(graph, hop_tuple),
        method=method,
    )


def utility_path(
    graph: TransitionGraph,
    table: UtilityTable,
    origin: int | JobKey,
    max_len: int = DEFAULT_MAX_LEN,
    method: str = "utility",
) -> PlannedPath:
    """Follow the highest-utility successor from the origin."""
    policy = successor_policy(graph, table.values)
    return follow_policy(graph, policy, origin, max_len=max_len, method=method)


def greedy_scores(graph: TransitionGraph, criterion: str) -> np.ndarray:
    """Edge scores for a greedy criterion; costs are negated so argmax applies."""
    graph._require_criteria()
    if criterion == "most_common":
        return graph.hop_count.astype(float)
    if criterion == "shortest_duration":
        return -graph.duration_cost
    if criterion == "level_gain":
        return graph.level_gain
    if criterion == "desirability_gain":
        return graph.desirability_gain
    raise ValueError(f"unknown greedy criterion {criterion!r}")


def greedy_path(
    graph: TransitionGraph,
    origin: int | JobKey,
    criterion: str,
    max_len: int = DEFAULT_MAX_LEN,
) -> PlannedPath:
    """Myopically follow the best single-criterion edge at every step."""
    policy = successor_policy(graph, greedy_scores(graph, criterion))
    return follow_policy(graph, policy, origin, max_len=max_len, method=f"greedy_{criterion}")


def equally_weighted_payoff(
    graph: TransitionGraph,
    w1: float = DEFAULT_EQUAL_WEIGHTS[0],
    w2: float = DEFAULT_EQUAL_WEIGHTS[1],
    w3: float = DEFAULT_EQUAL_WEIGHTS[2],
) -> Callable[[int, int], float]:
    """Per-edge payoff w1*L - w2*D + w3*R for the equally-weighted baseline.

    The defaults weight the two month-valued criteria equally and scale the
    log-valued desirability gain up to a comparable magnitude.
    """
    graph._require_criteria()

    def payoff(s: int, d: int) -> float:
        e = graph.edge_id(s, d)
        return (
            w1 * float(graph.level_gain[e])
            - w2 * float(graph.duration_cost[e])
            + w3 * float(graph.desirability_gain[e])
        )

    return payoff


def realized_discounted_payoff(
    graph: TransitionGraph, path: PlannedPath, edge_payoffs: np.ndarray, gamma: float
) -> float:
    """Discounted sum of a per-edge payoff array along the path's hops."""
    value = 0.0
    for s, d in reversed(path.hops):
        value = float(edge_payoffs[graph.edge_id(s, d)]) + gamma * value
    return value


def path_to_json(graph: TransitionGraph, path: PlannedPath) -> dict:
    """Path JSON with raw per-hop and total criterion values (D positive)."""

    def job_obj(jid: int) -> dict:
        job = graph.jobs[jid]
        return {
            "id": jid,
            "industry": job.industry,
            "company_size": job.company_size,
            "title": job.title,
        }

    hops = []
    for s, d in path.hops:
        e = graph.edge_id(s, d)
        hops.append(
            {
                "from": job_obj(s),
                "to": job_obj(d),
                "D": float(graph.duration_cost[e]),
                "L": float(graph.level_gain[e]),
                "R": float(graph.desirability_gain[e]),
            }
        )
    neg_d, l_total, r_total = path.criterion_totals
    return {
        "schema_version": 1,
        "origin": job_obj(path.origin),
        "method": path.method,
        "hops": hops,
        "totals": {"D": -neg_d, "L": l_total, "R": r_total},
    }
