"""Improvement metrics, weight selection, and the benchmark harness.

The central metric is PIM, the product of per-criterion improvement means
with a sign guard: if any mean improvement is nonpositive the product of
absolute values is negated, so a regression on one criterion cannot be
laundered away by multiplying two negatives. Improvements always compare
an optimized path with the actual path from the same origin, both scored
with the graph's aggregated edge statistics so they live on one scale.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .graph import TransitionGraph, merge_consecutive_stints, payoff_matrix
from .planner import (
    DEFAULT_EQUAL_WEIGHTS,
    DEFAULT_MAX_LEN,
    PlannedPath,
    equally_weighted_payoff,
    follow_policy,
    greedy_scores,
    successor_policy,
    totals_for_hops,
)
from .trajectories import CareerTrajectory
from .utility import UtilityTable, learn_weight_grid, scalarized_payoffs, value_iteration
from .weights import WeightVector, make_weight_grid
from .wilcoxon import wilcoxon_signed_rank

GREEDY_METHODS = (
    "greedy_most_common",
    "greedy_shortest_duration",
    "greedy_level_gain",
    "greedy_desirability_gain",
)
SINGLE_CRITERION_METHODS = (
    "utility_duration",
    "utility_level",
    "utility_desirability",
)
ALL_METHODS = (
    *GREEDY_METHODS,
    *SINGLE_CRITERION_METHODS,
    "equal_weighted_utility",
    "multicriteria_utility",
)

# One-hot weight vectors realizing the single-criterion utility baselines.
_ONE_HOT = {
    "utility_duration": 0,
    "utility_level": 1,
    "utility_desirability": 2,
}

SIGNIFICANCE_LEVEL = 0.01


def one_hot_index(method: str) -> int:
    """Criterion index realized by a single-criterion utility method."""
    return _ONE_HOT[method]


@dataclass(frozen=True)
class ImprovementMeans:
    """Per-criterion mean improvement of optimized over actual paths."""

    mu: tuple[float, ...]
    k: int


def improvement_means(
    optimized: Mapping[str, PlannedPath], actual: Mapping[str, PlannedPath]
) -> ImprovementMeans:
    """mu_i = mean over persons of (optimized criterion-i total - actual total)."""
    if set(optimized) != set(actual):
        raise ValueError("optimized and actual cover different person sets")
    if not actual:
        raise ValueError("need at least one person")
    keys = sorted(actual)
    m = len(next(iter(actual.values())).criterion_totals)
    sums = [0.0] * m
    for person in keys:
        opt, act = optimized[person], actual[person]
        if opt.origin != act.origin:
            raise ValueError(f"origin mismatch for {person}")
        for i in range(m):
            sums[i] += opt.criterion_totals[i] - act.criterion_totals[i]
    k = len(keys)
    return ImprovementMeans(mu=tuple(s / k for s in sums), k=k)


def pim(mu: Sequence[float]) -> float:
    """Product of improvement means, forced nonpositive if any mean is <= 0.

    sgn(mu_i) is +1 only for strictly positive means, so a zero mean also
    caps PIM at a nonpositive value (of magnitude zero).
    """
    if not all(math.isfinite(m) for m in mu):
        raise ValueError(f"improvement means must be finite, got {tuple(mu)}")
    sign = 1.0
    magnitude = 1.0
    for m in mu:
        if m <= 0:
            sign = -1.0
        magnitude *= abs(m)
    return sign * magnitude


def path_pim(optimized: PlannedPath, actual: PlannedPath) -> float:
    """PIM of a single path pair (no averaging across persons)."""
    if optimized.origin != actual.origin:
        raise ValueError("paths start from different origins")
    diffs = tuple(
        o - a for o, a in zip(optimized.criterion_totals, actual.criterion_totals)
    )
    return pim(diffs)


def select_lambda_star(pims: Mapping[WeightVector, float]) -> WeightVector:
    """argmax of PIM over the grid; ties go to the lexicographically smallest."""
    if not pims:
        raise ValueError("no weight vectors to select from")
    best: WeightVector | None = None
    best_pim = -math.inf
    for weights, value in pims.items():
        if value > best_pim or (value == best_pim and (best is None or weights < best)):
            best = weights
            best_pim = value
    assert best is not None
    return best


def actual_paths(
    graph: TransitionGraph, trajs: Sequence[CareerTrajectory]
) -> dict[str, PlannedPath]:
    """Observed hop sequences scored with the graph's aggregated edge stats."""
    paths: dict[str, PlannedPath] = {}
    for traj in trajs:
        merged = merge_consecutive_stints(traj)
        ids = [graph.job_ids[s.job] for s in merged]
        hops = tuple(zip(ids, ids[1:]))
        paths[traj.person_id] = PlannedPath(
            origin=ids[0],
            hops=hops,
            criterion_totals=totals_for_hops(graph, hops),
            method="actual",
        )
    return paths


def _paths_from_policy(
    graph: TransitionGraph,
    policy: np.ndarray,
    origins: Mapping[str, int],
    max_len: int,
    method: str,
) -> dict[str, PlannedPath]:
    """One planned path per person, memoized by origin (policies are origin-pure)."""
    by_origin: dict[int, PlannedPath] = {}
    out: dict[str, PlannedPath] = {}
    for person, origin in origins.items():
        path = by_origin.get(origin)
        if path is None:
            path = follow_policy(graph, policy, origin, max_len=max_len, method=method)
            by_origin[origin] = path
        out[person] = path
    return out


def grid_pims(
    graph: TransitionGraph,
    tables: Mapping[WeightVector, UtilityTable],
    actual: Mapping[str, PlannedPath],
    max_len: int = DEFAULT_MAX_LEN,
) -> dict[WeightVector, float]:
    """PIM of every learned weight vector's planner against the actual paths."""
    origins = {person: path.origin for person, path in actual.items()}
    out: dict[WeightVector, float] = {}
    for weights, table in tables.items():
        policy = successor_policy(graph, table.values)
        planned = _paths_from_policy(graph, policy, origins, max_len, method="multicriteria_utility")
        out[weights] = pim(improvement_means(planned, actual).mu)
    return out


@dataclass(frozen=True)
class MethodResult:
    method: str
    pim: float
    mu: tuple[float, float, float]
    p_values: tuple[float | None, float | None, float | None]
    markers: tuple[str, str, str]
    mean_path_length: float


@dataclass(frozen=True)
class BenchmarkReport:
    methods: tuple[MethodResult, ...]
    lambda_star: WeightVector
    lambda_pims: tuple[tuple[WeightVector, float], ...]
    delta_summary: dict[str, dict[str, float]]
    person_ids: tuple[str, ...]
    per_path_pim: dict[str, np.ndarray]
    params: dict

    def row(self, method: str) -> MethodResult:
        for result in self.methods:
            if result.method == method:
                return result
        raise KeyError(f"no such method row: {method}")


def benchmark(
    graph: TransitionGraph,
    trajs: Sequence[CareerTrajectory],
    methods: Sequence[str] = ALL_METHODS,
    gamma: float = 0.7,
    t_max: int = 50,
    h: int = 10,
    max_len: int = DEFAULT_MAX_LEN,
    mode: str = "sync",
    tables: Mapping[WeightVector, UtilityTable] | None = None,
    equal_weights: tuple[float, float, float] = DEFAULT_EQUAL_WEIGHTS,
) -> BenchmarkReport:
    """Run every requested method against the actual paths of the corpus.

    The multicriteria method (learn the grid, score every weight vector by
    PIM, plan with the argmax vector) is always computed because baseline
    p-values and per-path PIM deltas are defined relative to it; its row is
    emitted only when requested. Pass precomputed tables to skip
    relearning.
    """
    unknown = [m for m in methods if m not in ALL_METHODS]
    if unknown:
        raise ValueError(f"unknown method labels: {unknown}")
    if len(set(methods)) != len(methods):
        raise ValueError("duplicate method labels")

    actual = actual_paths(graph, trajs)
    if not actual:
        raise ValueError("no trajectories to evaluate")
    persons = tuple(sorted(actual))
    origins = {person: actual[person].origin for person in persons}

    if tables is None:
        grid = make_weight_grid(3, h)
        tables = learn_weight_grid(graph, grid, gamma=gamma, t_max=t_max, mode=mode)

    lambda_pims = grid_pims(graph, tables, actual, max_len=max_len)
    lambda_star = select_lambda_star(lambda_pims)

    def plan_all(policy: np.ndarray, method: str) -> dict[str, PlannedPath]:
        return _paths_from_policy(graph, policy, origins, max_len, method)

    planned: dict[str, dict[str, PlannedPath]] = {}
    planned["multicriteria_utility"] = plan_all(
        successor_policy(graph, tables[lambda_star].values), "multicriteria_utility"
    )
    payoffs = payoff_matrix(graph)
    for method in methods:
        if method == "multicriteria_utility":
            continue
        if method in GREEDY_METHODS:
            criterion = method.removeprefix("greedy_")
            policy = successor_policy(graph, greedy_scores(graph, criterion))
        elif method in SINGLE_CRITERION_METHODS:
            one_hot = tuple(
                1.0 if i == _ONE_HOT[method] else 0.0 for i in range(3)
            )
            table = tables.get(one_hot)
            if table is None:
                r = scalarized_payoffs(payoffs, one_hot)
                table = value_iteration(graph, r, gamma=gamma, t_max=t_max, mode=mode)
            policy = successor_policy(graph, table.values)
        else:  # equal_weighted_utility
            r = equally_weighted_payoff(graph, *equal_weights)
            table = value_iteration(graph, r, gamma=gamma, t_max=t_max, mode=mode)
            policy = successor_policy(graph, table.values)
        planned[method] = plan_all(policy, method)

    # Per-person criterion improvements and per-path PIM, per method.
    improvements: dict[str, np.ndarray] = {}
    per_path_pim: dict[str, np.ndarray] = {}
    for method, paths in planned.items():
        diffs = np.array(
            [
                [
                    paths[p].criterion_totals[i] - actual[p].criterion_totals[i]
                    for i in range(3)
                ]
                for p in persons
            ]
        )
        improvements[method] = diffs
        per_path_pim[method] = np.array(
            [path_pim(paths[p], actual[p]) for p in persons]
        )

    multicriteria_utility_diffs = improvements["multicriteria_utility"]
    results = []
    for method in methods:
        diffs = improvements[method]
        mu = tuple(float(m) for m in diffs.mean(axis=0))
        if method == "multicriteria_utility":
            p_values: tuple[float | None, ...] = (None, None, None)
            markers: tuple[str, ...] = ("", "", "")
        else:
            ps = []
            marks = []
            for i in range(3):
                p = wilcoxon_signed_rank(diffs[:, i], multicriteria_utility_diffs[:, i]).p_value
                ps.append(float(p))
                gap = float(diffs[:, i].mean() - multicriteria_utility_diffs[:, i].mean())
                if p < SIGNIFICANCE_LEVEL and gap > 0:
                    marks.append("+")
                elif p < SIGNIFICANCE_LEVEL and gap < 0:
                    marks.append("-")
                else:
                    marks.append("")
            p_values = tuple(ps)
            markers = tuple(marks)
        lengths = [planned[method][p].length for p in persons]
        results.append(
            MethodResult(
                method=method,
                pim=pim(mu),
                mu=mu,  # type: ignore[arg-type]
                p_values=p_values,  # type: ignore[arg-type]
                markers=markers,  # type: ignore[arg-type]
                mean_path_length=float(np.mean(lengths)),
            )
        )

    delta_summary: dict[str, dict[str, float]] = {}
    multicriteria_utility_per_path = per_path_pim["multicriteria_utility"]
    for method in methods:
        if method == "multicriteria_utility":
            continue
        deltas = multicriteria_utility_per_path - per_path_pim[method]
        delta_summary[method] = {
            "mean": float(deltas.mean()),
            "median": float(np.median(deltas)),
        }

    grid_order = tuple(
        (weights, lambda_pims[weights]) for weights in tables
    )
    return BenchmarkReport(
        methods=tuple(results),
        lambda_star=lambda_star,
        lambda_pims=grid_order,
        delta_summary=delta_summary,
        person_ids=persons,
        per_path_pim={m: per_path_pim[m] for m in planned},
        params={
            "gamma": gamma,
            "t_max": t_max,
            "h": h,
            "max_len": max_len,
            "mode": mode,
            "n_paths": len(persons),
            "n_jobs": graph.n_jobs,
            "n_edges": graph.n_edges,
        },
    )


def report_to_json(report: BenchmarkReport) -> dict:
    """JSON-ready dict (no raw per-path arrays; those go to CSV)."""
    return {
        "schema_version": 1,
        "params": report.params,
        "lambda_star": list(report.lambda_star),
        "weights": [
            {
                "weights": list(weights),
                "pim": value,
                "is_star": weights == report.lambda_star,
            }
            for weights, value in report.lambda_pims
        ],
        "methods": [
            {
                "method": r.method,
                "pim": r.pim,
                "mean_improvement": {
                    "duration": r.mu[0],
                    "level": r.mu[1],
                    "desirability": r.mu[2],
                },
                "p_values": {
                    "duration": r.p_values[0],
                    "level": r.p_values[1],
                    "desirability": r.p_values[2],
                },
                "markers": {
                    "duration": r.markers[0],
                    "level": r.markers[1],
                    "desirability": r.markers[2],
                },
                "mean_path_length": r.mean_path_length,
            }
            for r in report.methods
        ],
        "pim_delta_summary": report.delta_summary,
    }


def _fmt_p(p: float | None, marker: str) -> str:
    if p is None:
        return "-"
    text = f"{p:.2e}"
    return f"{text} ({marker})" if marker else text


def render_report_text(report: BenchmarkReport) -> str:
    """Fixed-width table: Method | PIM | mean dD | p | mean dL | p | mean dR | p | marks."""
    header = (
        f"{'Method':<26} | {'PIM':>12} | {'mean dD':>9} | {'p':>13} | "
        f"{'mean dL':>9} | {'p':>13} | {'mean dR':>9} | {'p':>13} | marks"
    )
    lines = [header, "-" * len(header)]
    for r in report.methods:
        marks = "/".join(m if m else "." for m in r.markers)
        lines.append(
            f"{r.method:<26} | {r.pim:>12.2f} | {r.mu[0]:>9.2f} | "
            f"{_fmt_p(r.p_values[0], r.markers[0]):>13} | {r.mu[1]:>9.2f} | "
            f"{_fmt_p(r.p_values[1], r.markers[1]):>13} | {r.mu[2]:>9.2f} | "
            f"{_fmt_p(r.p_values[2], r.markers[2]):>13} | {marks}"
        )
    if report.delta_summary:
        lines.append("")
        lines.append(f"{'Per-path PIM delta (multicriteria_utility - baseline)':<40} | {'mean':>12} | {'median':>12}")
        for method, stats in report.delta_summary.items():
            lines.append(
                f"{method:<40} | {stats['mean']:>12.2f} | {stats['median']:>12.2f}"
            )
    lines.append("")
    lines.append(f"lambda* = {tuple(round(w, 6) for w in report.lambda_star)}")
    return "\n".join(lines)


def write_per_path_csv(report: BenchmarkReport, path: str | Path) -> None:
    """Per-person PIM of every computed method (input for the plot-data export)."""
    methods = sorted(report.per_path_pim)
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["person_id", *methods])
        for i, person in enumerate(report.person_ids):
            writer.writerow(
                [person, *(repr(float(report.per_path_pim[m][i])) for m in methods)]
            )
