"""Discounted utility learning on the transition graph.

The backup is U(s,d) <- r(s,d) + gamma * max_{d'} U(d,d'), with the max
over an empty successor set defined as 0 (sinks have value 0). Sync mode
(Jacobi) reads only the previous iterate and is fully deterministic; async
mode (Gauss-Seidel) updates in place in canonical edge order. The
multicriteria learner runs one independent value iteration per feasible
weight vector of the grid.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .errors import MissingArtifactError
from .graph import TransitionGraph, payoff_matrix
from .weights import WeightGrid, WeightVector

PayoffFn = Callable[[int, int], float]


@dataclass
class UtilityTable:
    """Converged (or T_max-truncated) utilities for one payoff function.

    values is aligned with the graph's canonical edge order; trace holds
    the infinity-norm change of every iteration that ran.
    """

    graph: TransitionGraph = field(repr=False)
    gamma: float
    values: np.ndarray
    trace: tuple[float, ...]
    weights: WeightVector | None = None
    mode: str = "sync"

    def value(self, s: int, d: int) -> float:
        return float(self.values[self.graph.edge_id(s, d)])

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {
            (int(s), int(d)): float(u)
            for s, d, u in zip(self.graph.src, self.graph.dst, self.values)
        }


def _edge_payoffs(graph: TransitionGraph, payoff: PayoffFn | np.ndarray) -> np.ndarray:
    if callable(payoff):
        r = np.array([payoff(s, d) for s, d in graph.iter_edges()], dtype=float)
    else:
        r = np.asarray(payoff, dtype=float)
        if r.shape != (graph.n_edges,):
            raise ValueError(f"payoff array has shape {r.shape}, expected ({graph.n_edges},)")
    if r.size and not np.all(np.isfinite(r)):
        raise ValueError("payoff must be finite on every edge")
    return r


def _state_values(graph: TransitionGraph, utilities: np.ndarray) -> np.ndarray:
    """V(n) = max over out-edges of n, or 0 for sinks."""
    values = np.zeros(graph.n_jobs)
    offsets = graph._out_offsets
    nonsink = np.flatnonzero(np.diff(offsets) > 0)
    if nonsink.size:
        values[nonsink] = np.maximum.reduceat(utilities, offsets[nonsink])
    return values


def value_iteration(
    graph: TransitionGraph,
    payoff: PayoffFn | np.ndarray,
    gamma: float,
    t_max: int,
    mode: str = "sync",
    stop_tol: float | None = None,
    init: np.ndarray | None = None,
    weights: WeightVector | None = None,
) -> UtilityTable:
    """Iterate the discounted backup from U=0 (or init) over all edges.

    Runs exactly t_max sweeps unless stop_tol is given and the
    infinity-norm change falls below it earlier.
    """
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    if mode not in ("sync", "async"):
        raise ValueError(f"unknown update mode {mode!r}")

    r = _edge_payoffs(graph, payoff)
    if init is None:
        utilities = np.zeros(graph.n_edges)
    else:
        utilities = np.array(init, dtype=float)
        if utilities.shape != r.shape or (utilities.size and not np.all(np.isfinite(utilities))):
            raise ValueError("init must be a finite array matching the edge count")

    dst = graph.dst
    offsets = graph._out_offsets
    trace: list[float] = []
    for _ in range(t_max):
        if mode == "sync":
            state = _state_values(graph, utilities)
            updated = r + gamma * state[dst]
            delta = float(np.max(np.abs(updated - utilities))) if r.size else 0.0
            utilities = updated
        else:
            delta = 0.0
            for e in range(graph.n_edges):
                lo, hi = offsets[dst[e]], offsets[dst[e] + 1]
                successor = float(utilities[lo:hi].max()) if hi > lo else 0.0
                new = r[e] + gamma * successor
                delta = max(delta, abs(new - utilities[e]))
                utilities[e] = new
        trace.append(delta)
        if stop_tol is not None and delta < stop_tol:
            break

    return UtilityTable(
        graph=graph,
        gamma=gamma,
        values=utilities,
        trace=tuple(trace),
        weights=weights,
        mode=mode,
    )


def scalarized_payoffs(payoffs: np.ndarray, weights: WeightVector) -> np.ndarray:
    """Per-edge weighted-sum payoff r = sum_i w_i * f_i.

    A one-hot weight vector returns the corresponding criterion column
    verbatim, so single-criterion runs and one-hot grid runs are
    bit-identical.
    """
    if payoffs.shape[1] != len(weights):
        raise ValueError(
            f"dimension mismatch: {payoffs.shape[1]} criteria, {len(weights)} weights"
        )
    active = [i for i, w in enumerate(weights) if w != 0.0]
    if len(active) == 1 and weights[active[0]] == 1.0:
        return payoffs[:, active[0]].copy()
    r = np.zeros(payoffs.shape[0])
    for i in active:
        r += weights[i] * payoffs[:, i]
    return r


def learn_weight_grid(
    graph: TransitionGraph,
    grid: WeightGrid,
    gamma: float,
    t_max: int,
    mode: str = "sync",
    stop_tol: float | None = None,
) -> dict[WeightVector, UtilityTable]:
    """One value iteration per feasible grid vector, in grid order.

    Subproblems are independent; the result does not depend on execution
    order, so they could run concurrently over the shared read-only graph.
    """
    feasible = grid.feasible_entries
    if not feasible:
        raise ValueError("weight grid has no feasible entries")
    payoffs = payoff_matrix(graph)
    tables: dict[WeightVector, UtilityTable] = {}
    for entry in feasible:
        r = scalarized_payoffs(payoffs, entry.weights)
        tables[entry.weights] = value_iteration(
            graph, r, gamma=gamma, t_max=t_max, mode=mode, stop_tol=stop_tol,
            weights=entry.weights,
        )
    return tables


def write_table_csv(table: UtilityTable, path: str | Path) -> None:
    graph = table.graph
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("s_id", "d_id", "utility"))
        for e in range(graph.n_edges):
            writer.writerow((int(graph.src[e]), int(graph.dst[e]), repr(float(table.values[e]))))


def load_table_csv(
    graph: TransitionGraph,
    path: str | Path,
    gamma: float,
    weights: WeightVector | None = None,
    mode: str = "sync",
) -> UtilityTable:
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"utility table not found: {path}")
    values = np.zeros(graph.n_edges)
    seen = 0
    with path.open("r", newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = tuple(next(reader))
        if header != ("s_id", "d_id", "utility"):
            raise ValueError(f"unexpected utility CSV header: {header}")
        for row in reader:
            values[graph.edge_id(int(row[0]), int(row[1]))] = float(row[2])
            seen += 1
    if seen != graph.n_edges:
        raise ValueError(f"table covers {seen} edges, graph has {graph.n_edges}")
    return UtilityTable(graph=graph, gamma=gamma, values=values, trace=(), weights=weights, mode=mode)


def write_grid_manifest(
    path: str | Path,
    grid: WeightGrid,
    tables: Mapping[WeightVector, UtilityTable],
    gamma: float,
    t_max: int,
    mode: str,
    table_files: Mapping[WeightVector, str],
    extra_tables: Mapping[str, str] | None = None,
) -> None:
    """JSON manifest of the learned grid: weights, feasibility, trace summaries."""
    entries = []
    for entry in grid.entries:
        item: dict = {
            "numerators": list(entry.numerators),
            "weights": list(entry.weights),
            "feasible": entry.feasible,
        }
        table = tables.get(entry.weights)
        if table is not None:
            item["file"] = table_files[entry.weights]
            item["iterations"] = len(table.trace)
            item["first_delta"] = table.trace[0] if table.trace else 0.0
            item["final_delta"] = table.trace[-1] if table.trace else 0.0
        entries.append(item)
    manifest = {
        "schema_version": 1,
        "m": grid.m,
        "h": grid.h,
        "gamma": gamma,
        "t_max": t_max,
        "mode": mode,
        "raw_count": grid.raw_count,
        "feasible_count": grid.feasible_count,
        "entries": entries,
        "extra_tables": dict(extra_tables or {}),
    }
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True), encoding="utf-8")


def load_grid_manifest(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"grid manifest not found: {path}")
    return json.loads(path.read_text(encoding="utf-8"))
