#!/usr/bin/env python3
"""Export per-iteration convergence traces of the decomposition learner.

Writes a CSV with one row per iteration: the minimum, maximum, and
selected-weights infinity-norm delta over all feasible weight vectors.
Plotting delta against iteration reproduces the learner's convergence
figure: with gamma=0.7 the band collapses within a handful of iterations.
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

from jobpath.evaluation import actual_paths, grid_pims, select_lambda_star
from jobpath.graph import build_full_graph
from jobpath.synthetic import GeneratorConfig, generate_synthetic
from jobpath.trajectories import clean
from jobpath.utility import learn_weight_grid
from jobpath.weights import make_weight_grid


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("artifacts/convergence.csv"))
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--jobs", type=int, default=200)
    parser.add_argument("--persons", type=int, default=5000)
    parser.add_argument("--gamma", type=float, default=0.7)
    parser.add_argument("--t-max", type=int, default=50)
    parser.add_argument("--h", type=int, default=10)
    args = parser.parse_args()

    config = GeneratorConfig(jobs=args.jobs, persons=args.persons)
    trajs = clean(generate_synthetic(config, args.seed), min_support=2)
    graph = build_full_graph(trajs)
    tables = learn_weight_grid(
        graph, make_weight_grid(3, args.h), gamma=args.gamma, t_max=args.t_max
    )
    pims = grid_pims(graph, tables, actual_paths(graph, trajs))
    star = select_lambda_star(pims)
    print(f"lambda* = {star} (PIM {pims[star]:.4f})")

    traces = {weights: table.trace for weights, table in tables.items()}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("iteration", "delta_min", "delta_max", "delta_star"))
        for k in range(args.t_max):
            deltas = [trace[k] for trace in traces.values() if k < len(trace)]
            if not deltas:
                break
            star_delta = traces[star][k] if k < len(traces[star]) else ""
            writer.writerow((k + 1, repr(min(deltas)), repr(max(deltas)), repr(star_delta)))
    print(f"traces -> {args.out}")


if __name__ == "__main__":
    main()
