#!/usr/bin/env python3
"""End-to-end experiment: synthetic corpus -> graph -> learner -> benchmark.

Writes all pipeline artifacts under --out and prints the benchmark table.
Equivalent to the CLI sequence generate/ingest/build/learn/select/benchmark
but driven in-process, which is convenient for profiling and tweaking.
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from jobpath import artifacts as art
from jobpath.evaluation import benchmark, render_report_text, report_to_json, write_per_path_csv
from jobpath.graph import build_full_graph, out_degree_distribution, write_graph_csv, write_histogram_csv
from jobpath.planner import equally_weighted_payoff
from jobpath.synthetic import GeneratorConfig, generate_synthetic
from jobpath.trajectories import clean, write_jsonl
from jobpath.utility import learn_weight_grid, value_iteration
from jobpath.weights import make_weight_grid


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("artifacts"))
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--jobs", type=int, default=200)
    parser.add_argument("--persons", type=int, default=5000)
    parser.add_argument("--gamma", type=float, default=0.7)
    parser.add_argument("--t-max", type=int, default=50)
    parser.add_argument("--h", type=int, default=10)
    parser.add_argument("--max-len", type=int, default=10)
    parser.add_argument("--min-support", type=int, default=2)
    args = parser.parse_args()

    out = args.out
    (out / "graph").mkdir(parents=True, exist_ok=True)
    (out / "report").mkdir(parents=True, exist_ok=True)

    started = time.perf_counter()
    config = GeneratorConfig(jobs=args.jobs, persons=args.persons)
    trajs = clean(generate_synthetic(config, args.seed), min_support=args.min_support)
    write_jsonl(trajs, out / "corpus.jsonl")
    print(f"[{time.perf_counter() - started:6.1f}s] corpus: {len(trajs)} trajectories")

    graph = build_full_graph(trajs)
    write_graph_csv(graph, *art.graph_paths(out / "graph"))
    write_histogram_csv(out_degree_distribution(graph), out / "report" / "outdegree.csv")
    print(
        f"[{time.perf_counter() - started:6.1f}s] graph: {graph.n_jobs} jobs, "
        f"{graph.n_edges} edges, pagerank in {graph.pagerank_iterations} iterations"
    )

    grid = make_weight_grid(3, args.h)
    tables = learn_weight_grid(graph, grid, gamma=args.gamma, t_max=args.t_max)
    equal_table = value_iteration(
        graph, equally_weighted_payoff(graph), gamma=args.gamma, t_max=args.t_max
    )
    art.save_tables(
        out / "tables", grid, tables, gamma=args.gamma, t_max=args.t_max,
        mode="sync", equal_table=equal_table,
    )
    print(f"[{time.perf_counter() - started:6.1f}s] learned {len(tables)} tables")

    report = benchmark(
        graph, trajs, gamma=args.gamma, t_max=args.t_max, h=args.h,
        max_len=args.max_len, tables=tables,
    )
    art.save_lambda_star(
        out / "report" / art.LAMBDA_STAR_JSON,
        report.lambda_star, dict(report.lambda_pims), max_len=args.max_len,
    )
    (out / "report" / art.REPORT_JSON).write_text(
        json.dumps(report_to_json(report), indent=2, sort_keys=True), encoding="utf-8"
    )
    text = render_report_text(report)
    (out / "report" / art.REPORT_TXT).write_text(text + "\n", encoding="utf-8")
    write_per_path_csv(report, out / "report" / art.PER_PATH_CSV)
    print(f"[{time.perf_counter() - started:6.1f}s] benchmark done\n")
    print(text)


if __name__ == "__main__":
    main()
