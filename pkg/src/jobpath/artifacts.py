"""On-disk artifact layout shared by the CLI and the HTTP service.

Everything is a plain file (JSONL/CSV/JSON) so pipeline stages can be
diffed and rerun independently:

    corpus.jsonl            trajectory records
    <graph_dir>/nodes.csv   job_id,industry,company_size,title,level,pagerank,out_degree
    <graph_dir>/edges.csv   s_id,d_id,hop_count,duration_cost,level_gain,desirability_gain
    <tables_dir>/manifest.json, lambda_###.csv, equal_weighted.csv
    lambda_star.json        selected weights plus per-weight PIM values
    <report_dir>/report.json, report.txt, per_path_pim.csv
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .errors import MissingArtifactError
from .graph import TransitionGraph, load_graph
from .utility import (
    UtilityTable,
    load_grid_manifest,
    load_table_csv,
    write_grid_manifest,
    write_table_csv,
)
from .weights import WeightGrid, WeightVector

NODES_CSV = "nodes.csv"
EDGES_CSV = "edges.csv"
MANIFEST_JSON = "manifest.json"
EQUAL_TABLE_CSV = "equal_weighted.csv"
LAMBDA_STAR_JSON = "lambda_star.json"
REPORT_JSON = "report.json"
REPORT_TXT = "report.txt"
PER_PATH_CSV = "per_path_pim.csv"


def graph_paths(graph_dir: str | Path) -> tuple[Path, Path]:
    graph_dir = Path(graph_dir)
    return graph_dir / NODES_CSV, graph_dir / EDGES_CSV


def load_graph_dir(graph_dir: str | Path) -> TransitionGraph:
    nodes, edges = graph_paths(graph_dir)
    return load_graph(nodes, edges)


def save_tables(
    tables_dir: str | Path,
    grid: WeightGrid,
    tables: Mapping[WeightVector, UtilityTable],
    gamma: float,
    t_max: int,
    mode: str,
    equal_table: UtilityTable | None = None,
) -> None:
    tables_dir = Path(tables_dir)
    tables_dir.mkdir(parents=True, exist_ok=True)
    table_files: dict[WeightVector, str] = {}
    for i, weights in enumerate(tables):
        name = f"lambda_{i:03d}.csv"
        write_table_csv(tables[weights], tables_dir / name)
        table_files[weights] = name
    extra = {}
    if equal_table is not None:
        write_table_csv(equal_table, tables_dir / EQUAL_TABLE_CSV)
        extra["equal_weighted"] = EQUAL_TABLE_CSV
    write_grid_manifest(
        tables_dir / MANIFEST_JSON,
        grid,
        tables,
        gamma=gamma,
        t_max=t_max,
        mode=mode,
        table_files=table_files,
        extra_tables=extra,
    )


def load_tables(
    graph: TransitionGraph, tables_dir: str | Path
) -> tuple[dict, dict[WeightVector, UtilityTable], UtilityTable | None]:
    """Load the manifest plus every feasible table (and the equal-weighted one)."""
    tables_dir = Path(tables_dir)
    manifest = load_grid_manifest(tables_dir / MANIFEST_JSON)
    gamma = manifest["gamma"]
    mode = manifest.get("mode", "sync")
    tables: dict[WeightVector, UtilityTable] = {}
    for entry in manifest["entries"]:
        if not entry["feasible"]:
            continue
        weights = tuple(float(w) for w in entry["weights"])
        tables[weights] = load_table_csv(
            graph, tables_dir / entry["file"], gamma=gamma, weights=weights, mode=mode
        )
    equal_table = None
    equal_file = manifest.get("extra_tables", {}).get("equal_weighted")
    if equal_file is not None:
        equal_table = load_table_csv(graph, tables_dir / equal_file, gamma=gamma, mode=mode)
    return manifest, tables, equal_table


def save_lambda_star(
    path: str | Path,
    lambda_star: WeightVector,
    pims: Mapping[WeightVector, float],
    max_len: int,
) -> None:
    record = {
        "schema_version": 1,
        "lambda_star": list(lambda_star),
        "max_len": max_len,
        "pims": [
            {"weights": list(weights), "pim": value} for weights, value in pims.items()
        ],
    }
    Path(path).write_text(json.dumps(record, indent=2, sort_keys=True), encoding="utf-8")


def load_lambda_star(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"lambda-star record not found: {path}")
    return json.loads(path.read_text(encoding="utf-8"))


def require_file(path: str | Path, what: str) -> Path:
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"{what} not found: {path}")
    return path
