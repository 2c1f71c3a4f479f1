"""HTTP query service over immutable learned artifacts.

All state is loaded once at startup and never mutated, so concurrent
requests need no synchronization and restarts are idempotent. Every
response carries a schema_version field.

Endpoints:
    GET  /api/jobs?q=             substring job search
    GET  /api/weights             learned grid with per-weight PIM and the star flag
    POST /api/plan                {origin_job_id, lambda: [..]|"auto", method, max_len, snap}
    GET  /api/benchmark           benchmark report JSON
    GET  /api/graph/neighbors/{id}  out-edges of one job with stats
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from . import artifacts as art
from . import evaluation, planner
from .graph import TransitionGraph
from .utility import UtilityTable
from .weights import WeightVector, snap_to_grid

SCHEMA_VERSION = 1
SEARCH_LIMIT = 50
LAMBDA_SUM_TOL = 1e-6


@dataclass(frozen=True)
class ServerState:
    graph: TransitionGraph
    tables: dict[WeightVector, UtilityTable]
    equal_table: UtilityTable | None
    lambda_star: WeightVector
    lambda_pims: dict[WeightVector, float]
    report: dict | None
    max_len: int


def build_state(
    graph_dir: str | Path,
    tables_dir: str | Path,
    select_path: str | Path,
    report_path: str | Path | None = None,
    max_len: int = 10,
) -> ServerState:
    graph = art.load_graph_dir(graph_dir)
    _, tables, equal_table = art.load_tables(graph, tables_dir)
    record = art.load_lambda_star(select_path)
    lambda_star = tuple(float(w) for w in record["lambda_star"])
    lambda_pims = {
        tuple(float(w) for w in item["weights"]): float(item["pim"])
        for item in record["pims"]
    }
    report = None
    if report_path is not None and Path(report_path).exists():
        report = json.loads(Path(report_path).read_text(encoding="utf-8"))
    return ServerState(
        graph=graph,
        tables=tables,
        equal_table=equal_table,
        lambda_star=lambda_star,
        lambda_pims=lambda_pims,
        report=report,
        max_len=max_len,
    )


def _job_payload(state: ServerState, jid: int) -> dict:
    job = state.graph.jobs[jid]
    return {
        "id": jid,
        "industry": job.industry,
        "company_size": job.company_size,
        "title": job.title,
        "level": float(state.graph.level[jid]),
        "pagerank": float(state.graph.pagerank[jid]),
        "out_degree": int(state.graph.out_degree[jid]),
    }


def _parse_plan_lambda(state: ServerState, raw: Any, snap: bool) -> WeightVector:
    if raw == "auto":
        return state.lambda_star
    if not isinstance(raw, list) or not all(isinstance(w, (int, float)) for w in raw):
        raise HTTPException(400, 'lambda must be "auto" or a list of numbers')
    weights = tuple(float(w) for w in raw)
    m = len(state.lambda_star)
    if len(weights) != m:
        raise HTTPException(400, f"lambda must have {m} components")
    if any(w < 0 for w in weights):
        raise HTTPException(400, "lambda components must be nonnegative")
    if abs(sum(weights) - 1.0) > LAMBDA_SUM_TOL:
        raise HTTPException(400, f"lambda must sum to 1 (got {sum(weights)})")
    if weights in state.tables:
        return weights
    if snap:
        return snap_to_grid(weights, tuple(state.tables))
    raise HTTPException(
        409,
        "lambda is not a learned grid point and on-the-fly learning is disabled; "
        "set snap=true or relearn with a finer grid",
    )


def create_app(state: ServerState, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="jobpath query service")

    @app.exception_handler(HTTPException)
    async def http_error(_, exc: HTTPException):
        return JSONResponse(
            status_code=exc.status_code,
            content={"schema_version": SCHEMA_VERSION, "error": exc.detail},
        )

    @app.get("/api/jobs")
    def jobs(q: str = "") -> dict:
        query = q.strip().lower()
        matches = []
        if query:
            for jid, job in enumerate(state.graph.jobs):
                if query in job.title or query in job.industry.lower():
                    matches.append(_job_payload(state, jid))
                    if len(matches) >= SEARCH_LIMIT:
                        break
        return {"schema_version": SCHEMA_VERSION, "jobs": matches}

    @app.get("/api/weights")
    def weights() -> dict:
        entries = [
            {
                "weights": list(w),
                "pim": state.lambda_pims.get(w),
                "is_star": w == state.lambda_star,
            }
            for w in state.tables
        ]
        return {
            "schema_version": SCHEMA_VERSION,
            "lambda_star": list(state.lambda_star),
            "entries": entries,
        }

    @app.post("/api/plan")
    def plan(body: dict) -> dict:
        if not isinstance(body, dict):
            raise HTTPException(400, "body must be a JSON object")
        origin = body.get("origin_job_id")
        if not isinstance(origin, int) or not 0 <= origin < state.graph.n_jobs:
            raise HTTPException(404, f"unknown job id: {origin}")
        method = body.get("method", "multicriteria_utility")
        if method not in evaluation.ALL_METHODS:
            raise HTTPException(400, f"unknown method {method!r}")
        max_len = body.get("max_len", state.max_len)
        if not isinstance(max_len, int) or max_len < 1:
            raise HTTPException(400, "max_len must be a positive integer")
        snap = bool(body.get("snap", False))

        if method in evaluation.GREEDY_METHODS:
            criterion = method.removeprefix("greedy_")
            path = planner.greedy_path(state.graph, origin, criterion, max_len=max_len)
        elif method == "equal_weighted_utility":
            if state.equal_table is None:
                raise HTTPException(409, "equal-weighted table not learned")
            path = planner.utility_path(
                state.graph, state.equal_table, origin, max_len=max_len, method=method
            )
        else:
            if method in evaluation.SINGLE_CRITERION_METHODS:
                index = evaluation.one_hot_index(method)
                weights_vec: WeightVector = tuple(
                    1.0 if i == index else 0.0 for i in range(len(state.lambda_star))
                )
            else:
                weights_vec = _parse_plan_lambda(state, body.get("lambda", "auto"), snap)
            table = state.tables.get(weights_vec)
            if table is None:
                raise HTTPException(409, f"no learned table for lambda {list(weights_vec)}")
            path = planner.utility_path(
                state.graph, table, origin, max_len=max_len, method=method
            )
        payload = planner.path_to_json(state.graph, path)
        payload["schema_version"] = SCHEMA_VERSION
        if method == "multicriteria_utility":
            payload["lambda"] = list(weights_vec)
        return payload

    @app.get("/api/benchmark")
    def benchmark_report() -> dict:
        if state.report is None:
            raise HTTPException(404, "no benchmark report available; run benchmark first")
        return state.report

    @app.get("/api/graph/neighbors/{job_id}")
    def neighbors(job_id: int) -> dict:
        if not 0 <= job_id < state.graph.n_jobs:
            raise HTTPException(404, f"unknown job id: {job_id}")
        graph = state.graph
        lo, hi = graph.out_slice(job_id)
        edges = []
        for e in range(lo, hi):
            edges.append(
                {
                    "to": _job_payload(state, int(graph.dst[e])),
                    "hop_count": int(graph.hop_count[e]),
                    "duration_cost": float(graph.duration_cost[e]),
                    "level_gain": float(graph.level_gain[e]),
                    "desirability_gain": float(graph.desirability_gain[e]),
                }
            )
        return {
            "schema_version": SCHEMA_VERSION,
            "job": _job_payload(state, job_id),
            "edges": edges,
        }

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="frontend")

    return app
