"""Command-line pipeline driver.

Subcommands: generate, ingest, build, learn, select, plan, benchmark,
stats, plot-data, serve. Every pipeline parameter can come from a
key=value config file (--config) and be overridden by the flag of the
same name. Exit codes: 0 success, 2 usage error, 3 missing input
artifact, 4 config violation, 1 other failures.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import artifacts as art
from . import evaluation, graph as graphmod, planner, synthetic, trajectories, utility
from .config import load_generator_config, load_pipeline_config
from .errors import ConfigError, JobPathError, MissingArtifactError
from .weights import make_weight_grid, snap_to_grid, validate_weights


def _fail(exc: BaseException, code: int) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _command(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except MissingArtifactError as exc:
            _fail(exc, 3)
        except ConfigError as exc:
            _fail(exc, 4)
        except (JobPathError, ValueError, KeyError, OSError) as exc:
            _fail(exc, 1)

    return wrapper


config_option = click.option(
    "--config", "config_path", type=click.Path(), default=None, help="key=value config file"
)


@click.group()
def main() -> None:
    """Multicriteria utility learning and career-path planning pipeline."""


@main.command()
@config_option
@click.option("--out", "out_path", type=click.Path(), default=None, help="output JSONL")
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--persons", type=int, default=None)
@click.option("--mean-len", "mean_len", type=float, default=None)
@click.option("--date-min", "date_min", default=None, help="YYYY-MM")
@click.option("--date-max", "date_max", default=None, help="YYYY-MM")
@_command
def generate(config_path, out_path, seed, jobs, persons, mean_len, date_min, date_max):
    """Write a seeded synthetic trajectory corpus as JSONL."""
    gen_config, cfg_seed = load_generator_config(
        config_path,
        overrides={
            "jobs": jobs,
            "persons": persons,
            "mean_len": mean_len,
            "date_min": date_min,
            "date_max": date_max,
            "seed": seed,
        },
    )
    pipeline = load_pipeline_config(config_path)
    out = Path(out_path or pipeline.corpus_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    trajs = synthetic.generate_synthetic(gen_config, cfg_seed)
    trajectories.write_jsonl(trajs, out)
    click.echo(f"wrote {len(trajs)} trajectories to {out}")


@main.command()
@config_option
@click.option("--in", "in_path", type=click.Path(), required=True, help="raw JSONL")
@click.option("--out", "out_path", type=click.Path(), default=None, help="cleaned JSONL")
@click.option("--policy", type=click.Choice(["strict", "skip"]), default="strict")
@click.option("--min-support", "min_support", type=int, default=None)
@click.option("--require-graduation/--no-require-graduation", default=True)
@_command
def ingest(config_path, in_path, out_path, policy, min_support, require_graduation):
    """Parse, validate, and clean a trajectory JSONL file."""
    cfg = load_pipeline_config(config_path, overrides={"min_support": min_support})
    src = art.require_file(in_path, "trajectory file")
    raw = trajectories.ingest(src, policy=policy)
    cleaned = trajectories.clean(
        raw, min_support=cfg.min_support, require_graduation=require_graduation
    )
    out = Path(out_path or cfg.corpus_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    trajectories.write_jsonl(cleaned, out)
    click.echo(f"kept {len(cleaned)} of {len(raw)} trajectories -> {out}")


@main.command()
@config_option
@click.option("--corpus", "corpus_path", type=click.Path(), default=None)
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--min-support", "min_support", type=int, default=None)
@_command
def build(config_path, corpus_path, graph_dir, alpha, min_support):
    """Build the transition graph with all edge/node statistics; export CSVs."""
    cfg = load_pipeline_config(
        config_path, overrides={"alpha": alpha, "min_support": min_support}
    )
    corpus = art.require_file(corpus_path or cfg.corpus_path, "corpus")
    trajs = trajectories.clean(
        trajectories.ingest(corpus), min_support=cfg.min_support, require_graduation=True
    )
    if not trajs:
        raise JobPathError("corpus is empty after cleaning")
    graph = graphmod.build_full_graph(trajs, alpha=cfg.alpha)
    out_dir = Path(graph_dir or cfg.graph_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    nodes, edges = art.graph_paths(out_dir)
    graphmod.write_graph_csv(graph, nodes, edges)
    click.echo(
        f"graph: {graph.n_jobs} jobs, {graph.n_edges} edges "
        f"(pagerank {'converged' if graph.pagerank_converged else 'NOT converged'} "
        f"in {graph.pagerank_iterations} iterations) -> {out_dir}"
    )


@main.command()
@config_option
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--tables-dir", "tables_dir", type=click.Path(), default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--t-max", "t_max", type=int, default=None)
@click.option("--h", type=int, default=None)
@click.option("--mode", type=click.Choice(["sync", "async"]), default=None)
@_command
def learn(config_path, graph_dir, tables_dir, gamma, t_max, h, mode):
    """Run the decomposition learner over the weight grid; export tables."""
    cfg = load_pipeline_config(
        config_path, overrides={"gamma": gamma, "t_max": t_max, "h": h, "mode": mode}
    )
    graph = art.load_graph_dir(graph_dir or cfg.graph_dir)
    grid = make_weight_grid(3, cfg.h)
    tables = utility.learn_weight_grid(graph, grid, gamma=cfg.gamma, t_max=cfg.t_max, mode=cfg.mode)
    equal_payoff = planner.equally_weighted_payoff(graph)
    equal_table = utility.value_iteration(
        graph, equal_payoff, gamma=cfg.gamma, t_max=cfg.t_max, mode=cfg.mode
    )
    out_dir = Path(tables_dir or cfg.tables_dir)
    art.save_tables(
        out_dir, grid, tables, gamma=cfg.gamma, t_max=cfg.t_max, mode=cfg.mode,
        equal_table=equal_table,
    )
    click.echo(
        f"learned {len(tables)} utility tables "
        f"({grid.raw_count} raw grid entries, {grid.feasible_count} feasible) -> {out_dir}"
    )


@main.command()
@config_option
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--tables-dir", "tables_dir", type=click.Path(), default=None)
@click.option("--corpus", "corpus_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--max-len", "max_len", type=int, default=None)
@_command
def select(config_path, graph_dir, tables_dir, corpus_path, out_path, max_len):
    """Score every learned weight vector by PIM and record the argmax."""
    cfg = load_pipeline_config(config_path, overrides={"max_len": max_len})
    graph = art.load_graph_dir(graph_dir or cfg.graph_dir)
    _, tables, _ = art.load_tables(graph, tables_dir or cfg.tables_dir)
    corpus = art.require_file(corpus_path or cfg.corpus_path, "corpus")
    trajs = trajectories.clean(
        trajectories.ingest(corpus), min_support=cfg.min_support, require_graduation=True
    )
    actual = evaluation.actual_paths(graph, trajs)
    pims = evaluation.grid_pims(graph, tables, actual, max_len=cfg.max_len)
    star = evaluation.select_lambda_star(pims)
    out = Path(out_path or Path(cfg.report_dir) / art.LAMBDA_STAR_JSON)
    out.parent.mkdir(parents=True, exist_ok=True)
    art.save_lambda_star(out, star, pims, max_len=cfg.max_len)
    click.echo(f"lambda* = {star} (PIM {pims[star]:.4f}) -> {out}")


def _parse_lambda(text: str) -> tuple[float, ...]:
    try:
        weights = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise JobPathError(f"bad lambda {text!r}; expected comma-separated numbers") from None
    validate_weights(weights, tol=1e-6)
    return weights


@main.command()
@config_option
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--tables-dir", "tables_dir", type=click.Path(), default=None)
@click.option("--select", "select_path", type=click.Path(), default=None,
              help="lambda-star record (for --lambda auto)")
@click.option("--origin", type=int, required=True, help="origin job id")
@click.option("--lambda", "lambda_text", default="auto", help='"auto" or e.g. "0.2,0.3,0.5"')
@click.option("--method", type=click.Choice(evaluation.ALL_METHODS), default="multicriteria_utility")
@click.option("--max-len", "max_len", type=int, default=None)
@click.option("--snap/--no-snap", default=False, help="snap lambda to nearest grid point")
@click.option("--out", "out_path", type=click.Path(), default=None)
@_command
def plan(config_path, graph_dir, tables_dir, select_path, origin, lambda_text, method,
         max_len, snap, out_path):
    """Plan one optimized path from an origin job; emit path JSON."""
    cfg = load_pipeline_config(config_path, overrides={"max_len": max_len})
    graph = art.load_graph_dir(graph_dir or cfg.graph_dir)
    path = plan_query(
        graph=graph,
        tables_dir=tables_dir or cfg.tables_dir,
        select_path=select_path or Path(cfg.report_dir) / art.LAMBDA_STAR_JSON,
        origin=origin,
        lambda_text=lambda_text,
        method=method,
        max_len=cfg.max_len,
        snap=snap,
    )
    payload = planner.path_to_json(graph, path)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_text(text + "\n", encoding="utf-8")
        click.echo(f"path ({path.length} hops) -> {out_path}")
    else:
        click.echo(text)


def plan_query(graph, tables_dir, select_path, origin, lambda_text, method, max_len, snap):
    """Shared planning entry used by the CLI and the HTTP API."""
    origin = planner.resolve_job(graph, origin)
    if method in evaluation.GREEDY_METHODS:
        criterion = method.removeprefix("greedy_")
        return planner.greedy_path(graph, origin, criterion, max_len=max_len)

    _, tables, equal_table = art.load_tables(graph, tables_dir)
    if method == "equal_weighted_utility":
        if equal_table is None:
            raise MissingArtifactError("equal-weighted table missing; rerun learn")
        return planner.utility_path(graph, equal_table, origin, max_len=max_len, method=method)
    if method in evaluation.SINGLE_CRITERION_METHODS:
        index = evaluation.one_hot_index(method)
        weights = tuple(1.0 if i == index else 0.0 for i in range(3))
    elif lambda_text == "auto":
        record = art.load_lambda_star(select_path)
        weights = tuple(float(w) for w in record["lambda_star"])
    else:
        weights = _parse_lambda(lambda_text)
    if weights not in tables:
        if not snap:
            raise JobPathError(
                f"lambda {weights} is not a learned grid point (use --snap or relearn)"
            )
        weights = snap_to_grid(weights, tuple(tables))
    return planner.utility_path(graph, tables[weights], origin, max_len=max_len, method=method)


@main.command()
@config_option
@click.option("--corpus", "corpus_path", type=click.Path(), default=None)
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--tables-dir", "tables_dir", type=click.Path(), default=None,
              help="reuse learned tables instead of relearning")
@click.option("--report-dir", "report_dir", type=click.Path(), default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--t-max", "t_max", type=int, default=None)
@click.option("--h", type=int, default=None)
@click.option("--max-len", "max_len", type=int, default=None)
@click.option("--mode", type=click.Choice(["sync", "async"]), default=None)
@click.option("--methods", default=None, help="comma-separated subset of methods")
@_command
def benchmark(config_path, corpus_path, graph_dir, tables_dir, report_dir, gamma, t_max,
              h, max_len, mode, methods):
    """Benchmark all methods against actual paths; write report artifacts."""
    cfg = load_pipeline_config(
        config_path,
        overrides={"gamma": gamma, "t_max": t_max, "h": h, "max_len": max_len, "mode": mode},
    )
    graph = art.load_graph_dir(graph_dir or cfg.graph_dir)
    corpus = art.require_file(corpus_path or cfg.corpus_path, "corpus")
    trajs = trajectories.clean(
        trajectories.ingest(corpus), min_support=cfg.min_support, require_graduation=True
    )
    tables = None
    if tables_dir is not None:
        _, tables, _ = art.load_tables(graph, tables_dir)
    method_list = evaluation.ALL_METHODS
    if methods is not None:
        method_list = tuple(m.strip() for m in methods.split(",") if m.strip())
    report = evaluation.benchmark(
        graph,
        trajs,
        methods=method_list,
        gamma=cfg.gamma,
        t_max=cfg.t_max,
        h=cfg.h,
        max_len=cfg.max_len,
        mode=cfg.mode,
        tables=tables,
    )
    out_dir = Path(report_dir or cfg.report_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / art.REPORT_JSON).write_text(
        json.dumps(evaluation.report_to_json(report), indent=2, sort_keys=True),
        encoding="utf-8",
    )
    text = evaluation.render_report_text(report)
    (out_dir / art.REPORT_TXT).write_text(text + "\n", encoding="utf-8")
    evaluation.write_per_path_csv(report, out_dir / art.PER_PATH_CSV)
    click.echo(text)
    click.echo(f"report -> {out_dir}")


@main.command()
@config_option
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@_command
def stats(config_path, graph_dir, out_path):
    """Export the out-degree histogram of the transition graph."""
    cfg = load_pipeline_config(config_path)
    graph = art.load_graph_dir(graph_dir or cfg.graph_dir)
    hist = graphmod.out_degree_distribution(graph)
    out = Path(out_path or Path(cfg.report_dir) / "outdegree.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    graphmod.write_histogram_csv(hist, out)
    zero = hist.get(0, 0)
    click.echo(f"{graph.n_jobs} jobs, {zero} with out-degree 0 -> {out}")


@main.command(name="plot-data")
@config_option
@click.option("--report-dir", "report_dir", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@_command
def plot_data(config_path, report_dir, out_path):
    """Export per-path PIM deltas (multicriteria_utility - baseline) as long-format CSV."""
    import csv

    cfg = load_pipeline_config(config_path)
    report_dir = Path(report_dir or cfg.report_dir)
    src = art.require_file(report_dir / art.PER_PATH_CSV, "per-path PIM table")
    with src.open("r", newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        rows = list(reader)
    methods = header[1:]
    if "multicriteria_utility" not in methods:
        raise JobPathError("per-path table has no multicriteria_utility column")
    multicriteria_utility_col = methods.index("multicriteria_utility")
    out = Path(out_path or report_dir / "pim_deltas.csv")
    baselines = [m for m in methods if m != "multicriteria_utility"]
    sums = {m: [] for m in baselines}
    with out.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("method", "person_id", "pim_delta"))
        for row in rows:
            person = row[0]
            values = [float(v) for v in row[1:]]
            for i, method in enumerate(methods):
                if method == "multicriteria_utility":
                    continue
                delta = values[multicriteria_utility_col] - values[i]
                sums[method].append(delta)
                writer.writerow((method, person, repr(delta)))
    for method in baselines:
        data = sorted(sums[method])
        n = len(data)
        median = data[n // 2] if n % 2 else (data[n // 2 - 1] + data[n // 2]) / 2
        click.echo(f"{method}: mean {sum(data) / n:.4f}, median {median:.4f}")
    click.echo(f"deltas -> {out}")


@main.command()
@config_option
@click.option("--graph-dir", "graph_dir", type=click.Path(), default=None)
@click.option("--tables-dir", "tables_dir", type=click.Path(), default=None)
@click.option("--select", "select_path", type=click.Path(), default=None)
@click.option("--report-dir", "report_dir", type=click.Path(), default=None)
@click.option("--frontend", "frontend_dir", type=click.Path(), default=None,
              help="static bundle to serve at /")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@_command
def serve(config_path, graph_dir, tables_dir, select_path, report_dir, frontend_dir, host, port):
    """Serve the HTTP query API over the learned artifacts (blocks)."""
    import uvicorn

    from .server import build_state, create_app

    cfg = load_pipeline_config(config_path)
    state = build_state(
        graph_dir=graph_dir or cfg.graph_dir,
        tables_dir=tables_dir or cfg.tables_dir,
        select_path=select_path or Path(cfg.report_dir) / art.LAMBDA_STAR_JSON,
        report_path=Path(report_dir or cfg.report_dir) / art.REPORT_JSON,
        max_len=cfg.max_len,
    )
    app = create_app(state, frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
