"""Multicriteria utility learning and path planning over job-transition graphs."""

from .errors import ConfigError, IngestError, JobPathError, MissingArtifactError, SchemaViolation
from .evaluation import (
    ALL_METHODS,
    BenchmarkReport,
    ImprovementMeans,
    benchmark,
    improvement_means,
    path_pim,
    pim,
    select_lambda_star,
)
from .graph import (
    EdgeStats,
    NodeStats,
    TransitionGraph,
    build_full_graph,
    build_graph,
    compute_duration_cost,
    compute_job_levels,
    compute_pagerank,
    out_degree_distribution,
    payoff_matrix,
    payoff_vector,
)
from .planner import PlannedPath, equally_weighted_payoff, greedy_path, utility_path
from .synthetic import GeneratorConfig, generate_synthetic, generate_world
from .trajectories import (
    COMPANY_SIZE_CATEGORIES,
    CareerTrajectory,
    DateStamp,
    JobKey,
    WorkStint,
    clean,
    ingest,
    write_jsonl,
)
from .utility import UtilityTable, learn_weight_grid, value_iteration
from .weights import WeightGrid, WeightVector, make_weight_grid, scalarize
from .wilcoxon import WilcoxonResult, wilcoxon_signed_rank

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS",
    "BenchmarkReport",
    "COMPANY_SIZE_CATEGORIES",
    "CareerTrajectory",
    "ConfigError",
    "DateStamp",
    "EdgeStats",
    "GeneratorConfig",
    "ImprovementMeans",
    "IngestError",
    "JobKey",
    "JobPathError",
    "MissingArtifactError",
    "NodeStats",
    "PlannedPath",
    "SchemaViolation",
    "TransitionGraph",
    "UtilityTable",
    "WeightGrid",
    "WeightVector",
    "WilcoxonResult",
    "WorkStint",
    "benchmark",
    "build_full_graph",
    "build_graph",
    "clean",
    "compute_duration_cost",
    "compute_job_levels",
    "compute_pagerank",
    "equally_weighted_payoff",
    "generate_synthetic",
    "generate_world",
    "greedy_path",
    "improvement_means",
    "ingest",
    "make_weight_grid",
    "learn_weight_grid",
    "out_degree_distribution",
    "path_pim",
    "payoff_matrix",
    "payoff_vector",
    "pim",
    "scalarize",
    "select_lambda_star",
    "utility_path",
    "value_iteration",
    "wilcoxon_signed_rank",
    "write_jsonl",
]
