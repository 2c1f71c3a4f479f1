"""Seeded synthetic career-trajectory corpora for desk-scale experiments.

Each synthetic job carries a latent level (months of experience the job
typically demands) and a latent attractiveness (heavy-tailed popularity).
People start in low-level jobs and mostly climb: the transition model
prefers destinations slightly above the current level, weighted by
attractiveness, with an exploration component that hops to popular jobs
regardless of level. Careers end at the configured stint count or as soon
as a top-tier job is reached, so top jobs show up as zero-out-degree nodes
in the transition graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .trajectories import (
    COMPANY_SIZE_CATEGORIES,
    CareerTrajectory,
    DateStamp,
    JobKey,
    WorkStint,
)

# Transition-model constants (months / probabilities).
_CLIMB_MONTHS = 24.0
_CLIMB_BANDWIDTH = 36.0
_EXPLORE_PROB = 0.25
_START_POOL_FRACTION = 0.4
_TERMINAL_FRACTION = 0.15
_GRADUATION_WINDOW = 61
_MAX_JOIN_GAP = 7
_MAX_HOP_GAP = 4
_DURATION_SD = 4.0


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the synthetic corpus; deterministic given (config, seed)."""

    jobs: int = 200
    persons: int = 5000
    mean_len: float = 4.0
    date_min: DateStamp = DateStamp(1990, 1)
    date_max: DateStamp = DateStamp(2020, 12)
    level_min: float = 0.0
    level_max: float = 240.0
    industries: int = 12

    def __post_init__(self) -> None:
        if self.jobs < 2:
            raise ConfigError(f"need at least 2 jobs, got {self.jobs}")
        if self.persons < 1:
            raise ConfigError(f"need at least 1 person, got {self.persons}")
        if self.mean_len < 2:
            raise ConfigError(f"mean trajectory length must be >= 2, got {self.mean_len}")
        if self.date_max <= self.date_min:
            raise ConfigError("empty date range")
        if self.level_max <= self.level_min:
            raise ConfigError("empty latent level range")
        if self.industries < 1:
            raise ConfigError("need at least one industry")


@dataclass(frozen=True)
class SyntheticJob:
    key: JobKey
    latent_level: float
    attractiveness: float
    is_terminal: bool


def _make_jobs(config: GeneratorConfig, rng: np.random.Generator) -> list[SyntheticJob]:
    n = config.jobs
    levels = rng.uniform(config.level_min, config.level_max, n)
    attractiveness = rng.pareto(1.5, n) + 0.05
    industries = rng.integers(0, config.industries, n)
    sizes = rng.integers(0, len(COMPANY_SIZE_CATEGORIES), n)

    rank = np.empty(n, dtype=int)
    rank[np.argsort(levels, kind="stable")] = np.arange(n)
    terminal_cutoff = math.ceil((1.0 - _TERMINAL_FRACTION) * n)

    jobs = []
    for i in range(n):
        key = JobKey(
            industry=f"ind{industries[i]:02d}",
            company_size=COMPANY_SIZE_CATEGORIES[sizes[i]],
            title=f"role {i:04d}",
        )
        jobs.append(
            SyntheticJob(
                key=key,
                latent_level=float(levels[i]),
                attractiveness=float(attractiveness[i]),
                is_terminal=rank[i] >= terminal_cutoff,
            )
        )
    return jobs


def _transition_weights(jobs: list[SyntheticJob]) -> tuple[np.ndarray, np.ndarray]:
    """Per-source climb distribution and the global popularity distribution."""
    levels = np.array([j.latent_level for j in jobs])
    attract = np.array([j.attractiveness for j in jobs])
    gap = levels[None, :] - levels[:, None] - _CLIMB_MONTHS
    climb = attract[None, :] * np.exp(-((gap / _CLIMB_BANDWIDTH) ** 2))
    np.fill_diagonal(climb, 0.0)
    climb /= climb.sum(axis=1, keepdims=True)
    popularity = attract / attract.sum()
    return climb, popularity


def generate_world(
    config: GeneratorConfig, seed: int
) -> tuple[list[SyntheticJob], list[CareerTrajectory]]:
    """Generate jobs plus trajectories; exposes latent job attributes."""
    rng = np.random.default_rng(seed)
    jobs = _make_jobs(config, rng)
    climb, popularity = _transition_weights(jobs)
    n_jobs = config.jobs

    start_pool = np.array(
        [not j.is_terminal for j in jobs], dtype=bool
    )
    levels = np.array([j.latent_level for j in jobs])
    level_order = np.argsort(levels, kind="stable")
    pool_size = max(1, math.ceil(_START_POOL_FRACTION * n_jobs))
    start_ids = level_order[:pool_size]
    start_ids = start_ids[start_pool[start_ids]]
    if start_ids.size == 0:
        start_ids = level_order[:1]
    start_w = popularity[start_ids]
    start_w = start_w / start_w.sum()

    # Job-specific pace: mean months spent before hopping away.
    duration_means = rng.uniform(8.0, 40.0, n_jobs)

    end_index = config.date_max.index()
    trajectories: list[CareerTrajectory] = []
    for p in range(config.persons):
        graduation = config.date_min.plus_months(int(rng.integers(0, _GRADUATION_WINDOW)))
        n_stints = 2 + int(rng.poisson(config.mean_len - 2.0))
        job = int(rng.choice(start_ids, p=start_w))
        t = graduation.plus_months(int(rng.integers(0, _MAX_JOIN_GAP)))

        stints: list[WorkStint] = []
        for k in range(n_stints):
            if t.index() >= end_index:
                break
            months = max(1, round(float(rng.normal(duration_means[job], _DURATION_SD))))
            end = t.plus_months(months)
            if end.index() > end_index:
                end = config.date_max
            stints.append(WorkStint(jobs[job].key, t, end))
            if end.index() >= end_index or jobs[job].is_terminal or k == n_stints - 1:
                break
            if rng.random() < _EXPLORE_PROB:
                weights = popularity.copy()
                weights[job] = 0.0
                weights /= weights.sum()
            else:
                weights = climb[job]
            job = int(rng.choice(n_jobs, p=weights))
            t = end.plus_months(int(rng.integers(0, _MAX_HOP_GAP)))

        trajectories.append(
            CareerTrajectory(f"p{p:06d}", graduation, tuple(stints))
        )
    return jobs, trajectories


def generate_synthetic(config: GeneratorConfig, seed: int) -> list[CareerTrajectory]:
    """Deterministic synthetic corpus for a fixed (config, seed)."""
    _, trajectories = generate_world(config, seed)
    return trajectories
