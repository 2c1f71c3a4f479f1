"""Pipeline configuration: validated dataclass, key=value config files.

The config file uses flat key=value sections ([pipeline] and [generator]);
every pipeline key can be overridden by a CLI flag of the same name.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError
from .synthetic import GeneratorConfig
from .trajectories import DateStamp

PIPELINE_SECTION = "pipeline"
GENERATOR_SECTION = "generator"


@dataclass(frozen=True)
class PipelineConfig:
    gamma: float = 0.7
    t_max: int = 50
    h: int = 10
    alpha: float = 0.15
    max_len: int = 10
    min_support: int = 2
    seed: int = 42
    mode: str = "sync"
    corpus_path: str = "artifacts/corpus.jsonl"
    graph_dir: str = "artifacts/graph"
    tables_dir: str = "artifacts/tables"
    report_dir: str = "artifacts/report"

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma <= 1.0:
            raise ConfigError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.t_max < 1:
            raise ConfigError(f"t_max must be >= 1, got {self.t_max}")
        if self.h < 1:
            raise ConfigError(f"h must be >= 1, got {self.h}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.max_len < 1:
            raise ConfigError(f"max_len must be >= 1, got {self.max_len}")
        if self.min_support < 1:
            raise ConfigError(f"min_support must be >= 1, got {self.min_support}")
        if self.mode not in ("sync", "async"):
            raise ConfigError(f"mode must be sync or async, got {self.mode!r}")


_INT_KEYS = {"t_max", "h", "max_len", "min_support", "seed"}
_FLOAT_KEYS = {"gamma", "alpha"}


def _coerce(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None
    return raw


def load_pipeline_config(
    path: str | Path | None = None, overrides: dict | None = None
) -> PipelineConfig:
    """Read [pipeline] from a config file, then apply non-None overrides."""
    values: dict = {}
    if path is not None:
        parser = _read_config(path)
        if parser.has_section(PIPELINE_SECTION):
            known = {f.name for f in fields(PipelineConfig)}
            for key, raw in parser.items(PIPELINE_SECTION):
                if key not in known:
                    raise ConfigError(f"unknown pipeline config key: {key}")
                values[key] = _coerce(key, raw)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    try:
        return PipelineConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_generator_config(
    path: str | Path | None = None, overrides: dict | None = None
) -> tuple[GeneratorConfig, int]:
    """Read [generator] keys (jobs, persons, mean_len, seed, date_min, date_max).

    Returns the generator config plus the seed (kept separate because the
    generator is called as generate(config, seed)).
    """
    values: dict = {}
    seed = 42
    if path is not None:
        parser = _read_config(path)
        if parser.has_section(GENERATOR_SECTION):
            for key, raw in parser.items(GENERATOR_SECTION):
                if key == "seed":
                    seed = int(raw)
                elif key in ("jobs", "persons", "industries"):
                    values[key] = int(raw)
                elif key == "mean_len":
                    values[key] = float(raw)
                elif key in ("date_min", "date_max"):
                    values[key] = DateStamp.parse(raw)
                elif key in ("level_min", "level_max"):
                    values[key] = float(raw)
                else:
                    raise ConfigError(f"unknown generator config key: {key}")
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "seed":
            seed = int(value)
        elif key in ("date_min", "date_max") and isinstance(value, str):
            values[key] = DateStamp.parse(value)
        else:
            values[key] = value
    return GeneratorConfig(**values), seed


def _read_config(path: str | Path) -> configparser.ConfigParser:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from None
    return parser
