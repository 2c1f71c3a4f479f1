"""Career trajectory records: parsing, validation, cleaning, serialization.

All dates are month-granular; differences between dates are whole months.
A trajectory is one person's chronological sequence of work stints plus a
single (last) graduation date. Cleaning removes pre-graduation stints,
stints at jobs held by too few distinct people, and trajectories that end
up with fewer than two stints.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IngestError, SchemaViolation

logger = logging.getLogger(__name__)

COMPANY_SIZE_CATEGORIES: tuple[str, ...] = (
    "[2-10]",
    "[11-50]",
    "[51-200]",
    "[201-1000]",
    "[1001-5000]",
    "[5001-10000]",
    "[10001+]",
)

# Day-of-month suffix is accepted and discarded (month granularity).
_DATE_RE = re.compile(r"^(\d{4})-(\d{1,2})(?:-\d{1,2})?$")
_WS_RE = re.compile(r"\s+")


def normalize_title(raw: str) -> str:
    """Lowercase a job title and collapse runs of whitespace."""
    return _WS_RE.sub(" ", raw.strip().lower())


@dataclass(frozen=True, order=True)
class DateStamp:
    """A calendar month with total ordering and month-valued differences."""

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")

    def index(self) -> int:
        """Months since year 0, January."""
        return self.year * 12 + (self.month - 1)

    def __sub__(self, other: "DateStamp") -> int:
        return self.index() - other.index()

    def plus_months(self, n: int) -> "DateStamp":
        idx = self.index() + n
        return DateStamp(idx // 12, idx % 12 + 1)

    @classmethod
    def parse(cls, text: str) -> "DateStamp":
        m = _DATE_RE.match(text.strip())
        if m is None:
            raise ValueError(f"bad date {text!r}, expected YYYY-MM")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


@dataclass(frozen=True, order=True)
class JobKey:
    """Identity of a job: (industry code, company-size category, title).

    The title is normalized on construction (lowercased, whitespace
    collapsed); the company size must be one of the seven ordinal
    categories in COMPANY_SIZE_CATEGORIES.
    """

    industry: str
    company_size: str
    title: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "title", normalize_title(self.title))
        if not self.industry or not self.company_size or not self.title:
            raise ValueError("JobKey fields must be non-empty")
        if self.company_size not in COMPANY_SIZE_CATEGORIES:
            raise ValueError(f"unknown company size category: {self.company_size!r}")


@dataclass(frozen=True)
class WorkStint:
    """One job held over a contiguous period (end >= start)."""

    job: JobKey
    start: DateStamp
    end: DateStamp

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise ValueError(f"stint ends before it starts: {self.end} < {self.start}")

    @property
    def duration_months(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class CareerTrajectory:
    """A person's chronological, non-overlapping work stints.

    graduation should be the person's last graduation date; it may be
    absent in raw records and is required by cleaning when
    require_graduation is set.
    """

    person_id: str
    graduation: DateStamp | None
    stints: tuple[WorkStint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stints", tuple(self.stints))
        if not self.person_id:
            raise ValueError("person_id must be non-empty")
        for a, b in zip(self.stints, self.stints[1:]):
            if b.start < a.start:
                raise ValueError(f"stints of {self.person_id} not sorted by start")
            if b.start < a.end:
                raise ValueError(f"overlapping stints for {self.person_id}")


def repair_stints(stints: Iterable[WorkStint]) -> tuple[WorkStint, ...]:
    """Sort stints by start and truncate overlaps.

    When two adjacent stints overlap, the earlier stint's end is pulled
    back to the later stint's start; the later record wins the contested
    months.
    """
    ordered = sorted(stints, key=lambda s: (s.start, s.end))
    out: list[WorkStint] = []
    for stint in ordered:
        if out and stint.start < out[-1].end:
            prev = out[-1]
            out[-1] = WorkStint(prev.job, prev.start, stint.start)
        out.append(stint)
    return tuple(out)


def _parse_date_field(record: dict, field: str, where: str) -> DateStamp:
    value = record.get(field)
    if not isinstance(value, str):
        raise SchemaViolation(f"{where}: missing or non-string field {field!r}")
    try:
        return DateStamp.parse(value)
    except ValueError as exc:
        raise SchemaViolation(f"{where}: {exc}") from None


def _parse_record(record: dict, where: str) -> CareerTrajectory:
    if not isinstance(record, dict):
        raise SchemaViolation(f"{where}: record is not an object")
    person_id = record.get("person_id")
    if not isinstance(person_id, str) or not person_id:
        raise SchemaViolation(f"{where}: missing or empty person_id")

    graduation: DateStamp | None = None
    if record.get("graduation") is not None:
        graduation = _parse_date_field(record, "graduation", where)

    raw_stints = record.get("stints")
    if not isinstance(raw_stints, list):
        raise SchemaViolation(f"{where}: missing stints list")

    stints = []
    for i, raw in enumerate(raw_stints):
        ctx = f"{where} stint {i}"
        if not isinstance(raw, dict):
            raise SchemaViolation(f"{ctx}: not an object")
        try:
            job = JobKey(
                industry=str(raw.get("industry") or ""),
                company_size=str(raw.get("company_size") or ""),
                title=str(raw.get("title") or ""),
            )
        except ValueError as exc:
            raise SchemaViolation(f"{ctx}: {exc}") from None
        start = _parse_date_field(raw, "start", ctx)
        end = _parse_date_field(raw, "end", ctx)
        if end < start:
            raise SchemaViolation(f"{ctx}: end {end} before start {start}")
        stints.append(WorkStint(job, start, end))

    return CareerTrajectory(person_id, graduation, repair_stints(stints))


def ingest(path: str | Path, policy: str = "strict") -> list[CareerTrajectory]:
    """Parse a trajectory JSONL file (one record per line).

    policy controls schema violations: "strict" raises on the first bad
    record, "skip" drops the record with a logged warning and continues.
    Unparseable JSON always raises IngestError with the line number.
    Stints are sorted per trajectory and overlapping adjacent stints are
    repaired by truncation.
    """
    if policy not in ("strict", "skip"):
        raise ValueError(f"unknown ingest policy {policy!r}")
    path = Path(path)
    trajectories: list[CareerTrajectory] = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            try:
                trajectories.append(_parse_record(record, f"line {lineno}"))
            except SchemaViolation as exc:
                if policy == "strict":
                    raise
                logger.warning("%s (record skipped)", exc)
    return trajectories


def trajectory_to_record(traj: CareerTrajectory) -> dict:
    return {
        "person_id": traj.person_id,
        "graduation": None if traj.graduation is None else str(traj.graduation),
        "stints": [
            {
                "industry": s.job.industry,
                "company_size": s.job.company_size,
                "title": s.job.title,
                "start": str(s.start),
                "end": str(s.end),
            }
            for s in traj.stints
        ],
    }


def write_jsonl(trajs: Sequence[CareerTrajectory], path: str | Path) -> None:
    """Serialize trajectories one JSON record per line; inverse of ingest."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for traj in trajs:
            handle.write(json.dumps(trajectory_to_record(traj), ensure_ascii=False))
            handle.write("\n")


def _job_support(trajs: Iterable[CareerTrajectory]) -> dict[JobKey, int]:
    holders: dict[JobKey, set[str]] = {}
    for traj in trajs:
        for stint in traj.stints:
            holders.setdefault(stint.job, set()).add(traj.person_id)
    return {job: len(people) for job, people in holders.items()}


def clean(
    trajs: Sequence[CareerTrajectory],
    min_support: int = 2,
    require_graduation: bool = True,
) -> list[CareerTrajectory]:
    """Apply the cleaning rules and return a new trajectory list.

    Rules: trajectories without a graduation date are dropped when
    require_graduation is set; stints starting before graduation are
    removed; stints at jobs held by fewer than min_support distinct
    persons are removed; trajectories left with fewer than two stints are
    dropped. The support filter and the short-trajectory drop are iterated
    to a fixed point so that the operation is idempotent: cleaning an
    already-clean corpus is a no-op. min_support defaults to 2 (desk-scale
    synthetic corpora); use 100 for full-scale data.
    """
    if min_support < 1:
        raise ValueError(f"min_support must be >= 1, got {min_support}")

    current: list[CareerTrajectory] = []
    for traj in trajs:
        if traj.graduation is None:
            if require_graduation:
                continue
            stints = traj.stints
        else:
            stints = tuple(s for s in traj.stints if s.start >= traj.graduation)
        current.append(CareerTrajectory(traj.person_id, traj.graduation, stints))

    while True:
        support = _job_support(current)
        nxt: list[CareerTrajectory] = []
        changed = False
        for traj in current:
            kept = tuple(s for s in traj.stints if support[s.job] >= min_support)
            if len(kept) < 2:
                changed = True
                continue
            if len(kept) != len(traj.stints):
                changed = True
                traj = CareerTrajectory(traj.person_id, traj.graduation, kept)
            nxt.append(traj)
        current = nxt
        if not changed:
            return current
