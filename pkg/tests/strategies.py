"""Hypothesis strategies for trajectory data."""

from __future__ import annotations

from hypothesis import strategies as st

from jobpath.trajectories import (
    COMPANY_SIZE_CATEGORIES,
    CareerTrajectory,
    DateStamp,
    JobKey,
    WorkStint,
)

job_keys = st.builds(
    JobKey,
    industry=st.sampled_from([f"ind{i:02d}" for i in range(4)]),
    company_size=st.sampled_from(COMPANY_SIZE_CATEGORIES),
    title=st.sampled_from([f"role {i}" for i in range(6)]),
)

date_stamps = st.builds(
    DateStamp,
    year=st.integers(min_value=1990, max_value=2020),
    month=st.integers(min_value=1, max_value=12),
)


@st.composite
def career_trajectories(draw, min_stints: int = 0, max_stints: int = 6):
    """Valid trajectories: sorted, non-overlapping stints, optional graduation."""
    person = draw(st.text(alphabet="abcdefgh", min_size=1, max_size=6))
    graduation = draw(st.one_of(st.none(), date_stamps))
    n = draw(st.integers(min_value=min_stints, max_value=max_stints))
    cursor = draw(date_stamps)
    stints = []
    for _ in range(n):
        start = cursor.plus_months(draw(st.integers(min_value=0, max_value=6)))
        end = start.plus_months(draw(st.integers(min_value=0, max_value=48)))
        stints.append(WorkStint(draw(job_keys), start, end))
        cursor = end
    return CareerTrajectory(person, graduation, tuple(stints))


@st.composite
def corpora(draw, max_people: int = 8):
    """Small trajectory lists with unique person ids."""
    n = draw(st.integers(min_value=0, max_value=max_people))
    trajs = [
        draw(career_trajectories(min_stints=0, max_stints=5)) for _ in range(n)
    ]
    return [
        CareerTrajectory(f"p{i}", t.graduation, t.stints) for i, t in enumerate(trajs)
    ]
