"""Weight-vector grids over the probability simplex and scalarization.

The grid enumerates every combination where each of the first M-1 weights
takes a value in {0/H, ..., H/H} and the last weight is 1 minus the rest.
That raw enumeration has (H+1)^(M-1) entries; the ones with a negative
last weight are kept but flagged infeasible, so both counts stay visible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

WeightVector = tuple[float, ...]


@dataclass(frozen=True)
class GridEntry:
    numerators: tuple[int, ...]
    weights: WeightVector
    feasible: bool


@dataclass(frozen=True)
class WeightGrid:
    h: int
    m: int
    entries: tuple[GridEntry, ...]

    @property
    def raw_count(self) -> int:
        return len(self.entries)

    @property
    def feasible_entries(self) -> tuple[GridEntry, ...]:
        return tuple(e for e in self.entries if e.feasible)

    @property
    def feasible_count(self) -> int:
        return len(self.feasible_entries)

    def feasible_weights(self) -> tuple[WeightVector, ...]:
        return tuple(e.weights for e in self.entries if e.feasible)


def make_weight_grid(m: int, h: int) -> WeightGrid:
    """Enumerate the (H+1)^(M-1) candidate weight vectors in lexicographic order."""
    if m < 1:
        raise ValueError(f"criteria count must be >= 1, got {m}")
    if h < 1:
        raise ValueError(f"grid resolution H must be >= 1, got {h}")
    entries = []
    for head in itertools.product(range(h + 1), repeat=m - 1):
        last = h - sum(head)
        numerators = (*head, last)
        weights = tuple(n / h for n in numerators)
        entries.append(GridEntry(numerators, weights, feasible=last >= 0))
    return WeightGrid(h=h, m=m, entries=tuple(entries))


def validate_weights(weights: WeightVector, tol: float = 1e-9) -> None:
    """Check simplex membership: nonnegative entries summing to 1 within tol."""
    if any(w < 0 for w in weights):
        raise ValueError(f"negative weight in {weights}")
    total = sum(weights)
    if abs(total - 1.0) > tol:
        raise ValueError(f"weights sum to {total}, expected 1")


def scalarize(payoff: tuple[float, ...], weights: WeightVector) -> float:
    """Weighted sum of payoff components."""
    if len(payoff) != len(weights):
        raise ValueError(
            f"dimension mismatch: payoff has {len(payoff)} components, weights {len(weights)}"
        )
    return sum(w * f for w, f in zip(weights, payoff))


def snap_to_grid(
    weights: WeightVector, grid_weights: tuple[WeightVector, ...]
) -> WeightVector:
    """Nearest grid vector by L1 distance; ties go to the lexicographically smallest."""
    if not grid_weights:
        raise ValueError("empty grid")
    if len(weights) != len(grid_weights[0]):
        raise ValueError("dimension mismatch between query and grid weights")
    best = None
    best_dist = float("inf")
    for candidate in grid_weights:
        dist = sum(abs(a - b) for a, b in zip(weights, candidate))
        if dist < best_dist or (dist == best_dist and (best is None or candidate < best)):
            best = candidate
            best_dist = dist
    assert best is not None
    return best
