"""Two-sided Wilcoxon signed-rank test for paired samples.

Zero differences are dropped and tied absolute differences get averaged
ranks. For n <= 20 retained pairs the p-value comes from the exact null
distribution of the positive-rank sum (all 2^n sign assignments of the
observed ranks, counted by dynamic programming over doubled ranks, which
are integers even with ties). Larger samples use the normal approximation
with the standard tie correction. The statistic is W+, the rank sum of the
positive differences.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

EXACT_LIMIT = 20


class WilcoxonResult(NamedTuple):
    statistic: float
    p_value: float


def rank_with_ties(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties replaced by the mean rank of the tied run."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size, dtype=float)
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _exact_p_two_sided(ranks: np.ndarray, w_plus: float) -> float:
    # Doubled ranks are integers (tie averages are multiples of 0.5).
    doubled = np.rint(2.0 * ranks).astype(np.int64)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=float)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: counts.size - r]
        counts = counts + shifted
    counts /= counts.sum()

    w2 = int(round(2.0 * w_plus))
    p_low = counts[: w2 + 1].sum()
    p_high = counts[w2:].sum()
    return float(min(1.0, 2.0 * min(p_low, p_high)))


def _normal_p_two_sided(ranks: np.ndarray, w_plus: float) -> float:
    n = ranks.size
    mean = n * (n + 1) / 4.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0
    # Tie correction: subtract sum(t^3 - t)/48 over tied groups.
    _, tie_sizes = np.unique(ranks, return_counts=True)
    variance -= float(np.sum(tie_sizes.astype(float) ** 3 - tie_sizes)) / 48.0
    z = (w_plus - mean) / math.sqrt(variance)
    return float(min(1.0, math.erfc(abs(z) / math.sqrt(2.0))))


def wilcoxon_signed_rank(
    x: Sequence[float], y: Sequence[float], mode: str = "auto"
) -> WilcoxonResult:
    """Paired two-sided test of x - y being symmetric around zero.

    mode "auto" picks exact for n <= 20 retained pairs and the normal
    approximation beyond; "exact" and "normal" force a regime. All
    differences zero (or empty input) returns p = 1.0 by convention.
    """
    if mode not in ("auto", "exact", "normal"):
        raise ValueError(f"unknown mode {mode!r}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d sequences of equal length")
    if x.size < 1:
        raise ValueError("need at least one pair")

    diffs = x - y
    diffs = diffs[diffs != 0.0]
    if diffs.size == 0:
        return WilcoxonResult(statistic=0.0, p_value=1.0)

    ranks = rank_with_ties(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())

    if mode == "auto":
        mode = "exact" if diffs.size <= EXACT_LIMIT else "normal"
    if mode == "exact":
        p = _exact_p_two_sided(ranks, w_plus)
    else:
        p = _normal_p_two_sided(ranks, w_plus)
    return WilcoxonResult(statistic=w_plus, p_value=p)
