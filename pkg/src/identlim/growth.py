"""Hypothesis-space growth: combinatorial lower bounds, exponential fits,
doubling times, and per-modality / per-region slices.

The bound counts distinct candidate origins at time t: every closed model,
plus every open model combined with any choice of at most k datasets to
fine-tune on (k = 1, 2, or 3). Fits are unweighted ordinary least squares of
ln N against time in fractional years on a monthly grid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from datetime import date
from typing import Iterable, Sequence

import numpy as np

from .ecosystem import CumulativeSeries, Snapshot, cumulative_series

SUPPORTED_K = (1, 2, 3)


@dataclass(frozen=True)
class GrowthPoint:
    """One grid point of the candidate-origin bound."""

    t: date
    closed: int
    open: int
    datasets: int
    n: int


@dataclass(frozen=True)
class ExpFit:
    """Least-squares exponential fit of a series: N(t) ~ exp(ln_a + b * t)."""

    b: float  # growth rate per year
    ln_a: float  # intercept at the grid's first date
    r2: float
    tau: float | None  # doubling time ln2 / b, absent unless b > 0
    n_points: int
    dropped_zero: int


def n_bound(closed: int, open_: int, datasets: int, k: int) -> int:
    """Exact count of candidate origins with at most k datasets per fine-tune."""
    if min(closed, open_, datasets) < 0:
        raise ValueError("counts must be non-negative")
    if k not in SUPPORTED_K:
        raise ValueError(f"k must be one of {SUPPORTED_K}")
    combos = sum(math.comb(datasets, j) for j in range(0, k + 1))
    return closed + open_ * combos


def brute_force_count(closed: int, open_: int, datasets: int, k: int) -> int:
    """Oracle for ``n_bound``: explicitly enumerate the distinct candidates.

    Candidates are closed models as atoms plus (open model, dataset subset of
    size <= k) pairs. Enumeration only; feasible for datasets <= 15.
    """
    if min(closed, open_, datasets) < 0:
        raise ValueError("counts must be non-negative")
    if k not in SUPPORTED_K:
        raise ValueError(f"k must be one of {SUPPORTED_K}")
    if datasets > 15:
        raise ValueError("brute force enumeration capped at 15 datasets")
    items: set[tuple] = set()
    for c in range(closed):
        items.add(("closed", c))
    for o in range(open_):
        for size in range(0, k + 1):
            for combo in itertools.combinations(range(datasets), size):
                items.add(("open", o, combo))
    return len(items)


def n_series(series: CumulativeSeries, k: int) -> list[GrowthPoint]:
    """Apply the k-bound at every grid point of a cumulative series."""
    return [
        GrowthPoint(
            t=t,
            closed=c,
            open=o,
            datasets=d,
            n=n_bound(c, o, d, k),
        )
        for t, c, o, d in zip(series.grid, series.closed, series.open, series.datasets)
    ]


def _fractional_years(anchor: date, t: date) -> float:
    return (t.year - anchor.year) + (t.month - anchor.month) / 12.0


def _as_pairs(points: Iterable) -> list[tuple[date, float]]:
    pairs = []
    for p in points:
        if isinstance(p, GrowthPoint):
            pairs.append((p.t, float(p.n)))
        else:
            t, v = p
            pairs.append((t, float(v)))
    return pairs


def fit_exponential(
    points: Sequence[GrowthPoint] | Sequence[tuple[date, float]],
    window_start: date,
    window_end: date,
) -> ExpFit:
    """OLS fit of ln N against fractional years within [window_start, window_end].

    Zero values cannot enter the log fit; they are dropped and counted.
    Requires at least three usable points. Time is anchored at the first
    point of the full series, so the intercept refers to the grid origin.
    """
    pairs = _as_pairs(points)
    if not pairs:
        raise ValueError("no points to fit")
    anchor = pairs[0][0]
    in_window = [(t, v) for t, v in pairs if window_start <= t <= window_end]
    dropped = sum(1 for _, v in in_window if v <= 0)
    usable = [(t, v) for t, v in in_window if v > 0]
    if len(usable) < 3:
        raise ValueError(
            f"need at least 3 positive points in the window, got {len(usable)}"
        )
    x = np.array([_fractional_years(anchor, t) for t, _ in usable])
    y = np.log(np.array([v for _, v in usable]))
    b, ln_a = np.polyfit(x, y, 1)
    if abs(b) < 1e-12:  # constant series up to float noise
        b = 0.0
    predicted = ln_a + b * x
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 if ss_tot == 0 and ss_res <= 1e-18 else max(0.0, 1.0 - ss_res / ss_tot)
    tau = math.log(2) / b if b > 0 else None
    return ExpFit(
        b=float(b),
        ln_a=float(ln_a),
        r2=min(r2, 1.0),
        tau=tau,
        n_points=len(usable),
        dropped_zero=dropped,
    )


def slice_series(
    snapshot: Snapshot,
    dimension: str,
    k: int = 1,
    *,
    strict_access: bool = True,
) -> dict[str, list[GrowthPoint]]:
    """Per-label growth points with models filtered by modality or region.

    Dataset counts stay global (datasets are not sliced), and every slice
    shares the snapshot's full grid so fits line up across labels.
    """
    if dimension not in ("modality", "region"):
        raise ValueError("dimension must be 'modality' or 'region'")
    full = cumulative_series(snapshot, strict_access=strict_access)
    grid_start, grid_end = full.grid[0], full.grid[-1]
    labels = sorted({getattr(m, dimension) for m in snapshot.models})
    out: dict[str, list[GrowthPoint]] = {}
    for label in labels:
        models = tuple(m for m in snapshot.models if getattr(m, dimension) == label)
        sliced = replace(snapshot, models=models)
        series = cumulative_series(
            sliced, grid_start, grid_end, strict_access=strict_access
        )
        out[label] = n_series(series, k)
    return out


def fits_table(
    series: CumulativeSeries,
    window_start: date,
    window_end: date,
    ks: Sequence[int] = SUPPORTED_K,
) -> list[dict]:
    """Fit summary rows (metric, b, r2, tau) for each dataset allowance k."""
    rows = []
    for k in ks:
        fit = fit_exponential(n_series(series, k), window_start, window_end)
        rows.append(
            {
                "metric": f"N_k{k}",
                "max_datasets_per_finetune": k,
                "b_per_year": fit.b,
                "r2": fit.r2,
                "doubling_time_years": fit.tau,
                "points": fit.n_points,
                "dropped_zero": fit.dropped_zero,
            }
        )
    return rows
