"""Combinatorial bounds (with enumeration oracle) and exponential fitting."""

from __future__ import annotations

import math
from datetime import date

import pytest

from identlim.ecosystem import cumulative_series
from identlim.growth import (
    ExpFit,
    brute_force_count,
    fit_exponential,
    fits_table,
    n_bound,
    n_series,
    slice_series,
)
from test_ecosystem import record, snapshot_of


class TestNBound:
    @pytest.mark.parametrize("k, expected", [(1, 17), (2, 35), (3, 47)])
    def test_spot_values(self, k, expected):
        assert n_bound(2, 3, 4, k) == expected

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            n_bound(-1, 0, 0, 1)
        with pytest.raises(ValueError):
            n_bound(1, 1, 1, 4)

    def test_monotone_in_every_argument(self):
        base = n_bound(2, 3, 4, 2)
        assert n_bound(3, 3, 4, 2) >= base
        assert n_bound(2, 4, 4, 2) >= base
        assert n_bound(2, 3, 5, 2) >= base
        assert n_bound(2, 3, 4, 3) >= base


class TestBruteForce:
    def test_degenerate_cases(self):
        assert brute_force_count(0, 1, 0, 3) == 1  # one base model, no datasets
        assert brute_force_count(5, 0, 9, 2) == 5  # closed only

    def test_agrees_with_formula_small_sweep(self):
        for c in range(0, 4):
            for o in range(0, 4):
                for d in range(0, 9):
                    for k in (1, 2, 3):
                        assert n_bound(c, o, d, k) == brute_force_count(c, o, d, k)

    def test_enumeration_cap(self):
        with pytest.raises(ValueError):
            brute_force_count(1, 1, 16, 1)


def growth_snapshot():
    models = [
        record("m1", created=date(2020, 1, 1), access="open"),
        record("m2", created=date(2020, 3, 1), access="closed_or_restricted"),
        record("m3", created=date(2020, 6, 1), access="open"),
    ]
    datasets = [
        record("d1", asset_type="dataset", created=date(2020, 2, 1)),
        record("d2", asset_type="dataset", created=date(2020, 5, 1)),
    ]
    return snapshot_of(models, datasets)


class TestNSeries:
    def test_values_follow_formula(self):
        series = cumulative_series(growth_snapshot())
        points = n_series(series, 1)
        assert [p.n for p in points] == [
            n_bound(c, o, d, 1)
            for c, o, d in zip(series.closed, series.open, series.datasets)
        ]

    def test_monotone_in_time_and_k(self):
        series = cumulative_series(growth_snapshot())
        by_k = {k: [p.n for p in n_series(series, k)] for k in (1, 2, 3)}
        for k, values in by_k.items():
            assert all(a <= b for a, b in zip(values, values[1:]))
        for i in range(len(by_k[1])):
            assert by_k[1][i] <= by_k[2][i] <= by_k[3][i]


def exact_exponential(b: float, a: float = 5.0, months: int = 12):
    anchor = date(2020, 1, 1)
    points = []
    t = anchor
    for i in range(months):
        x = i / 12.0
        points.append((t, a * math.exp(b * x)))
        t = date(t.year + 1, 1, 1) if t.month == 12 else date(t.year, t.month + 1, 1)
    return points


class TestFit:
    def test_exact_recovery(self):
        fit = fit_exponential(exact_exponential(1.0), date(2020, 1, 1), date(2021, 1, 1))
        assert abs(fit.b - 1.0) <= 1e-9
        assert fit.r2 == 1.0
        assert fit.tau == pytest.approx(math.log(2), abs=1e-9)

    def test_constant_series_has_no_doubling_time(self):
        points = [(t, 5.0) for t, _ in exact_exponential(0.0)]
        fit = fit_exponential(points, date(2020, 1, 1), date(2021, 1, 1))
        assert fit.b == 0.0
        assert fit.tau is None
        assert fit.r2 == 1.0

    def test_scale_equivariance(self):
        window = (date(2020, 1, 1), date(2021, 1, 1))
        base_points = exact_exponential(0.7)
        scaled = [(t, 7.25 * v) for t, v in base_points]
        base, big = fit_exponential(base_points, *window), fit_exponential(scaled, *window)
        assert abs(base.b - big.b) <= 1e-12
        assert abs(base.r2 - big.r2) <= 1e-12
        assert abs(base.tau - big.tau) <= 1e-12
        assert big.ln_a - base.ln_a == pytest.approx(math.log(7.25), abs=1e-9)

    def test_zero_points_dropped_and_counted(self):
        points = exact_exponential(1.0)
        points[2] = (points[2][0], 0.0)
        fit = fit_exponential(points, date(2020, 1, 1), date(2021, 1, 1))
        assert fit.dropped_zero == 1
        assert fit.n_points == 11

    def test_too_few_points_rejected(self):
        points = exact_exponential(1.0, months=2)
        with pytest.raises(ValueError):
            fit_exponential(points, date(2020, 1, 1), date(2021, 1, 1))

    def test_window_filters(self):
        points = exact_exponential(1.0, months=24)
        fit = fit_exponential(points, date(2020, 1, 1), date(2020, 6, 1))
        assert fit.n_points == 6


class TestSlices:
    def test_single_modality_slice_equals_global(self):
        snap = growth_snapshot()  # all models are text
        series = cumulative_series(snap)
        slices = slice_series(snap, "modality", k=1)
        assert list(slices) == ["text"]
        assert [p.n for p in slices["text"]] == [p.n for p in n_series(series, 1)]

    def test_slices_share_global_dataset_counts(self):
        models = [
            record("t", created=date(2020, 1, 1), access="open"),
        ]
        datasets = [record("d", asset_type="dataset", created=date(2020, 6, 1))]
        snap = snapshot_of(models, datasets)
        object.__setattr__(snap.models[0], "modality", "text")  # frozen bypass for setup
        slices = slice_series(snap, "modality", k=1)
        assert slices["text"][-1].datasets == 1

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            slice_series(growth_snapshot(), "vibe")


def test_fits_table_rows():
    # A synthetic snapshot with clean exponential growth in all three inputs.
    models, datasets = [], []
    t = date(2019, 1, 1)
    for i in range(48):
        for _ in range(1 + i // 8):
            models.append(record(f"m{i}-{len(models)}", created=t, access="open"))
        if i % 3 == 0:
            datasets.append(record(f"d{i}", asset_type="dataset", created=t))
        t = date(t.year + 1, 1, 1) if t.month == 12 else date(t.year, t.month + 1, 1)
    series = cumulative_series(snapshot_of(models, datasets))
    rows = fits_table(series, date(2019, 1, 1), date(2023, 1, 1))
    assert [r["metric"] for r in rows] == ["N_k1", "N_k2", "N_k3"]
    assert rows[0]["b_per_year"] > 0
    # Larger k admits combinatorially more variants, so it grows faster.
    assert rows[0]["b_per_year"] < rows[1]["b_per_year"] < rows[2]["b_per_year"]
