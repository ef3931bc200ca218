"""Compute-cost golden values, linearity, and the year-by-year sweep."""

from __future__ import annotations

import math
from datetime import date

import pytest

from identlim.computecost import (
    ComputeScenario,
    SECONDS_PER_HOUR,
    SECONDS_PER_YEAR,
    daily_sweep_preset,
    evaluate,
    national_preset,
    national_report,
    render_duration,
    single_item_preset,
    stream_time,
    sweep_grid,
)
from identlim.ecosystem import CumulativeSeries


def within(value, reference, rel=0.10):
    return value == pytest.approx(reference, rel=rel)


class TestGoldenValues:
    def test_single_item_2025(self):
        result = evaluate(single_item_preset(2.2e13))
        assert result.total_flops == 2.2e18
        assert within(result.wall_seconds, 1.3)
        assert result.wall_human.endswith(" s")

    def test_daily_sweep(self):
        result = evaluate(daily_sweep_preset(2.2e13))
        assert result.total_flops == 2.2e22
        assert within(result.wall_seconds / SECONDS_PER_HOUR, 3.6)

    def test_national_annual(self):
        report = national_report(2.2e13)
        assert report["tokens_per_day"] == 1.32e12
        assert within(report["tokens_per_year"], 4.8e14)
        assert within(report["total_flops"], 1.1e28)
        assert within(report["wall_years"], 200.0)
        assert within(report["data_bytes"], 1.9e15)  # ~1.9 PB
        assert within(report["stream_seconds_annual"], 16 * 60)
        # The daily volume alone streams in seconds, not minutes.
        assert report["stream_seconds_daily"] == pytest.approx(2.64, rel=0.01)


class TestStreamTime:
    def test_reference_value(self):
        assert stream_time(4.8e14, 4, 2e12) == 960.0

    def test_tiny(self):
        assert stream_time(1, 4, 4) == 1.0
        assert stream_time(1e12, 4, 2e12) == 2.0

    def test_zero_tokens_disallowed(self):
        with pytest.raises(ValueError):
            stream_time(0, 4, 2e12)


class TestLinearity:
    BASE = ComputeScenario(name="base", params_total=1e12, tokens=1e6)

    @pytest.mark.parametrize("field", ["params_total", "tokens", "flops_per_param_token"])
    def test_wall_seconds_linear_in_inputs(self, field):
        from dataclasses import replace

        doubled = replace(self.BASE, **{field: getattr(self.BASE, field) * 2})
        assert evaluate(doubled).wall_seconds == 2 * evaluate(self.BASE).wall_seconds

    def test_machine_speed_inverse(self):
        from dataclasses import replace

        faster = replace(self.BASE, machine_flops_per_sec=self.BASE.machine_flops_per_sec * 4)
        assert evaluate(faster).wall_seconds == evaluate(self.BASE).wall_seconds / 4

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            ComputeScenario(name="bad", params_total=0, tokens=1)


class TestRendering:
    @pytest.mark.parametrize(
        "seconds, expected",
        [
            (1.294, "1.29 s"),
            (963.6, "16.1 min"),
            (1.294e4, "3.59 h"),
            (2 * 86400.0, "2 days"),
            (6.235e9, "198 yr"),
        ],
    )
    def test_units(self, seconds, expected):
        assert render_duration(seconds) == expected


def fake_series() -> CumulativeSeries:
    grid = (date(2019, 1, 1), date(2020, 1, 1), date(2025, 1, 1))
    zeros = (0, 0, 0)
    return CumulativeSeries(
        grid=grid,
        closed=zeros,
        open=zeros,
        unknown=zeros,
        datasets=zeros,
        params_total=(1.3e10, 1.0e11, 2.2e13),
        strict_access=True,
    )


class TestSweepGrid:
    def test_2025_single_item_log(self):
        rows = sweep_grid(fake_series(), years=[2025])["single_item"]
        row = next(r for r in rows if r["tokens_per_item"] == 1e5)
        assert row["log10_wall_seconds"] == pytest.approx(math.log10(1.294), abs=1e-2)

    def test_token_lengths_differ_by_exact_decades(self):
        rows = sweep_grid(fake_series(), years=[2020])["single_item"]
        logs = {r["tokens_per_item"]: r["log10_wall_seconds"] for r in rows}
        assert logs[1e5] - logs[1e3] == pytest.approx(2.0, abs=1e-12)

    def test_2019_is_submillisecond(self):
        rows = sweep_grid(fake_series(), years=[2019])["single_item"]
        row = next(r for r in rows if r["tokens_per_item"] == 1e5)
        assert row["wall_seconds"] == pytest.approx(7.6e-4, rel=0.01)

    def test_daily_sweep_hours(self):
        daily = sweep_grid(fake_series(), years=[2025])["daily_sweep"]
        assert daily[0]["wall_hours"] == pytest.approx(3.59, rel=0.01)

    def test_years_off_grid_skipped(self):
        out = sweep_grid(fake_series(), years=[1999, 2025])
        assert [r["year"] for r in out["daily_sweep"]] == [2025]
