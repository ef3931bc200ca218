"""Feasibility model for brute-force likelihood attribution.

Cost model: one floating-point operation per parameter per token (a
configurable ratio, deliberately optimistic), divided by the peak throughput
of a reference exascale machine. Streaming time is raw bytes over burst I/O.
All arithmetic is pure and linear, so scenario results scale exactly with
their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from typing import Sequence

from .ecosystem import CumulativeSeries

SECONDS_PER_MINUTE = 60.0
SECONDS_PER_HOUR = 3600.0
SECONDS_PER_DAY = 86400.0
SECONDS_PER_YEAR = 3.1557e7  # Julian year, used only for rendering durations

#: Reference machine: peak FLOP/s and burst I/O of a ~2025 exascale system.
REFERENCE_MACHINE_FLOPS = 1.7e18
REFERENCE_IO_BYTES_PER_SEC = 2e12

DEFAULT_BYTES_PER_TOKEN = 4.0

#: National-scale usage assumptions: daily active users of generative tools
#: and a modest per-user token budget, totalled over a 365-day year.
DAILY_ACTIVE_USERS = 1.32e8
TOKENS_PER_USER_PER_DAY = 1.0e4
DAYS_PER_YEAR = 365

#: Cumulative parameter count of all catalogued models as of early 2025
#: (fallback when no snapshot is supplied).
PARAMS_TOTAL_2025 = 2.2e13


@dataclass(frozen=True)
class ComputeScenario:
    """Inputs of one attribution-cost estimate."""

    name: str
    params_total: float
    tokens: float
    flops_per_param_token: float = 1.0
    machine_flops_per_sec: float = REFERENCE_MACHINE_FLOPS
    bytes_per_token: float = DEFAULT_BYTES_PER_TOKEN
    io_bytes_per_sec: float = REFERENCE_IO_BYTES_PER_SEC

    def __post_init__(self) -> None:
        for field_name in (
            "params_total",
            "tokens",
            "flops_per_param_token",
            "machine_flops_per_sec",
            "bytes_per_token",
            "io_bytes_per_sec",
        ):
            if getattr(self, field_name) <= 0:
                raise ValueError(f"{field_name} must be strictly positive")


@dataclass(frozen=True)
class ScenarioResult:
    scenario: str
    total_flops: float
    wall_seconds: float
    wall_human: str
    data_bytes: float
    stream_seconds: float
    stream_human: str

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "total_flops": self.total_flops,
            "wall_seconds": self.wall_seconds,
            "wall_human": self.wall_human,
            "data_bytes": self.data_bytes,
            "stream_seconds": self.stream_seconds,
            "stream_human": self.stream_human,
        }


def render_duration(seconds: float) -> str:
    """Human rendering with fixed unit thresholds (3600 s/h, 86400 s/day,
    3.1557e7 s/yr)."""
    if seconds < 0:
        raise ValueError("duration must be non-negative")
    for limit, divisor, unit in (
        (SECONDS_PER_MINUTE, 1.0, "s"),
        (SECONDS_PER_HOUR, SECONDS_PER_MINUTE, "min"),
        (SECONDS_PER_DAY, SECONDS_PER_HOUR, "h"),
        (SECONDS_PER_YEAR, SECONDS_PER_DAY, "days"),
    ):
        if seconds < limit:
            return f"{seconds / divisor:.3g} {unit}"
    return f"{seconds / SECONDS_PER_YEAR:.3g} yr"


def stream_time(tokens: float, bytes_per_token: float, io_bytes_per_sec: float) -> float:
    """Seconds to stream ``tokens`` through the given I/O rate."""
    if tokens <= 0 or bytes_per_token <= 0 or io_bytes_per_sec <= 0:
        raise ValueError("stream_time inputs must be strictly positive")
    return tokens * bytes_per_token / io_bytes_per_sec


def evaluate(scenario: ComputeScenario) -> ScenarioResult:
    """Total FLOPs, wall-clock on the scenario machine, and raw streaming time."""
    total_flops = scenario.params_total * scenario.tokens * scenario.flops_per_param_token
    wall_seconds = total_flops / scenario.machine_flops_per_sec
    data_bytes = scenario.tokens * scenario.bytes_per_token
    stream_seconds = data_bytes / scenario.io_bytes_per_sec
    return ScenarioResult(
        scenario=scenario.name,
        total_flops=total_flops,
        wall_seconds=wall_seconds,
        wall_human=render_duration(wall_seconds),
        data_bytes=data_bytes,
        stream_seconds=stream_seconds,
        stream_human=render_duration(stream_seconds),
    )


def single_item_preset(params_total: float = PARAMS_TOTAL_2025) -> ComputeScenario:
    """One 100k-token item checked against every known model."""
    return ComputeScenario(
        name="reference-2025-single-item", params_total=params_total, tokens=1e5
    )


def daily_sweep_preset(params_total: float = PARAMS_TOTAL_2025) -> ComputeScenario:
    """10,000 suspect items of 100k tokens each, checked in one day."""
    return ComputeScenario(
        name="reference-daily-sweep", params_total=params_total, tokens=1e4 * 1e5
    )


def national_preset(params_total: float = PARAMS_TOTAL_2025) -> ComputeScenario:
    """One year of national generative-AI output checked against every model.

    Token volume: daily_active_users x tokens/user/day x 365. Note on
    streaming figures: the full annual volume streams in about a quarter
    hour at the burst rate, while one day's volume alone takes only seconds;
    both are reported.
    """
    tokens = DAILY_ACTIVE_USERS * TOKENS_PER_USER_PER_DAY * DAYS_PER_YEAR
    return ComputeScenario(
        name="reference-national-annual", params_total=params_total, tokens=tokens
    )


PRESETS = {
    "reference-2025-single-item": single_item_preset,
    "reference-daily-sweep": daily_sweep_preset,
    "reference-national-annual": national_preset,
}


def national_report(params_total: float = PARAMS_TOTAL_2025) -> dict:
    """Flat summary of the national-annual scenario (volumes, compute, I/O).

    Includes both the annual streaming time and the per-day streaming time;
    the two are often conflated when quoting I/O budgets.
    """
    scenario = national_preset(params_total)
    result = evaluate(scenario)
    tokens_per_day = DAILY_ACTIVE_USERS * TOKENS_PER_USER_PER_DAY
    return {
        "daily_active_users": DAILY_ACTIVE_USERS,
        "tokens_per_day": tokens_per_day,
        "tokens_per_year": scenario.tokens,
        "params_total": scenario.params_total,
        "total_flops": result.total_flops,
        "wall_seconds": result.wall_seconds,
        "wall_years": result.wall_seconds / SECONDS_PER_YEAR,
        "wall_human": result.wall_human,
        "data_bytes": result.data_bytes,
        "stream_seconds_annual": result.stream_seconds,
        "stream_seconds_daily": stream_time(
            tokens_per_day, scenario.bytes_per_token, scenario.io_bytes_per_sec
        ),
        "stream_human_annual": result.stream_human,
    }


def params_total_at_year(series: CumulativeSeries, year: int) -> float | None:
    """Cumulative parameter total at January of ``year``; None when off-grid."""
    target = date(year, 1, 1)
    if target < series.grid[0] or target > series.grid[-1]:
        return None
    return series.params_total[series.at(target)]


def sweep_grid(
    series: CumulativeSeries,
    token_lengths: Sequence[float] = (1e3, 1e4, 1e5),
    years: Sequence[int] | None = None,
) -> dict[str, list[dict]]:
    """Wall-clock cost of attribution sweeps as the ecosystem grows.

    For each year (cumulative params at that January) and per-item token
    length: wall seconds and their log10 for a single item. A second table
    gives the daily sweep (10^4 items x 10^5 tokens) in hours per year.
    Years without positive cumulative params are skipped.
    """
    if years is None:
        years = range(series.grid[0].year + (series.grid[0].month > 1), series.grid[-1].year + 1)
    single_rows: list[dict] = []
    daily_rows: list[dict] = []
    for year in years:
        params = params_total_at_year(series, year)
        if params is None or params <= 0:
            continue
        for tokens in token_lengths:
            result = evaluate(
                ComputeScenario(name=f"{year}-{int(tokens)}", params_total=params, tokens=tokens)
            )
            single_rows.append(
                {
                    "year": year,
                    "params_total": params,
                    "tokens_per_item": tokens,
                    "wall_seconds": result.wall_seconds,
                    "log10_wall_seconds": math.log10(result.wall_seconds),
                }
            )
        daily = evaluate(daily_sweep_preset(params))
        daily_rows.append(
            {
                "year": year,
                "params_total": params,
                "wall_seconds": daily.wall_seconds,
                "wall_hours": daily.wall_seconds / SECONDS_PER_HOUR,
            }
        )
    return {"single_item": single_rows, "daily_sweep": daily_rows}
