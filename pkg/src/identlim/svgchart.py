"""Minimal SVG line charts with no plotting dependency.

Output is deterministic (fixed precision, no timestamps), so charts can be
golden-tested byte for byte.
"""

from __future__ import annotations

import math
from typing import Sequence

Point = tuple[float, float]
Series = tuple[str, Sequence[Point]]

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"]

WIDTH = 960
HEIGHT = 600
MARGIN_LEFT = 80
MARGIN_RIGHT = 230
MARGIN_TOP = 60
MARGIN_BOTTOM = 70


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw_step = (hi - lo) / max(count - 1, 1)
    magnitude = 10 ** math.floor(math.log10(raw_step))
    for mult in (1, 2, 5, 10):
        step = mult * magnitude
        if step >= raw_step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


def render_line_chart(
    series: Sequence[Series],
    *,
    title: str,
    x_label: str,
    y_label: str,
    log_y: bool = False,
    dashed: Series | None = None,
    comment: str | None = None,
) -> str:
    """Render labelled polylines; ``dashed`` adds one dashed overlay (e.g. a fit).

    With ``log_y`` the y axis is log10 with decade ticks and non-positive
    values are dropped from display.
    """

    def usable(points: Sequence[Point]) -> list[Point]:
        if log_y:
            return [(x, math.log10(y)) for x, y in points if y > 0]
        return list(points)

    everything = [usable(pts) for _, pts in series]
    if dashed is not None:
        everything.append(usable(dashed[1]))
    flat = [p for pts in everything for p in pts]
    if not flat:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(p[0] for p in flat), max(p[0] for p in flat)
    y_lo, y_hi = min(p[1] for p in flat), max(p[1] for p in flat)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_left, plot_right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    plot_top, plot_bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def px(x: float) -> float:
        return plot_left + (x - x_lo) / (x_hi - x_lo) * (plot_right - plot_left)

    def py(y: float) -> float:
        return plot_bottom - (y - y_lo) / (y_hi - y_lo) * (plot_bottom - plot_top)

    lines: list[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    if comment:
        lines.append(f"<!-- {_escape(comment)} -->")
    lines.append('<rect width="100%" height="100%" fill="#ffffff"/>')
    lines.append(
        f'<text x="{WIDTH / 2:.1f}" y="30" text-anchor="middle" font-size="20" '
        f'font-family="Helvetica">{_escape(title)}</text>'
    )

    if log_y:
        y_ticks = list(range(math.floor(y_lo), math.ceil(y_hi) + 1))
    else:
        y_ticks = _nice_ticks(y_lo, y_hi)
    for tick in y_ticks:
        if not y_lo <= tick <= y_hi:
            continue
        y = py(tick)
        lines.append(
            f'<line x1="{plot_left}" y1="{y:.2f}" x2="{plot_right}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        label = f"1e{tick:d}" if log_y else f"{tick:g}"
        lines.append(
            f'<text x="{plot_left - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="12" '
            f'font-family="Helvetica">{label}</text>'
        )
    for tick in _nice_ticks(x_lo, x_hi):
        if not x_lo <= tick <= x_hi:
            continue
        x = px(tick)
        lines.append(
            f'<line x1="{x:.2f}" y1="{plot_bottom}" x2="{x:.2f}" y2="{plot_bottom + 5}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 22}" text-anchor="middle" font-size="12" '
            f'font-family="Helvetica">{tick:g}</text>'
        )

    lines.append(
        f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    lines.append(
        f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    lines.append(
        f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{HEIGHT - 18}" text-anchor="middle" '
        f'font-size="14" font-family="Helvetica">{_escape(x_label)}</text>'
    )
    y_axis_title = _escape(y_label + (" (log scale)" if log_y else ""))
    lines.append(
        f'<text x="22" y="{(plot_top + plot_bottom) / 2:.1f}" text-anchor="middle" '
        f'font-size="14" font-family="Helvetica" '
        f'transform="rotate(-90 22 {(plot_top + plot_bottom) / 2:.1f})">{y_axis_title}</text>'
    )

    legend_x = plot_right + 18
    legend_y = plot_top + 10
    legend_idx = 0

    def legend_entry(label: str, color: str, dash: bool) -> None:
        nonlocal legend_idx
        ly = legend_y + legend_idx * 22
        dash_attr = ' stroke-dasharray="7 4"' if dash else ""
        lines.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 24}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2.5"{dash_attr}/>'
        )
        lines.append(
            f'<text x="{legend_x + 30}" y="{ly + 4}" font-size="12" '
            f'font-family="Helvetica">{_escape(label)}</text>'
        )
        legend_idx += 1

    for idx, (label, points) in enumerate(series):
        pts = usable(points)
        if not pts:
            continue
        color = COLORS[idx % len(COLORS)]
        poly = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2.5" points="{poly}"/>'
        )
        legend_entry(label, color, dash=False)
    if dashed is not None:
        label, points = dashed
        pts = usable(points)
        if pts:
            poly = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
            lines.append(
                f'<polyline fill="none" stroke="#555555" stroke-width="2" '
                f'stroke-dasharray="7 4" points="{poly}"/>'
            )
            legend_entry(label, "#555555", dash=True)

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
