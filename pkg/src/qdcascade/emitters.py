"""Deterministic CSV, JSON, and SVG emission for sweep tables.

Floats are written with twelve significant digits, switching to
scientific notation outside [1e-3, 1e6); together with the fixed row
order this makes repeated runs byte-identical, which the regression
tests rely on.  The SVG emitters are self-contained (no external
stylesheets): a multi-series line chart for 1-D sweeps and a
color-mapped cell grid for 2-D sweeps.
"""

from __future__ import annotations

import json
import math

from .errors import NumericalError, ParameterError
from .experiments import SweepResult

__all__ = ["fmt_float", "emit_csv", "emit_json", "emit_svg"]


def fmt_float(x: float) -> str:
    """Twelve significant digits; scientific when |x| is outside
    [1e-3, 1e6); plain "0" for an exact zero."""
    if not math.isfinite(x):
        raise NumericalError(f"cannot format non-finite value {x}")
    if x == 0.0:
        return "0"
    if 1.0e-3 <= abs(x) < 1.0e6:
        return f"{x:.12g}"
    return f"{x:.11e}"


def emit_csv(result: SweepResult, path: str) -> None:
    """Header row plus one newline-terminated row per grid node."""
    lines = [",".join(result.header)]
    for row in result.rows:
        lines.append(",".join(fmt_float(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_json(result: SweepResult, path: str) -> None:
    """Array of row objects keyed by column name."""
    payload = [dict(zip(result.header, row)) for row in result.rows]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


# fixed palette for line series (repeats if a sweep has more series)
_PALETTE = ("#1f6fb4", "#d95f2b", "#3a923a", "#c23a3a", "#8265a8", "#7f7f7f")

_WIDTH, _HEIGHT = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 40, 55  # plot margins


def _span(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        pad = 0.5 if lo == 0 else abs(lo) * 0.1
        return lo - pad, hi + pad
    return lo, hi


def _xpix(v: float, lo: float, hi: float) -> float:
    return _ML + (v - lo) / (hi - lo) * (_WIDTH - _ML - _MR)


def _ypix(v: float, lo: float, hi: float) -> float:
    return _HEIGHT - _MB - (v - lo) / (hi - lo) * (_HEIGHT - _MT - _MB)


def _axis_ticks(lo: float, hi: float) -> list[float]:
    return [lo + (hi - lo) * i / 4.0 for i in range(5)]


def _frame(title: str, xlabel: str, ylabel: str, xs: tuple[float, float], ys: tuple[float, float]) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.2f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<rect x="{_ML}" y="{_MT}" width="{_WIDTH - _ML - _MR}" '
        f'height="{_HEIGHT - _MT - _MB}" fill="none" stroke="black"/>',
        f'<text x="{(_ML + _WIDTH - _MR) / 2:.2f}" y="{_HEIGHT - 12}" '
        f'text-anchor="middle">{xlabel}</text>',
        f'<text x="16" y="{(_MT + _HEIGHT - _MB) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(_MT + _HEIGHT - _MB) / 2:.2f})">{ylabel}</text>',
    ]
    for tick in _axis_ticks(*xs):
        px = _xpix(tick, *xs)
        parts.append(
            f'<line x1="{px:.2f}" y1="{_HEIGHT - _MB}" x2="{px:.2f}" '
            f'y2="{_HEIGHT - _MB + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{_HEIGHT - _MB + 18}" text-anchor="middle">{tick:.4g}</text>'
        )
    for tick in _axis_ticks(*ys):
        py = _ypix(tick, *ys)
        parts.append(
            f'<line x1="{_ML - 4}" y1="{py:.2f}" x2="{_ML}" y2="{py:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_ML - 8}" y="{py + 4:.2f}" text-anchor="end">{tick:.4g}</text>'
        )
    return parts


def _polyline(points: list[tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'


def _heat_color(v: float) -> str:
    """Two-segment dark-blue -> teal -> yellow map on [0, 1]."""
    v = min(max(v, 0.0), 1.0)
    if v < 0.5:
        t = v / 0.5
        r, g, b = 20 + 20 * t, 30 + 130 * t, 90 + 70 * t
    else:
        t = (v - 0.5) / 0.5
        r, g, b = 40 + 210 * t, 160 + 80 * t, 160 - 120 * t
    return f"#{int(round(r)):02x}{int(round(g)):02x}{int(round(b)):02x}"


def _line_series(result: SweepResult, y_column: str | None) -> tuple[str, str, list[tuple[str, list[tuple[float, float]]]]]:
    """Reduce a table to (xlabel, ylabel, named series of (x, y))."""
    n_axes = len(result.axis_names)
    metric_cols = result.header[n_axes:]
    if n_axes == 1:
        xlabel = result.axis_names[0]
        wanted = (y_column,) if y_column else metric_cols
        xs = list(result.column(xlabel))
        series = []
        for name in wanted:
            series.append((name, list(zip(xs, result.column(name)))))
        return xlabel, (y_column or (metric_cols[0] if len(metric_cols) == 1 else "value")), series
    # 2-D: one series per leading-axis value, x = second axis
    ylabel = y_column or metric_cols[0]
    xlabel = result.axis_names[1]
    yvals = result.column(ylabel)
    avals = result.column(result.axis_names[0])
    xvals = result.column(xlabel)
    series = []
    seen: list[float] = []
    for a in avals:
        if a not in seen:
            seen.append(a)
    for a in seen:
        pts = [
            (x, y) for aa, x, y in zip(avals, xvals, yvals) if aa == a
        ]
        series.append((f"{result.axis_names[0]}={a:g}", pts))
    return xlabel, ylabel, series


def emit_svg(
    result: SweepResult, path: str, kind: str, *, title: str = "", y_column: str | None = None
) -> None:
    """Render a sweep table to a standalone SVG.

    ``kind="line"``: 1-D sweeps plot every metric column; 2-D sweeps
    plot ``y_column`` (default: first metric) with one series per value
    of the leading axis.  ``kind="heatmap"`` requires exactly 2 axes.
    Sweeps with more than two axes are refused.
    """
    if len(result.axis_names) > 2:
        raise ParameterError(
            f"SVG supports at most 2 axes, got {len(result.axis_names)}"
        )
    if not result.rows:
        raise ParameterError("cannot render an empty result")
    if kind == "line":
        xlabel, ylabel, series = _line_series(result, y_column)
        all_x = [p[0] for _, pts in series for p in pts]
        all_y = [p[1] for _, pts in series for p in pts]
        xs, ys = _span(all_x), _span(all_y)
        parts = _frame(title or ylabel, xlabel, ylabel, xs, ys)
        for i, (name, pts) in enumerate(series):
            color = _PALETTE[i % len(_PALETTE)]
            pix = [(_xpix(x, *xs), _ypix(y, *ys)) for x, y in pts]
            parts.append(_polyline(pix, color))
            parts.append(
                f'<text x="{_WIDTH - _MR - 6}" y="{_MT + 16 + 16 * i}" '
                f'text-anchor="end" fill="{color}">{name}</text>'
            )
    elif kind == "heatmap":
        if len(result.axis_names) != 2:
            raise ParameterError("heatmap requires exactly 2 axes")
        ylabel = y_column or result.header[2]
        a0, a1 = result.axis_names
        rows_ax = sorted(set(result.column(a0)))
        cols_ax = sorted(set(result.column(a1)))
        vals = {
            (row[0], row[1]): row[result.header.index(ylabel)] for row in result.rows
        }
        vmin = min(vals.values())
        vmax = max(vals.values())
        span = (vmax - vmin) or 1.0
        xs, ys = _span(list(cols_ax)), _span(list(rows_ax))
        parts = _frame(title or ylabel, a1, a0, xs, ys)
        cw = (_WIDTH - _ML - _MR) / len(cols_ax)
        ch = (_HEIGHT - _MT - _MB) / len(rows_ax)
        for i, rv in enumerate(rows_ax):
            for j, cv in enumerate(cols_ax):
                v = (vals[(rv, cv)] - vmin) / span
                x = _ML + j * cw
                y = _HEIGHT - _MB - (i + 1) * ch
                parts.append(
                    f'<rect class="cell" x="{x:.2f}" y="{y:.2f}" width="{cw:.2f}" '
                    f'height="{ch:.2f}" fill="{_heat_color(v)}"/>'
                )
    else:
        raise ParameterError(f"unknown SVG kind {kind!r}; use 'line' or 'heatmap'")
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
