"""Minimal static SVG charts (no plotting dependency).

Convenience artifacts only: the CSV files are the data contract, these are
for eyeballing runs.  All coordinates are written with fixed precision so
identical inputs produce byte-identical files.
"""
from __future__ import annotations

import math

WIDTH, HEIGHT = 720, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 72, 24, 40, 56
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_HEAT_STOPS = (
    (0.267, 0.005, 0.329),
    (0.229, 0.322, 0.546),
    (0.127, 0.566, 0.551),
    (0.369, 0.789, 0.383),
    (0.993, 0.906, 0.144),
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(count, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s for s in (mag, 2 * mag, 5 * mag, 10 * mag) if s >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * abs(step):
        ticks.append(t)
        t += step
    return ticks


def _tick_label(value: float) -> str:
    if value == 0:
        return "0"
    if abs(value) >= 1e4 or abs(value) < 1e-3:
        return f"{value:.1e}"
    return f"{value:g}"


class _Canvas:
    def __init__(self, title: str, xlabel: str, ylabel: str):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>',
            f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) / 2:.0f}" '
            f'y="{HEIGHT - 14}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12">{xlabel}</text>',
            f'<text x="18" y="{(MARGIN_T + HEIGHT - MARGIN_B) / 2:.0f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 18 {(MARGIN_T + HEIGHT - MARGIN_B) / 2:.0f})">'
            f"{ylabel}</text>",
        ]

    def frame(self) -> None:
        x0, y0 = MARGIN_L, MARGIN_T
        x1, y1 = WIDTH - MARGIN_R, HEIGHT - MARGIN_B
        self.parts.append(
            f'<rect x="{x0}" y="{y0}" width="{x1 - x0}" height="{y1 - y0}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )

    def save(self, path) -> None:
        self.parts.append("</svg>")
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("\n".join(self.parts) + "\n")


def _scaler(lo: float, hi: float, out_lo: float, out_hi: float, log: bool):
    if log:
        lo, hi = math.log10(lo), math.log10(hi)
    span = hi - lo if hi > lo else 1.0

    def scale(v: float) -> float:
        x = math.log10(v) if log else v
        return out_lo + (x - lo) / span * (out_hi - out_lo)

    return scale


def line_chart(
    path,
    x,
    series,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    logx: bool = False,
    logy: bool = False,
) -> None:
    """Write a polyline chart; series is a list of (label, y-values)."""
    xs = [float(v) for v in x]
    all_y = [float(v) for _, ys in series for v in ys]
    if logy:
        all_y = [v for v in all_y if v > 0]
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = (min(all_y), max(all_y)) if all_y else (0.0, 1.0)
    if not logy:
        pad = 0.05 * (yhi - ylo or 1.0)
        ylo, yhi = ylo - pad, yhi + pad
    sx = _scaler(xlo, xhi, MARGIN_L, WIDTH - MARGIN_R, logx)
    sy = _scaler(ylo, yhi, HEIGHT - MARGIN_B, MARGIN_T, logy)
    canvas = _Canvas(title, xlabel, ylabel)
    for tick in _ticks(math.log10(xlo) if logx else xlo, math.log10(xhi) if logx else xhi):
        value = 10.0**tick if logx else tick
        if not (xlo <= value <= xhi or logx):
            continue
        px = sx(value)
        canvas.parts.append(
            f'<line x1="{_fmt(px)}" y1="{HEIGHT - MARGIN_B}" x2="{_fmt(px)}" '
            f'y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>'
            f'<text x="{_fmt(px)}" y="{HEIGHT - MARGIN_B + 18}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="10">'
            f"{_tick_label(value)}</text>"
        )
    for tick in _ticks(math.log10(ylo) if logy else ylo, math.log10(yhi) if logy else yhi):
        value = 10.0**tick if logy else tick
        py = sy(value)
        canvas.parts.append(
            f'<line x1="{MARGIN_L - 5}" y1="{_fmt(py)}" x2="{MARGIN_L}" '
            f'y2="{_fmt(py)}" stroke="black"/>'
            f'<text x="{MARGIN_L - 8}" y="{_fmt(py + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_tick_label(value)}</text>'
        )
    for idx, (label, ys) in enumerate(series):
        color = COLORS[idx % len(COLORS)]
        points = []
        for xv, yv in zip(xs, ys):
            yv = float(yv)
            if logy and yv <= 0:
                continue
            points.append(f"{_fmt(sx(xv))},{_fmt(sy(yv))}")
        canvas.parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{" ".join(points)}"/>'
        )
        canvas.parts.append(
            f'<text x="{WIDTH - MARGIN_R - 8}" y="{MARGIN_T + 16 + 16 * idx}" '
            f'text-anchor="end" font-family="sans-serif" font-size="11" '
            f'fill="{color}">{label}</text>'
        )
    canvas.frame()
    canvas.save(path)


def _heat_color(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(_HEAT_STOPS) - 1)
    i = min(int(pos), len(_HEAT_STOPS) - 2)
    frac = pos - i
    rgb = [
        _HEAT_STOPS[i][c] + frac * (_HEAT_STOPS[i + 1][c] - _HEAT_STOPS[i][c])
        for c in range(3)
    ]
    return "#" + "".join(f"{int(round(255 * v)):02x}" for v in rgb)


def heatmap(
    path,
    values,
    x_extent,
    y_extent,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    max_cells: int = 128,
) -> None:
    """Write a decimated heatmap of a 2-D array (rows along y, columns x)."""
    rows = len(values)
    cols = len(values[0])
    step_r = max(1, rows // max_cells)
    step_c = max(1, cols // max_cells)
    sub = [
        [float(values[r][c]) for c in range(0, cols, step_c)]
        for r in range(0, rows, step_r)
    ]
    vmax = max(max(row) for row in sub) or 1.0
    nr, nc = len(sub), len(sub[0])
    cell_w = (WIDTH - MARGIN_L - MARGIN_R) / nc
    cell_h = (HEIGHT - MARGIN_T - MARGIN_B) / nr
    canvas = _Canvas(title, xlabel, ylabel)
    for r in range(nr):
        for c in range(nc):
            color = _heat_color(sub[r][c] / vmax)
            px = MARGIN_L + c * cell_w
            py = HEIGHT - MARGIN_B - (r + 1) * cell_h
            canvas.parts.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cell_w + 0.5)}" '
                f'height="{_fmt(cell_h + 0.5)}" fill="{color}"/>'
            )
    for axis, (lo, hi) in (("x", x_extent), ("y", y_extent)):
        if axis == "x":
            canvas.parts.append(
                f'<text x="{MARGIN_L}" y="{HEIGHT - MARGIN_B + 18}" '
                f'font-family="sans-serif" font-size="10">{_tick_label(lo)}</text>'
                f'<text x="{WIDTH - MARGIN_R}" y="{HEIGHT - MARGIN_B + 18}" '
                f'text-anchor="end" font-family="sans-serif" font-size="10">'
                f"{_tick_label(hi)}</text>"
            )
        else:
            canvas.parts.append(
                f'<text x="{MARGIN_L - 8}" y="{HEIGHT - MARGIN_B}" '
                f'text-anchor="end" font-family="sans-serif" font-size="10">'
                f"{_tick_label(lo)}</text>"
                f'<text x="{MARGIN_L - 8}" y="{MARGIN_T + 10}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{_tick_label(hi)}</text>'
            )
    canvas.frame()
    canvas.save(path)
