"""Minimal deterministic SVG charts (line/marker series and bar histograms).

Every marker and bar carries ``data-*`` attributes with its unscaled value so
the output can be checked without rasterizing.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 40, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _num(value: float) -> str:
    return format(value, ".6g")


def _px(value: float) -> str:
    return f"{value:.2f}"


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        pad = abs(lo) * 0.1 or 1.0
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / max(target - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.floor(lo / step) * step
    ticks = []
    k = 0
    while True:
        t = start + k * step
        if t > hi + step * 1e-9:
            break
        ticks.append(round(t, 12))
        k += 1
    if ticks[-1] < hi:
        ticks.append(round(ticks[-1] + step, 12))
    return ticks


class _Frame:
    def __init__(self, xticks, yticks):
        self.x0, self.x1 = xticks[0], xticks[-1]
        self.y0, self.y1 = yticks[0], yticks[-1]
        self.pw = WIDTH - LEFT - RIGHT
        self.ph = HEIGHT - TOP - BOTTOM

    def sx(self, v):
        return LEFT + (v - self.x0) / (self.x1 - self.x0) * self.pw

    def sy(self, v):
        return TOP + self.ph - (v - self.y0) / (self.y1 - self.y0) * self.ph


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text class="title" x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" '
        f'font-size="15">{escape(title)}</text>',
    ]


def _axes(frame: _Frame, xticks, yticks, xlabel, ylabel, xtick_labels=None) -> list[str]:
    out = [
        f'<g class="axes" stroke="black" stroke-width="1">',
        f'<line x1="{LEFT}" y1="{_px(TOP + frame.ph)}" x2="{_px(LEFT + frame.pw)}" '
        f'y2="{_px(TOP + frame.ph)}"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{_px(TOP + frame.ph)}"/>',
        "</g>",
    ]
    base = TOP + frame.ph
    for i, t in enumerate(xticks):
        label = xtick_labels[i] if xtick_labels else _num(t)
        px = frame.sx(t)
        out.append(
            f'<line class="xtick" x1="{_px(px)}" y1="{_px(base)}" x2="{_px(px)}" '
            f'y2="{_px(base + 5)}" stroke="black"/>'
        )
        out.append(
            f'<text class="xtick-label" x="{_px(px)}" y="{_px(base + 18)}" '
            f'text-anchor="middle">{escape(label)}</text>'
        )
    for t in yticks:
        py = frame.sy(t)
        out.append(
            f'<line class="ytick" x1="{LEFT - 5}" y1="{_px(py)}" x2="{LEFT}" y2="{_px(py)}" '
            f'stroke="black"/>'
        )
        out.append(
            f'<text class="ytick-label" x="{LEFT - 8}" y="{_px(py + 4)}" '
            f'text-anchor="end">{_num(t)}</text>'
        )
    out.append(
        f'<text class="xlabel" x="{_px(LEFT + frame.pw / 2)}" y="{HEIGHT - 15}" '
        f'text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text class="ylabel" x="18" y="{_px(TOP + frame.ph / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 18 {_px(TOP + frame.ph / 2)})">{escape(ylabel)}</text>'
    )
    return out


def line_chart(series, title: str, xlabel: str, ylabel: str) -> str:
    """``series`` is a list of ``(label, xs, ys)``; NaN points are skipped."""
    clean = []
    for label, xs, ys in series:
        pts = [(float(a), float(b)) for a, b in zip(xs, ys) if not (math.isnan(a) or math.isnan(b))]
        clean.append((label, pts))
    all_x = [a for _, pts in clean for a, _ in pts]
    all_y = [b for _, pts in clean for _, b in pts]
    xticks = nice_ticks(min(all_x), max(all_x))
    yticks = nice_ticks(min(all_y), max(all_y))
    frame = _Frame(xticks, yticks)
    out = _header(title) + _axes(frame, xticks, yticks, xlabel, ylabel)
    for i, (label, pts) in enumerate(clean):
        color = PALETTE[i % len(PALETTE)]
        out.append(f'<g class="series" data-series={quoteattr(label)}>')
        if len(pts) >= 2:
            coords = " ".join(f"{_px(frame.sx(a))},{_px(frame.sy(b))}" for a, b in pts)
            out.append(f'<polyline class="series-line" fill="none" stroke="{color}" '
                       f'stroke-width="1.5" points="{coords}"/>')
        for a, b in pts:
            out.append(
                f'<circle class="marker" cx="{_px(frame.sx(a))}" cy="{_px(frame.sy(b))}" r="3" '
                f'fill="{color}" data-x="{_num(a)}" data-y="{_num(b)}"/>'
            )
        out.append("</g>")
        ly = TOP + 10 + 18 * i
        lx = WIDTH - RIGHT + 15
        out.append(f'<rect class="legend-swatch" x="{lx}" y="{ly - 8}" width="12" height="12" '
                   f'fill="{color}"/>')
        out.append(f'<text class="legend" x="{lx + 18}" y="{ly + 2}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def bar_chart(labels, values, title: str, xlabel: str, ylabel: str) -> str:
    values = [float(v) for v in values]
    yticks = nice_ticks(0.0, max(max(values), 1e-12))
    n = len(labels)
    xticks = list(range(n))
    # bars sit on integer slots with half a slot of margin either side
    frame = _Frame([-0.5, n - 0.5], yticks)
    out = _header(title) + _axes(frame, xticks, yticks, xlabel, ylabel, xtick_labels=list(labels))
    slot = frame.pw / n
    for i, (label, value) in enumerate(zip(labels, values)):
        top = frame.sy(value)
        out.append(
            f'<rect class="bar" x="{_px(frame.sx(i) - 0.35 * slot)}" y="{_px(top)}" '
            f'width="{_px(0.7 * slot)}" height="{_px(frame.sy(yticks[0]) - top)}" '
            f'fill="{PALETTE[0]}" data-label={quoteattr(str(label))} data-value="{_num(value)}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
