"""Minimal deterministic SVG charts.

Everything is written as plain SVG text with fixed-precision coordinates, so
identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#393b79",
    "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd",
)
GRAY = "#c7c7c7"

W, H = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 60


def _f(x: float) -> str:
    return f"{x:.2f}"


def _doc(body: list[str], title: str, width: int = W, height: int = H) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<text x="{width / 2:.0f}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _tick(x: float) -> str:
    if x == 0:
        return "0"
    if abs(x) >= 1000 or abs(x) < 0.01:
        return f"{x:.2g}"
    return f"{x:.3g}"


def _axes(xmin, xmax, ymin, ymax, xlabel, ylabel) -> tuple[list[str], callable, callable]:
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM
    xspan = (xmax - xmin) or 1.0
    yspan = (ymax - ymin) or 1.0

    def sx(x):
        return LEFT + (x - xmin) / xspan * pw

    def sy(y):
        return TOP + ph - (y - ymin) / yspan * ph

    out = [
        f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>',
        f'<text x="{LEFT + pw / 2:.0f}" y="{H - 15}" text-anchor="middle">{escape(xlabel)}</text>',
        f'<text x="15" y="{TOP + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {TOP + ph / 2:.0f})">{escape(ylabel)}</text>',
    ]
    for i in range(5):
        yv = ymin + yspan * i / 4
        out.append(f'<text x="{LEFT - 6}" y="{_f(sy(yv) + 4)}" text-anchor="end">{_tick(yv)}</text>')
        xv = xmin + xspan * i / 4
        out.append(f'<text x="{_f(sx(xv))}" y="{TOP + ph + 18}" text-anchor="middle">{_tick(xv)}</text>')
    return out, sx, sy


def histogram_svg(xs: Sequence[float], counts: Sequence[float], title: str, xlabel: str, ylabel: str) -> str:
    xmin, xmax = min(xs), max(xs)
    axes, sx, sy = _axes(xmin - 0.5, xmax + 0.5, 0, max(counts), xlabel, ylabel)
    bw = max((sx(xmin + 1) - sx(xmin)) * 0.9, 0.5)
    bars = [
        f'<rect x="{_f(sx(x) - bw / 2)}" y="{_f(sy(c))}" width="{_f(bw)}" height="{_f(sy(0) - sy(c))}" fill="{PALETTE[0]}"/>'
        for x, c in zip(xs, counts)
    ]
    return _doc(axes + bars, title)


def line_svg(xs: Sequence[float], ys: Sequence[float], title: str, xlabel: str, ylabel: str) -> str:
    axes, sx, sy = _axes(min(xs), max(xs), 0, max(1.0, max(ys)), xlabel, ylabel)
    pts = " ".join(f"{_f(sx(x))},{_f(sy(y))}" for x, y in zip(xs, ys))
    return _doc(axes + [f'<polyline points="{pts}" fill="none" stroke="{PALETTE[0]}" stroke-width="2"/>'], title)


def scatter_svg(xs: Sequence[float], ys: Sequence[float], colors: Sequence[str], title: str,
                xlabel: str, ylabel: str, radius: float = 2.5) -> str:
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    axes, sx, sy = _axes(lo_x, hi_x, lo_y, hi_y, xlabel, ylabel)
    # gray points first so coloured communities stay visible
    order = sorted(range(len(xs)), key=lambda i: colors[i] != GRAY)
    dots = [
        f'<circle cx="{_f(sx(xs[i]))}" cy="{_f(sy(ys[i]))}" r="{radius}" fill="{colors[i]}" fill-opacity="0.8"/>'
        for i in order
    ]
    return _doc(axes + dots, title)


def bar_svg(labels: Sequence[str], values: Sequence[float | None], title: str, ylabel: str) -> str:
    finite = [v for v in values if v is not None and math.isfinite(v)]
    ymin = min([0.0] + finite)
    ymax = max([0.0] + finite)
    if ymin == ymax:
        ymax = ymin + 1.0
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM

    def sy(y):
        return TOP + ph - (y - ymin) / (ymax - ymin) * ph

    slot = pw / max(len(labels), 1)
    body = [
        f'<line x1="{LEFT}" y1="{_f(sy(0))}" x2="{LEFT + pw}" y2="{_f(sy(0))}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>',
        f'<text x="15" y="{TOP + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {TOP + ph / 2:.0f})">{escape(ylabel)}</text>',
    ]
    for i in range(5):
        yv = ymin + (ymax - ymin) * i / 4
        body.append(f'<text x="{LEFT - 6}" y="{_f(sy(yv) + 4)}" text-anchor="end">{_tick(yv)}</text>')
    for i, (lab, v) in enumerate(zip(labels, values)):
        cx = LEFT + slot * (i + 0.5)
        if v is None or not math.isfinite(v):
            body.append(f'<text x="{_f(cx)}" y="{_f(sy(0) - 4)}" text-anchor="middle">NA</text>')
        else:
            top, bottom = sorted((sy(v), sy(0)))
            body.append(
                f'<rect x="{_f(cx - slot * 0.35)}" y="{_f(top)}" width="{_f(slot * 0.7)}" '
                f'height="{_f(bottom - top)}" fill="{PALETTE[i % len(PALETTE)]}"/>'
            )
            body.append(f'<text x="{_f(cx)}" y="{_f(top - 4)}" text-anchor="middle">{v:.3f}</text>')
        body.append(f'<text x="{_f(cx)}" y="{TOP + ph + 18}" text-anchor="middle">{escape(lab)}</text>')
    return _doc(body, title)


def radar_svg(labels: Sequence[str], values: Sequence[float | None], title: str) -> str:
    """One polygon with a vertex per spoke; radii scaled to [0, max finite value]."""
    size = 520
    cx = cy = size / 2
    r_max = size / 2 - 90
    finite = [v for v in values if v is not None and math.isfinite(v)]
    top = max([v for v in finite if v > 0], default=0.0)
    k = len(labels)
    body = []
    for ring in (0.25, 0.5, 0.75, 1.0):
        pts = " ".join(
            f"{_f(cx + ring * r_max * math.sin(2 * math.pi * i / k))},"
            f"{_f(cy - ring * r_max * math.cos(2 * math.pi * i / k))}"
            for i in range(k)
        )
        body.append(f'<polygon class="grid" points="{pts}" fill="none" stroke="{GRAY}"/>')
    vertices = []
    for i, (lab, v) in enumerate(zip(labels, values)):
        ang = 2 * math.pi * i / k
        ex, ey = cx + r_max * math.sin(ang), cy - r_max * math.cos(ang)
        body.append(f'<line x1="{_f(cx)}" y1="{_f(cy)}" x2="{_f(ex)}" y2="{_f(ey)}" stroke="{GRAY}"/>')
        if v is None or math.isnan(v):
            frac, text = 0.0, "NA"
        elif math.isinf(v):
            frac, text = (1.0 if v > 0 else 0.0), ("inf" if v > 0 else "-inf")
        else:
            frac = max(v, 0.0) / top if top > 0 else 0.0
            text = f"{v:.4g}"
        vertices.append(f"{_f(cx + frac * r_max * math.sin(ang))},{_f(cy - frac * r_max * math.cos(ang))}")
        lx, ly = cx + (r_max + 40) * math.sin(ang), cy - (r_max + 40) * math.cos(ang)
        body.append(f'<text x="{_f(lx)}" y="{_f(ly)}" text-anchor="middle">{escape(lab)}</text>')
        body.append(f'<text x="{_f(lx)}" y="{_f(ly + 14)}" text-anchor="middle" font-size="10">{text}</text>')
    body.append(
        f'<polygon class="values" points="{" ".join(vertices)}" fill="{PALETTE[0]}" '
        f'fill-opacity="0.3" stroke="{PALETTE[0]}" stroke-width="2"/>'
    )
    return _doc(body, title, size, size)


def write(path: str | Path, svg: str) -> Path:
    path = Path(path)
    path.write_text(svg)
    return path
