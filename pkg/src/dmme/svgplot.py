"""Tiny static SVG line-plot writer (axes, ticks, legend, solid and dashed lines)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

W, H = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 40, 55


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12 * step:
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


def line_plot(series, title: str = "", xlabel: str = "t", ylabel: str = "") -> str:
    """Render ``series`` as an SVG document.

    Each item is ``(label, x, y)`` or ``(label, x, y, dashed)``; NaNs break a line.
    """
    xs = np.concatenate([np.asarray(s[1], float) for s in series])
    ys = np.concatenate([np.asarray(s[2], float) for s in series])
    ys = ys[np.isfinite(ys)]
    x0, x1 = float(np.min(xs)), float(np.max(xs))
    y0, y1 = (float(np.min(ys)), float(np.max(ys))) if len(ys) else (0.0, 1.0)
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    if x1 <= x0:
        x1 = x0 + 1.0
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return TOP + (1.0 - (y - y0) / (y1 - y0)) * ph

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        X = _fmt(px(t))
        parts.append(f'<line x1="{X}" y1="{TOP + ph}" x2="{X}" y2="{TOP + ph + 5}" stroke="black"/>')
        parts.append(f'<text x="{X}" y="{TOP + ph + 18}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        Y = _fmt(py(t))
        parts.append(f'<line x1="{LEFT - 5}" y1="{Y}" x2="{LEFT}" y2="{Y}" stroke="black"/>')
        parts.append(f'<text x="{LEFT - 8}" y="{Y}" text-anchor="end" dominant-baseline="middle">{t:.4g}</text>')
    if title:
        parts.append(f'<text x="{LEFT + pw / 2:.2f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    parts.append(f'<text x="{LEFT + pw / 2:.2f}" y="{H - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        parts.append(
            f'<text x="16" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {TOP + ph / 2:.2f})">{escape(ylabel)}</text>'
        )

    for i, s in enumerate(series):
        label, x, y = s[0], np.asarray(s[1], float), np.asarray(s[2], float)
        dashed = bool(s[3]) if len(s) > 3 else False
        color = PALETTE[i % len(PALETTE)]
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        segs, cur = [], []
        for a, b in zip(x, y):
            if math.isfinite(b):
                cur.append(f"{_fmt(px(a))},{_fmt(py(b))}")
            elif cur:
                segs.append(cur)
                cur = []
        if cur:
            segs.append(cur)
        for seg in segs:
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash} points="{" ".join(seg)}"/>')
        ly = TOP + 14 + 18 * i
        lx = LEFT + pw + 12
        parts.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="1.6"{dash}/>')
        parts.append(f'<text x="{lx + 30}" y="{ly}" dominant-baseline="middle">{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
