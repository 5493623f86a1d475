"""Minimal polyline plots as SVG text. Diagnostic quality only."""

from __future__ import annotations

from typing import Dict, Sequence
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 800, 600
MARGIN = 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _num(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    return f"{v:.6g}"


def polyline_svg(x: Sequence[float], series: Dict[str, Sequence[float]], title: str = "") -> str:
    x = np.asarray(x, dtype=float)
    ys = {name: np.asarray(v, dtype=float) for name, v in series.items()}
    x_lo, x_hi = float(x.min()), float(x.max())
    all_y = np.concatenate(list(ys.values())) if ys else np.zeros(1)
    y_lo, y_hi = float(all_y.min()), float(all_y.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    def sx(v):
        return MARGIN + (v - x_lo) / (x_hi - x_lo) * (WIDTH - 2 * MARGIN)

    def sy(v):
        return HEIGHT - MARGIN - (v - y_lo) / (y_hi - y_lo) * (HEIGHT - 2 * MARGIN)

    left, right = MARGIN, WIDTH - MARGIN
    top, bottom = MARGIN, HEIGHT - MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
    ]
    # ticks at the data extremes only
    for v, anchor in ((x_lo, "start"), (x_hi, "end")):
        px = _num(sx(v))
        out.append(f'<line x1="{px}" y1="{bottom}" x2="{px}" y2="{bottom + 6}" stroke="black"/>')
        out.append(f'<text x="{px}" y="{bottom + 20}" font-size="12" text-anchor="{anchor}">{_label(v)}</text>')
    for v in (y_lo, y_hi):
        py = _num(sy(v))
        out.append(f'<line x1="{left - 6}" y1="{py}" x2="{left}" y2="{py}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py}" font-size="12" text-anchor="end" '
                   f'dominant-baseline="middle">{_label(v)}</text>')
    if title:
        out.append(f'<text x="{WIDTH // 2}" y="{MARGIN // 2}" font-size="14" '
                   f'text-anchor="middle">{escape(title)}</text>')
    for k, (name, y) in enumerate(ys.items()):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_num(sx(a))},{_num(sy(b))}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = MARGIN + 16 * k
        out.append(f'<text x="{right - 4}" y="{ly}" font-size="12" fill="{color}" '
                   f'text-anchor="end">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
