"""Minimal SVG line plots: axes, ticks, polylines, legend.  No framework.

Built for convergence curves, so the y axis is log10 (scores span many
decades) and non-finite points are dropped from the polylines.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

__all__ = ["polyline_plot"]

WIDTH, HEIGHT = 720, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 160, 40, 50

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#7f7f7f")


def _finite_points(curves):
    pts = []
    for _, ys in curves:
        for x, y in enumerate(ys):
            if math.isfinite(y) and y > 0:
                pts.append((x, math.log10(y)))
    return pts


def polyline_plot(curves, title="", x_label="", y_label="") -> str:
    """Render (label, values) curves to an SVG document string."""
    curves = list(curves)
    pts = _finite_points(curves)
    if pts:
        x_max = max(p[0] for p in pts)
        y_lo = min(p[1] for p in pts)
        y_hi = max(p[1] for p in pts)
    else:
        x_max, y_lo, y_hi = 1, 0.0, 1.0
    x_max = max(x_max, 1)
    if y_hi - y_lo < 1e-9:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + plot_w * x / x_max

    def sy(logy):
        return MARGIN_T + plot_h * (y_hi - logy) / (y_hi - y_lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="monospace" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{MARGIN_L}" y="24" font-size="14">{escape(title)}</text>',
        # axes
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
    ]

    for x in range(0, x_max + 1, max(1, x_max // 10)):
        px = sx(x)
        out.append(f'<line x1="{px:.1f}" y1="{HEIGHT - MARGIN_B}" x2="{px:.1f}" '
                   f'y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.1f}" y="{HEIGHT - MARGIN_B + 18}" '
                   f'text-anchor="middle">{x}</text>')

    lo_tick = math.floor(y_lo)
    hi_tick = math.ceil(y_hi)
    step = max(1, (hi_tick - lo_tick) // 8)
    for t in range(lo_tick, hi_tick + 1, step):
        if not y_lo <= t <= y_hi:
            continue
        py = sy(t)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{py:.1f}" x2="{MARGIN_L}" '
                   f'y2="{py:.1f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{py + 4:.1f}" '
                   f'text-anchor="end">1e{t}</text>')

    out.append(f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 12}" '
               f'text-anchor="middle">{escape(x_label)}</text>')
    out.append(f'<text x="16" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {MARGIN_T + plot_h / 2:.1f})">'
               f'{escape(y_label)}</text>')

    for i, (label, ys) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        coords = [f"{sx(x):.1f},{sy(math.log10(y)):.1f}"
                  for x, y in enumerate(ys) if math.isfinite(y) and y > 0]
        if coords:
            out.append(f'<polyline points="{" ".join(coords)}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5"/>')
        ly = MARGIN_T + 14 * i
        out.append(f'<line x1="{WIDTH - MARGIN_R + 8}" y1="{ly + 4}" '
                   f'x2="{WIDTH - MARGIN_R + 28}" y2="{ly + 4}" '
                   f'stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{WIDTH - MARGIN_R + 32}" y="{ly + 8}">'
                   f'{escape(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
