"""Hand-rendered SVG line charts, no plotting dependency.

Charts are single polylines on a fixed canvas with simple tick labels.
Tail curves use a log-scaled frequency axis; zero frequencies cannot be
drawn on a log axis and are dropped from the polyline.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 50

_STYLE = (
    "text { font-family: monospace; font-size: 12px; } "
    ".title { font-size: 14px; } "
    ".axis { stroke: #333; stroke-width: 1; } "
    ".grid { stroke: #ddd; stroke-width: 1; } "
    ".curve { stroke: #1f6feb; stroke-width: 2; fill: none; }"
)


def _spread(lo: float, hi: float) -> tuple[float, float]:
    if hi <= lo:
        pad = max(abs(lo), 1.0) * 0.5
        return lo - pad, hi + pad
    return lo, hi


def _x_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def line_chart(
    xs,
    ys,
    title: str,
    x_label: str = "T",
    y_label: str = "frequency",
    y_log: bool = True,
) -> str:
    """SVG document for one polyline; log-y drops nonpositive points."""
    points = [(float(x), float(y)) for x, y in zip(xs, ys)]
    if y_log:
        points = [(x, y) for x, y in points if y > 0.0]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<style>{_STYLE}</style>",
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text class="title" x="{WIDTH / 2:.1f}" y="20" text-anchor="middle">'
        f"{escape(title)}</text>",
    ]
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h

    parts.append(
        f'<line class="axis" x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}"/>'
    )
    parts.append(
        f'<line class="axis" x1="{x0}" y1="{MARGIN_TOP}" x2="{x0}" y2="{y0}"/>'
    )
    parts.append(
        f'<text x="{x0 + plot_w / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">'
        f"{escape(x_label)}</text>"
    )
    parts.append(
        f'<text x="18" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN_TOP + plot_h / 2:.1f})">'
        f"{escape(y_label)}{' (log scale)' if y_log else ''}</text>"
    )

    if not points:
        parts.append(
            f'<text x="{x0 + plot_w / 2:.1f}" y="{MARGIN_TOP + plot_h / 2:.1f}" '
            f'text-anchor="middle">no positive values to draw</text>'
        )
        parts.append("</svg>")
        return "\n".join(parts)

    x_lo, x_hi = _spread(min(p[0] for p in points), max(p[0] for p in points))
    if y_log:
        y_values = [math.log10(p[1]) for p in points]
    else:
        y_values = [p[1] for p in points]
    y_lo, y_hi = _spread(min(y_values), max(y_values))

    def to_px(x: float, yv: float) -> tuple[float, float]:
        px = x0 + (x - x_lo) / (x_hi - x_lo) * plot_w
        py = y0 - (yv - y_lo) / (y_hi - y_lo) * plot_h
        return px, py

    for tick in _x_ticks(x_lo, x_hi):
        px, _ = to_px(tick, y_lo)
        parts.append(
            f'<line class="grid" x1="{px:.1f}" y1="{MARGIN_TOP}" '
            f'x2="{px:.1f}" y2="{y0}"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{y0 + 18}" text-anchor="middle">{tick:g}</text>'
        )
    if y_log:
        lo_decade = math.floor(y_lo)
        hi_decade = math.ceil(y_hi)
        y_ticks = [float(d) for d in range(lo_decade, hi_decade + 1)]
        labels = [f"1e{int(d)}" for d in y_ticks]
    else:
        y_ticks = _x_ticks(y_lo, y_hi)
        labels = [f"{t:g}" for t in y_ticks]
    for tick, label in zip(y_ticks, labels):
        if not y_lo <= tick <= y_hi:
            continue
        _, py = to_px(x_lo, tick)
        parts.append(
            f'<line class="grid" x1="{x0}" y1="{py:.1f}" '
            f'x2="{x0 + plot_w}" y2="{py:.1f}"/>'
        )
        parts.append(
            f'<text x="{x0 - 6}" y="{py + 4:.1f}" text-anchor="end">{label}</text>'
        )

    coords = " ".join(f"{px:.2f},{py:.2f}" for px, py in (to_px(x, yv) for (x, _), yv in zip(points, y_values)))
    parts.append(f'<polyline class="curve" points="{coords}"/>')
    for (x, _), yv in zip(points, y_values):
        px, py = to_px(x, yv)
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="#1f6feb"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def tail_curve_svg(curve, title: str) -> str:
    """Log-frequency chart of one exceedance curve."""
    xs = [point.threshold for point in curve]
    ys = [point.frequency for point in curve]
    return line_chart(xs, ys, title, x_label="T", y_label="frequency", y_log=True)


def profile_svg(values, title: str, x_label: str = "index") -> str:
    """Linear chart of a per-index profile."""
    xs = list(range(1, len(values) + 1))
    return line_chart(
        xs, list(values), title, x_label=x_label, y_label="value", y_log=False
    )
