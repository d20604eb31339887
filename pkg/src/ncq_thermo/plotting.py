"""Static SVG line plots of sweep rows (NC oscillator vs HO baseline).

Hand-written SVG keeps the output byte-for-byte deterministic.
"""
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import ValidationError
from .sweep import Status

NHO_COLOR = "#7b3294"
HO_COLOR = "#008837"


@dataclass(frozen=True)
class PlotConfig:
    title: str = ""
    x_label: str = "NC parameter gamma"
    y_label: str = "COP"
    width: int = 640
    height: int = 440
    margin: int = 70
    ticks: int = 5


def _fmt(v):
    return f"{v:.2f}"


def _nice_range(lo, hi):
    if hi == lo:
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def emit_svg(rows, config=PlotConfig()):
    """Render merit against the swept value; returns UTF-8 SVG bytes."""
    ok = [r for r in rows if r.status is Status.OK and r.merit_nho is not None]
    if len(ok) < 2:
        raise ValidationError(f"need at least 2 plottable (OK) rows, got {len(ok)}")
    ho = [r for r in ok if r.merit_ho is not None]

    xs = [r.swept_value for r in ok]
    ys = [r.merit_nho for r in ok] + [r.merit_ho for r in ho]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = _nice_range(min(ys), max(ys))
    m = config.margin
    plot_w = config.width - 2 * m
    plot_h = config.height - 2 * m

    def px(x):
        return m + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return config.height - m - (y - y_lo) / (y_hi - y_lo) * plot_h

    def polyline(points, color, css_class):
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in points)
        return (f'<polyline class="{css_class}" fill="none" stroke="{color}" '
                f'stroke-width="2" points="{coords}"/>')

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{config.width}" height="{config.height}" '
        f'viewBox="0 0 {config.width} {config.height}" font-family="sans-serif" font-size="12">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if config.title:
        out.append(f'<text x="{config.width / 2:.1f}" y="{m / 2:.1f}" text-anchor="middle" '
                   f'font-size="14">{escape(config.title)}</text>')
    x0, y0 = m, config.height - m
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{m}" stroke="black"/>')
    for i in range(config.ticks + 1):
        xv = x_lo + (x_hi - x_lo) * i / config.ticks
        yv = y_lo + (y_hi - y_lo) * i / config.ticks
        out.append(f'<line x1="{_fmt(px(xv))}" y1="{y0}" x2="{_fmt(px(xv))}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(px(xv))}" y="{y0 + 18}" text-anchor="middle">{xv:.4g}</text>')
        out.append(f'<line x1="{x0 - 5}" y1="{_fmt(py(yv))}" x2="{x0}" y2="{_fmt(py(yv))}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{_fmt(py(yv) + 4)}" text-anchor="end">{yv:.4g}</text>')
    out.append(f'<text x="{x0 + plot_w / 2:.1f}" y="{config.height - m / 3:.1f}" '
               f'text-anchor="middle">{escape(config.x_label)}</text>')
    out.append(f'<text x="{m / 3:.1f}" y="{m + plot_h / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 {m / 3:.1f} {m + plot_h / 2:.1f})">{escape(config.y_label)}</text>')

    out.append(polyline([(r.swept_value, r.merit_nho) for r in ok], NHO_COLOR, "nho"))
    if len(ho) >= 2:
        out.append(polyline([(r.swept_value, r.merit_ho) for r in ho], HO_COLOR, "ho"))

    lx, ly = x0 + plot_w - 150, m + 10
    out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{NHO_COLOR}" stroke-width="2"/>')
    out.append(f'<text x="{lx + 32}" y="{ly + 4}">NHO</text>')
    out.append(f'<line x1="{lx}" y1="{ly + 18}" x2="{lx + 25}" y2="{ly + 18}" stroke="{HO_COLOR}" stroke-width="2"/>')
    out.append(f'<text x="{lx + 32}" y="{ly + 22}">HO</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
