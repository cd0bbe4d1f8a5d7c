"""Delimited outputs, deterministic SVG locus plots and matplotlib figures.

CSV and JSON values are written with repr-shortest float formatting, which
round-trips binary64 exactly and makes repeated runs byte-identical.  SVG
output is assembled by hand (fixed element order, fixed coordinate
formatting) for the same reason; PNG figures go through matplotlib and are
for human inspection only.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Sequence

from .errors import EmptyInput
from .tracer import EndpointKind, LocusCurve

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf")


def _fmt(value: float) -> str:
    return repr(float(value))


def write_curve_csv(curve: LocusCurve, path: str | Path) -> None:
    lines = ["index,sigma,t,K,residual"]
    for i, pt in enumerate(curve.points):
        lines.append(f"{i},{_fmt(pt.s.sigma)},{_fmt(pt.s.t)},{_fmt(pt.k)},{_fmt(pt.residual)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_fan_csv(entries: Sequence[tuple[float, float]], path: str | Path) -> None:
    """Rows of (degree, angle) in radians."""
    lines = ["degree,angle"]
    for degree, angle in entries:
        lines.append(f"{_fmt(degree)},{_fmt(angle)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_scan_csv(hits, path: str | Path) -> None:
    lines = ["sigma,t,residual"]
    for point, residual in hits:
        lines.append(f"{_fmt(point.sigma)},{_fmt(point.t)},{_fmt(residual)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj, path: str | Path) -> None:
    Path(path).write_text(canonical_json(obj), encoding="utf-8")


# -- SVG ----------------------------------------------------------------------


def _collect_geometry(curves: Sequence[LocusCurve], fn):
    points: list[complex] = []
    for curve in curves:
        points.extend(p.s.as_complex() for p in curve.points)
    zeros = [loc.as_complex() for loc, _ in fn.zero_anchors()]
    poles = [loc.as_complex() for loc, _ in fn.pole_anchors()]
    saddles = [c.saddle_event.location.as_complex() for c in curves
               if c.saddle_event is not None]
    return points, zeros, poles, saddles


def emit_plot(curves: Sequence[LocusCurve], fn, path: str | Path) -> None:
    """Deterministic SVG: poles as crosses, zeros as circles, one polyline per
    curve labeled by its degree, saddle stops as diamonds."""
    drawable = [c for c in curves if c.points]
    if not drawable:
        raise EmptyInput("no curve points to plot")
    points, zeros, poles, saddles = _collect_geometry(drawable, fn)
    everything = points + zeros + poles + saddles
    re_lo = min(w.real for w in everything)
    re_hi = max(w.real for w in everything)
    im_lo = min(w.imag for w in everything)
    im_hi = max(w.imag for w in everything)
    span = max(re_hi - re_lo, im_hi - im_lo, 1e-6)
    margin = 0.08 * span
    re_lo, re_hi = re_lo - margin, re_hi + margin
    im_lo, im_hi = im_lo - margin, im_hi + margin
    width, height = 800.0, 600.0
    scale = min(width / (re_hi - re_lo), height / (im_hi - im_lo))
    x_off = 0.5 * (width - scale * (re_hi - re_lo))
    y_off = 0.5 * (height - scale * (im_hi - im_lo))

    def xy(w: complex) -> tuple[str, str]:
        x = x_off + scale * (w.real - re_lo)
        y = height - (y_off + scale * (w.imag - im_lo))
        return f"{x:.3f}", f"{y:.3f}"

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" '
        'viewBox="0 0 800 600">',
        '<rect width="800" height="600" fill="#ffffff"/>',
        '<g class="curves" fill="none" stroke-width="1.5">',
    ]
    for i, curve in enumerate(drawable):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(",".join(xy(p.s.as_complex())) for p in curve.points)
        parts.append(f'<polyline class="curve" stroke="{color}" points="{coords}"/>')
        x0, y0 = xy(curve.points[0].s.as_complex())
        label = f"{curve.degree.pi_units:g}&#960;"
        parts.append(
            f'<text class="degree-label" x="{x0}" y="{y0}" fill="{color}" '
            f'font-size="12" dx="4" dy="-4">{label}</text>'
        )
    parts.append("</g>")
    parts.append('<g class="poles" stroke="#000000" stroke-width="1.5">')
    for w in poles:
        x, y = xy(w)
        xf, yf = float(x), float(y)
        parts.append(f'<line x1="{xf-5:.3f}" y1="{yf-5:.3f}" x2="{xf+5:.3f}" y2="{yf+5:.3f}"/>')
        parts.append(f'<line x1="{xf-5:.3f}" y1="{yf+5:.3f}" x2="{xf+5:.3f}" y2="{yf-5:.3f}"/>')
    parts.append("</g>")
    parts.append('<g class="zeros" fill="none" stroke="#000000" stroke-width="1.5">')
    for w in zeros:
        x, y = xy(w)
        parts.append(f'<circle cx="{x}" cy="{y}" r="5"/>')
    parts.append("</g>")
    parts.append('<g class="saddles" fill="#444444">')
    for w in saddles:
        x, y = xy(w)
        xf, yf = float(x), float(y)
        pts = f"{xf:.3f},{yf-6:.3f} {xf+6:.3f},{yf:.3f} {xf:.3f},{yf+6:.3f} {xf-6:.3f},{yf:.3f}"
        parts.append(f'<polygon class="saddle" points="{pts}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


# -- matplotlib figures ---------------------------------------------------------


def render_figure(curves: Sequence[LocusCurve], fn, path: str | Path,
                  title: str | None = None) -> None:
    """PNG companion for the SVG, rendered with matplotlib (not byte-stable)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    drawable = [c for c in curves if c.points]
    if not drawable:
        raise EmptyInput("no curve points to plot")
    fig, ax = plt.subplots(figsize=(8, 6))
    for i, curve in enumerate(drawable):
        xs = [p.s.sigma for p in curve.points]
        ys = [p.s.t for p in curve.points]
        ax.plot(xs, ys, lw=1.2, color=_PALETTE[i % len(_PALETTE)],
                label=f"{curve.degree.pi_units:g}$\\pi$ -> {curve.terminus.kind.value}")
    for loc, _ in fn.pole_anchors():
        ax.plot([loc.sigma], [loc.t], "kx", ms=9, mew=1.8)
    for loc, _ in fn.zero_anchors():
        ax.plot([loc.sigma], [loc.t], "o", ms=9, mfc="none", mec="k")
    for curve in drawable:
        if curve.saddle_event is not None:
            loc = curve.saddle_event.location
            ax.plot([loc.sigma], [loc.t], "D", ms=7, mfc="#444444", mec="k")
    ax.set_xlabel(r"$\sigma$")
    ax.set_ylabel(r"$t$")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    if title:
        ax.set_title(title)
    if len(drawable) <= 10:
        ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scan_figure(hits, fn, path: str | Path, title: str | None = None) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 6))
    if hits:
        xs = [p.sigma for p, _ in hits]
        ys = [p.t for p, _ in hits]
        ax.scatter(xs, ys, s=4, c="#1f77b4", label=f"{len(hits)} oracle points")
        ax.legend(fontsize=8)
    for loc, _ in fn.pole_anchors():
        ax.plot([loc.sigma], [loc.t], "kx", ms=9, mew=1.8)
    for loc, _ in fn.zero_anchors():
        ax.plot([loc.sigma], [loc.t], "o", ms=9, mfc="none", mec="k")
    ax.set_xlabel(r"$\sigma$")
    ax.set_ylabel(r"$t$")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
