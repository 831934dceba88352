"""SVG region plots of grid CSV files.

beta runs along the horizontal axis and alpha up the vertical one.  Every
CSV row becomes exactly one element of class "cell" carrying its
coordinates and value, and the stability curve is overlaid as a polyline.
"""
from __future__ import annotations

from typing import Mapping, Sequence
from xml.sax.saxutils import quoteattr

import numpy as np

from .grid import NA, read_csv
from .model import ALPHA_MAX, stability_curve

__all__ = ["DEFAULT_COLUMNS", "default_palette", "render_svg", "svg_from_rows"]

DEFAULT_COLUMNS = ("class", "morse_total", "i_omega_e3", "i1_full_k", "k")
CLASS_COLORS = {"LS": "#2b83ba", "SS": "#fdae61", "SI": "#d7191c"}
SEQUENCE = ("#f7fbff", "#c6dbef", "#6baed6", "#2171b5", "#08306b",
            "#fee391", "#fe9929", "#cc4c02", "#662506", "#41ab5d")
NA_COLOR = "#bdbdbd"

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 130, 20, 60


def _sort_key(v: str):
    try:
        return (0, float(v), v)
    except ValueError:
        order = list(CLASS_COLORS)
        return (1, order.index(v) if v in order else len(order), v)


def default_palette(values: Sequence[str]) -> dict[str, str]:
    """Ordered value -> color map for the distinct values."""
    out: dict[str, str] = {}
    seq = iter(SEQUENCE * (1 + len(values) // len(SEQUENCE)))
    for v in sorted(set(values), key=_sort_key):
        if v == NA:
            out[v] = NA_COLOR
        elif v in CLASS_COLORS:
            out[v] = CLASS_COLORS[v]
        else:
            out[v] = next(seq)
    return out


def _pick_column(header: Sequence[str], column: str | None) -> str:
    if column is not None:
        if column not in header:
            raise ValueError(f"column {column!r} not in CSV header")
        return column
    for c in DEFAULT_COLUMNS:
        if c in header:
            return c
    if len(header) > 2:
        return header[2]
    raise ValueError("CSV has no value column")


def _edges(centers: np.ndarray, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    if len(centers) == 1:
        return np.array([lo]), np.array([hi])
    mid = (centers[1:] + centers[:-1]) / 2
    left = np.concatenate([[centers[0] - (mid[0] - centers[0])], mid])
    right = np.concatenate([mid, [centers[-1] + (centers[-1] - mid[-1])]])
    return left, right


def svg_from_rows(header: Sequence[str], rows: Sequence[Mapping[str, str]],
                  palette: Mapping[str, str] | None = None, column: str | None = None,
                  title: str = "") -> str:
    col = _pick_column(header, column) if len(header) > 2 else None
    values = [r[col] for r in rows] if col else []
    pal = dict(default_palette(values))
    if palette:
        pal.update(palette)
    pts = [(float(r["alpha"]), float(r["beta"])) for r in rows]
    a_vals = np.unique([a for a, _ in pts]) if pts else np.array([0.0, 1.9])
    b_vals = np.unique([b for _, b in pts]) if pts else np.array([0.0, 9.0])
    a_left, a_right = _edges(a_vals, 0.0, ALPHA_MAX)
    b_left, b_right = _edges(b_vals, 0.0, 9.0)
    a_lo, a_hi = float(a_left[0]), float(a_right[-1])
    b_lo, b_hi = float(b_left[0]), float(b_right[-1])
    if a_hi <= a_lo:
        a_lo, a_hi = a_lo - 0.5, a_hi + 0.5
    if b_hi <= b_lo:
        b_lo, b_hi = b_lo - 0.5, b_hi + 0.5
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def X(b):
        return LEFT + (b - b_lo) / (b_hi - b_lo) * pw

    def Y(a):
        return TOP + ph - (a - a_lo) / (a_hi - a_lo) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">']
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g id="cells">')
    # scatter rows (jump curves) are not on a full lattice
    lattice = len(pts) == len(a_vals) * len(b_vals) and len(set(pts)) == len(pts)
    for (a, b), v in zip(pts, values if col else [""] * len(pts)):
        attrs = (f'class="cell" data-alpha={quoteattr(repr(a))} data-beta={quoteattr(repr(b))} '
                 f'data-value={quoteattr(v)} fill="{pal.get(v, NA_COLOR)}"')
        if lattice:
            i = int(np.searchsorted(a_vals, a))
            j = int(np.searchsorted(b_vals, b))
            x0, x1 = X(b_left[j]), X(b_right[j])
            y0, y1 = Y(a_right[i]), Y(a_left[i])
            out.append(f'<rect {attrs} x="{x0:.3f}" y="{y0:.3f}" '
                       f'width="{x1 - x0:.3f}" height="{y1 - y0:.3f}"/>')
        else:
            out.append(f'<circle {attrs} cx="{X(b):.3f}" cy="{Y(a):.3f}" r="2"/>')
    out.append("</g>")
    # stability curve beta = 9 ((alpha - 2) / (alpha + 2))^2
    curve = []
    for a in np.linspace(a_lo, a_hi, 200):
        if not 0.0 <= a < ALPHA_MAX:
            continue
        b = float(stability_curve(a))
        if b_lo <= b <= b_hi:
            curve.append(f"{X(b):.3f},{Y(a):.3f}")
    if curve:
        out.append(f'<polyline id="stability-curve" fill="none" stroke="black" '
                   f'stroke-width="1.5" points="{" ".join(curve)}"/>')
    # axes
    x0, y0 = LEFT, TOP + ph
    out.append(f'<g id="axes" stroke="black" font-size="12" font-family="sans-serif">')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + pw}" y2="{y0}"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{TOP}"/>')
    for b in np.linspace(b_lo, b_hi, 5):
        out.append(f'<text stroke="none" x="{X(b):.1f}" y="{y0 + 16}" '
                   f'text-anchor="middle">{b:.3g}</text>')
    for a in np.linspace(a_lo, a_hi, 5):
        out.append(f'<text stroke="none" x="{x0 - 6}" y="{Y(a) + 4:.1f}" '
                   f'text-anchor="end">{a:.3g}</text>')
    out.append(f'<text stroke="none" x="{x0 + pw / 2:.1f}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">β</text>')
    out.append(f'<text stroke="none" x="18" y="{TOP + ph / 2:.1f}" '
               f'text-anchor="middle">α</text>')
    out.append("</g>")
    if col:
        out.append(f'<g id="legend" font-size="12" font-family="sans-serif">')
        ly = TOP + 10
        for v in sorted(set(values), key=_sort_key):
            out.append(f'<rect x="{WIDTH - RIGHT + 20}" y="{ly}" width="14" height="14" '
                       f'fill="{pal.get(v, NA_COLOR)}" stroke="black"/>')
            out.append(f'<text x="{WIDTH - RIGHT + 40}" y="{ly + 12}">{col}={v}</text>')
            ly += 20
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(csv_path, out_path, palette: Mapping[str, str] | None = None,
               column: str | None = None) -> int:
    """Render a grid CSV to SVG; returns the number of cells drawn."""
    header, rows = read_csv(csv_path)
    try:
        for r in rows:
            float(r["alpha"]), float(r["beta"])
    except ValueError as exc:
        raise ValueError(f"non-numeric coordinate in CSV: {exc}") from None
    text = svg_from_rows(header, rows, palette, column)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return len(rows)
