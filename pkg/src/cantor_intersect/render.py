"""Static SVG strips of the construction levels and their intersections.

Per depth k three rows: the level set, its translate by the truncated
translation, and the literal intersection with the full translation.
Level intervals are colored by case.  Output is a plain string built in
a fixed order with fixed number formatting, so identical configurations
produce byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction

from .digits import DigitSet, NaryExpansion, as_expansion
from .oracle import DEFAULT_CAP, classify_intervals, intersect_exact

_CASE_COLORS = {
    "interval": "#2e7d32",          # coincides with a translated interval
    "potential": "#1565c0",         # abuts one on the left
    "potentially_empty": "#ef6c00", # abuts one on the right
    "empty": "#bdbdbd",
}
_TRANSLATE_COLOR = "#616161"
_INTERSECT_COLOR = "#c62828"

_MARGIN = 40.0
_PLOT_W = 920.0
_ROW_H = 10.0
_ROW_GAP = 4.0
_BLOCK_GAP = 18.0
_LABEL_X = 6.0


def _x(v: Fraction | float) -> float:
    return _MARGIN + float(v) * _PLOT_W


def _rect(x0: float, x1: float, y: float, color: str) -> str:
    w = max(x1 - x0, 0.35)  # degenerate points stay visible
    return (
        f'<rect x="{x0:.3f}" y="{y:.3f}" width="{w:.3f}" '
        f'height="{_ROW_H:.3f}" fill="{color}"/>'
    )


def render_svg(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    K: int,
    cap: int = DEFAULT_CAP,
) -> str:
    e = as_expansion(t, ds.base)
    value = e.value
    n = ds.base
    rows: list[str] = []
    y = _BLOCK_GAP
    height_per_k = 3 * (_ROW_H + _ROW_GAP) + _BLOCK_GAP
    total_h = _BLOCK_GAP + (K + 1) * height_per_k
    total_w = _MARGIN * 2 + _PLOT_W + 60

    for k in range(K + 1):
        nk = Fraction(1, n**k)
        cls = classify_intervals(ds, e, k, cap)
        rows.append(
            f'<text x="{_LABEL_X:.1f}" y="{y + _ROW_H:.3f}" '
            f'font-size="11" font-family="monospace">k={k}</text>'
        )
        for h in cls.offsets:
            a, b, c, _ = cls.flags(h)
            case = (
                "interval" if a else
                "potential" if b else
                "potentially_empty" if c else "empty"
            )
            rows.append(_rect(_x(h * nk), _x((h + 1) * nk), y, _CASE_COLORS[case]))
        y += _ROW_H + _ROW_GAP
        shift = cls.shift * nk
        for h in cls.offsets:
            rows.append(
                _rect(_x(h * nk + shift), _x((h + 1) * nk + shift), y, _TRANSLATE_COLOR)
            )
        y += _ROW_H + _ROW_GAP
        for lo, hi in intersect_exact(ds, value, k, cap):
            rows.append(_rect(_x(lo), _x(hi), y, _INTERSECT_COLOR))
        y += _ROW_H + _ROW_GAP + _BLOCK_GAP

    header = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{total_w:.0f}" height="{total_h:.0f}" '
        f'viewBox="0 0 {total_w:.0f} {total_h:.0f}">'
    )
    title = (
        f'<title>{ds} with t = {e.text(with_base=True)}: levels, translates, '
        "intersections</title>"
    )
    return "\n".join([header, title, *rows, "</svg>"]) + "\n"
