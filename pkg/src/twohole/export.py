"""CSV, JSON and SVG writers. Output is deterministic for identical input."""

from __future__ import annotations

import csv
import io
import json

import numpy as np


def fmt(x: float, precision: int) -> str:
    """``precision`` significant digits, no trailing spaces, '-0' folded to '0'."""
    s = f"{x:.{precision}g}"
    return "0" if s == "-0" else s


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def curve_rows(curves: dict, thetas: np.ndarray, precision: int):
    for name, pts in curves.items():
        for t, p in zip(thetas, pts):
            yield name, fmt(t, precision), fmt(p.real, precision), fmt(p.imag, precision)


def grid_rows(grid, precision: int):
    for j in range(grid.points.shape[0]):
        for k in range(grid.points.shape[1]):
            if grid.at_infinity[j, k]:
                yield j, k, "", "", 1
            else:
                p = grid.points[j, k]
                yield j, k, fmt(p.real, precision), fmt(p.imag, precision), 0


_SVG_SIZE = 800
_STYLES = {
    "outer": 'fill="none" stroke="#1f4e79" stroke-width="2"',
    "hole": 'fill="none" stroke="#b03a2e" stroke-width="2"',
}


def curves_svg(outer_pts, hole_pts, h: float, R: float) -> str:
    """
    Fixed-viewport overlay: curve L, the exact hole image and the dashed
    reference circle |z - h| = R.
    """
    allpts = np.concatenate([outer_pts, hole_pts, [h - R, h + R, h + 1j * R, h - 1j * R]])
    xmin, xmax = allpts.real.min(), allpts.real.max()
    ymin, ymax = allpts.imag.min(), allpts.imag.max()
    span = max(xmax - xmin, ymax - ymin) * 1.1
    cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
    scale = _SVG_SIZE / span

    def px(z):
        return (_SVG_SIZE / 2 + (z.real - cx) * scale, _SVG_SIZE / 2 - (z.imag - cy) * scale)

    def polyline(pts, style):
        coords = " ".join("%.3f,%.3f" % px(p) for p in np.append(pts, pts[:1]))
        return f'  <polyline points="{coords}" {style}/>'

    ccx, ccy = px(complex(h, 0.0))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_SIZE}" height="{_SVG_SIZE}" '
        f'viewBox="0 0 {_SVG_SIZE} {_SVG_SIZE}">',
        f'  <rect width="{_SVG_SIZE}" height="{_SVG_SIZE}" fill="white"/>',
        polyline(outer_pts, _STYLES["outer"]),
        polyline(hole_pts, _STYLES["hole"]),
        f'  <circle cx="{ccx:.3f}" cy="{ccy:.3f}" r="{R * scale:.3f}" fill="none" '
        'stroke="#555555" stroke-width="1" stroke-dasharray="6,4"/>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"

