"""Polygon rasterization by scanline fill with the nonzero-winding rule.

A pixel (i, j) is set when its center (j + 0.5, i + 0.5) has nonzero
winding number with respect to the polygon. Winding is accumulated along a
leftward ray: a directed edge crossing the scanline at x_c contributes to
every pixel center with x >= x_c (ties included), +1 for upward edges
(y1 <= y < y2) and -1 for downward ones. Horizontal edges never cross.
"""

from __future__ import annotations

import numpy as np


def rasterize_polygon(polygon, width: int, height: int) -> np.ndarray:
    """Fill a polygon into a (height, width) boolean mask.

    The polygon is an (V, 2) array of (x, y) vertices, implicitly closed.
    Geometry outside the grid is clipped. Degenerate polygons (fewer than
    3 vertices, or zero area) rasterize to an empty mask.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    out = np.zeros((height, width), dtype=bool)
    poly = np.asarray(polygon, dtype=float)
    if poly.size == 0:
        return out
    if poly.ndim != 2 or poly.shape[1] != 2:
        raise ValueError("polygon must be an (V, 2) array")
    if poly.shape[0] < 3:
        return out
    if not np.all(np.isfinite(poly)):
        raise ValueError("polygon has non-finite vertices")

    x1, y1 = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    keep = y1 != y2
    if not keep.any():
        return out
    x1, y1, x2, y2 = x1[keep], y1[keep], x2[keep], y2[keep]

    i_lo = max(0, int(np.floor(min(y1.min(), y2.min()) - 0.5)))
    i_hi = min(height - 1, int(np.ceil(max(y1.max(), y2.max()))))
    if i_lo > i_hi:
        return out

    ys = np.arange(i_lo, i_hi + 1)[:, None] + 0.5      # (R, 1) scanline ys
    up = (y1 <= ys) & (ys < y2)
    down = (y2 <= ys) & (ys < y1)
    crossing = up | down
    rows, edges = np.nonzero(crossing)
    if rows.size == 0:
        return out
    t = (ys[rows, 0] - y1[edges]) / (y2[edges] - y1[edges])
    xc = x1[edges] + t * (x2[edges] - x1[edges])
    delta = np.where(up[rows, edges], 1, -1)

    # first pixel column whose center lies at or right of the crossing
    j0 = np.ceil(xc - 0.5).astype(int)
    np.clip(j0, 0, width, out=j0)
    diff = np.zeros((ys.shape[0], width + 1), dtype=np.int64)
    np.add.at(diff, (rows, j0), delta)
    winding = np.cumsum(diff[:, :width], axis=1)
    out[i_lo:i_hi + 1] = winding != 0
    return out
