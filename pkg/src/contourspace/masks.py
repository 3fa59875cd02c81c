"""Raster-domain primitives for binary masks.

A mask is a 2D boolean numpy array of shape (height, width), True marking
foreground. Points are (x, y) in pixel units: the pixel at row i, column j
has its center at (j + 0.5, i + 0.5). Foreground connectivity is
8-connected throughout.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage


class EmptyMaskError(ValueError):
    """Operation needs at least one foreground pixel."""


class DegenerateCloudError(ValueError):
    """Point cloud has no spatial extent (all points identical)."""


_EIGHT = np.ones((3, 3), dtype=bool)


def as_mask(a) -> np.ndarray:
    """Validate and convert input to a 2D boolean mask."""
    m = np.asarray(a)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"mask must be 2D with positive dims, got shape {m.shape}")
    return m.astype(bool, copy=False)


def area(mask) -> int:
    """Number of foreground pixels."""
    return int(np.count_nonzero(as_mask(mask)))


def connected_components(mask) -> list[np.ndarray]:
    """8-connected foreground components, each returned as a full-size mask.

    Sorted by area descending; ties broken by the smallest row-major index
    of a component's first foreground pixel. An empty mask yields [].
    """
    m = as_mask(mask)
    labels, n = ndimage.label(m, structure=_EIGHT)
    comps = []
    flat = labels.ravel()
    for k in range(1, n + 1):
        comp = labels == k
        first = int(np.argmax(flat == k))
        comps.append((-int(np.count_nonzero(comp)), first, comp))
    comps.sort(key=lambda t: (t[0], t[1]))
    return [c for _, _, c in comps]


def is_connected(mask) -> bool:
    """True when the foreground has exactly one 8-connected component."""
    _, n = ndimage.label(as_mask(mask), structure=_EIGHT)
    return n == 1


def mass_center(mask) -> tuple[float, float]:
    """Mean of foreground pixel centers. May fall outside the foreground."""
    m = as_mask(mask)
    rows, cols = np.nonzero(m)
    if rows.size == 0:
        raise EmptyMaskError("mass_center of empty mask")
    return (float(cols.mean()) + 0.5, float(rows.mean()) + 0.5)


def boundary_pixels(mask) -> np.ndarray:
    """Centers (K, 2) of foreground pixels with a 4-neighbor that is
    background or off-grid, in row-major order."""
    m = as_mask(mask)
    p = np.pad(m, 1, constant_values=False)
    interior = p[:-2, 1:-1] & p[2:, 1:-1] & p[1:-1, :-2] & p[1:-1, 2:]
    rows, cols = np.nonzero(m & ~interior)
    return np.stack([cols + 0.5, rows + 0.5], axis=1)


def convex_hull(points) -> np.ndarray:
    """Convex hull by monotone chain, as an (V, 2) array of vertices.

    CCW orientation (positive cross products), collinear points on hull
    edges excluded, first vertex is the lexicographically smallest point.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ValueError("convex_hull needs a non-empty (K, 2) point array")
    uniq = sorted(set(map(tuple, pts.tolist())))
    if len(uniq) == 1:
        return np.array(uniq)
    if len(uniq) == 2:
        return np.array(uniq)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def solidity(mask) -> float:
    """Foreground area over the pixel area of the rasterized filled convex
    hull of the boundary pixel centers, clamped to [0, 1].

    Numerator and denominator use the same measure (pixel counts with the
    shared scanline fill), so convex raster shapes score ~1.
    """
    from .raster import rasterize_polygon

    m = as_mask(mask)
    a = int(np.count_nonzero(m))
    if a == 0:
        raise EmptyMaskError("solidity of empty mask")
    hull = convex_hull(boundary_pixels(m))
    if hull.shape[0] < 3:
        return 1.0
    h, w = m.shape
    hull_area = int(np.count_nonzero(rasterize_polygon(hull, w, h)))
    if hull_area == 0:
        return 1.0
    return min(1.0, a / hull_area)


def distance_transform(mask) -> np.ndarray:
    """Exact Euclidean distance of each foreground pixel to the nearest
    background pixel; background pixels get 0. Pixels beyond the grid edge
    count as background, so shapes touching the border stay finite."""
    m = as_mask(mask)
    padded = np.pad(m, 1, constant_values=False)
    return ndimage.distance_transform_edt(padded)[1:-1, 1:-1]


def inscribed_circle_center(mask) -> tuple[float, float]:
    """Center of the foreground pixel maximizing the distance transform.
    Ties break in row-major order."""
    m = as_mask(mask)
    if not m.any():
        raise EmptyMaskError("inscribed_circle_center of empty mask")
    d = distance_transform(m)
    idx = int(np.argmax(d))
    i, j = divmod(idx, m.shape[1])
    return (j + 0.5, i + 0.5)


def least_variance_direction(points) -> tuple[float, float]:
    """Unit eigenvector of the 2x2 sample covariance for the smaller
    eigenvalue, computed in closed form.

    Sign fixed so dy > 0, or dx > 0 when dy == 0, making downstream
    encodings deterministic.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("least_variance_direction needs >= 2 points")
    centered = pts - pts.mean(axis=0)
    if not np.any(centered):
        raise DegenerateCloudError("all points identical")
    a = float(np.mean(centered[:, 0] ** 2))
    c = float(np.mean(centered[:, 1] ** 2))
    b = float(np.mean(centered[:, 0] * centered[:, 1]))
    if b == 0.0:
        v = np.array([1.0, 0.0]) if a < c else np.array([0.0, 1.0])
    else:
        # smaller eigenvalue of [[a, b], [b, c]]
        lam = 0.5 * (a + c) - np.hypot(0.5 * (a - c), b)
        v = np.array([lam - c, b])
        if np.hypot(*v) < 1e-12 * max(a, c):
            v = np.array([b, lam - a])
        v = v / np.hypot(*v)
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        v = -v
    return (float(v[0]), float(v[1]))
