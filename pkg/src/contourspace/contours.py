"""Polar encoding of a single region and mask reconstruction.

A local contour is one center plus a vector of radii sampled at uniform
angular bins: bin k covers angle theta_k = k * 2*pi / n_bins, measured
from the +x axis, counter-clockwise in (x, y) coordinates. Radii are raw
pixel distances, unnormalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .masks import EmptyMaskError, as_mask, inscribed_circle_center, mass_center
from .raster import rasterize_polygon

DEFAULT_BINS = 360


@dataclass(frozen=True)
class LocalContour:
    """One center (x, y) in pixels and n_bins nonnegative radii."""

    center: tuple[float, float]
    radii: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.ndim != 1 or r.size < 4:
            raise ValueError("radii must be a 1D vector with >= 4 bins")
        if not np.all(np.isfinite(r)) or np.any(r < 0):
            raise ValueError("radii must be finite and >= 0")
        object.__setattr__(self, "radii", r)

    @property
    def n_bins(self) -> int:
        return self.radii.size


@dataclass(frozen=True)
class HierarchicalEncoding:
    """Ordered local contours for one object plus subdivision provenance.

    depths[i] is the subdivision depth at which contour i was emitted
    (root = 0) and solidities[i] its terminal solidity. source is the
    (width, height) of the origin mask.
    """

    contours: tuple[LocalContour, ...]
    depths: tuple[int, ...]
    solidities: tuple[float, ...]
    source: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "contours", tuple(self.contours))
        object.__setattr__(self, "depths", tuple(int(d) for d in self.depths))
        object.__setattr__(self, "solidities", tuple(float(s) for s in self.solidities))
        object.__setattr__(self, "source", (int(self.source[0]), int(self.source[1])))
        if not (len(self.contours) == len(self.depths) == len(self.solidities)):
            raise ValueError("contours, depths and solidities must align")
        if len(self.contours) == 0:
            raise ValueError("encoding must hold at least one contour")

    def __len__(self) -> int:
        return len(self.contours)

    @property
    def n_bins(self) -> int:
        return self.contours[0].n_bins

    def radii_matrix(self) -> np.ndarray:
        """Radii stacked column-wise, shape (n_bins, K)."""
        return np.stack([c.radii for c in self.contours], axis=1)

    def with_radii(self, radii: np.ndarray) -> "HierarchicalEncoding":
        """Copy of this encoding with the radii columns replaced."""
        r = np.asarray(radii, dtype=float)
        if r.shape != (self.n_bins, len(self.contours)):
            raise ValueError(f"expected radii of shape {(self.n_bins, len(self.contours))}")
        new = tuple(
            LocalContour(c.center, r[:, k]) for k, c in enumerate(self.contours)
        )
        return HierarchicalEncoding(new, self.depths, self.solidities, self.source)


RAY_STEP = 0.25  # px; bounds radius quantization error by one step


def sample_polar(mask, center: tuple[float, float], n_bins: int = DEFAULT_BINS) -> np.ndarray:
    """Radii from center to the farthest foreground sample along each ray.

    Rays are marched in steps of RAY_STEP px out to the foreground
    bounding-box diagonal; when a ray crosses the boundary several times
    only the largest radius is kept. A ray with no foreground sample gets
    radius 0.
    """
    m = as_mask(mask)
    if n_bins < 4:
        raise ValueError("n_bins must be >= 4")
    rows, cols = np.nonzero(m)
    if rows.size == 0:
        raise EmptyMaskError("sample_polar of empty mask")
    h, w = m.shape
    cx, cy = float(center[0]), float(center[1])
    if not (0.0 <= cx <= w and 0.0 <= cy <= h):
        raise ValueError(f"center {center} outside grid {w}x{h}")

    bw = cols.max() - cols.min() + 1
    bh = rows.max() - rows.min() + 1
    diag = float(np.hypot(bw, bh))
    steps = np.arange(1, int(np.floor(diag / RAY_STEP)) + 1) * RAY_STEP
    theta = np.arange(n_bins) * (2.0 * np.pi / n_bins)

    px = cx + np.cos(theta)[:, None] * steps[None, :]
    py = cy + np.sin(theta)[:, None] * steps[None, :]
    ix = np.floor(px).astype(int)
    iy = np.floor(py).astype(int)
    valid = (ix >= 0) & (ix < w) & (iy >= 0) & (iy < h)
    fg = np.zeros_like(valid)
    fg[valid] = m[iy[valid], ix[valid]]
    return np.where(fg, steps[None, :], 0.0).max(axis=1)


def choose_center(mask) -> tuple[float, float]:
    """Mass center when its containing pixel is foreground, else the
    center of the largest inscribed circle."""
    m = as_mask(mask)
    cx, cy = mass_center(m)
    j, i = int(np.floor(cx)), int(np.floor(cy))
    j = min(j, m.shape[1] - 1)
    i = min(i, m.shape[0] - 1)
    if m[i, j]:
        return (cx, cy)
    return inscribed_circle_center(m)


def contour_to_polygon(contour: LocalContour) -> np.ndarray:
    """Polygon vertices center + r_k * (cos theta_k, sin theta_k), in bin
    order. Zero-radius bins degenerate to the center point."""
    n = contour.n_bins
    theta = np.arange(n) * (2.0 * np.pi / n)
    cx, cy = contour.center
    return np.stack(
        [cx + contour.radii * np.cos(theta), cy + contour.radii * np.sin(theta)],
        axis=1,
    )


def contour_to_mask(contour: LocalContour, width: int, height: int) -> np.ndarray:
    return rasterize_polygon(contour_to_polygon(contour), width, height)


def reconstruct_mask(encoding: HierarchicalEncoding) -> np.ndarray:
    """Pixelwise OR of the rasterized local contour polygons."""
    w, h = encoding.source
    out = np.zeros((h, w), dtype=bool)
    for c in encoding.contours:
        out |= contour_to_mask(c, w, h)
    return out


def iou(a, b) -> float:
    """Intersection over union; two empty masks count as identical (1.0)."""
    ma, mb = as_mask(a), as_mask(b)
    if ma.shape != mb.shape:
        raise ValueError(f"mask shapes differ: {ma.shape} vs {mb.shape}")
    union = int(np.count_nonzero(ma | mb))
    if union == 0:
        return 1.0
    return int(np.count_nonzero(ma & mb)) / union
