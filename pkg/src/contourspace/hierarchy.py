"""Greedy hierarchical subdivision of a mask into near-convex regions.

A region terminates (and is encoded as one local contour) when the depth
budget is exhausted, its solidity exceeds the threshold, it is too small,
or splitting degenerates. Otherwise it is split by a line through its mass
center along the least-variance direction of its boundary pixels, the two
halves are repaired back to single connected components, and the recursion
continues on both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import masks
from .contours import HierarchicalEncoding, LocalContour, choose_center, sample_polar
from .masks import DegenerateCloudError, EmptyMaskError, as_mask

MAX_DEPTH_CAP = 12


class InvariantViolation(RuntimeError):
    """An internal guarantee failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class EncoderConfig:
    tau: float = 0.9
    max_depth: int = 5
    n_bins: int = 360
    min_region_area: int = 16

    def __post_init__(self):
        if not (0.0 < self.tau < 1.0):
            raise ValueError("tau must be in (0, 1)")
        if not (0 <= self.max_depth <= MAX_DEPTH_CAP):
            raise ValueError(f"max_depth must be in [0, {MAX_DEPTH_CAP}]")
        if self.n_bins < 4:
            raise ValueError("n_bins must be >= 4")
        if self.min_region_area < 1:
            raise ValueError("min_region_area must be >= 1")


def split(mask, centroid, direction) -> tuple[np.ndarray, np.ndarray]:
    """Partition foreground by the line through centroid along direction.

    A pixel center p lands in part 1 when the 2D cross product
    (p - centroid) x direction is >= 0, in part 2 otherwise. Either part
    may come back empty.
    """
    m = as_mask(mask)
    if not m.any():
        raise EmptyMaskError("split of empty mask")
    cx, cy = float(centroid[0]), float(centroid[1])
    dx, dy = float(direction[0]), float(direction[1])
    rows, cols = np.nonzero(m)
    side = (cols + 0.5 - cx) * dy - (rows + 0.5 - cy) * dx
    part1 = np.zeros_like(m)
    part2 = np.zeros_like(m)
    keep = side >= 0
    part1[rows[keep], cols[keep]] = True
    part2[rows[~keep], cols[~keep]] = True
    return part1, part2


def reorg(m1, m2) -> tuple[np.ndarray, np.ndarray]:
    """If m1 is disconnected, keep only its largest component and move the
    remaining components into m2. No-op when m1 is already connected."""
    a = as_mask(m1)
    b = as_mask(m2)
    if not a.any() and not b.any():
        raise EmptyMaskError("reorg of two empty masks")
    comps = masks.connected_components(a)
    if len(comps) <= 1:
        return a, b
    moved = b.copy()
    for comp in comps[1:]:
        moved |= comp
    return comps[0], moved


def repair_connectivity(m1, m2) -> tuple[np.ndarray, np.ndarray] | None:
    """Restore both split halves to single connected components.

    Applies reorg to m1, then (swapped) to m2 if still needed; for halves
    of a connected mask two passes always suffice. Returns None when a
    half ends up empty, signaling the caller not to subdivide.
    """
    a = as_mask(m1)
    b = as_mask(m2)
    if not a.any() or not b.any():
        return None
    if not masks.is_connected(a):
        a, b = reorg(a, b)
    if not masks.is_connected(b):
        b, a = reorg(b, a)
    if not a.any() or not b.any():
        return None
    if not (masks.is_connected(a) and masks.is_connected(b)):
        raise InvariantViolation("parts still disconnected after two reorg passes")
    return a, b


def _encode_region(mask, budget: int, depth: int, cfg: EncoderConfig, out: list) -> None:
    sld = masks.solidity(mask)

    def emit():
        center = choose_center(mask)
        radii = sample_polar(mask, center, cfg.n_bins)
        out.append((LocalContour(center, radii), depth, sld))

    if budget == 0 or sld > cfg.tau or masks.area(mask) < cfg.min_region_area:
        emit()
        return
    try:
        direction = masks.least_variance_direction(masks.boundary_pixels(mask))
    except DegenerateCloudError:
        emit()
        return
    parts = repair_connectivity(*split(mask, masks.mass_center(mask), direction))
    if parts is None:
        emit()
        return
    _encode_region(parts[0], budget - 1, depth + 1, cfg, out)
    _encode_region(parts[1], budget - 1, depth + 1, cfg, out)


def hierarchical_encode(mask, config: EncoderConfig | None = None) -> HierarchicalEncoding:
    """Encode a mask as an ordered list of local contours.

    Leaves appear depth-first, part 1 before part 2. A disconnected input
    is encoded per component (components in area order) and concatenated.
    """
    cfg = config or EncoderConfig()
    m = as_mask(mask)
    if not m.any():
        raise EmptyMaskError("hierarchical_encode of empty mask")
    leaves: list[tuple[LocalContour, int, float]] = []
    components = masks.connected_components(m)
    for comp in components:
        _encode_region(comp, cfg.max_depth, 0, cfg, leaves)
    h, w = m.shape
    return HierarchicalEncoding(
        contours=tuple(leaf[0] for leaf in leaves),
        depths=tuple(leaf[1] for leaf in leaves),
        solidities=tuple(leaf[2] for leaf in leaves),
        source=(w, h),
    )


def total_solidity(encoding: HierarchicalEncoding) -> float:
    """Sum of terminal solidities, the greedy objective value."""
    return float(sum(encoding.solidities))
