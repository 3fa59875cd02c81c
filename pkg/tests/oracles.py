"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive (per-pixel loops, exact rational
arithmetic, O(n^3) scans) and shares no code with the package.
"""

from fractions import Fraction

import numpy as np


def brute_area(mask):
    n = 0
    for i in range(mask.shape[0]):
        for j in range(mask.shape[1]):
            if mask[i, j]:
                n += 1
    return n


def brute_components_count(mask):
    """8-connected component count by BFS flood fill."""
    h, w = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    count = 0
    for i in range(h):
        for j in range(w):
            if mask[i, j] and not seen[i, j]:
                count += 1
                stack = [(i, j)]
                seen[i, j] = True
                while stack:
                    a, b = stack.pop()
                    for da in (-1, 0, 1):
                        for db in (-1, 0, 1):
                            x, y = a + da, b + db
                            if 0 <= x < h and 0 <= y < w and mask[x, y] and not seen[x, y]:
                                seen[x, y] = True
                                stack.append((x, y))
    return count


def brute_edt(mask):
    """Exact nearest-background distance; off-grid counts as background."""
    h, w = mask.shape
    padded = np.pad(mask, 1, constant_values=False)
    bg = np.argwhere(~padded)
    out = np.zeros((h, w), dtype=float)
    for i in range(h):
        for j in range(w):
            if padded[i + 1, j + 1]:
                d2 = (bg[:, 0] - (i + 1)) ** 2 + (bg[:, 1] - (j + 1)) ** 2
                out[i, j] = np.sqrt(np.min(d2))
    return out


def brute_boundary(mask):
    """Foreground pixels with a 4-neighbor that is background or off-grid."""
    h, w = mask.shape
    pts = []
    for i in range(h):
        for j in range(w):
            if not mask[i, j]:
                continue
            for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                a, b = i + di, j + dj
                if not (0 <= a < h and 0 <= b < w) or not mask[a, b]:
                    pts.append((j + 0.5, i + 0.5))
                    break
    return np.array(pts) if pts else np.zeros((0, 2))


def brute_hull_vertices(points):
    """Hull vertex set by O(n^3) edge detection; assumes general position."""
    pts = [tuple(p) for p in points]
    n = len(pts)
    on_hull = set()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ax, ay = pts[i]
            bx, by = pts[j]
            all_left = True
            for k in range(n):
                if k in (i, j):
                    continue
                px, py = pts[k]
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) <= 0:
                    all_left = False
                    break
            if all_left:
                on_hull.add(pts[i])
                on_hull.add(pts[j])
    return on_hull


def winding_number(px, py, polygon):
    """Nonzero winding count at a point: leftward ray, upward edges in
    [y1, y2) count +1 and downward ones -1 when the crossing is at or left
    of the point. Exact rational arithmetic."""
    px, py = Fraction(px), Fraction(py)
    wn = 0
    m = len(polygon)
    for k in range(m):
        x1, y1 = (Fraction(float(v)) for v in polygon[k])
        x2, y2 = (Fraction(float(v)) for v in polygon[(k + 1) % m])
        if y1 == y2:
            continue
        if y1 <= py < y2 or y2 <= py < y1:
            t = (py - y1) / (y2 - y1)
            xc = x1 + t * (x2 - x1)
            if xc <= px:
                wn += 1 if y1 <= py < y2 else -1
    return wn


def rasterize_by_winding(polygon, width, height):
    out = np.zeros((height, width), dtype=bool)
    if len(polygon) < 3:
        return out
    for i in range(height):
        for j in range(width):
            out[i, j] = winding_number(j + Fraction(1, 2), i + Fraction(1, 2), polygon) != 0
    return out


def solidity_by_winding(mask):
    """Area over winding-rasterized hull pixel count, hull via a simple
    gift-wrapping scan over boundary pixel centers."""
    bpts = brute_boundary(mask)
    hull = _gift_wrap(bpts)
    h, w = mask.shape
    if len(hull) < 3:
        return 1.0
    hull_count = int(np.count_nonzero(rasterize_by_winding(hull, w, h)))
    return min(1.0, brute_area(mask) / hull_count)


def _gift_wrap(points):
    """Jarvis march, collinear points on edges skipped."""
    pts = sorted(set(map(tuple, np.asarray(points).tolist())))
    if len(pts) <= 2:
        return pts
    hull = []
    start = pts[0]
    current = start
    while True:
        hull.append(current)
        candidate = pts[0] if pts[0] != current else pts[1]
        for p in pts:
            if p == current:
                continue
            cross = ((candidate[0] - current[0]) * (p[1] - current[1])
                     - (candidate[1] - current[1]) * (p[0] - current[0]))
            if cross < 0:
                candidate = p
            elif cross == 0:
                d_c = (candidate[0] - current[0]) ** 2 + (candidate[1] - current[1]) ** 2
                d_p = (p[0] - current[0]) ** 2 + (p[1] - current[1]) ** 2
                if d_p > d_c:
                    candidate = p
        current = candidate
        if current == start:
            break
        if len(hull) > len(pts):
            raise RuntimeError("gift wrapping failed to close")
    return hull


def ray_march_radii(mask, center, n_bins, step=0.25):
    """Per-ray scalar march tracking the farthest foreground sample."""
    h, w = mask.shape
    rows, cols = np.nonzero(mask)
    bw = cols.max() - cols.min() + 1
    bh = rows.max() - rows.min() + 1
    diag = float(np.hypot(bw, bh))
    cx, cy = center
    radii = np.zeros(n_bins)
    for k in range(n_bins):
        theta = 2.0 * np.pi * k / n_bins
        ux, uy = np.cos(theta), np.sin(theta)
        t = step
        best = 0.0
        while t <= diag:
            j = int(np.floor(cx + t * ux))
            i = int(np.floor(cy + t * uy))
            if 0 <= i < h and 0 <= j < w and mask[i, j]:
                best = t
            t += step
        radii[k] = best
    return radii


def singular_values_by_full_svd(matrix):
    return np.linalg.svd(np.asarray(matrix, dtype=float), compute_uv=False)
