import numpy as np
import pytest


def plus_sign(scale=16):
    """5-square cross (3x3 bounding pattern) blown up by nearest neighbor."""
    pattern = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
    return np.kron(pattern, np.ones((scale, scale), dtype=bool))


def disk_mask(size, cx, cy, r):
    ys, xs = np.mgrid[0:size, 0:size]
    return (xs + 0.5 - cx) ** 2 + (ys + 0.5 - cy) ** 2 <= r * r


def annulus_mask(size, r_in, r_out, cx=None, cy=None):
    cx = size / 2 if cx is None else cx
    cy = size / 2 if cy is None else cy
    ys, xs = np.mgrid[0:size, 0:size]
    d2 = (xs + 0.5 - cx) ** 2 + (ys + 0.5 - cy) ** 2
    return (d2 <= r_out * r_out) & (d2 > r_in * r_in)


def random_blob(seed, size=48):
    """Connected union of a few random ellipses; loops until non-empty."""
    rng = np.random.default_rng(seed)
    ys, xs = np.mgrid[0:size, 0:size]
    px, py = xs + 0.5, ys + 0.5
    while True:
        blob = np.zeros((size, size), dtype=bool)
        for _ in range(rng.integers(3, 8)):
            a = rng.uniform(0.1, 0.25) * size
            b = rng.uniform(0.1, 0.25) * size
            ang = rng.uniform(0, np.pi)
            cx = rng.uniform(0.3, 0.7) * size
            cy = rng.uniform(0.3, 0.7) * size
            u = (px - cx) * np.cos(ang) + (py - cy) * np.sin(ang)
            v = -(px - cx) * np.sin(ang) + (py - cy) * np.cos(ang)
            blob |= (u / a) ** 2 + (v / b) ** 2 <= 1.0
        if blob.any():
            break
    # keep the largest 8-connected component so callers get one blob
    from scipy import ndimage

    labels, n = ndimage.label(blob, structure=np.ones((3, 3)))
    if n > 1:
        sizes = ndimage.sum_labels(np.ones_like(labels), labels, index=range(1, n + 1))
        blob = labels == (1 + int(np.argmax(sizes)))
    return blob


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
