import numpy as np
import pytest

from contourspace import masks

from conftest import annulus_mask, disk_mask, plus_sign, random_blob
from oracles import (
    brute_area,
    brute_boundary,
    brute_components_count,
    brute_edt,
    brute_hull_vertices,
    solidity_by_winding,
)


class TestConnectedComponents:
    def test_empty_mask(self):
        assert masks.connected_components(np.zeros((4, 4), bool)) == []

    def test_single_filled_square(self):
        m = np.ones((3, 3), bool)
        comps = masks.connected_components(m)
        assert len(comps) == 1
        assert np.array_equal(comps[0], m)

    def test_diagonal_touch_is_one_component(self):
        m = np.zeros((2, 2), bool)
        m[0, 0] = m[1, 1] = True
        assert len(masks.connected_components(m)) == 1

    def test_partition_and_ordering(self, rng):
        for _ in range(50):
            m = rng.random((12, 14)) < 0.45
            comps = masks.connected_components(m)
            assert len(comps) == brute_components_count(m)
            union = np.zeros_like(m)
            total = 0
            for c in comps:
                assert not (union & c).any()  # pairwise disjoint
                union |= c
                total += c.sum()
            assert np.array_equal(union, m)
            areas = [c.sum() for c in comps]
            assert areas == sorted(areas, reverse=True)

    def test_tie_break_row_major(self):
        m = np.zeros((3, 5), bool)
        m[2, 0] = True   # late row
        m[0, 4] = True   # early row, late column
        comps = masks.connected_components(m)
        assert comps[0][0, 4] and comps[1][2, 0]


class TestArea:
    def test_empty(self):
        assert masks.area(np.zeros((3, 3), bool)) == 0

    def test_filled(self):
        assert masks.area(np.ones((4, 4), bool)) == 16

    def test_matches_naive_counter(self, rng):
        m = rng.random((8, 8)) < 0.5
        assert masks.area(m) == brute_area(m)


class TestMassCenter:
    def test_single_pixel(self):
        m = np.zeros((3, 3), bool)
        m[0, 0] = True
        assert masks.mass_center(m) == (0.5, 0.5)

    def test_two_by_two(self):
        assert masks.mass_center(np.ones((2, 2), bool)) == (1.0, 1.0)

    def test_annulus_center_outside_foreground(self):
        m = annulus_mask(64, 20, 28)
        cx, cy = masks.mass_center(m)
        rows, cols = np.nonzero(m)
        assert cx == pytest.approx(np.mean(cols + 0.5))
        assert cy == pytest.approx(np.mean(rows + 0.5))
        assert abs(cx - 32) < 0.5 and abs(cy - 32) < 0.5
        assert not m[int(cy), int(cx)]

    def test_empty_raises(self):
        with pytest.raises(masks.EmptyMaskError):
            masks.mass_center(np.zeros((2, 2), bool))


class TestBoundaryPixels:
    def test_single_pixel(self):
        m = np.zeros((1, 1), bool)
        m[0, 0] = True
        assert np.array_equal(masks.boundary_pixels(m), [[0.5, 0.5]])

    def test_filled_3x3_perimeter(self):
        pts = masks.boundary_pixels(np.ones((3, 3), bool))
        assert len(pts) == 8
        assert [1.5, 1.5] not in pts.tolist()

    def test_matches_erosion_oracle(self, rng):
        for seed in range(10):
            m = random_blob(seed, 24)
            got = masks.boundary_pixels(m)
            assert np.array_equal(got, brute_boundary(m))


class TestConvexHull:
    def test_triangle_passthrough(self):
        hull = masks.convex_hull([(0.0, 0.0), (4.0, 1.0), (1.0, 3.0)])
        assert len(hull) == 3
        assert hull[0].tolist() == [0.0, 0.0]

    def test_interior_point_dropped(self):
        pts = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]
        hull = masks.convex_hull(pts)
        assert sorted(map(tuple, hull.tolist())) == [(0, 0), (0, 4), (4, 0), (4, 4)]

    def test_collinear_points_excluded(self):
        pts = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]
        hull = masks.convex_hull(pts)
        assert (1, 0) not in set(map(tuple, hull.tolist()))

    def test_ccw_orientation(self):
        hull = masks.convex_hull([(0, 0), (4, 0), (4, 4), (0, 4)])
        x, y = hull[:, 0], hull[:, 1]
        signed2 = np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        assert signed2 > 0

    def test_random_points_match_brute_force(self, rng):
        for _ in range(10):
            pts = rng.random((50, 2)) * 20
            hull = masks.convex_hull(pts)
            assert set(map(tuple, hull.tolist())) == brute_hull_vertices(pts)

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            masks.convex_hull(np.zeros((0, 2)))


class TestSolidity:
    def test_filled_rectangle_is_one(self):
        m = np.zeros((40, 50), bool)
        m[5:35, 4:44] = True
        assert masks.solidity(m) == pytest.approx(1.0, abs=0.02)

    def test_single_pixel(self):
        m = np.zeros((3, 3), bool)
        m[1, 1] = True
        assert masks.solidity(m) == 1.0

    def test_plus_sign_near_five_sevenths(self):
        m = plus_sign(16)
        got = masks.solidity(m)
        assert got == pytest.approx(5 / 7, abs=0.05)

    def test_plus_sign_matches_winding_oracle(self):
        m = plus_sign(8)
        assert masks.solidity(m) == pytest.approx(solidity_by_winding(m), abs=1e-12)

    def test_random_blobs_match_winding_oracle(self):
        for seed in range(6):
            m = random_blob(seed, 24)
            assert masks.solidity(m) == pytest.approx(solidity_by_winding(m), abs=1e-12)

    def test_convex_shapes_at_least_098(self):
        for size in (16, 24, 40):
            rect = np.zeros((size + 8, size + 8), bool)
            rect[4:4 + size, 4:4 + size // 2 + 8] = True
            assert masks.solidity(rect) >= 0.98
            d = disk_mask(2 * size, size, size, size / 2 - 1)
            assert masks.solidity(d) >= 0.98

    def test_scale_covariance(self):
        for m in (plus_sign(8), random_blob(3, 24), annulus_mask(48, 10, 20)):
            up = np.kron(m, np.ones((2, 2), bool))
            assert abs(masks.solidity(up) - masks.solidity(m)) < 0.02

    def test_empty_raises(self):
        with pytest.raises(masks.EmptyMaskError):
            masks.solidity(np.zeros((4, 4), bool))


class TestDistanceTransform:
    def test_lone_pixel(self):
        m = np.zeros((3, 3), bool)
        m[1, 1] = True
        d = masks.distance_transform(m)
        assert d[1, 1] == 1.0
        assert d.sum() == 1.0

    def test_filled_7x7_center_is_4(self):
        # off-grid counts as background, so the center sees distance 4
        d = masks.distance_transform(np.ones((7, 7), bool))
        assert d[3, 3] == 4.0
        assert d.max() == 4.0

    def test_matches_brute_force_exactly(self, rng):
        for _ in range(30):
            h, w = rng.integers(1, 33, 2)
            m = rng.random((h, w)) < rng.uniform(0.2, 0.9)
            assert np.array_equal(masks.distance_transform(m), brute_edt(m))

    def test_ring_max_on_midline(self):
        m = annulus_mask(64, 16, 28)
        d = masks.distance_transform(m)
        i, j = np.unravel_index(np.argmax(d), d.shape)
        r = np.hypot(j + 0.5 - 32, i + 0.5 - 32)
        assert abs(r - 22) <= 1.5
        assert d.max() == brute_edt(m).max()


class TestInscribedCircleCenter:
    def test_filled_square_center(self):
        assert masks.inscribed_circle_center(np.ones((7, 7), bool)) == (3.5, 3.5)

    def test_single_pixel(self):
        m = np.zeros((4, 4), bool)
        m[2, 1] = True
        assert masks.inscribed_circle_center(m) == (1.5, 2.5)

    def test_tie_breaks_row_major(self):
        assert masks.inscribed_circle_center(np.ones((2, 2), bool)) == (0.5, 0.5)

    def test_annulus_center_on_ring(self):
        m = annulus_mask(64, 16, 28)
        cx, cy = masks.inscribed_circle_center(m)
        assert m[int(cy), int(cx)]
        d = masks.distance_transform(m)
        assert d[int(cy), int(cx)] == d.max()


class TestLeastVarianceDirection:
    def test_horizontal_segment(self):
        pts = [(x, 0.0) for x in np.linspace(0, 9, 10)]
        assert masks.least_variance_direction(pts) == (0.0, 1.0)

    def test_isotropic_two_points(self):
        dx, dy = masks.least_variance_direction([(0.0, 0.0), (1.0, 1.0)])
        assert dx == pytest.approx(-np.sqrt(2) / 2)
        assert dy == pytest.approx(np.sqrt(2) / 2)

    def test_ellipse_cloud_at_30_degrees(self):
        t = np.linspace(0, 2 * np.pi, 720, endpoint=False)
        a, b, ang = 10.0, 3.0, np.deg2rad(30)
        x = a * np.cos(t) * np.cos(ang) - b * np.sin(t) * np.sin(ang)
        y = a * np.cos(t) * np.sin(ang) + b * np.sin(t) * np.cos(ang)
        dx, dy = masks.least_variance_direction(np.stack([x, y], axis=1))
        got = np.rad2deg(np.arctan2(dy, dx)) % 180
        assert got == pytest.approx(120.0, abs=1.0)  # perpendicular to major axis

    def test_rotation_equivariance_90(self, rng):
        pts = rng.normal(size=(200, 2)) * [4.0, 1.0]
        d0 = masks.least_variance_direction(pts)
        d1 = masks.least_variance_direction(pts[:, ::-1] * [-1, 1])  # rotate +90
        a0 = np.rad2deg(np.arctan2(d0[1], d0[0]))
        a1 = np.rad2deg(np.arctan2(d1[1], d1[0]))
        assert min(abs((a1 - a0 - 90) % 180), 180 - abs((a1 - a0 - 90) % 180)) < 1.0

    def test_identical_points_raise(self):
        with pytest.raises(masks.DegenerateCloudError):
            masks.least_variance_direction([(2.0, 2.0)] * 5)
