import numpy as np
import pytest
from scipy.spatial import ConvexHull

from depthstroke.errors import ValidationError
from depthstroke.smoothing import (
    CHAIKIN_ROUNDS,
    MIN_POINTS,
    SmoothingSpec,
    SmoothMethod,
    default_method_for,
    smooth,
)
from depthstroke.stroke import CurveClass

ALL_METHODS = list(SmoothMethod)


def random_curve(rng, n=8):
    return rng.uniform(-5, 5, (n, 3))


def spec_for(method, spp=8):
    return SmoothingSpec(method=method, samples_per_segment=spp)


def in_hull_2d(points, hull_points, slack=1e-9):
    hull = ConvexHull(hull_points)
    # hull facet equations: A x + b <= 0 inside
    eqs = hull.equations
    vals = points @ eqs[:, :-1].T + eqs[:, -1]
    return bool(np.all(vals <= slack))


class TestBasics:
    @pytest.mark.parametrize("method", ALL_METHODS)
    def test_minimum_point_counts_enforced(self, method):
        rng = np.random.default_rng(0)
        pts = random_curve(rng, MIN_POINTS[method] - 1)
        with pytest.raises(ValidationError):
            smooth(pts, spec_for(method))

    @pytest.mark.parametrize("method", ALL_METHODS)
    def test_deterministic(self, method):
        rng = np.random.default_rng(1)
        pts = random_curve(rng)
        a = smooth(pts, spec_for(method))
        b = smooth(pts, spec_for(method))
        assert (a == b).all()

    @pytest.mark.parametrize("method", ALL_METHODS)
    def test_collinear_points_stay_collinear(self, method):
        t = np.linspace(0, 1, 6)[:, None]
        direction = np.array([[2.0, -1.0, 0.5]])
        origin = np.array([1.0, 2.0, 3.0])
        pts = origin + t * direction
        out = smooth(pts, spec_for(method))
        rel = out - origin
        cross = np.cross(rel, np.broadcast_to(direction, rel.shape))
        assert np.max(np.abs(cross)) < 1e-9

    def test_default_methods_per_class(self):
        assert default_method_for(CurveClass.SPIRAL).method is SmoothMethod.BSPLINE
        assert default_method_for(CurveClass.FORWARD).method is SmoothMethod.CATMULL_ROM
        assert default_method_for(CurveClass.BACKWARD).method is SmoothMethod.CATMULL_ROM

    def test_method_parse(self):
        assert SmoothMethod.parse("CatmullRom".lower()) is SmoothMethod.CATMULL_ROM
        with pytest.raises(ValidationError):
            SmoothMethod.parse("nurbs")


class TestCatmullRom:
    def test_interpolates_control_points(self):
        rng = np.random.default_rng(2)
        pts = random_curve(rng, 7)
        spp = 5
        out = smooth(pts, spec_for(SmoothMethod.CATMULL_ROM, spp))
        for i in range(pts.shape[0] - 1):
            assert np.max(np.abs(out[i * spp] - pts[i])) <= 1e-9
        assert np.max(np.abs(out[-1] - pts[-1])) <= 1e-9

    def test_endpoints_preserved(self):
        rng = np.random.default_rng(3)
        pts = random_curve(rng)
        out = smooth(pts, spec_for(SmoothMethod.CATMULL_ROM))
        assert (out[0] == pts[0]).all()
        assert (out[-1] == pts[-1]).all()

    def test_refinement_keeps_existing_parameter_points(self):
        rng = np.random.default_rng(4)
        pts = random_curve(rng, 5)
        coarse = smooth(pts, spec_for(SmoothMethod.CATMULL_ROM, 4))
        fine = smooth(pts, spec_for(SmoothMethod.CATMULL_ROM, 8))
        # every coarse point appears at doubled index in the fine output
        for i in range(coarse.shape[0] - 1):
            assert np.max(np.abs(fine[2 * i] - coarse[i])) <= 1e-12


class TestChaikin:
    def test_corner_cut_positions(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])
        out = smooth(np.column_stack((pts, np.zeros(3))), spec_for(SmoothMethod.CHAIKIN4))
        # reproduce one round by hand to pin the rule, then round again
        q1 = np.array([[0.25, 0.0], [1.0, 0.25]])
        r1 = np.array([[0.75, 0.0], [1.0, 0.75]])
        expected_round1 = np.array(
            [[0.0, 0.0], q1[0], r1[0], q1[1], r1[1], [1.0, 1.0]]
        )
        # depth 2: cut the round-1 polygon once more
        def cut(p):
            q = 0.75 * p[:-1] + 0.25 * p[1:]
            r = 0.25 * p[:-1] + 0.75 * p[1:]
            inner = np.empty((2 * (len(p) - 1), p.shape[1]))
            inner[0::2] = q
            inner[1::2] = r
            return np.vstack((p[:1], inner, p[-1:]))

        expected = cut(expected_round1)
        assert np.allclose(out[:, :2], expected, atol=1e-12)

    def test_single_round_cut_points(self):
        pts = np.column_stack((np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]), np.zeros(3)))
        from depthstroke.smoothing import _chaikin

        out = _chaikin(pts, 1)[:, :2]
        expected = [[0, 0], [0.25, 0], [0.75, 0], [1, 0.25], [1, 0.75], [1, 1]]
        assert np.allclose(out, expected, atol=1e-12)

    def test_depths(self):
        assert CHAIKIN_ROUNDS[SmoothMethod.CHAIKIN4] == 2
        assert CHAIKIN_ROUNDS[SmoothMethod.CHAIKIN8] == 3

    def test_endpoints_kept_and_density_grows(self):
        rng = np.random.default_rng(5)
        pts = random_curve(rng, 6)
        for method in (SmoothMethod.CHAIKIN4, SmoothMethod.CHAIKIN8):
            out = smooth(pts, spec_for(method))
            assert (out[0] == pts[0]).all()
            assert (out[-1] == pts[-1]).all()
            assert out.shape[0] >= pts.shape[0]

    def test_output_in_convex_hull(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            flat = rng.uniform(-3, 3, (7, 2))
            pts = np.column_stack((flat, np.zeros(7)))
            for method in (SmoothMethod.CHAIKIN4, SmoothMethod.CHAIKIN8):
                out = smooth(pts, spec_for(method))
                assert in_hull_2d(out[:, :2], flat)


class TestBSpline:
    def test_output_in_convex_hull(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            flat = rng.uniform(-3, 3, (8, 2))
            pts = np.column_stack((flat, np.zeros(8)))
            out = smooth(pts, spec_for(SmoothMethod.BSPLINE))
            assert in_hull_2d(out[:, :2], flat)

    def test_clamped_endpoints(self):
        rng = np.random.default_rng(8)
        pts = random_curve(rng, 6)
        out = smooth(pts, spec_for(SmoothMethod.BSPLINE))
        assert np.max(np.abs(out[0] - pts[0])) < 1e-12
        assert np.max(np.abs(out[-1] - pts[-1])) < 1e-12

    def test_refinement_keeps_existing_parameter_points(self):
        rng = np.random.default_rng(9)
        pts = random_curve(rng, 5)
        coarse = smooth(pts, spec_for(SmoothMethod.BSPLINE, 3))
        fine = smooth(pts, spec_for(SmoothMethod.BSPLINE, 6))
        for i in range(coarse.shape[0] - 1):
            assert np.max(np.abs(fine[2 * i] - coarse[i])) <= 1e-12


class TestBoundedMethods:
    @pytest.mark.parametrize(
        "method",
        [SmoothMethod.CHAIKIN4, SmoothMethod.CHAIKIN8, SmoothMethod.BSPLINE,
         SmoothMethod.BEZIER_QUADRATIC, SmoothMethod.BEZIER_CUBIC],
    )
    def test_stays_in_bounding_box(self, method):
        rng = np.random.default_rng(10)
        for _ in range(5):
            pts = random_curve(rng, 9)
            out = smooth(pts, spec_for(method))
            lo = pts.min(axis=0) - 1e-9
            hi = pts.max(axis=0) + 1e-9
            assert np.all(out >= lo) and np.all(out <= hi)


class TestHermiteAndBezier:
    def test_hermite_interpolates_all_points(self):
        rng = np.random.default_rng(11)
        pts = random_curve(rng, 6)
        spp = 4
        out = smooth(pts, spec_for(SmoothMethod.HERMITE, spp))
        for i in range(pts.shape[0] - 1):
            assert np.max(np.abs(out[i * spp] - pts[i])) <= 1e-9
        assert np.max(np.abs(out[-1] - pts[-1])) <= 1e-9

    def test_bezier_joins_at_shared_control_points(self):
        rng = np.random.default_rng(12)
        pts = random_curve(rng, 7)
        spp = 4
        out = smooth(pts, spec_for(SmoothMethod.BEZIER_QUADRATIC, spp))
        # segments cover points 0-2 and 2-4 and 4-6: joins at even indices
        assert np.max(np.abs(out[0] - pts[0])) <= 1e-12
        assert np.max(np.abs(out[spp] - pts[2])) <= 1e-9
        assert np.max(np.abs(out[2 * spp] - pts[4])) <= 1e-9
        assert np.max(np.abs(out[-1] - pts[-1])) <= 1e-12
