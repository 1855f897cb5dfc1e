import math

import numpy as np
import pytest

from annulus.geometry import (
    CoveringWitness,
    PackingWitness,
    SphericalCode,
    cap_fraction,
    covering_number_witness,
    dist,
    greedy_ball_packing,
    greedy_spherical_code,
    log_cap_fraction,
    n_gamma_witness,
    spherical_distance,
)


def test_dist_basics():
    assert dist([0, 0], [3, 4]) == 5.0
    assert dist([1.5], [1.5]) == 0.0
    with pytest.raises(ValueError):
        dist([0, 0], [0, 0, 0])


def test_spherical_distance_right_angle():
    assert spherical_distance([1, 0], [0, 1]) == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        spherical_distance([2, 0], [0, 1])


class TestCapFraction:
    def test_closed_form_d3(self):
        rng = np.random.default_rng(3)
        for theta in rng.uniform(1e-3, math.pi, size=50):
            assert cap_fraction(3, theta) == pytest.approx((1 - math.cos(theta)) / 2, abs=1e-10)

    def test_closed_form_d2(self):
        rng = np.random.default_rng(2)
        for theta in rng.uniform(1e-3, math.pi, size=50):
            assert cap_fraction(2, theta) == pytest.approx(theta / math.pi, abs=1e-12)

    def test_full_sphere_and_hemisphere(self):
        for d in (2, 3, 4, 7, 12):
            assert cap_fraction(d, math.pi) == pytest.approx(1.0, abs=1e-10)
            assert cap_fraction(d, math.pi / 2) == pytest.approx(0.5, abs=1e-10)

    def test_monotone_in_theta(self):
        thetas = np.linspace(0.05, math.pi, 30)
        vals = [cap_fraction(5, t) for t in thetas]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_log_matches_linear(self):
        for d in (3, 6, 20, 50):
            for theta in (0.3, 1.0, 2.0):
                assert math.exp(log_cap_fraction(d, theta)) == pytest.approx(
                    cap_fraction(d, theta), rel=1e-9
                )

    def test_high_dimension_no_overflow(self):
        val = log_cap_fraction(10_000, 0.5)
        assert math.isfinite(val) and val < -100

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            cap_fraction(1, 1.0)
        with pytest.raises(ValueError):
            cap_fraction(3, 0.0)
        with pytest.raises(ValueError):
            cap_fraction(3, 3.2)


class TestPacking:
    def test_interval_packing_exact(self):
        w = greedy_ball_packing(3.0, 1.0, 1)
        w.validate()
        assert w.count == 3

    def test_degenerate_equal_radii(self):
        w = greedy_ball_packing(1.0, 1.0, 4)
        assert w.count == 1

    def test_volume_bound_2d(self):
        w = greedy_ball_packing(4.0, 1.0, 2, seed=1)
        w.validate()
        assert 1 <= w.count <= ((4.0 + 1.0) / 1.0) ** 2

    def test_validate_catches_overlap(self):
        bad = PackingWitness(np.array([[0.0], [1.0]]), 1.0, 3.0)
        with pytest.raises(ValueError, match="overlap"):
            bad.validate()


class TestCovering:
    def test_ratio_one_single_ball(self):
        assert covering_number_witness(1.0, 5).count == 1

    def test_interval_counts(self):
        for T, expected in [(2.0, 2), (3.0, 3), (2.5, 3), (4.0, 4)]:
            w = covering_number_witness(T, 1)
            assert w.count == expected
            assert w.verify(50_000) == 0

    def test_plane_verified(self):
        w = covering_number_witness(2.0, 2)
        assert w.verify(100_000) == 0
        assert w.count <= 3**2 * 4  # loose sanity ceiling

    def test_verify_counts_misses(self):
        # a single small ball cannot cover a radius-2 ball
        bad = CoveringWitness(np.zeros((1, 2)), 1.0, 2.0)
        assert bad.verify(10_000) > 0

    def test_rejects_small_ratio(self):
        with pytest.raises(ValueError):
            covering_number_witness(0.5, 2)


class TestFarPointWitness:
    @pytest.mark.parametrize("d,expected", [(2, 5), (3, 8), (4, 10), (8, 18)])
    def test_sizes(self, d, expected):
        assert len(n_gamma_witness(d, 0.99)) == expected

    @pytest.mark.parametrize("d", range(2, 9))
    def test_geometry(self, d):
        pts = n_gamma_witness(d, 0.99)
        assert np.all(np.linalg.norm(pts, axis=1) <= 0.99 + 1e-12)
        dm = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
        np.fill_diagonal(dm, 2.0)
        assert dm.min() > 1.0

    def test_d3_min_distance_value(self):
        pts = n_gamma_witness(3, 0.99)
        dm = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
        np.fill_diagonal(dm, np.inf)
        expected = min(1.2, math.sqrt(2 * (0.99**2 - 0.36)))
        assert dm.min() == pytest.approx(expected, abs=1e-9)

    def test_small_gamma_falls_back_to_greedy(self):
        pts = n_gamma_witness(2, 0.6)
        assert len(pts) >= 1
        assert np.all(np.linalg.norm(pts, axis=1) <= 0.6 + 1e-12)

    def test_rejects_gamma_out_of_range(self):
        with pytest.raises(ValueError):
            n_gamma_witness(2, 1.0)


class TestSphericalCode:
    def test_pentagon(self):
        code = greedy_spherical_code(2, 2 * math.pi / 5)
        code.validate()
        assert code.size == 5

    def test_cross_polytope_floor(self):
        code = greedy_spherical_code(3, math.pi / 2)
        code.validate()
        assert code.size >= 6

    def test_wide_angle_antipodal(self):
        code = greedy_spherical_code(4, 3.0)
        code.validate()
        assert code.size >= 2

    def test_validate_rejects_close_points(self):
        pts = np.array([[1.0, 0.0], [math.cos(0.3), math.sin(0.3)]])
        with pytest.raises(ValueError, match="closer"):
            SphericalCode(pts, 0.5).validate()
