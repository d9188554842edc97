"""Stereographic projection, samplers, RNG addressing, simplex embedding."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigame import (
    INFINITY,
    BallPoint,
    CubePoint,
    Frequencies,
    Rng,
    SpherePoint,
    sample_ball,
    sample_cube,
    sample_sphere,
    simplex_to_cartesian,
    sphere_to_stereographic,
    stereographic_to_sphere,
)


def sphere_tuple(x):
    return (x.x1, x.x2, x.x3)


class TestStereographic:
    def test_south_pole(self):
        assert sphere_tuple(stereographic_to_sphere(0.0)) == (0.0, 0.0, -1.0)

    def test_north_pole_is_infinity(self):
        assert sphere_tuple(stereographic_to_sphere(INFINITY)) == (0.0, 0.0, 1.0)
        assert sphere_to_stereographic(SpherePoint(0.0, 0.0, 1.0)) is INFINITY

    def test_unit_points(self):
        np.testing.assert_allclose(sphere_tuple(stereographic_to_sphere(1.0)), (1, 0, 0), atol=1e-15)
        np.testing.assert_allclose(sphere_tuple(stereographic_to_sphere(1j)), (0, 1, 0), atol=1e-15)
        np.testing.assert_allclose(sphere_tuple(stereographic_to_sphere(-1.0)), (-1, 0, 0), atol=1e-15)
        np.testing.assert_allclose(sphere_tuple(stereographic_to_sphere(-1j)), (0, -1, 0), atol=1e-15)

    def test_inverse_formula(self):
        x = SpherePoint(0.6, 0.0, -0.8)
        z = sphere_to_stereographic(x)
        assert abs(z - (0.6 / 1.8)) < 1e-15

    def test_round_trip_sphere_to_z_random(self):
        rng = Rng(seed=424242)
        pts = sample_sphere(rng, 10_000)
        for x1, x2, x3 in pts:
            x = SpherePoint(float(x1), float(x2), float(x3))
            back = stereographic_to_sphere(sphere_to_stereographic(x))
            assert abs(back.x1 - x.x1) < 1e-12
            assert abs(back.x2 - x.x2) < 1e-12
            assert abs(back.x3 - x.x3) < 1e-12

    @given(
        st.complex_numbers(min_magnitude=0.0, max_magnitude=1e6, allow_nan=False, allow_infinity=False)
    )
    def test_round_trip_z_to_sphere(self, z):
        x = stereographic_to_sphere(z)
        n2 = x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3
        assert abs(n2 - 1.0) <= 1e-12
        back = sphere_to_stereographic(x)
        if back is INFINITY:
            assert abs(z) > 1e12
        else:
            assert abs(back - z) <= 1e-9 * max(1.0, abs(z))

    def test_large_z_lands_near_north_pole(self):
        x = stereographic_to_sphere(1e8)
        assert x.x3 > 1.0 - 1e-15
        assert abs(x.x1 - 2e-8) < 1e-18


class TestRng:
    def test_block_shape_and_range(self):
        u = Rng(seed=1).draws(100)
        assert u.shape == (100, 4)
        assert np.all((u >= 0.0) & (u < 1.0))

    def test_repeatable(self):
        assert np.array_equal(Rng(seed=9).draws(64), Rng(seed=9).draws(64))

    def test_indexed_access_matches_stream(self):
        whole = Rng(seed=5).draws(40)
        assert np.array_equal(Rng(seed=5).at(17).draws(1)[0], whole[17])
        assert np.array_equal(Rng(seed=5).at(10).draws(30), whole[10:])

    def test_chunking_invariance(self):
        rng = Rng(seed=12)
        parts = [rng.draws(7), rng.draws(1), rng.draws(25)]
        assert np.array_equal(np.vstack(parts), Rng(seed=12).draws(33))

    def test_streams_differ(self):
        a = Rng(seed=3, stream=0).draws(16)
        b = Rng(seed=3, stream=1).draws(16)
        assert not np.array_equal(a, b)
        assert np.array_equal(b, Rng(seed=3).fork(1).draws(16))

    def test_position_tracks_consumption(self):
        rng = Rng(seed=0)
        rng.draws(13)
        assert rng.position == 13


class TestSamplers:
    def test_sphere_points_unit_norm(self):
        pts = sample_sphere(Rng(seed=2), 5000)
        n2 = (pts * pts).sum(axis=1)
        assert np.max(np.abs(n2 - 1.0)) < 1e-12

    def test_sphere_symmetry(self):
        pts = sample_sphere(Rng(seed=3), 100_000)
        assert abs(pts[:, 2].mean()) < 0.01
        assert abs(np.mean(pts[:, 2] > 0) - 0.5) < 0.01

    def test_sphere_octant_measure(self):
        pts = sample_sphere(Rng(seed=4), 100_000)
        octant = (pts[:, 0] > 0) & (pts[:, 1] < 0) & (pts[:, 2] > 0)
        assert abs(np.mean(octant) - 0.125) < 0.005

    def test_ball_radius_law(self):
        pts = sample_ball(Rng(seed=5), 100_000)
        r = np.sqrt((pts * pts).sum(axis=1))
        assert np.max(r) <= 1.0
        assert abs(r.mean() - 0.75) < 0.01
        assert abs(np.mean(r <= 0.5) - 0.125) < 0.005

    def test_cube_moments(self):
        pts = sample_cube(Rng(seed=6), 100_000)
        assert pts.shape == (100_000, 3)
        assert np.all((pts >= 0.0) & (pts < 1.0))
        np.testing.assert_allclose(pts.mean(axis=0), 0.5, atol=0.01)
        assert abs(np.mean(np.all(pts <= 0.5, axis=1)) - 0.125) < 0.005

    def test_cube_inscribed_sphere_volume(self):
        pts = sample_cube(Rng(seed=7), 100_000)
        x = 2.0 * pts - 1.0
        inside = (x * x).sum(axis=1) <= 1.0
        assert abs(np.mean(inside) - math.pi / 6.0) < 0.005

    def test_scalar_draws_are_typed(self):
        assert isinstance(sample_sphere(Rng(seed=8)), SpherePoint)
        assert isinstance(sample_ball(Rng(seed=8)), BallPoint)
        assert isinstance(sample_cube(Rng(seed=8)), CubePoint)

    def test_scalar_matches_batch(self):
        batch = sample_sphere(Rng(seed=11), 3)
        one = sample_sphere(Rng(seed=11))
        assert (one.x1, one.x2, one.x3) == tuple(batch[0])


class TestTypes:
    def test_sphere_point_rejects_non_unit(self):
        with pytest.raises(AssertionError):
            SpherePoint(0.5, 0.5, 0.5)

    def test_ball_point_rejects_outside(self):
        with pytest.raises(AssertionError):
            BallPoint(1.0, 1.0, 1.0)

    def test_frequencies_reject_bad_sum(self):
        with pytest.raises(AssertionError):
            Frequencies(0.5, 0.5, 0.5)
        with pytest.raises(AssertionError):
            Frequencies(-0.1, 0.6, 0.5)


class TestSimplexEmbedding:
    def test_vertices(self):
        assert simplex_to_cartesian(Frequencies(1, 0, 0)) == (0.0, 0.0)
        assert simplex_to_cartesian(Frequencies(0, 1, 0)) == (1.0, 0.0)
        u, v = simplex_to_cartesian(Frequencies(0, 0, 1))
        assert (u, v) == (0.5, math.sqrt(3.0) / 2.0)

    def test_centroid(self):
        u, v = simplex_to_cartesian(Frequencies(*([1.0 / 3.0] * 3)))
        assert abs(u - 0.5) < 1e-15
        assert abs(v - math.sqrt(3.0) / 6.0) < 1e-15
