import math

import numpy as np
from django.test import SimpleTestCase
from scipy import special, stats

from levy_models.catalog import LevyModel
from levy_models.exceptions import DomainError, LongRunSlopeUndefinedError
from levy_models.rng import RngStream
from levy_models.services import sample_increments

from .services import (
    FacePoint,
    Weight,
    choose_horizon,
    discrete_intensity,
    infinite_horizon_mass,
    infinite_horizon_points,
    intensity_mass,
    minorant_from_points,
    ppp_exponential_horizon,
    slope_intensity_mass,
    stick_break,
    theorem1_sample,
)


class StickBreakTests(SimpleTestCase):
    def test_forced_uniforms(self):
        sticks = stick_break(1.0, uniforms=[0.5, 0.5, 0.5])
        np.testing.assert_array_equal(sticks.lengths, [0.5, 0.25, 0.125])
        np.testing.assert_array_equal(sticks.partial_sums, [0.5, 0.75, 0.875])
        self.assertEqual(sticks.residual, 0.125)
        self.assertEqual(sticks.n_sticks, 3)

    def test_partial_sums_stay_below_horizon(self):
        rng = RngStream(12)
        for _ in range(200):
            sticks = stick_break(2.5, 10, rng)
            self.assertLess(sticks.partial_sums[-1], 2.5)
            self.assertTrue(np.all(np.diff(sticks.partial_sums) > 0))

    def test_residual_identity(self):
        rng = RngStream(13)
        for _ in range(100):
            sticks = stick_break(3.0, 20, rng)
            expected = 3.0 * np.prod(1.0 - sticks.uniforms)
            self.assertLessEqual(abs(sticks.residual - expected), 1e-12 * expected)
            self.assertAlmostEqual(sticks.lengths.sum() + sticks.residual, 3.0, places=12)

    def test_first_stick_mean(self):
        rng = RngStream(14)
        first = np.array([stick_break(2.0, 1, rng).lengths[0] for _ in range(20000)])
        self.assertLess(abs(first.mean() - 1.0), 5 * (2.0 / math.sqrt(12)) / math.sqrt(first.size))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(DomainError):
            stick_break(0.0, 3, RngStream(1))
        with self.assertRaises(DomainError):
            stick_break(1.0, 0, RngStream(1))
        with self.assertRaises(DomainError):
            stick_break(1.0, uniforms=[0.5, 1.0])


class Theorem1SampleTests(SimpleTestCase):
    def test_single_stick_brownian(self):
        rng = RngStream(21)
        samples = [theorem1_sample(LevyModel.brownian(), 1.0, 1, rng)[0] for _ in range(5000)]
        lengths = np.array([point.length for point in samples])
        normalized = np.array([point.increment / math.sqrt(point.length) for point in samples])
        self.assertGreater(stats.kstest(lengths, 'uniform').pvalue, 1e-3)
        self.assertGreater(stats.kstest(normalized, 'norm').pvalue, 1e-3)

    def test_forced_lengths_delegate_to_increments(self):
        sticks = stick_break(1.0, uniforms=[0.5])
        point = theorem1_sample(LevyModel.cauchy(), 1.0, None, RngStream(3), sticks=sticks)[0]
        expected = sample_increments(LevyModel.cauchy(), np.array([0.5]), RngStream(3))[0]
        self.assertEqual(point.length, 0.5)
        self.assertEqual(point.increment, expected)

    def test_cauchy_slopes_independent_of_lengths(self):
        rng = RngStream(22)
        points = [point for _ in range(500) for point in theorem1_sample(LevyModel.cauchy(), 1.0, 8, rng)]
        lengths = [point.length for point in points]
        slopes = [point.slope for point in points]
        rho = stats.spearmanr(lengths, slopes).correlation
        self.assertLess(abs(rho), 5 / math.sqrt(len(points)))

    def test_round_trip_is_a_convex_decomposition(self):
        rng = RngStream(23)
        for model in (LevyModel.brownian(drift=0.5), LevyModel.cauchy(), LevyModel.stable(1.5), LevyModel.gamma()):
            points = theorem1_sample(model, 1.0, 24, rng)
            dec = minorant_from_points(points)
            self.assertTrue(np.all(np.diff(dec.slopes) > 0))
            self.assertAlmostEqual(dec.duration, sum(point.length for point in points))
            for left, right in zip(dec.faces[:-1], dec.faces[1:]):
                self.assertEqual(left.d, right.g)


class MinorantFromPointsTests(SimpleTestCase):
    def test_sorted_by_slope(self):
        dec = minorant_from_points([FacePoint(0.5, 1.0), FacePoint(0.5, -1.0)])
        self.assertEqual(
            [face.as_row() for face in dec],
            [(0.0, 0.5, 0.5, -1.0, -2.0), (0.5, 1.0, 0.5, 1.0, 2.0)],
        )
        np.testing.assert_array_equal(dec.vertex_values, [0.0, -1.0, 0.0])

    def test_single_point(self):
        dec = minorant_from_points([FacePoint(0.7, 0.2)])
        self.assertEqual(len(dec), 1)
        self.assertEqual(dec.end, 0.7)

    def test_random_points_are_convex(self):
        rng = RngStream(31)
        points = [FacePoint(length, increment)
                  for length, increment in zip(rng.uniform(0.01, 1.0, 50), rng.standard_normal(50))]
        self.assertTrue(np.all(np.diff(minorant_from_points(points).slopes) > 0))

    def test_equal_slopes_join_into_one_face(self):
        dec = minorant_from_points([FacePoint(1.0, 1.0), FacePoint(0.5, -1.0), FacePoint(2.0, 2.0)])
        self.assertEqual(
            [face.as_row() for face in dec],
            [(0.0, 0.5, 0.5, -1.0, -2.0), (0.5, 3.5, 3.0, 3.0, 1.0)],
        )
        np.testing.assert_array_equal(dec.vertex_values, [0.0, -1.0, 2.0])

    def test_underflowed_gamma_sticks(self):
        points = [FacePoint(2.0 ** -k, 0.0) for k in range(20, 30)] + [FacePoint(0.5, 0.3)]
        dec = minorant_from_points(points)
        self.assertEqual(len(dec), 2)
        self.assertEqual(dec.faces[0].increment, 0.0)
        self.assertAlmostEqual(dec.faces[0].length, sum(2.0 ** -k for k in range(20, 30)))


class ExponentialHorizonTests(SimpleTestCase):
    def test_horizon_mean(self):
        rng = RngStream(41)
        horizons = np.array([ppp_exponential_horizon(LevyModel.brownian(), 1.0, 4, rng)[0] for _ in range(20000)])
        self.assertLess(abs(horizons.mean() - 1.0), 5 / math.sqrt(horizons.size))

    def test_reproducible(self):
        first = ppp_exponential_horizon(LevyModel.cauchy(), 2.0, 8, RngStream(5, 5))
        second = ppp_exponential_horizon(LevyModel.cauchy(), 2.0, 8, RngStream(5, 5))
        self.assertEqual(first, second)

    def test_rectangle_count_matches_intensity(self):
        model = LevyModel.brownian()
        mass = intensity_mass(model, (0.5, 1.5), (-1.0, 0.0), Weight.EXPONENTIAL, theta=1.0)
        rng = RngStream(42)
        counts = []
        for _ in range(4000):
            _, points = ppp_exponential_horizon(model, 1.0, 32, rng)
            counts.append(sum(1 for p in points if 0.5 <= p.length <= 1.5 and -1.0 <= p.increment <= 0.0))
        self.assertLess(abs(np.mean(counts) - mass), 5 * math.sqrt(mass / len(counts)))

    def test_rejects_non_positive_rate(self):
        with self.assertRaises(DomainError):
            ppp_exponential_horizon(LevyModel.brownian(), 0.0, 4, RngStream(1))


class IntensityMassTests(SimpleTestCase):
    def test_degenerate_x_range(self):
        self.assertEqual(intensity_mass(LevyModel.brownian(), (0.5, 1.5), (0.3, 0.3)), 0.0)

    def test_unit_weight_over_the_line(self):
        value = intensity_mass(LevyModel.cauchy(), (0.2, 3.0), (-math.inf, math.inf))
        self.assertAlmostEqual(value, math.log(15.0), places=6)

    def test_exponential_weight_against_monte_carlo(self):
        model = LevyModel.brownian()
        value = intensity_mass(model, (0.5, 1.5), (-1.0, 0.0), Weight.EXPONENTIAL, theta=1.0)
        rng = RngStream(51)
        t = rng.uniform(0.5, 1.5, 200000)
        x = np.sqrt(t) * rng.standard_normal(t.size)
        samples = np.exp(-t) / t * ((x >= -1.0) & (x <= 0.0))
        self.assertLess(abs(samples.mean() - value), 5 * samples.std() / math.sqrt(t.size))

    def test_indicator_weight(self):
        model = LevyModel.brownian(drift=1.0)
        capped = intensity_mass(model, (0.1, 2.0), (-math.inf, math.inf), Weight.BELOW_SLOPE, slope=0.0)
        expected = intensity_mass(model, (0.1, 2.0), (-math.inf, 0.0))
        self.assertAlmostEqual(capped, expected, places=8)

    def test_rejects_bad_ranges(self):
        with self.assertRaises(DomainError):
            intensity_mass(LevyModel.brownian(), (0.0, 1.0), (0.0, 1.0))
        with self.assertRaises(DomainError):
            intensity_mass(LevyModel.brownian(), (0.5, 1.0), (0.0, 1.0), Weight.EXPONENTIAL)

    def test_slope_mass_grows_with_the_window(self):
        model = LevyModel.brownian()
        narrow = slope_intensity_mass(model, 1.0, 2.0)
        wide = slope_intensity_mass(model, 0.5, 3.0)
        self.assertEqual(slope_intensity_mass(model, 0.0, 0.0), 0.0)
        self.assertGreater(narrow, 0.0)
        self.assertGreater(wide, narrow)

    def test_discrete_intensity_counts_faces(self):
        harmonic = sum(1.0 / k for k in range(1, 11))
        value = discrete_intensity(LevyModel.cauchy(), 10, 0.1, (-math.inf, math.inf))
        self.assertAlmostEqual(value, harmonic)

    def test_discrete_intensity_of_negative_increments(self):
        value = discrete_intensity(LevyModel.brownian(), 4, 0.25, (-math.inf, 0.0))
        self.assertAlmostEqual(value, 0.5 * (1 + 1 / 2 + 1 / 3 + 1 / 4))
        value = discrete_intensity(LevyModel.brownian(drift=1.0), 1, 1.0, (-math.inf, 0.0))
        self.assertAlmostEqual(value, special.ndtr(-1.0))


class InfiniteHorizonTests(SimpleTestCase):
    def test_faces_below_the_cap(self):
        points = infinite_horizon_points(LevyModel.brownian(drift=1.0), 0.0, 50.0, 4096, RngStream(61))
        self.assertTrue(all(point.slope < 0 for point in points))

    def test_cap_must_lie_below_long_run_slope(self):
        with self.assertRaises(DomainError):
            infinite_horizon_points(LevyModel.brownian(drift=1.0), 1.0, 10.0, 64, RngStream(1))
        with self.assertRaises(LongRunSlopeUndefinedError):
            infinite_horizon_points(LevyModel.cauchy(), 0.0, 10.0, 64, RngStream(1))

    def test_gamma_faces_increase(self):
        points = infinite_horizon_points(LevyModel.gamma(), 0.5, 20.0, 1024, RngStream(62))
        self.assertTrue(all(point.increment > 0 for point in points))

    def test_choose_horizon_bounds_the_tail(self):
        model = LevyModel.brownian(drift=1.0)
        horizon = choose_horizon(model, 0.0, 0.05)
        tail = infinite_horizon_mass(model, 0.0, (horizon, math.inf))
        body = infinite_horizon_mass(model, 0.0, (0.05, horizon))
        self.assertLessEqual(tail, 0.01 * (tail + body))
