import math

import numpy as np
from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError
from scipy import stats

from .catalog import Family, LevyModel
from .exceptions import DomainError, UnsupportedError
from .rng import RngStream
from .serializers import model_from_spec, model_to_spec
from .services import increment_sample, marginal_cdf, path_sample, sample_increments, sample_log_increments


class LevyModelTests(SimpleTestCase):
    def test_rejects_invalid_parameters(self):
        with self.assertRaises(DomainError):
            LevyModel.brownian(sigma=0.0)
        with self.assertRaises(DomainError):
            LevyModel.cauchy(scale=-1.0)
        with self.assertRaises(DomainError):
            LevyModel.stable(alpha=2.5)
        with self.assertRaises(DomainError):
            LevyModel.stable(alpha=1.0, beta=0.5)
        with self.assertRaises(DomainError):
            LevyModel.stable(alpha=1.5, beta=1.2)

    def test_stable_index_two_is_brownian(self):
        canonical = LevyModel.stable(alpha=2.0, scale=0.5).canonical()
        self.assertEqual(canonical.family, Family.BROWNIAN)
        self.assertAlmostEqual(canonical.sigma, math.sqrt(2.0) * 0.5)
        self.assertEqual(canonical.drift, 0.0)

    def test_long_run_slope(self):
        self.assertEqual(LevyModel.brownian(drift=-0.3).long_run_slope, -0.3)
        self.assertEqual(LevyModel.gamma().long_run_slope, 1.0)
        self.assertIsNone(LevyModel.cauchy().long_run_slope)
        self.assertEqual(LevyModel.stable(alpha=1.5).long_run_slope, 0.0)
        self.assertEqual(LevyModel.stable(alpha=0.5, beta=1.0).long_run_slope, math.inf)
        self.assertIsNone(LevyModel.stable(alpha=0.7, beta=0.2).long_run_slope)


class RngStreamTests(SimpleTestCase):
    def test_same_seed_same_stream(self):
        first = RngStream(7, 0).uniform(size=5)
        second = RngStream(7, 0).uniform(size=5)
        np.testing.assert_array_equal(first, second)

    def test_distinct_streams_differ(self):
        self.assertFalse(np.array_equal(RngStream(7, 0).uniform(size=5), RngStream(7, 1).uniform(size=5)))

    def test_children_are_reproducible(self):
        parent = RngStream(11, 3)
        np.testing.assert_array_equal(parent.child(4).uniform(size=3), RngStream(11, 3).child(4).uniform(size=3))
        self.assertNotEqual(parent.child(4).stream_id, parent.child(5).stream_id)

    def test_named_streams(self):
        self.assertEqual(RngStream.for_name(1, 'alpha').stream_id, RngStream.for_name(1, 'alpha').stream_id)
        self.assertNotEqual(RngStream.for_name(1, 'alpha').stream_id, RngStream.for_name(1, 'beta').stream_id)

    def test_rejects_negative_seed(self):
        with self.assertRaises(DomainError):
            RngStream(-1)


class SamplingTests(SimpleTestCase):
    def test_increment_sample_is_deterministic(self):
        for model in (LevyModel.brownian(), LevyModel.cauchy(), LevyModel.stable(1.3, 0.4), LevyModel.gamma()):
            self.assertEqual(
                increment_sample(model, 0.5, RngStream(7, 0)),
                increment_sample(model, 0.5, RngStream(7, 0)),
            )

    def test_rejects_non_positive_dt(self):
        with self.assertRaises(DomainError):
            increment_sample(LevyModel.brownian(), 0.0, RngStream(1))
        with self.assertRaises(DomainError):
            sample_increments(LevyModel.gamma(), np.array([0.1, -0.1]), RngStream(1))

    def test_brownian_mean(self):
        draws = sample_increments(LevyModel.brownian(sigma=1.0, drift=1.0), 0.01, RngStream(3), size=100000)
        self.assertLess(abs(draws.mean() - 0.01), 5 * 0.1 / math.sqrt(100000))

    def test_gamma_laplace_transform(self):
        draws = sample_increments(LevyModel.gamma(), 1.0, RngStream(5), size=100000)
        laplace = np.exp(-draws)
        self.assertLess(abs(laplace.mean() - 0.5), 5 * laplace.std() / math.sqrt(draws.size))
        self.assertTrue(np.all(draws > 0))

    def test_array_dt_broadcasts(self):
        dt = np.array([0.1, 0.2, 0.3])
        self.assertEqual(sample_increments(LevyModel.cauchy(), dt, RngStream(2)).shape, (3,))

    def test_marginals_match_distribution_functions(self):
        models = (
            LevyModel.brownian(sigma=0.7, drift=0.2),
            LevyModel.cauchy(scale=2.0),
            LevyModel.stable(alpha=0.5, beta=1.0, scale=0.8),
            LevyModel.stable(alpha=2.0, scale=1.5),
            LevyModel.gamma(),
        )
        for model in models:
            for t in (0.1, 1.0, 5.0):
                draws = sample_increments(model, t, RngStream.for_name(9, f"{model.label}:{t}"), size=20000)
                result = stats.kstest(draws, lambda x: marginal_cdf(model, t, x))
                self.assertGreater(result.pvalue, 1e-3, f"{model.label} at t={t}")

    def test_stable_scaling(self):
        model = LevyModel.stable(alpha=1.5, beta=-0.5)
        s = 3.0
        long_step = sample_increments(model, 2.0 * s, RngStream(1, 1), size=20000)
        scaled = s ** (1 / 1.5) * sample_increments(model, 2.0, RngStream(1, 2), size=20000)
        self.assertGreater(stats.ks_2samp(long_step, scaled).pvalue, 1e-3)

    def test_path_sample_single_step(self):
        path = path_sample(LevyModel.brownian(), 2.0, 1, RngStream(4))
        self.assertEqual(path.values.size, 2)
        self.assertEqual(path.values[0], 0.0)
        self.assertEqual(path.duration, 2.0)
        self.assertEqual(path.values[1], increment_sample(LevyModel.brownian(), 2.0, RngStream(4)))

    def test_path_sample_terminal_law(self):
        terminals = [path_sample(LevyModel.brownian(), 1.0, 64, RngStream(8, k)).terminal for k in range(2000)]
        self.assertGreater(stats.kstest(terminals, 'norm').pvalue, 1e-3)

    def test_path_sample_rejects_zero_steps(self):
        with self.assertRaises(DomainError):
            path_sample(LevyModel.brownian(), 1.0, 0, RngStream(4))

    def test_small_shape_gamma_in_log_space(self):
        logs = sample_log_increments(LevyModel.gamma(), 1.0 / 16384, RngStream(6), size=20000)
        self.assertTrue(np.all(np.isfinite(logs)))
        self.assertGreater(int(np.sum(np.exp(logs) == 0.0)), 0)
        # most draws are below log of the smallest float
        self.assertGreater(float(np.mean(logs < -745.0)), 0.5)
        result = stats.kstest(logs, stats.loggamma(1.0 / 16384).cdf)
        self.assertGreater(result.pvalue, 1e-3)

    def test_log_increments_match_the_gamma_law(self):
        draws = np.exp(sample_log_increments(LevyModel.gamma(), 0.5, RngStream(7), size=20000))
        self.assertGreater(stats.kstest(draws, lambda x: marginal_cdf(LevyModel.gamma(), 0.5, x)).pvalue, 1e-3)

    def test_log_increments_only_for_gamma(self):
        with self.assertRaises(UnsupportedError):
            sample_log_increments(LevyModel.brownian(), 0.5, RngStream(7))

    def test_gamma_paths_carry_log_steps(self):
        path = path_sample(LevyModel.gamma(), 1.0, 256, RngStream(8))
        self.assertEqual(path.log_steps.shape, (256,))
        np.testing.assert_allclose(path.increments(), np.exp(path.log_steps), atol=1e-12)
        self.assertIsNone(path_sample(LevyModel.cauchy(), 1.0, 256, RngStream(8)).log_steps)


class MarginalCdfTests(SimpleTestCase):
    def test_cauchy_values(self):
        self.assertAlmostEqual(marginal_cdf(LevyModel.cauchy(), 1.0, 0.0), 0.5)
        self.assertAlmostEqual(marginal_cdf(LevyModel.cauchy(), 2.0, 2.0), 0.75)

    def test_brownian_symmetry(self):
        self.assertAlmostEqual(marginal_cdf(LevyModel.brownian(), 4.0, 0.0), 0.5)

    def test_limits_and_monotonicity(self):
        for model in (LevyModel.brownian(drift=1.0), LevyModel.cauchy(), LevyModel.gamma(),
                      LevyModel.stable(alpha=0.5, beta=1.0)):
            grid = np.linspace(-50, 50, 201)
            values = marginal_cdf(model, 1.5, grid)
            self.assertTrue(np.all(np.diff(values) >= 0))
            self.assertAlmostEqual(marginal_cdf(model, 1.5, -np.inf), 0.0)
            self.assertAlmostEqual(marginal_cdf(model, 1.5, np.inf), 1.0)

    def test_subordinators_have_no_mass_below_zero(self):
        self.assertEqual(marginal_cdf(LevyModel.gamma(), 1.0, -1.0), 0.0)
        self.assertEqual(marginal_cdf(LevyModel.stable(alpha=0.5, beta=1.0), 1.0, 0.0), 0.0)

    def test_unsupported_index(self):
        with self.assertRaises(UnsupportedError):
            marginal_cdf(LevyModel.stable(alpha=1.5), 1.0, 0.0)

    def test_rejects_non_positive_time(self):
        with self.assertRaises(DomainError):
            marginal_cdf(LevyModel.brownian(), 0.0, 0.0)


class ModelSpecTests(SimpleTestCase):
    def test_round_trip(self):
        for model in (LevyModel.brownian(0.5, -1.0), LevyModel.cauchy(3.0), LevyModel.stable(0.5, 1.0, 2.0),
                      LevyModel.gamma()):
            self.assertEqual(model_from_spec(model_to_spec(model)), model)

    def test_defaults(self):
        self.assertEqual(model_from_spec({'family': 'brownian'}), LevyModel.brownian())

    def test_rejects_unknown_fields(self):
        with self.assertRaises(ValidationError):
            model_from_spec({'family': 'cauchy', 'sigma': 1.0})

    def test_rejects_invalid_values(self):
        with self.assertRaises(ValidationError):
            model_from_spec({'family': 'stable', 'beta': 0.0})
        with self.assertRaises(ValidationError):
            model_from_spec({'family': 'stable', 'alpha': 1.0, 'beta': 0.3})
        with self.assertRaises(ValidationError):
            model_from_spec({'family': 'brownian', 'sigma': -2})
        with self.assertRaises(ValidationError):
            model_from_spec({'family': 'levy'})
