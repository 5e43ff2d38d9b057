import json
import math
from fractions import Fraction
from functools import partial

import numpy as np
from django.test import SimpleTestCase, TestCase
from scipy import stats

from levy_models.catalog import LevyModel
from levy_models.exceptions import DomainError, UnsupportedError
from levy_models.rng import RngStream
from minorant_core.paths import GridPath

from .models import CheckRun
from .serializers import report_json_line, reports_to_json_lines
from .services import (
    Convention,
    TestReport,
    argmin_support_check,
    cauchy_gamma_check,
    cauchy_independence_check,
    check_names,
    chord_probability_check,
    discovery_check,
    excursion_law_check,
    face_count_check,
    format_table,
    hull_oracle_check,
    infinite_horizon_check,
    invariance_check,
    ks_one_sample,
    ks_two_sample,
    marginal_consistency_check,
    min_record,
    pecherskii_rogozin_check,
    pecherskii_rogozin_rhs,
    poisson_ppp_check,
    ranked_length_check,
    refined_min_records,
    rogozin_integral,
    rogozin_integral_check,
    run_check,
    run_replicates,
    run_suite,
    slope_monotonicity_check,
    stable_scaling_check,
    stable_slope_count_check,
    theorem1_check,
    uniform_face_length_check,
)
from .services.brownian import bridge_argmin_times, bridge_minima
from .services.cauchy_checks import _gamma_ratio_worker
from .services.reports import Part, p_part, z_part
from .services.statistics import (
    chi_square_independence,
    harmonic,
    harmonic_variance,
    mean_cycle_count,
    proportion_z,
    randomized_pit,
    uniform_cdf,
)
from .services.walk_checks import _chord_worker
from .tasks import run_check_task

BROWNIAN = LevyModel.brownian()
CAUCHY = LevyModel.cauchy()
GAMMA = LevyModel.gamma()


class StatisticsTests(SimpleTestCase):
    def test_identical_samples(self):
        x = RngStream(1).standard_normal(100)
        statistic, p_value = ks_two_sample(x, x)
        self.assertEqual(statistic, 0.0)
        self.assertAlmostEqual(p_value, 1.0)

    def test_disjoint_supports(self):
        statistic, p_value = ks_two_sample(np.arange(50.0), np.arange(100.0, 150.0))
        self.assertEqual(statistic, 1.0)
        self.assertLess(p_value, 1e-6)

    def test_small_samples_rejected(self):
        with self.assertRaises(DomainError):
            ks_two_sample(np.zeros(10), np.zeros(100))
        with self.assertRaises(DomainError):
            ks_one_sample(np.zeros(29), uniform_cdf)

    def test_normal_samples_agree(self):
        rng = RngStream(2)
        _, p_value = ks_two_sample(rng.standard_normal(10 ** 4), rng.standard_normal(10 ** 4))
        self.assertGreater(p_value, 1e-3)

    def test_one_sample(self):
        _, p_value = ks_one_sample(RngStream(3).open_uniform(2000), uniform_cdf)
        self.assertGreater(p_value, 1e-3)
        statistic, p_value = ks_one_sample(np.full(100, 0.5), uniform_cdf)
        self.assertAlmostEqual(statistic, 0.5)
        self.assertLess(p_value, 1e-6)

    def test_ks_matches_scipy(self):
        rng = RngStream(6)
        a, b = rng.standard_normal(300), rng.standard_normal(200) + 0.1
        expected = stats.ks_2samp(a, b)
        self.assertEqual(ks_two_sample(a, b), (expected.statistic, expected.pvalue))
        expected = stats.kstest(a, 'norm')
        self.assertEqual(ks_one_sample(a, stats.norm.cdf), (expected.statistic, expected.pvalue))

    def test_empirical_against_own_ecdf(self):
        samples = np.sort(RngStream(4).standard_normal(200))
        ecdf = lambda x: np.searchsorted(samples, x, side='right') / samples.size
        statistic, _ = ks_one_sample(samples, ecdf)
        self.assertLessEqual(statistic, 1.0 / samples.size + 1e-12)

    def test_harmonic_numbers_and_cycles(self):
        self.assertAlmostEqual(harmonic(3), 11 / 6)
        self.assertAlmostEqual(harmonic(10), 2.9289682539682538)
        self.assertEqual(mean_cycle_count(3), Fraction(11, 6))
        self.assertEqual(mean_cycle_count(4), Fraction(25, 12))
        self.assertEqual(harmonic_variance(1), 0.0)

    def test_independence(self):
        rng = RngStream(5)
        x, y = rng.standard_normal(2000), rng.standard_normal(2000)
        self.assertGreater(chi_square_independence(x, y)[1], 1e-3)
        self.assertLess(chi_square_independence(x, x + 0.1 * y)[1], 1e-6)

    def test_proportion_z(self):
        self.assertEqual(proportion_z(50, 100, 0.5), 0.0)
        self.assertAlmostEqual(proportion_z(60, 100, 0.5), 2.0)


class ReportTests(SimpleTestCase):
    def test_headline_is_first_failing_part(self):
        report = TestReport.from_parts(
            'demo', [p_part('a', 0.1, 0.5), z_part('b', 6.0, 1.2)], RngStream(9), 100,
        )
        self.assertFalse(report.passed)
        self.assertEqual(report.convention, Convention.Z)
        self.assertEqual(report.z_score, 6.0)
        self.assertIsNone(report.p_value)
        self.assertIn('b', report.notes)
        self.assertEqual(report.master_seed, 9)
        self.assertFalse(report.details['parts']['b']['passed'])

    def test_headline_defaults_to_first_part(self):
        report = TestReport.from_parts('demo', [p_part('a', 0.1, 0.5), z_part('b', 1.0)], RngStream(9), 100)
        self.assertTrue(report.passed)
        self.assertEqual(report.p_value, 0.5)
        self.assertEqual(report.verdict, 'PASS')

    def test_no_parts(self):
        with self.assertRaises(ValueError):
            TestReport.from_parts('demo', [], RngStream(9), 0)

    def test_part_conventions(self):
        self.assertTrue(Part('c', Convention.COUNT, 0.0, 0.0).passed)
        self.assertFalse(Part('c', Convention.COUNT, 1.0, 0.0).passed)
        self.assertTrue(Part('r', Convention.REL, 0.01, 0.02).passed)
        self.assertFalse(p_part('p', 3.0, 0.005).passed)

    def test_negative_control_verdict(self):
        report = TestReport.from_parts('neg', [p_part('a', 9.0, 1e-9)], RngStream(9), 10, negative_control=True)
        self.assertEqual(report.verdict, 'FAIL (expected)')
        self.assertFalse(report.counts_against_exit)

    def test_table(self):
        passing = TestReport.from_parts('first_check', [p_part('a', 0.1, 0.5)], RngStream(1), 10)
        failing = TestReport.from_parts('second_check', [z_part('b', math.inf)], RngStream(1), 10)
        table = format_table([passing, failing])
        self.assertIn('first_check', table)
        self.assertIn('inf', table)
        self.assertTrue(table.endswith('2 checks, 1 failed'))


class ReplicateTests(SimpleTestCase):
    def test_block_results_are_concatenated(self):
        out = run_replicates(partial(_chord_worker, BROWNIAN, 5), 250, RngStream(3), jobs=1, block_size=100)
        self.assertEqual(out['above'].shape, (250,))

    def test_worker_count_does_not_change_results(self):
        worker = partial(_chord_worker, CAUCHY, 10)
        serial = run_replicates(worker, 300, RngStream(3), jobs=1, block_size=100)
        parallel = run_replicates(worker, 300, RngStream(3), jobs=2, block_size=100)
        np.testing.assert_array_equal(serial['above'], parallel['above'])


class BrownianMinimumTests(SimpleTestCase):
    def test_bridge_minimum_below_endpoints(self):
        rng = RngStream(4)
        start, end = rng.standard_normal(500), rng.standard_normal(500)
        minima = bridge_minima(start, end, 1.3, 0.1, rng.open_uniform(500))
        self.assertTrue(np.all(minima <= np.minimum(start, end)))

    def test_bridge_minimum_law(self):
        # min of a standard bridge on [0, 1] from 0 to 0: P(M <= -y) = exp(-2 y^2)
        minima = bridge_minima(0.0, 0.0, 1.0, 1.0, RngStream(5).open_uniform(3000))
        cdf = lambda x: np.where(x < 0, np.exp(-2.0 * np.minimum(x, 0.0) ** 2), 1.0)
        self.assertGreater(ks_one_sample(minima, cdf)[1], 1e-3)

    def test_min_record_takes_last_minimum(self):
        record = min_record(GridPath(0.0, 0.25, [0.0, -1.0, 0.5, -1.0, 0.0]), 0.0)
        self.assertEqual(record.rho, 0.75)
        self.assertEqual(record.m, -1.0)

    def test_refined_records(self):
        rng = RngStream(6)
        walks = np.hstack((np.zeros((200, 1)), np.cumsum(rng.standard_normal((200, 32)) * 0.25, axis=1)))
        rho, m = refined_min_records(walks, 1.0, 1.0 / 16, rng)
        self.assertTrue(np.all((rho >= 0) & (rho <= 2.0)))
        self.assertTrue(np.all(m <= walks.min(axis=1)))

    def test_bridge_argmin_is_uniform_for_equal_endpoints(self):
        # a bridge from 0 to 0 attains its minimum at a uniform time
        rng = RngStream(7)
        minima = bridge_minima(0.0, 0.0, 1.0, 1.0, rng.open_uniform(3000))
        times = bridge_argmin_times(0.0, 0.0, minima, 1.0, 1.0, rng)
        self.assertTrue(np.all((times > 0) & (times < 1)))
        self.assertGreater(ks_one_sample(times, uniform_cdf)[1], 1e-3)

    def test_bridge_argmin_leans_to_the_lower_end(self):
        rng = RngStream(8)

        def times(start, end):
            minima = bridge_minima(start, end, 1.0, 0.5, rng.open_uniform(3000))
            return bridge_argmin_times(start, end, minima, 1.0, 0.5, rng)

        forward, backward = times(0.0, 1.5), times(1.5, 0.0)
        self.assertLess(forward.mean(), 0.2)
        self.assertGreater(ks_two_sample(forward, 0.5 - backward)[1], 1e-3)
        self.assertLess(ks_one_sample(forward / 0.5, uniform_cdf)[1], 1e-6)

    def test_refined_argmin_of_fine_bridges_is_uniform(self):
        # coarse Brownian bridges: the refined argmin time must stay uniform on [0, 1]
        rng = RngStream(9)
        steps = rng.standard_normal((3000, 8)) * math.sqrt(1.0 / 8)
        walks = np.hstack((np.zeros((3000, 1)), np.cumsum(steps, axis=1)))
        walks -= np.linspace(0.0, 1.0, 9) * walks[:, -1:]
        rho, _ = refined_min_records(walks, 1.0, 1.0 / 8, rng)
        self.assertGreater(ks_one_sample(rho, uniform_cdf)[1], 1e-3)


class FluctuationQuadratureTests(SimpleTestCase):
    def test_rogozin_integral_by_family(self):
        cauchy = rogozin_integral(CAUCHY)
        self.assertTrue(cauchy.diverges)
        self.assertAlmostEqual(cauchy.value, 0.5 * math.log(1e8), places=4)
        gamma = rogozin_integral(GAMMA)
        self.assertEqual(gamma.value, 0.0)
        self.assertFalse(gamma.diverges)
        self.assertLess(rogozin_integral(LevyModel.brownian(1.0, 1.0)).value,
                        rogozin_integral(LevyModel.brownian(1.0, 0.5)).value)

    def test_rogozin_rejects_bad_cutoff(self):
        with self.assertRaises(DomainError):
            rogozin_integral(CAUCHY, t_min=2.0)

    def test_zero_exponents(self):
        self.assertEqual(pecherskii_rogozin_rhs(BROWNIAN, 1.0, 0.0, 0.0, 0.0), 1.0)

    def test_symmetric_time_transform(self):
        # driftless: E exp(-alpha rho) = sqrt(theta / (theta + alpha))
        self.assertAlmostEqual(pecherskii_rogozin_rhs(BROWNIAN, 1.0, 1.0, 0.0, 0.0), math.sqrt(0.5), places=5)
        self.assertAlmostEqual(pecherskii_rogozin_rhs(BROWNIAN, 2.0, 1.0, 0.0, 0.0), math.sqrt(2.0 / 3.0), places=5)

    def test_value_in_unit_interval(self):
        value = pecherskii_rogozin_rhs(BROWNIAN, 1.0, 0.5, 0.3, 0.0)
        self.assertGreater(value, 0.0)
        self.assertLess(value, 1.0)

    def test_closed_form_only_for_brownian(self):
        with self.assertRaises(UnsupportedError):
            pecherskii_rogozin_rhs(CAUCHY, 1.0, 0.5, 0.3, 0.0)
        with self.assertRaises(DomainError):
            pecherskii_rogozin_rhs(BROWNIAN, 0.0, 0.5, 0.3, 0.0)


class WalkCheckTests(SimpleTestCase):
    def test_chord_probability(self):
        report = chord_probability_check(BROWNIAN, (2, 10), 2000, RngStream(11))
        self.assertTrue(report.passed, report.notes)
        self.assertEqual(set(report.details['parts']), {'n=2', 'n=10'})

    def test_face_count_cauchy(self):
        report = face_count_check(CAUCHY, 10, 2000, RngStream(12))
        self.assertTrue(report.passed, report.notes)
        self.assertEqual(report.details['cycle_oracle_n3'], '11/6')

    def test_single_step_has_one_face(self):
        report = face_count_check(BROWNIAN, 1, 100, RngStream(12))
        self.assertTrue(report.passed)

    def test_hull_oracle(self):
        report = hull_oracle_check(500, 10, RngStream(13))
        self.assertTrue(report.passed)
        self.assertEqual(report.statistic, 0.0)

    def test_slope_monotonicity(self):
        self.assertTrue(slope_monotonicity_check(100, 200, RngStream(14)).passed)

    def test_exact_uniform_steps(self):
        report = uniform_face_length_check(BROWNIAN, 16, 3000, RngStream(15), exact=True)
        self.assertTrue(report.passed, report.notes)
        self.assertEqual(report.name, 'uniform_face_length_exact')

    def test_uniform_face_length(self):
        report = uniform_face_length_check(CAUCHY, 512, 400, RngStream(16))
        self.assertTrue(report.passed, report.notes)


class PathCheckTests(SimpleTestCase):
    def test_marginal_consistency(self):
        self.assertTrue(marginal_consistency_check(GAMMA, (0.5, 1.0), 2000, RngStream(21)).passed)

    def test_stable_scaling(self):
        self.assertTrue(stable_scaling_check(LevyModel.stable(1.5), 4.0, 1.0, 2000, RngStream(22)).passed)
        with self.assertRaises(UnsupportedError):
            stable_scaling_check(GAMMA, 4.0, 1.0, 100, RngStream(22))

    def test_theorem1_gamma(self):
        report = theorem1_check(GAMMA, 256, 300, RngStream(23))
        self.assertTrue(report.passed, report.notes)
        self.assertIn('negative_increments', report.details['parts'])

    def test_ranked_length(self):
        self.assertTrue(ranked_length_check(BROWNIAN, 256, 500, RngStream(24)).passed)

    def test_invariance(self):
        report = invariance_check(BROWNIAN, 64, 400, RngStream(25))
        self.assertTrue(report.passed, report.notes)

    def test_excursion_law(self):
        report = excursion_law_check(BROWNIAN, 64, 500, RngStream(26))
        self.assertTrue(report.passed, report.notes)
        with self.assertRaises(UnsupportedError):
            excursion_law_check(CAUCHY, 64, 100, RngStream(26))

    def test_discovery(self):
        report = discovery_check(BROWNIAN, 256, 400, RngStream(27))
        self.assertTrue(report.passed, report.notes)

    def test_argmin_support(self):
        report = argmin_support_check(BROWNIAN, 128, 4000, RngStream(28))
        self.assertTrue(report.passed, report.notes)
        self.assertIn('arcsine', report.details['parts'])
        self.assertEqual(sum(report.details['histogram']), 4000)

    def test_argmin_gamma_is_a_negative_control(self):
        report = argmin_support_check(GAMMA, 128, 500, RngStream(29), negative_control=True)
        self.assertFalse(report.passed)
        self.assertFalse(report.counts_against_exit)


class CauchyCheckTests(SimpleTestCase):
    def test_independence_holds_for_cauchy(self):
        self.assertTrue(cauchy_independence_check(CAUCHY, 256, 600, RngStream(31)).passed)

    def test_brownian_dependence_detected(self):
        report = cauchy_independence_check(BROWNIAN, 256, 2000, RngStream(32), negative_control=True)
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict, 'FAIL (expected)')

    def test_gamma_ratio(self):
        report = cauchy_gamma_check(256, 400, RngStream(33))
        self.assertTrue(report.passed, report.notes)
        self.assertEqual(set(report.details['beta_binomial_marginal_p']), {'x=-1', 'x=0', 'x=1'})

    def test_gamma_ratio_on_a_coarse_grid(self):
        # few steps, many replicates: the passage index is visibly discrete
        report = cauchy_gamma_check(16, 4000, RngStream(34))
        self.assertTrue(report.passed, report.notes)
        self.assertTrue(all(p > 1e-3 for p in report.details['beta_binomial_marginal_p'].values()))

    def test_gamma_ratio_reference_is_beta_binomial(self):
        counts = _gamma_ratio_worker(16, (0.0,), RngStream(35), 5000)['x0']
        self.assertTrue(np.all(counts == np.rint(counts)))
        observed = np.bincount(counts.astype(int), minlength=17)
        expected = stats.betabinom(16, 0.5, 0.5).pmf(np.arange(17)) * counts.size
        self.assertGreater(stats.chisquare(observed, expected).pvalue, 1e-3)

    def test_randomized_pit_is_uniform(self):
        rng = RngStream(36)
        distribution = stats.betabinom(10, 0.3, 0.7)
        counts = distribution.rvs(size=3000, random_state=rng.generator)
        values = randomized_pit(counts, distribution, rng.open_uniform(3000))
        self.assertGreater(ks_one_sample(values, uniform_cdf)[1], 1e-3)


class FluctuationCheckTests(SimpleTestCase):
    def test_poisson_counts(self):
        rectangles = (((0.1, 3.0), (-2.0, 0.0)), ((0.1, 3.0), (0.0, 2.0)), ((0.5, 1.5), (0.0, 0.0)))
        report = poisson_ppp_check(BROWNIAN, 1.0, rectangles, 8000, RngStream(41))
        self.assertTrue(report.passed, report.notes)
        parts = report.details['parts']
        self.assertEqual(parts['empty_r2']['value'], 0.0)
        self.assertIn('correlation_r0_r1', parts)

    def test_infinite_horizon(self):
        report = infinite_horizon_check(LevyModel.brownian(1.0, 1.0), 0.0, 0.05, 200, RngStream(42))
        self.assertTrue(report.passed, report.notes)
        self.assertGreater(report.details['horizon'], 0.05)

    def test_slope_count(self):
        report = stable_slope_count_check(2.0, 1.0, 2.0, 2048, 300, RngStream(43))
        self.assertTrue(report.passed, report.notes)
        self.assertAlmostEqual(report.details['continuous_mass'], 0.578, delta=0.01)
        with self.assertRaises(UnsupportedError):
            stable_slope_count_check(1.5, 1.0, 2.0, 256, 100, RngStream(43))

    def test_rogozin(self):
        self.assertTrue(rogozin_integral_check(0, RngStream(44)).passed)

    def test_minimum_transform(self):
        report = pecherskii_rogozin_check(BROWNIAN, 1.0, 0.5, 0.3, 0.0, 64, 20000, RngStream(45))
        self.assertTrue(report.passed, report.notes)
        self.assertLess(abs(report.details['estimate'] - report.details['quadrature']), 0.02)


class CatalogTests(SimpleTestCase):
    def test_names_are_unique_and_ordered(self):
        names = check_names()
        self.assertEqual(len(names), len(set(names)))
        self.assertEqual(names[0], 'hull_oracle')
        self.assertIn('cauchy_independence_brownian', names)

    def test_unknown_check(self):
        with self.assertRaises(DomainError):
            run_check('no_such_check', 1)
        with self.assertRaises(DomainError):
            run_suite(1, names=['no_such_check'])

    def test_reproducible(self):
        first = run_check('chord_probability_cauchy', 5, scale=0.01)
        second = run_check('chord_probability_cauchy', 5, scale=0.01)
        self.assertEqual(report_json_line(first), report_json_line(second))
        self.assertEqual(first.master_seed, 5)
        self.assertEqual(first.n_replicates, 1000)

    def test_suite_keeps_catalog_order(self):
        reports = run_suite(3, scale=0.01, names=['rogozin_integral', 'hull_oracle'])
        self.assertEqual([report.name for report in reports], ['hull_oracle', 'rogozin_integral'])
        self.assertTrue(all(report.passed for report in reports))

    def test_negative_control_flag(self):
        report = run_check('argmin_support_gamma', 3, scale=0.05)
        self.assertTrue(report.negative_control)
        self.assertFalse(report.counts_against_exit)


class SerializerTests(SimpleTestCase):
    def test_json_line(self):
        report = TestReport.from_parts('demo', [z_part('b', math.inf)], RngStream(7), 10)
        data = json.loads(report_json_line(report))
        self.assertEqual(data['name'], 'demo')
        self.assertEqual(data['convention'], 'z')
        self.assertEqual(data['z_score'], 'inf')
        self.assertEqual(data['verdict'], 'FAIL')

    def test_json_lines(self):
        report = TestReport.from_parts('demo', [p_part('a', 0.1, 0.5)], RngStream(7), 10)
        text = reports_to_json_lines([report, report])
        self.assertEqual(text.count('\n'), 2)
        self.assertTrue(text.endswith('\n'))


class CheckRunTests(TestCase):
    def test_round_trip(self):
        report = TestReport.from_parts('demo', [p_part('a', 0.1, 0.5)], RngStream(2 ** 63), 10, n_grid=16)
        run = CheckRun.from_report(report)
        self.assertEqual(run.master_seed, '9223372036854775808')
        restored = CheckRun.objects.get(pk=run.pk).to_report()
        self.assertEqual(restored.master_seed, 2 ** 63)
        self.assertEqual(restored.convention, Convention.P)
        self.assertEqual(restored.p_value, 0.5)
        self.assertTrue(restored.passed)

    def test_task_stores_run(self):
        result = run_check_task.apply(args=('rogozin_integral', 7)).get()
        self.assertTrue(result['passed'])
        run = CheckRun.objects.get(pk=result['id'])
        self.assertEqual(run.name, 'rogozin_integral')
        self.assertEqual(run.master_seed, '7')
