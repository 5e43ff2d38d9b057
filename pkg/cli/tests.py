import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from levy_models.catalog import LevyModel
from levy_models.rng import RngStream
from stick_breaking.services import intensity_mass
from verify.models import CheckRun
from verify.services.reports import TestReport, z_part

from .exports import csv_text, format_value, read_path
from .runner import run

BROWNIAN_JSON = '{"family": "brownian", "sigma": 1.0, "drift": 0.0}'


def _call(*args, **options):
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


class PathFileMixin:
    def write_path(self, rows):
        handle = tempfile.NamedTemporaryFile('w', suffix='.csv', delete=False, newline='')
        handle.write(csv_text(('t', 'value'), rows))
        handle.close()
        self.addCleanup(os.remove, handle.name)
        return handle.name


class ExportTests(PathFileMixin, SimpleTestCase):
    def test_number_format(self):
        self.assertEqual(format_value(0.1), '0.10000000000000001')
        self.assertEqual(format_value(3), '3')
        self.assertEqual(format_value(-0.5), '-0.5')

    def test_line_endings(self):
        self.assertEqual(csv_text(('a', 'b'), [(1, 0.5)]), 'a,b\n1,0.5\n')

    def test_read_path(self):
        path = read_path(self.write_path([(0.0, 0.0), (0.5, 1.0), (1.0, -1.0)]))
        self.assertEqual(path.dt, 0.5)
        self.assertEqual(path.values.tolist(), [0.0, 1.0, -1.0])


class SimulationCommandTests(PathFileMixin, SimpleTestCase):
    def test_sample_path(self):
        out, _ = _call('sample_path', model=BROWNIAN_JSON, n_grid=8, seed=1)
        lines = out.splitlines()
        self.assertEqual(lines[0], 't,value')
        self.assertEqual(len(lines), 10)
        self.assertEqual(lines[1], '0,0')
        self.assertEqual(lines[-1].split(',')[0], '1')

    def test_same_seed_same_bytes(self):
        first, _ = _call('sample_path', model=BROWNIAN_JSON, n_grid=64, seed=9)
        second, _ = _call('sample_path', model=BROWNIAN_JSON, n_grid=64, seed=9)
        third, _ = _call('sample_path', model=BROWNIAN_JSON, n_grid=64, seed=10)
        self.assertEqual(first, second)
        self.assertNotEqual(first, third)

    def test_model_from_file(self):
        handle = tempfile.NamedTemporaryFile('w', suffix='.json', delete=False)
        handle.write('{"family": "cauchy", "scale": 2.0}')
        handle.close()
        self.addCleanup(os.remove, handle.name)
        out, _ = _call('sample_path', model=handle.name, n_grid=4, seed=1)
        self.assertEqual(len(out.splitlines()), 6)

    def test_minorant_of_file(self):
        filename = self.write_path([(0.0, 0.0), (0.25, 1.0), (0.5, -1.0), (0.75, 2.0)])
        out, _ = _call('minorant', input=filename)
        self.assertEqual(out.splitlines(), [
            'g,d,length,increment,slope',
            '0,0.5,0.5,-1,-2',
            '0.5,0.75,0.25,3,12',
        ])

    def test_minorant_json(self):
        out, _ = _call('minorant', model=BROWNIAN_JSON, n_grid=128, seed=3, format='json')
        faces = json.loads(out)
        self.assertEqual(set(faces[0]), {'g', 'd', 'length', 'increment', 'slope'})
        self.assertAlmostEqual(sum(face['length'] for face in faces), 1.0)

    def test_minorant_needs_a_path(self):
        with self.assertRaises(CommandError) as ctx:
            _call('minorant')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_invalid_model(self):
        with self.assertRaises(CommandError) as ctx:
            _call('sample_path', model='{"family": "lognormal"}')
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            _call('sample_path', model='{"family": "brownian", "alpha": 1.0}')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_sticks_as_minorant(self):
        out, _ = _call('sticks', model=BROWNIAN_JSON, sticks=10, seed=4, as_minorant=True)
        rows = out.splitlines()[1:]
        self.assertEqual(len(rows), 10)
        slopes = [float(row.split(',')[4]) for row in rows]
        self.assertEqual(slopes, sorted(slopes))

    def test_gamma_sticks_as_minorant(self):
        out, _ = _call('sticks', model='{"family": "gamma"}', sticks=40, seed=4, as_minorant=True)
        rows = out.splitlines()[1:]
        slopes = [float(row.split(',')[4]) for row in rows]
        self.assertTrue(all(left < right for left, right in zip(slopes, slopes[1:])))
        self.assertAlmostEqual(sum(float(row.split(',')[2]) for row in rows), 1.0)

    def test_sticks(self):
        out, _ = _call('sticks', model=BROWNIAN_JSON, sticks=5, seed=4)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'i,length,increment,slope,partial_sum')
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['1', '2', '3', '4', '5'])

    def test_ppp(self):
        out, _ = _call('ppp', model=BROWNIAN_JSON, theta=1.0, n_replicates=3, seed=5)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'replicate,i,length,increment,slope')
        rows = [line.split(',') for line in lines[1:]]
        self.assertEqual({row[0] for row in rows}, {'0', '1', '2'})
        for replicate in ('0', '1', '2'):
            indices = [int(row[1]) for row in rows if row[0] == replicate]
            self.assertEqual(indices, list(range(1, len(indices) + 1)))

    def test_ppp_needs_one_mode(self):
        with self.assertRaises(CommandError) as ctx:
            _call('ppp', model=BROWNIAN_JSON, theta=1.0, slope_cap=0.0)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_vervaat(self):
        filename = self.write_path([(0.0, 0.0), (0.5, -1.0), (1.0, 1.0)])
        out, _ = _call('transform', input=filename, kind='vervaat')
        self.assertEqual(out.splitlines()[1:], ['0,0', '0.5,2', '1,1'])

    def test_knight_bridge(self):
        filename = self.write_path([(0.0, 0.0), (0.5, -1.0), (1.0, 1.0)])
        out, _ = _call('transform', input=filename, kind='knight', u1=0.0, u2=1.0)
        self.assertEqual(out.splitlines()[1:], ['0,0', '0.5,-1.5', '1,0'])

    def test_transform_missing_times(self):
        filename = self.write_path([(0.0, 0.0), (0.5, -1.0), (1.0, 1.0)])
        with self.assertRaises(CommandError) as ctx:
            _call('transform', input=filename, kind='three-point', u1=0.0, u3=1.0)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_off_grid_time(self):
        filename = self.write_path([(0.0, 0.0), (0.5, -1.0), (1.0, 1.0)])
        with self.assertRaises(CommandError) as ctx:
            _call('transform', input=filename, kind='knight', u1=0.0, u2=0.7)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_invariant_transform_keeps_grid(self):
        out, _ = _call('transform', model=BROWNIAN_JSON, n_grid=64, seed=6, kind='invariant', u=0.37)
        plain, _ = _call('sample_path', model=BROWNIAN_JSON, n_grid=64, seed=6)
        moved, original = out.splitlines(), plain.splitlines()
        self.assertEqual(len(moved), 66)
        self.assertEqual([row.split(',')[0] for row in moved], [row.split(',')[0] for row in original])
        self.assertAlmostEqual(float(moved[-1].split(',')[1]), float(original[-1].split(',')[1]))

    def test_off_grid_u_is_moved_with_a_warning(self):
        filename = self.write_path([(0.0, 0.0), (0.25, 1.0), (0.5, 2.0), (0.75, 1.5), (1.0, 0.2)])
        with self.assertLogs('cli.management.commands.transform', level='WARNING') as logs:
            out, _ = _call('transform', input=filename, kind='invariant', u=0.6)
        self.assertIn('grid time 0.75', logs.output[0])
        on_grid, _ = _call('transform', input=filename, kind='invariant', u=0.75)
        self.assertEqual(out, on_grid)

    def test_discover(self):
        out, _ = _call('discover', model=BROWNIAN_JSON, n_grid=256, seed=7, k=3)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'i,v_tilde,g,d,length,increment,slope')
        self.assertTrue(1 < len(lines) <= 4)

    def test_intensity(self):
        out, _ = _call('intensity', model=BROWNIAN_JSON, theta=1.0, t=[0.5, 1.5], x=[-1.0, 0.0])
        expected = intensity_mass(LevyModel.brownian(), (0.5, 1.5), (-1.0, 0.0), 'exponential', theta=1.0)
        self.assertEqual(out, format_value(expected) + '\n')

    def test_intensity_needs_slope(self):
        with self.assertRaises(CommandError) as ctx:
            _call('intensity', model=BROWNIAN_JSON, t=[0.5, 1.5], x=[-1.0, 0.0], weight='below_slope')
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTests(SimpleTestCase):
    def test_list(self):
        out, _ = _call('verify', 'list')
        self.assertIn('hull_oracle', out)
        self.assertIn('pecherskii_rogozin', out)

    def test_single_check_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            target = os.path.join(directory, 'reports.jsonl')
            out, _ = _call('verify', 'rogozin_integral', seed=3, out=target)
            with open(target, encoding='utf-8') as handle:
                lines = handle.read().splitlines()
        self.assertEqual(len(lines), 1)
        self.assertEqual(json.loads(lines[0])['name'], 'rogozin_integral')
        self.assertIn('1 checks, 0 failed', out)

    def test_table_goes_to_stderr_without_out(self):
        out, err = _call('verify', 'rogozin_integral', seed=3)
        self.assertEqual(json.loads(out)['passed'], True)
        self.assertIn('rogozin_integral', err)

    def test_unknown_check(self):
        with self.assertRaises(CommandError) as ctx:
            _call('verify', 'no_such_check')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_negative_control_does_not_fail_the_run(self):
        out, _ = _call('verify', 'argmin_support_gamma', seed=3, reps_scale=0.05)
        self.assertEqual(json.loads(out)['verdict'], 'FAIL (expected)')

    def test_gamma_and_argmin_checks_pass_at_the_default_seed(self):
        names = ('theorem1_gamma', 'cauchy_gamma', 'argmin_support_brownian')
        with tempfile.TemporaryDirectory() as directory:
            target = os.path.join(directory, 'reports.jsonl')
            out, _ = _call('verify', *names, seed=42, reps_scale=0.1, out=target)
            with open(target, encoding='utf-8') as handle:
                reports = [json.loads(line) for line in handle.read().splitlines()]
        self.assertEqual([report['name'] for report in reports], list(names))
        self.assertTrue(all(report['passed'] for report in reports))
        self.assertIn('3 checks, 0 failed', out)


class RunnerTests(SimpleTestCase):
    def run_quietly(self, argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = run(argv)
        return code, out.getvalue(), err.getvalue()

    def test_unknown_subcommand(self):
        code, _, err = self.run_quietly(['nonsense'])
        self.assertEqual(code, 2)
        self.assertIn('usage', err)

    def test_parse_error(self):
        code, _, _ = self.run_quietly(['sample-path', '--bogus'])
        self.assertEqual(code, 2)

    def test_validation_error(self):
        code, _, err = self.run_quietly(['intensity', '--model', BROWNIAN_JSON, '--t', '0.5', '1.5',
                                         '--x', '-1', '0', '--weight', 'below_slope'])
        self.assertEqual(code, 2)
        self.assertIn('slope', err)

    def test_success(self):
        code, out, _ = self.run_quietly(['verify', 'list'])
        self.assertEqual(code, 0)
        self.assertIn('hull_oracle', out)

    def test_help_documents_output(self):
        code, out, _ = self.run_quietly(['minorant', '--help'])
        self.assertEqual(code, 0)
        self.assertIn('g,d,length,increment,slope', out)
        code, out, _ = self.run_quietly(['ppp', '--help'])
        self.assertEqual(code, 0)
        self.assertIn('replicate,i,length,increment,slope', out)

    def test_failing_check_exits_nonzero(self):
        failing = TestReport.from_parts('face_count_gaussian', [z_part('mean_faces', 9.0)], RngStream(1), 10)
        with mock.patch('cli.management.commands.verify.run_suite', return_value=[failing]):
            code, _, err = self.run_quietly(['verify', 'face_count_gaussian'])
        self.assertEqual(code, 1)
        self.assertIn('face_count_gaussian', err)


class VerifySaveTests(TestCase):
    def test_save_stores_runs(self):
        _call('verify', 'rogozin_integral', seed=4, save=True)
        run = CheckRun.objects.get()
        self.assertEqual(run.name, 'rogozin_integral')
        self.assertTrue(run.passed)
