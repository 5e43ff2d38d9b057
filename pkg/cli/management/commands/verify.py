"""
Run the verification suite or single checks.
Run with: python manage.py verify all --seed 42 --jobs 4
"""
import logging

from django.core.management.base import CommandError

from cli.base import RUNTIME_EXIT, MinorantCommand
from cli.exports import write_text
from cli.serializers import VerifySerializer
from verify.serializers import reports_to_json_lines
from verify.services import CHECKS, check_names, format_table, run_suite

logger = logging.getLogger(__name__)


class Command(MinorantCommand):
    help = (
        'Run verification checks: "all", "list", or one or more check names. '
        'Output: JSON lines, one report per check, with name, statistic, p_value, '
        'z_score, threshold, convention, passed, verdict, negative_control, '
        'n_replicates, n_grid, master_seed, notes, details. The summary table goes '
        'to stdout when --out is given, otherwise to stderr. Exits 1 when a check '
        'other than a negative control fails.'
    )
    serializer_class = VerifySerializer
    uses_model = False
    simulates = False

    def add_command_arguments(self, parser):
        parser.add_argument('target', nargs='*', help='"all" (default), "list", or check names')
        parser.add_argument('--jobs', type=int, help='worker processes (default MINORANT_JOBS)')
        parser.add_argument('--reps-scale', type=float, help='multiplier on default replicate counts')
        parser.add_argument('--n-grid', dest='check_grid', type=int, help='grid size for checks that take one')
        parser.add_argument('--save', action='store_true', help='store each report as a CheckRun')
        parser.add_argument('--enqueue', action='store_true', help='dispatch the checks to Celery workers')

    def handle(self, *args, **options):
        if not options.get('target'):
            options['target'] = ['all']
        return super().handle(*args, **options)

    def run(self, config):
        params = config.params
        target = params['target']
        if target == ['list']:
            lines = [f"{entry.name:<36} {entry.description}".rstrip() for entry in CHECKS]
            write_text('\n'.join(lines) + '\n', config.out, self.stdout)
            return
        names = check_names() if target == ['all'] else target

        if params['enqueue']:
            self.enqueue(config, names)
            return

        reports = run_suite(config.seed, params.get('jobs'), params['reps_scale'], params.get('check_grid'), names)
        write_text(reports_to_json_lines(reports), config.out, self.stdout)
        table = format_table(reports) + '\n'
        if config.out:
            self.stdout.write(table, ending='')
        else:
            self.stderr.write(table, style_func=lambda text: text, ending='')

        if params['save']:
            from verify.models import CheckRun

            for report in reports:
                CheckRun.from_report(report)
            logger.info(f"Stored {len(reports)} check runs")

        failed = [report.name for report in reports if report.counts_against_exit]
        if failed:
            raise CommandError(f"{len(failed)} checks failed: {', '.join(failed)}", returncode=RUNTIME_EXIT)

    def enqueue(self, config, names):
        from verify.tasks import run_check_task

        params = config.params
        for name in names:
            result = run_check_task.delay(name, config.seed, params['reps_scale'], params.get('check_grid'),
                                          params.get('jobs'))
            self.stdout.write(f"{name} {result.id}")
