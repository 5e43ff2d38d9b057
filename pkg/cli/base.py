"""
Shared behaviour of the minorant management commands: common options,
validation through the run-config serializers and exit codes.
"""
import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from levy_models.exceptions import DomainError, MinorantError
from levy_models.rng import RngStream

from .exports import read_path, table_text, write_text

logger = logging.getLogger(__name__)

VALIDATION_EXIT = 2
RUNTIME_EXIT = 1


def format_validation_error(detail, prefix: str = '') -> str:
    if isinstance(detail, dict):
        return '; '.join(format_validation_error(value, f"{key}: " if key != 'non_field_errors' else '')
                         for key, value in detail.items())
    if isinstance(detail, list):
        return '; '.join(format_validation_error(item, prefix) for item in detail)
    return f"{prefix}{detail}"


class MinorantCommand(BaseCommand):
    """
    Base for the simulation commands.

    Subclasses set ``serializer_class`` and implement ``run(config)``.
    Validation failures exit with 2, numeric failures with 1.
    """

    serializer_class = None
    uses_model = True
    simulates = True

    def add_arguments(self, parser):
        if self.uses_model:
            parser.add_argument('--model', help='model JSON: a file path or an inline object')
        if self.simulates:
            parser.add_argument('--n', dest='n_grid', type=int, help='grid steps (default 4096)')
            parser.add_argument('--t', dest='horizon', type=float, help='horizon (default 1)')
        parser.add_argument('--seed', type=int,
                            help=f"master seed (default LEVY_MINORANT_SEED or {settings.MINORANT_DEFAULT_SEED})")
        parser.add_argument('--out', help='output file (default standard output)')
        parser.add_argument('--format', choices=['csv', 'json'], help='artifact format (default csv)')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        data = {key: value for key, value in options.items() if value is not None}
        serializer = self.serializer_class(data=data)
        try:
            serializer.is_valid(raise_exception=True)
            config = serializer.save()
            self.run(config)
        except ValidationError as exc:
            raise CommandError(format_validation_error(exc.detail), returncode=VALIDATION_EXIT)
        except DomainError as exc:
            raise CommandError(str(exc), returncode=VALIDATION_EXIT)
        except MinorantError as exc:
            raise CommandError(str(exc), returncode=RUNTIME_EXIT)
        except OSError as exc:
            raise CommandError(str(exc), returncode=VALIDATION_EXIT)

    def run(self, config):
        raise NotImplementedError

    # helpers

    def stream(self, config, name: str) -> RngStream:
        """Random stream for this command, keyed by the master seed."""
        return RngStream.for_name(config.seed, name)

    def load_path(self, config, rng: RngStream):
        from levy_models.services import path_sample

        if config.params.get('input'):
            return read_path(config.params['input'])
        return path_sample(config.model, config.horizon, config.n_grid, rng)

    def emit(self, config, header, rows):
        write_text(table_text(header, rows, config.format), config.out, self.stdout)
