"""
Command-line entry point: ``python -m cli <subcommand> [options]``.

Subcommands are the management commands of this app under their
hyphenated names; the return value of ``run`` is the process exit code.
"""
import os
import sys
from typing import List, Optional

COMMANDS = {
    'sample-path': 'sample_path',
    'minorant': 'minorant',
    'sticks': 'sticks',
    'ppp': 'ppp',
    'transform': 'transform',
    'discover': 'discover',
    'verify': 'verify',
    'intensity': 'intensity',
}

PROG = 'minorant'


def usage() -> str:
    return f"usage: {PROG} {{{','.join(COMMANDS)}}} [options]\n"


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 2 on usage or validation errors, 1 on numeric failures
        or failing verification checks
    """
    from django.core.management import load_command_class

    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ('-h', '--help'):
        sys.stdout.write(usage())
        return 0 if argv else 2
    if argv[0] not in COMMANDS:
        sys.stderr.write(usage())
        sys.stderr.write(f"{PROG}: error: unknown subcommand {argv[0]!r}\n")
        return 2

    command = load_command_class('cli', COMMANDS[argv[0]])
    try:
        command.run_from_argv([PROG, argv[0], *argv[1:]])
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'minorant_site.settings')
    import django

    django.setup()
    sys.exit(run())
