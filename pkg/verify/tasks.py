"""
Celery Tasks for the verification suite
"""
import logging

from celery import shared_task
from django.db import OperationalError

logger = logging.getLogger(__name__)


@shared_task(bind=True, max_retries=3)
def run_check_task(self, name: str, master_seed: int, scale: float = 1.0, n_grid=None, jobs=None):
    """
    Run one named check and store its CheckRun.

    Args:
        name: catalog name of the check
        master_seed: suite seed

    Returns:
        dict with the stored row id and verdict
    """
    from .models import CheckRun
    from .services import run_check

    report = run_check(name, master_seed, scale, n_grid, jobs)
    try:
        run = CheckRun.from_report(report)
    except OperationalError as exc:
        logger.warning(f"Could not store check run for {name}, retrying: {exc}")
        raise self.retry(exc=exc, countdown=5)

    logger.info(f"Stored check run {run.id} for {name}: {report.verdict}")
    return {'id': run.id, 'name': name, 'passed': report.passed, 'verdict': report.verdict}
