"""
Replicate loops split into fixed-size blocks of independent streams.

Block b always draws from ``rng.child(b)``, so results depend only on the
stream and the replicate count, never on how many workers ran them.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np
from django.conf import settings

from levy_models.rng import RngStream

logger = logging.getLogger(__name__)


def _run_block(task):
    worker, stream, count = task
    return worker(stream, count)


def run_replicates(worker: Callable[[RngStream, int], Dict], n_replicates: int, rng: RngStream,
                   jobs: Optional[int] = None, block_size: Optional[int] = None) -> Dict[str, np.ndarray]:
    """
    Run ``worker(stream, count)`` over blocks and concatenate its outputs.

    Args:
        worker: picklable callable returning a dict of per-replicate arrays
        n_replicates: total number of replicates
        rng: parent stream
        jobs: worker processes; defaults to MINORANT_JOBS
        block_size: replicates per block; defaults to MINORANT_BLOCK_SIZE

    Returns:
        dict of arrays, each with one entry per replicate in block order
    """
    jobs = getattr(settings, 'MINORANT_JOBS', 1) if jobs is None else jobs
    block_size = getattr(settings, 'MINORANT_BLOCK_SIZE', 1000) if block_size is None else block_size
    tasks = [
        (worker, rng.child(block), min(block_size, n_replicates - start))
        for block, start in enumerate(range(0, n_replicates, block_size))
    ]
    if jobs > 1 and len(tasks) > 1:
        logger.info(f"Running {n_replicates} replicates in {len(tasks)} blocks on {jobs} workers")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks: List[Dict] = list(pool.map(_run_block, tasks))
    else:
        blocks = [_run_block(task) for task in tasks]
    if not blocks:
        return {}
    return {key: np.concatenate([np.atleast_1d(block[key]) for block in blocks]) for key in blocks[0]}
