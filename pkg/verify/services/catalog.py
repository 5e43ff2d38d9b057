"""
Named checks in their fixed suite order.

Each check draws from a stream keyed by (master seed, check name), so a
single check run alone gives the same report as inside the suite.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from django.conf import settings

from levy_models.catalog import LevyModel
from levy_models.exceptions import DomainError
from levy_models.rng import RngStream

from .cauchy_checks import cauchy_gamma_check, cauchy_independence_check
from .fluctuation_checks import (
    infinite_horizon_check,
    pecherskii_rogozin_check,
    poisson_ppp_check,
    rogozin_integral_check,
    stable_slope_count_check,
)
from .path_checks import (
    argmin_support_check,
    discovery_check,
    excursion_law_check,
    invariance_check,
    marginal_consistency_check,
    ranked_length_check,
    stable_scaling_check,
    theorem1_check,
)
from .reports import TestReport
from .walk_checks import (
    chord_probability_check,
    face_count_check,
    hull_oracle_check,
    slope_monotonicity_check,
    uniform_face_length_check,
)

logger = logging.getLogger(__name__)

MIN_REPS = 100
TWO_GRIDS = (2 ** 12, 2 ** 14)


@dataclass(frozen=True)
class CheckEntry:
    name: str
    function: Callable[..., TestReport]
    reps: int
    params: Dict = field(default_factory=dict)
    negative_control: bool = False
    description: str = ''

    def replicates(self, scale: float) -> int:
        if self.reps == 0:
            return 0
        return max(MIN_REPS, int(round(self.reps * scale)))


BROWNIAN = LevyModel.brownian()
CAUCHY = LevyModel.cauchy()
GAMMA = LevyModel.gamma()

CHECKS: List[CheckEntry] = [
    CheckEntry('hull_oracle', hull_oracle_check, 10 ** 4, {'max_len': 10},
               description='convex minorant equals the pairwise oracle on short walks'),
    CheckEntry('slope_monotonicity', slope_monotonicity_check, 1000, {'n': 1000},
               description='face slopes strictly increase'),
    CheckEntry('marginal_consistency_brownian', marginal_consistency_check, 10 ** 4,
               {'model': LevyModel.brownian(1.5, 0.5), 't_values': (0.1, 1.0, 5.0)},
               description='increments match the marginal CDF'),
    CheckEntry('marginal_consistency_cauchy', marginal_consistency_check, 10 ** 4,
               {'model': CAUCHY, 't_values': (0.1, 1.0, 5.0)}),
    CheckEntry('marginal_consistency_gamma', marginal_consistency_check, 10 ** 4,
               {'model': GAMMA, 't_values': (0.5, 1.0, 5.0)}),
    CheckEntry('marginal_consistency_levy', marginal_consistency_check, 10 ** 4,
               {'model': LevyModel.stable(0.5, 1.0), 't_values': (0.1, 1.0, 5.0)}),
    CheckEntry('stable_scaling', stable_scaling_check, 10 ** 4,
               {'model': LevyModel.stable(1.5, 0.0), 's': 4.0, 't': 1.0},
               description='X_st has the law of s^(1/alpha) X_t'),
    CheckEntry('chord_probability_gaussian', chord_probability_check, 10 ** 5,
               {'model': BROWNIAN, 'n': (2, 10, 50)},
               description='walk stays above its chord with probability 1/n'),
    CheckEntry('chord_probability_cauchy', chord_probability_check, 10 ** 5,
               {'model': CAUCHY, 'n': (2, 10, 50)}),
    CheckEntry('face_count_gaussian', face_count_check, 10 ** 5, {'model': BROWNIAN, 'n': 10},
               description='mean face count of an n-step walk is H_n'),
    CheckEntry('face_count_cauchy', face_count_check, 10 ** 5, {'model': CAUCHY, 'n': 10}),
    CheckEntry('uniform_face_length_exact', uniform_face_length_check, 10 ** 5,
               {'model': BROWNIAN, 'n_grid': 16, 'exact': True},
               description='steps of the face holding a uniform time are uniform on {1..n}'),
    CheckEntry('uniform_face_length_brownian', uniform_face_length_check, 10 ** 4,
               {'model': BROWNIAN, 'n_grid': TWO_GRIDS},
               description='face holding a uniform time has uniform length'),
    CheckEntry('uniform_face_length_cauchy', uniform_face_length_check, 10 ** 4,
               {'model': CAUCHY, 'n_grid': TWO_GRIDS}),
    CheckEntry('theorem1_brownian', theorem1_check, 10 ** 4, {'model': BROWNIAN, 'n_grid': TWO_GRIDS},
               description='uniform face against the first stick and its increment'),
    CheckEntry('theorem1_cauchy', theorem1_check, 10 ** 4, {'model': CAUCHY, 'n_grid': TWO_GRIDS}),
    CheckEntry('theorem1_gamma', theorem1_check, 10 ** 4, {'model': GAMMA, 'n_grid': TWO_GRIDS}),
    CheckEntry('ranked_length', ranked_length_check, 10 ** 4, {'model': BROWNIAN, 'n_grid': 2 ** 12},
               description='longest face against the longest stick'),
    CheckEntry('invariance', invariance_check, 10 ** 4, {'model': BROWNIAN, 'n_grid': 2 ** 10},
               description='moving the uniform face to the front keeps the path law'),
    CheckEntry('excursion_law', excursion_law_check, 10 ** 4, {'model': BROWNIAN, 'n_grid': TWO_GRIDS},
               description='face excursion against Vervaat of a bridge'),
    CheckEntry('discovery', discovery_check, 10 ** 4, {'model': BROWNIAN, 'n_grid': 2 ** 12},
               description='relative lengths of discovered faces are independent uniforms'),
    CheckEntry('cauchy_independence', cauchy_independence_check, 10 ** 4, {'model': CAUCHY, 'n_grid': 2 ** 12},
               description='length and slope of the uniform face are independent'),
    CheckEntry('cauchy_independence_brownian', cauchy_independence_check, 10 ** 4,
               {'model': BROWNIAN, 'n_grid': 2 ** 12, 'negative_control': True}, negative_control=True,
               description='Brownian lengths and slopes are dependent'),
    CheckEntry('cauchy_gamma', cauchy_gamma_check, 10 ** 4, {'n_grid': 2 ** 12},
               description='slope passage times against Gamma ratios'),
    CheckEntry('poisson_ppp', poisson_ppp_check, 10 ** 4,
               {'model': BROWNIAN, 'theta': 1.0,
                'rectangles': (((0.5, 1.5), (-1.0, 0.0)), ((0.5, 1.5), (0.0, 1.0)), ((0.5, 1.5), (0.0, 0.0)))},
               description='faces up to an exponential time form a Poisson process'),
    CheckEntry('infinite_horizon', infinite_horizon_check, 10 ** 4,
               {'model': LevyModel.brownian(1.0, 1.0), 'slope_cap': 0.0, 't_min': 0.05},
               description='faces below a slope on [0, inf) against the intensity'),
    CheckEntry('stable_slope_count', stable_slope_count_check, 10 ** 4,
               {'alpha': 2.0, 'a': 1.0, 'b': 2.0, 'n_grid': 2 ** 12},
               description='faces with slope in (a, b) against the intensity'),
    CheckEntry('rogozin_integral', rogozin_integral_check, 0,
               description='regularity integral by family'),
    CheckEntry('pecherskii_rogozin', pecherskii_rogozin_check, 10 ** 6,
               {'model': BROWNIAN, 'theta': 1.0, 'alpha': 0.5, 'beta': 0.3, 'slope': 0.0, 'n_grid': 256},
               description='transform of the minimum up to an exponential time'),
    CheckEntry('argmin_support_brownian', argmin_support_check, 10 ** 5, {'model': BROWNIAN, 'n_grid': 2 ** 10},
               description='minimizing time charges every bin; arcsine law'),
    CheckEntry('argmin_support_cauchy', argmin_support_check, 10 ** 5, {'model': CAUCHY, 'n_grid': 2 ** 10}),
    CheckEntry('argmin_support_gamma', argmin_support_check, 10 ** 4,
               {'model': GAMMA, 'n_grid': 2 ** 10, 'negative_control': True}, negative_control=True,
               description='increasing paths have their minimum at 0'),
]

REGISTRY: Dict[str, CheckEntry] = {entry.name: entry for entry in CHECKS}


def check_names() -> List[str]:
    return [entry.name for entry in CHECKS]


def default_seed() -> int:
    return int(getattr(settings, 'MINORANT_DEFAULT_SEED', 42))


def run_check(name: str, master_seed: Optional[int] = None, scale: float = 1.0,
              n_grid: Optional[int] = None, jobs: Optional[int] = None) -> TestReport:
    """
    Run one named check.

    Args:
        name: catalog name
        master_seed: suite seed; defaults to MINORANT_DEFAULT_SEED
        scale: multiplier on the default replicate count
        n_grid: replaces the grid size of checks that take one
        jobs: worker processes

    Returns:
        TestReport
    """
    if name not in REGISTRY:
        raise DomainError(f"Unknown check {name!r}; choose from {', '.join(check_names())}")
    if not scale > 0:
        raise DomainError(f"Replicate scale must be positive, got {scale}")
    entry = REGISTRY[name]
    master_seed = default_seed() if master_seed is None else master_seed
    params = dict(entry.params)
    if n_grid is not None and 'n_grid' in params:
        params['n_grid'] = n_grid
    reps = entry.replicates(scale)
    logger.info(f"Running {name} with {reps} replicates")
    report = entry.function(reps=reps, rng=RngStream.for_name(master_seed, name), jobs=jobs, **params)
    report.name = name
    report.negative_control = entry.negative_control
    if entry.negative_control and report.passed:
        logger.warning(f"Negative control {name} passed; the check may have lost its power")
    return report


def run_suite(master_seed: Optional[int] = None, jobs: Optional[int] = None, scale: float = 1.0,
              n_grid: Optional[int] = None, names: Optional[Sequence[str]] = None) -> List[TestReport]:
    """Run checks in catalog order; ``names`` restricts the selection but not the order."""
    selected = set(check_names() if names is None else names)
    unknown = selected - set(REGISTRY)
    if unknown:
        raise DomainError(f"Unknown checks: {', '.join(sorted(unknown))}")
    return [run_check(name, master_seed, scale, n_grid, jobs) for name in check_names() if name in selected]
