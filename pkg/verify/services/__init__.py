# Verification services
from .statistics import ks_two_sample, ks_one_sample
from .reports import Convention, Part, TestReport, format_table
from .brownian import MinRecord, min_record, refined_min_records
from .fluctuation import RogozinIntegral, rogozin_integral, pecherskii_rogozin_rhs
from .replicates import run_replicates
from .walk_checks import (
    chord_probability_check,
    face_count_check,
    hull_oracle_check,
    slope_monotonicity_check,
    uniform_face_length_check,
)
from .path_checks import (
    marginal_consistency_check,
    stable_scaling_check,
    theorem1_check,
    ranked_length_check,
    invariance_check,
    excursion_law_check,
    discovery_check,
    argmin_support_check,
)
from .cauchy_checks import cauchy_independence_check, cauchy_gamma_check
from .fluctuation_checks import (
    poisson_ppp_check,
    infinite_horizon_check,
    stable_slope_count_check,
    rogozin_integral_check,
    pecherskii_rogozin_check,
)
from .catalog import CHECKS, check_names, run_check, run_suite

__all__ = [
    'ks_two_sample',
    'ks_one_sample',
    'Convention',
    'Part',
    'TestReport',
    'format_table',
    'MinRecord',
    'min_record',
    'refined_min_records',
    'RogozinIntegral',
    'rogozin_integral',
    'pecherskii_rogozin_rhs',
    'run_replicates',
    'chord_probability_check',
    'face_count_check',
    'hull_oracle_check',
    'slope_monotonicity_check',
    'uniform_face_length_check',
    'marginal_consistency_check',
    'stable_scaling_check',
    'theorem1_check',
    'ranked_length_check',
    'invariance_check',
    'excursion_law_check',
    'discovery_check',
    'argmin_support_check',
    'cauchy_independence_check',
    'cauchy_gamma_check',
    'poisson_ppp_check',
    'infinite_horizon_check',
    'stable_slope_count_check',
    'rogozin_integral_check',
    'pecherskii_rogozin_check',
    'CHECKS',
    'check_names',
    'run_check',
    'run_suite',
]
