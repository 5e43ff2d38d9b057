# Levy model services
from .sampling import sample_increments, sample_log_increments, increment_sample, path_sample, sample_walks
from .distributions import marginal_cdf, has_marginal_cdf

__all__ = [
    'sample_increments',
    'sample_log_increments',
    'increment_sample',
    'path_sample',
    'sample_walks',
    'marginal_cdf',
    'has_marginal_cdf',
]
