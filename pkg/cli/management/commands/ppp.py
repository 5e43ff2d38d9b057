"""
Face point processes for an exponential or an effectively infinite horizon.
"""
import logging

from cli.base import MinorantCommand
from cli.serializers import PppSerializer
from stick_breaking.services import choose_horizon, infinite_horizon_points, ppp_exponential_horizon

logger = logging.getLogger(__name__)


class Command(MinorantCommand):
    help = (
        'Sample face points (length, increment). With --theta the horizon is '
        'Exponential(theta) and the points come from stick-breaking; with '
        '--slope-cap the faces below that slope of a path on a long horizon. '
        'Output: CSV replicate,i,length,increment,slope with i counting the '
        'points of each replicate from 1.'
    )
    serializer_class = PppSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--theta', type=float, help='rate of the exponential horizon')
        parser.add_argument('--sticks', type=int, help='sticks per realization')
        parser.add_argument('--slope-cap', type=float, help='keep faces with slope below this cap')
        parser.add_argument('--t-min', type=float, help='shortest face length that must be captured (default 0.01)')
        parser.add_argument('--reps', dest='n_replicates', type=int, help='independent realizations (default 1)')

    def run(self, config):
        params = config.params
        rows = []
        horizon = None
        if params.get('slope_cap') is not None:
            horizon = choose_horizon(config.model, params['slope_cap'], params['t_min'])
        for replicate in range(config.n_replicates):
            rng = self.stream(config, 'ppp').child(replicate)
            if horizon is None:
                end, points = ppp_exponential_horizon(config.model, params['theta'], params.get('sticks'), rng)
            else:
                end, points = horizon, infinite_horizon_points(
                    config.model, params['slope_cap'], horizon, config.n_grid, rng,
                )
            logger.debug(f"Replicate {replicate}: horizon {end:g}, {len(points)} points")
            rows.extend(
                (replicate, i, point.length, point.increment, point.slope) for i, point in enumerate(points, start=1)
            )
        logger.info(f"{len(rows)} points over {config.n_replicates} realizations")
        self.emit(config, ('replicate', 'i', 'length', 'increment', 'slope'), rows)
