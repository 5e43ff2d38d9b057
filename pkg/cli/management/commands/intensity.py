"""
Intensity mass of a rectangle by quadrature.
"""
from cli.base import MinorantCommand
from cli.exports import format_value, write_text
from cli.serializers import IntensitySerializer
from stick_breaking.services import intensity_mass


class Command(MinorantCommand):
    help = (
        'Mass of [t1, t2] x [x1, x2] under (dt / t) P(X_t in dx), weighted by '
        'exp(-theta t), the indicator x < slope * t, or 1. '
        'Output: one number with 17 significant digits.'
    )
    serializer_class = IntensitySerializer
    simulates = False

    def add_command_arguments(self, parser):
        parser.add_argument('--theta', type=float, help='rate of the exponential weight')
        parser.add_argument('--t', nargs=2, type=float, metavar=('T1', 'T2'),
                            help='time range; T2 may be inf')
        parser.add_argument('--x', nargs=2, type=float, metavar=('X1', 'X2'), help='increment range')
        parser.add_argument('--weight', choices=['exponential', 'below_slope', 'unit'],
                            help='default exponential with --theta, else unit')
        parser.add_argument('--slope', type=float, help='cap for the below_slope weight')

    def run(self, config):
        params = config.params
        mass = intensity_mass(
            config.model, tuple(params['t']), tuple(params['x']), params['weight'],
            theta=params.get('theta'), slope=params.get('slope'),
        )
        write_text(format_value(mass) + '\n', config.out, self.stdout)
