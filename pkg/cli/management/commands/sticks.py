"""
Uniform stick-breaking with independent increments.
"""
from cli.base import MinorantCommand
from cli.serializers import SticksSerializer
from stick_breaking.services import minorant_from_points, stick_break, theorem1_sample

from .minorant import FACE_HEADER


class Command(MinorantCommand):
    help = (
        'Break [0, t] into sticks L_i and draw Y_i ~ X_{L_i}. '
        'Output: CSV i,length,increment,slope,partial_sum in breaking order; '
        'with --as-minorant the sticks sorted by slope as g,d,length,increment,slope.'
    )
    serializer_class = SticksSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--sticks', type=int, help='number of sticks (default MINORANT_DEFAULT_STICKS)')
        parser.add_argument('--as-minorant', action='store_true', help='output the assembled convex function')

    def run(self, config):
        rng = self.stream(config, 'sticks')
        sticks = stick_break(config.horizon, config.params.get('sticks'), rng)
        points = theorem1_sample(config.model, config.horizon, None, rng, sticks=sticks)
        if config.params['as_minorant']:
            dec = minorant_from_points(points)
            self.emit(config, FACE_HEADER, [face.as_row() for face in dec.faces])
            return
        rows = [
            (i + 1, point.length, point.increment, point.slope, sticks.partial_sums[i])
            for i, point in enumerate(points)
        ]
        self.emit(config, ('i', 'length', 'increment', 'slope', 'partial_sum'), rows)
