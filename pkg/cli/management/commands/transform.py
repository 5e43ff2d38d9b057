"""
Path rearrangements.
"""
import logging

from cli.base import MinorantCommand
from cli.serializers import TransformSerializer
from path_transforms.services import invariant_transform, knight_bridge, three_point_transform, vervaat

logger = logging.getLogger(__name__)


class Command(MinorantCommand):
    help = (
        'Transform a path (simulated with --model or read with --in). Kinds: '
        'invariant (--u: move the face containing u to the front; an off-grid '
        'u is cut at the next grid time), vervaat (start at the last minimum), '
        'three-point (--u1 --u2 --u3), knight (--u1 --u2: segment minus its '
        'chord). Output: CSV t,value.'
    )
    serializer_class = TransformSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--in', dest='input', help='path CSV with header t,value')
        parser.add_argument('--kind', choices=TransformSerializer.KIND_CHOICES, help='transform to apply')
        parser.add_argument('--u', type=float, help='uniform time for the invariant transform')
        parser.add_argument('--u1', type=float, help='first grid time')
        parser.add_argument('--u2', type=float, help='second grid time')
        parser.add_argument('--u3', type=float, help='third grid time')

    def run(self, config):
        path = self.load_path(config, self.stream(config, 'transform'))
        params = config.params
        kind = params['kind']
        if kind == 'invariant':
            result = invariant_transform(path, params['u'], snap=True)
            if result.cut != params['u']:
                logger.warning(f"u={params['u']:g} is off the grid, cutting at the grid time {result.cut:g}")
            logger.info(f"Moved face ({result.face.g:g}, {result.face.d:g}] to the front")
            path = result.transformed
        elif kind == 'vervaat':
            path = vervaat(path)
        elif kind == 'three-point':
            path = three_point_transform(path, params['u1'], params['u2'], params['u3'])
        else:
            path = knight_bridge(path, params['u1'], params['u2'])
        self.emit(config, ('t', 'value'), path.to_rows())
