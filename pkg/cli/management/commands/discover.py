"""
Recursive discovery of faces by uniform sampling.
"""
import logging

from cli.base import MinorantCommand
from cli.serializers import DiscoverSerializer
from path_transforms.services import recursive_face_discovery

logger = logging.getLogger(__name__)


class Command(MinorantCommand):
    help = (
        'Discover up to k faces of a path by repeated invariant transforms. '
        'Output: CSV i,v_tilde,g,d,length,increment,slope; g and d are times on '
        'the path transformed in round i.'
    )
    serializer_class = DiscoverSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--in', dest='input', help='path CSV with header t,value')
        parser.add_argument('--k', type=int, help='number of rounds (default 1)')

    def run(self, config):
        rng = self.stream(config, 'discover')
        path = self.load_path(config, rng)
        result = recursive_face_discovery(path, config.params['k'], rng)
        if result.stopped_early:
            logger.info(f"Path exhausted after {result.steps_completed} rounds")
        rows = [(i + 1, step.v_tilde) + step.face.as_row() for i, step in enumerate(result.steps)]
        self.emit(config, ('i', 'v_tilde', 'g', 'd', 'length', 'increment', 'slope'), rows)
