"""
Faces of the convex minorant of a simulated or given path.
"""
import logging

from cli.base import MinorantCommand
from cli.serializers import PathInputSerializer
from minorant_core.services import contact_fraction, convex_minorant

logger = logging.getLogger(__name__)

FACE_HEADER = ('g', 'd', 'length', 'increment', 'slope')


class Command(MinorantCommand):
    help = (
        'Convex minorant of a path (simulated with --model or read with --in). '
        'Output: CSV g,d,length,increment,slope, one row per face by increasing slope.'
    )
    serializer_class = PathInputSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--in', dest='input', help='path CSV with header t,value')

    def run(self, config):
        path = self.load_path(config, self.stream(config, 'minorant'))
        dec = convex_minorant(path)
        logger.info(f"{len(dec.faces)} faces, contact fraction {contact_fraction(path, dec):.4f}")
        self.emit(config, FACE_HEADER, [face.as_row() for face in dec.faces])
