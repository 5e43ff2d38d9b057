"""
Simulate one path on a uniform grid.
Run with: python manage.py sample_path --model '{"family": "brownian"}' --n 4096
"""
from cli.base import MinorantCommand
from cli.serializers import RunConfigSerializer
from levy_models.services import path_sample


class Command(MinorantCommand):
    help = 'Simulate a Levy path on [0, t] with n steps. Output: CSV t,value (n + 1 rows).'
    serializer_class = RunConfigSerializer

    def run(self, config):
        path = path_sample(config.model, config.horizon, config.n_grid, self.stream(config, 'sample-path'))
        self.emit(config, ('t', 'value'), path.to_rows())
