import pandas as pd

from runs.exporters import write_frame
from runs.management.base import RunCommand


class Command(RunCommand):
    help = 'Print the eigenmode coefficients of the configured state'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--write', action='store_true', help='Also write projection.csv to the output directory')

    def execute_run(self, run, *args, **options):
        described = run.describe_state()
        frame = pd.DataFrame({
            'mode': [' '.join(str(n) for n in mode) for mode in described['modes']],
            're': [c[0] for c in described['coeffs']],
            'im': [c[1] for c in described['coeffs']],
            'weight': [c[0] ** 2 + c[1] ** 2 for c in described['coeffs']],
            'energy': described['energies'],
        })
        self.stdout.write(frame.to_string(index=False, float_format=lambda v: f"{v: .10g}"))
        if options['write']:
            path = write_frame(frame, run.out_dir / 'projection.csv')
            self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))
