from django.core.management.base import BaseCommand, CommandError

from runs.exceptions import ConfigError, ExportError
from runs.services import load_raw_config, prepare_run


class RunCommand(BaseCommand):
    """Shared --config / --out / --set handling; config problems exit with status 2"""

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='JSON run file')
        parser.add_argument('--out', help='Output directory (overrides the run file)')
        parser.add_argument(
            '--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE',
            help='Override a scalar key, e.g. --set grid.nx=201 (repeatable)',
        )

    def handle(self, *args, **options):
        try:
            raw = load_raw_config(options['config'], options['overrides'])
            run = prepare_run(raw, options.get('out'))
        except ConfigError as exc:
            for message in exc.errors:
                self.stderr.write(self.style.ERROR(message))
            raise CommandError(f"invalid run configuration: {exc}", returncode=2)
        try:
            return self.execute_run(run, *args, **options)
        except ExportError as exc:
            raise CommandError(str(exc), returncode=1)

    def execute_run(self, run, *args, **options):
        raise NotImplementedError
