from django.core.management.base import CommandError

import wigner_billiards
from runs.checks import CheckSuite
from runs.exporters import WarningLog, write_json
from runs.forms import CHECK_CHOICES
from runs.management.base import RunCommand


class Command(RunCommand):
    help = 'Run verification suites and print a pass/fail table; exits 1 when any check fails'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('names', nargs='*', help=f"Checks to run instead of the run file's list: {CHECK_CHOICES}")

    def execute_run(self, run, *args, **options):
        names = options['names'] or run.config['checks']
        unknown = [name for name in names if name not in CHECK_CHOICES]
        if unknown or not names:
            message = f"unknown checks {unknown}" if unknown else "no checks requested"
            raise CommandError(f"checks: {message}", returncode=2)

        with WarningLog() as caught:
            results = CheckSuite(run).run_checks(names)
        width = max(len(result.name) for result in results)
        self.stdout.write(f"{'check':<{width}}  {'measured':>12}  {'tolerance':>10}  status")
        for result in results:
            status = self.style.SUCCESS('pass') if result.passed else self.style.ERROR('FAIL')
            self.stdout.write(f"{result.name:<{width}}  {result.measured:>12.4g}  {result.tolerance:>10.3g}  {status}")

        write_json(
            {
                'version': wigner_billiards.__version__,
                'config': run.raw,
                'results': [result.as_dict() for result in results],
                'passed': all(result.passed for result in results),
                'warnings': caught.as_dict(),
            },
            run.out_dir / 'check_report.json',
        )
        failed = [result.name for result in results if not result.passed]
        if failed:
            raise CommandError(f"failed checks: {', '.join(failed)}", returncode=1)
        self.stdout.write(self.style.SUCCESS(f"All {len(results)} checks passed"))
