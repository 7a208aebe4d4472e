from django.core.management.base import CommandError

from cli_runner.base import EXIT_FAILURE, GeoPhaseCommand
from cli_runner.checks import CHECK_GROUPS, run_checks
from cli_runner.documents import verification_document
from cli_runner.formatting import dump_text
from cli_runner.recording import abort_run, finish_run, start_run
from model_core.config import NumericsConfig


class Command(GeoPhaseCommand):
    help = 'Run the golden-value checks and report PASS/FAIL per check'
    subcommand = 'verify-paper'
    default_format = 'text'
    csv_header = ('group', 'name', 'expected', 'actual', 'tolerance', 'status', 'message')

    def add_command_arguments(self, parser):
        parser.add_argument('--group', action='append', choices=list(CHECK_GROUPS),
                            help='Check group to run; repeat for several (default: all)')
        parser.add_argument('--record', action='store_true',
                            help='Store the run and its checks in the database')

    def compute(self, options):
        groups = options.get('group') or list(CHECK_GROUPS)
        self.run = None
        if options['record'] or NumericsConfig.is_run_recording_enabled():
            self.run = start_run(groups)
        try:
            return run_checks(groups)
        except Exception as exc:
            if self.run is not None:
                abort_run(self.run, f"{type(exc).__name__}: {exc}")
            raise

    def after_output(self, report):
        if self.run is not None:
            finish_run(self.run, report, self.as_text(report))
            self.stderr.write(f"Recorded as run {self.run.pk}")
        if not report.passed:
            names = ', '.join(f"{outcome.group}/{outcome.name}" for outcome in report.failing())
            raise CommandError(f"{len(report.failing())} check(s) did not pass: {names}", returncode=EXIT_FAILURE)

    def as_json(self, report):
        return verification_document(report)

    def as_rows(self, report):
        return [
            (o.group, o.name, o.expected, o.actual, o.tolerance, o.status, o.message)
            for o in report.outcomes
        ]

    def as_text(self, report) -> str:
        rows = [(o.status, o.group, o.name, o.expected, o.actual, o.message) for o in report.outcomes]
        table = dump_text(('status', 'group', 'check', 'expected', 'actual', 'note'), rows)
        return table + f"\n{report.passed_count}/{report.total} checks passed: {report.status}\n"
