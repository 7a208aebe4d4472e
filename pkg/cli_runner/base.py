"""
Shared plumbing of the geophase management commands: common options,
configuration, error-to-exit-code mapping and output rendering.
"""
import logging

from django.core.management.base import BaseCommand, CommandError
from django.test.utils import override_settings

from geophase.exceptions import GeoPhaseError, InputError, ModelParseError
from model_core.config import NumericsConfig
from model_core.serializers import load_model
from .config import CSV, FORMATS, JSON, TEXT, build_run_config
from .formatting import dump_csv, dump_json, dump_text

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3


class GeoPhaseCommand(BaseCommand):
    """
    Subclasses set `subcommand` and `default_format`, add their own options in
    add_command_arguments and return a result object from compute(); the
    as_json / as_rows / as_text hooks turn it into output.
    """
    subcommand = None
    default_format = JSON
    model_help = 'Model JSON document'
    csv_header = ()

    def add_arguments(self, parser):
        parser.add_argument('--model', help=self.model_help)
        parser.add_argument('--config', help='JSON run configuration; command-line options take precedence')
        parser.add_argument(
            '--format', choices=FORMATS,
            help=f'Output format (default: {self.default_format})',
        )
        parser.add_argument('--output', help='Write to this file instead of stdout')
        parser.add_argument(
            '--b-sequence', dest='b_sequence', type=float, nargs='+',
            help=f'Decreasing geometric b sequence (default: {NumericsConfig.get_b_sequence()})',
        )
        parser.add_argument(
            '--loop-samples', dest='loop_samples', type=int,
            help=f'Samples per loop (default: {NumericsConfig.get_loop_samples()})',
        )
        parser.add_argument(
            '--flux-tolerance', dest='flux_tolerance', type=float,
            help=f'PASS tolerance for flux limits (default: {NumericsConfig.get_flux_tolerance()})',
        )
        parser.add_argument(
            '--quad-tolerance', dest='quad_tolerance', type=float,
            help=f'Quadrature tolerance (default: {NumericsConfig.get_quad_tolerance()})',
        )
        parser.add_argument(
            '--ode-tolerance', dest='ode_tolerance', type=float,
            help=f'TDSE integration tolerance (default: {NumericsConfig.get_ode_tolerance()})',
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            self.config = build_run_config(self.subcommand, options, self.default_format)
            with override_settings(**self.config.settings_overrides()):
                result = self.compute(options)
                self.emit(self.render(result))
                self.after_output(result)
        except ModelParseError as exc:
            logger.error(f"{self.subcommand}: {exc}")
            raise CommandError(str(exc), returncode=EXIT_PARSE)
        except InputError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except GeoPhaseError as exc:
            logger.error(f"{self.subcommand} failed: {exc}")
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_FAILURE)

    def load_model(self, required: bool = True):
        if not self.config.model:
            if required:
                raise InputError(f"{self.subcommand} needs --model")
            return None
        return load_model(self.config.model)

    def compute(self, options):
        raise NotImplementedError

    def after_output(self, result):
        """Hook for commands whose exit status depends on the result"""

    # ─── Rendering ───────────────────────────────────────────────

    def as_json(self, result):
        raise NotImplementedError

    def as_rows(self, result):
        raise NotImplementedError

    def header(self, result):
        return self.csv_header

    def as_text(self, result) -> str:
        return dump_text(self.header(result), self.as_rows(result))

    def render(self, result) -> str:
        fmt = self.config.format
        if fmt == JSON:
            return dump_json(self.as_json(result))
        if fmt == CSV:
            return dump_csv(self.header(result), self.as_rows(result))
        if fmt == TEXT:
            return self.as_text(result)
        raise InputError(f"Unknown output format {fmt!r}")

    def emit(self, text: str):
        if self.config.output:
            try:
                with open(self.config.output, 'w', encoding='utf-8', newline='') as handle:
                    handle.write(text)
            except OSError as exc:
                raise CommandError(f"Cannot write {self.config.output}: {exc}", returncode=EXIT_FAILURE)
            logger.info(f"{self.subcommand} output written to {self.config.output}")
        else:
            self.stdout.write(text, ending='')
