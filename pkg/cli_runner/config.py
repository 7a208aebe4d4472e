"""
Run configuration for the geophase commands.

A RunConfig merges an optional --config JSON document with the command-line
options (command line wins). Numeric overrides are applied as Django setting
overrides for the duration of one command, so NumericsConfig picks them up
everywhere.
"""
import json
import logging
from dataclasses import dataclass, field, fields
from typing import List, Optional

from rest_framework import serializers

from geophase.exceptions import InputError, ModelParseError
from model_core.config import NumericsConfig
from model_core.serializers import StrictSerializerMixin

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    'analyze-ci', 'trace-loop', 'fields', 'flux-table',
    'dynamics', 'berry3d', 'effh', 'verify-paper',
)
CSV = 'csv'
JSON = 'json'
TEXT = 'text'
FORMATS = (CSV, JSON, TEXT)

# RunConfig field -> Django setting it overrides
SETTING_OVERRIDES = {
    'b_sequence': 'GEOPHASE_B_SEQUENCE',
    'loop_samples': 'GEOPHASE_LOOP_SAMPLES',
    'loop_samples_cap': 'GEOPHASE_LOOP_SAMPLES_CAP',
    'flux_tolerance': 'GEOPHASE_FLUX_TOLERANCE',
    'quad_tolerance': 'GEOPHASE_QUAD_TOLERANCE',
    'ode_tolerance': 'GEOPHASE_ODE_TOLERANCE',
}


class RunConfigSerializer(StrictSerializerMixin, serializers.Serializer):
    subcommand = serializers.ChoiceField(choices=list(SUBCOMMANDS), required=False)
    model = serializers.CharField(required=False)
    b_sequence = serializers.ListField(child=serializers.FloatField(min_value=0.0), min_length=4, required=False)
    loop_samples = serializers.IntegerField(min_value=NumericsConfig.MIN_LOOP_SAMPLES, required=False)
    loop_samples_cap = serializers.IntegerField(min_value=NumericsConfig.MIN_LOOP_SAMPLES, required=False)
    flux_tolerance = serializers.FloatField(min_value=0.0, required=False)
    quad_tolerance = serializers.FloatField(min_value=0.0, required=False)
    ode_tolerance = serializers.FloatField(min_value=0.0, required=False)
    format = serializers.ChoiceField(choices=list(FORMATS), required=False)
    output = serializers.CharField(required=False)


@dataclass
class RunConfig:
    subcommand: str
    model: Optional[str] = None
    b_sequence: Optional[List[float]] = None
    loop_samples: Optional[int] = None
    loop_samples_cap: Optional[int] = None
    flux_tolerance: Optional[float] = None
    quad_tolerance: Optional[float] = None
    ode_tolerance: Optional[float] = None
    format: str = JSON
    output: Optional[str] = None
    sources: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"Unknown subcommand {self.subcommand!r}; expected one of {SUBCOMMANDS}")
        if self.format not in FORMATS:
            raise InputError(f"Unknown output format {self.format!r}; expected one of {FORMATS}")

    def settings_overrides(self) -> dict:
        overrides = {}
        for name, setting in SETTING_OVERRIDES.items():
            value = getattr(self, name)
            if value is not None:
                overrides[setting] = list(value) if isinstance(value, list) else value
        return overrides

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != 'sources'}


def read_config_file(path) -> dict:
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ModelParseError(f"Cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"Config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ModelParseError(f"Config file {path} must hold a JSON object")
    serializer = RunConfigSerializer(data=data)
    if not serializer.is_valid():
        raise ModelParseError(f"Invalid config file {path}: {json.dumps(serializer.errors, sort_keys=True)}")
    return dict(serializer.validated_data)


def build_run_config(subcommand: str, options: dict, default_format: str = JSON) -> RunConfig:
    """Config file values first, then every command-line option that was given"""
    values = {}
    sources = []
    if options.get('config'):
        values.update(read_config_file(options['config']))
        sources.append(options['config'])
        configured = values.pop('subcommand', subcommand)
        if configured != subcommand:
            raise InputError(f"Config file is for {configured!r}, not {subcommand!r}")
    for name in RunConfigSerializer().fields:
        if name != 'subcommand' and options.get(name) is not None:
            values[name] = options[name]
    values.setdefault('format', default_format)
    config = RunConfig(subcommand=subcommand, sources=sources, **values)
    logger.debug(f"{subcommand} configuration: {config.as_dict()}")
    return config
