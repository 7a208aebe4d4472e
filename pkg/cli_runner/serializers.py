"""
Schemas of the JSON documents written by the commands, used to parse a
command's own output back (and by the API views).
"""
import json

from rest_framework import serializers

from ci_analysis.ci_points import KINDS, SIGN_VALUES, CiPoint
from flux_quadrature.reports import FAIL, PASS, REPORT_KINDS
from gauge_fields.vectors import BASES
from geophase.exceptions import ModelParseError
from model_core.serializers import StrictSerializerMixin
from model_core.states import REPRESENTATIONS
from phase_tracing.loops import CCW, CW


class PairField(serializers.ListField):
    """A complex number as [re, im]"""

    def __init__(self, **kwargs):
        super().__init__(child=serializers.FloatField(), min_length=2, max_length=2, **kwargs)


class FloatListField(serializers.ListField):

    def __init__(self, **kwargs):
        super().__init__(child=serializers.FloatField(), **kwargs)


class CiPointSerializer(StrictSerializerMixin, serializers.Serializer):
    x = serializers.FloatField()
    y = serializers.FloatField()
    q = serializers.FloatField(read_only=True)
    phi = serializers.FloatField(read_only=True)
    kind = serializers.ChoiceField(choices=list(KINDS))
    sign = serializers.ChoiceField(choices=list(SIGN_VALUES), allow_null=True)
    residual = serializers.FloatField(min_value=0.0)

    # q and phi are derived from x, y and dropped on input
    def create(self, validated_data):
        return CiPoint(**validated_data)


class LoopDocumentSerializer(serializers.Serializer):
    center = FloatListField(min_length=2, max_length=3)
    radius = serializers.FloatField(min_value=0.0)
    orientation = serializers.ChoiceField(choices=[CCW, CW])
    samples = serializers.IntegerField(min_value=1)


class PhaseTraceSerializer(StrictSerializerMixin, LoopDocumentSerializer):
    total_phase = serializers.FloatField()
    total_phase_symbolic = serializers.CharField(allow_null=True)
    winding = serializers.IntegerField()
    predicted_winding = serializers.IntegerField(allow_null=True)
    alpha = FloatListField()
    theta_unwrapped = FloatListField()
    partial_phase = FloatListField()

    def validate(self, attrs):
        size = attrs['samples'] + 1
        if any(len(attrs[name]) != size for name in ('alpha', 'theta_unwrapped', 'partial_phase')):
            raise serializers.ValidationError("Trace columns must hold samples + 1 values.")
        return attrs


class OverlapPhaseSerializer(StrictSerializerMixin, LoopDocumentSerializer):
    representation = serializers.ChoiceField(choices=list(REPRESENTATIONS))
    element = serializers.CharField()
    phase = PairField()
    phase_symbolic = serializers.CharField(allow_null=True)


class FieldRecordSerializer(StrictSerializerMixin, serializers.Serializer):
    point = FloatListField(min_length=3, max_length=3)
    field = serializers.ChoiceField(choices=['nact', 'magnetic', 'yang_mills'])
    representation = serializers.ChoiceField(choices=list(REPRESENTATIONS))
    element = serializers.CharField()
    basis = serializers.ChoiceField(choices=list(BASES))
    regular = serializers.ListField(child=PairField(), min_length=3, max_length=3)
    seam = serializers.ListField(child=PairField(), min_length=3, max_length=3)


class FluxEntrySerializer(StrictSerializerMixin, serializers.Serializer):
    kind = serializers.ChoiceField(choices=list(REPORT_KINDS))
    element = serializers.CharField()
    target = serializers.FloatField()
    limit = serializers.FloatField(allow_null=True)
    limit_symbolic = serializers.CharField(allow_null=True)
    residual = serializers.FloatField(allow_null=True)
    order = serializers.IntegerField(allow_null=True)
    values = serializers.ListField(child=PairField())
    status = serializers.ChoiceField(choices=[PASS, FAIL])
    error = serializers.CharField(allow_blank=True)


class FluxTableSerializer(StrictSerializerMixin, serializers.Serializer):
    representation = serializers.ChoiceField(choices=list(REPRESENTATIONS))
    contour = FloatListField(min_length=2, max_length=2)
    b_sequence = FloatListField()
    tolerance = serializers.FloatField(allow_null=True)
    passed = serializers.BooleanField()
    entries = FluxEntrySerializer(many=True)


class FluxTablesSerializer(StrictSerializerMixin, serializers.Serializer):
    model = serializers.DictField()
    passed = serializers.BooleanField()
    tables = FluxTableSerializer(many=True)


class AmplitudeTraceSerializer(StrictSerializerMixin, serializers.Serializer):
    G = serializers.FloatField()
    omega = serializers.FloatField()
    chi0 = serializers.ListField(child=PairField(), min_length=2, max_length=2)
    method = serializers.ChoiceField(choices=['ode', 'exact', 'adiabatic'])
    columns = serializers.ListField(child=serializers.CharField())
    rows = serializers.ListField(child=FloatListField(min_length=6, max_length=6))
    geometric_phase = serializers.FloatField(allow_null=True)
    geometric_phase_symbolic = serializers.CharField(allow_null=True)


class Berry3DSerializer(StrictSerializerMixin, serializers.Serializer):
    R = serializers.FloatField()
    method = serializers.ChoiceField(choices=['closed', 'quadrature'])
    columns = serializers.ListField(child=serializers.CharField())
    rows = serializers.ListField(child=FloatListField(min_length=3, max_length=3))


class EffHResultSerializer(StrictSerializerMixin, serializers.Serializer):
    mode = serializers.CharField()
    dimension = serializers.IntegerField(min_value=2)
    C1 = serializers.FloatField()
    C2 = serializers.FloatField()
    matrix = serializers.ListField(child=serializers.ListField(child=PairField()))

    def validate(self, attrs):
        n = attrs['dimension']
        if len(attrs['matrix']) != n or any(len(row) != n for row in attrs['matrix']):
            raise serializers.ValidationError(f"matrix must be {n} x {n}.")
        return attrs


class CheckOutcomeSerializer(StrictSerializerMixin, serializers.Serializer):
    name = serializers.CharField()
    group = serializers.CharField()
    expected = serializers.CharField(allow_blank=True)
    actual = serializers.CharField(allow_blank=True)
    tolerance = serializers.FloatField(allow_null=True)
    status = serializers.CharField()
    message = serializers.CharField(allow_blank=True)


class VerificationSerializer(StrictSerializerMixin, serializers.Serializer):
    status = serializers.CharField()
    groups = serializers.ListField(child=serializers.CharField())
    total = serializers.IntegerField(min_value=0)
    passed = serializers.IntegerField(min_value=0)
    checks = CheckOutcomeSerializer(many=True)


# subcommand -> (schema, document is a list)
OUTPUT_SCHEMAS = {
    'analyze-ci': (CiPointSerializer, True),
    'trace-loop': (PhaseTraceSerializer, False),
    'trace-loop-overlap': (OverlapPhaseSerializer, False),
    'fields': (FieldRecordSerializer, True),
    'flux-table': (FluxTablesSerializer, False),
    'dynamics': (AmplitudeTraceSerializer, False),
    'berry3d': (Berry3DSerializer, False),
    'effh': (EffHResultSerializer, False),
    'verify-paper': (VerificationSerializer, False),
}


def parse_output(subcommand: str, text: str):
    """Validate a command's JSON output; returns the validated data"""
    if subcommand not in OUTPUT_SCHEMAS:
        raise ModelParseError(f"No output schema for {subcommand!r}")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"{subcommand} output is not valid JSON: {exc}") from exc
    schema, many = OUTPUT_SCHEMAS[subcommand]
    if many and not isinstance(document, list):
        raise ModelParseError(f"{subcommand} output must be a JSON list")
    serializer = schema(data=document, many=many)
    if not serializer.is_valid():
        raise ModelParseError(f"Invalid {subcommand} output: {json.dumps(serializer.errors, sort_keys=True)}")
    return serializer.validated_data


def parse_ci_points(text: str):
    """analyze-ci output back into CiPoint objects"""
    return [CiPoint(**dict(item)) for item in parse_output('analyze-ci', text)]
