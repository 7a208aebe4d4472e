"""
JSON schemas for model documents:

  cartesian {kind, coeffs_A: [[deg_x, deg_y, c], ...], coeffs_B: [...], axes?}
  complex   {kind, K, mu, lambda} or {kind, K, q_plus: [[...], ...], q_minus: [...]}
  berry     {kind, b, alpha, beta, active_axis}
"""
import json
import logging

from rest_framework import serializers

from geophase.exceptions import GeoPhaseError, ModelParseError
from .hamiltonians import ACTIVE_AXES, BerryModel, CartesianCoupling, ComplexCoupling, Z_CARRIES_B

logger = logging.getLogger(__name__)


class StrictSerializerMixin:
    """Reject keys that are not declared fields"""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ['Unknown field.'] for key in unknown})
        return super().to_internal_value(data)


class TermField(serializers.ListField):
    """One [deg_x, deg_y, c] polynomial term"""

    def __init__(self, **kwargs):
        super().__init__(child=serializers.FloatField(), min_length=3, max_length=3, **kwargs)


class CartesianModelSerializer(StrictSerializerMixin, serializers.Serializer):
    kind = serializers.ChoiceField(choices=['cartesian'])
    coeffs_A = serializers.ListField(child=TermField())
    coeffs_B = serializers.ListField(child=TermField())
    axes = serializers.ListField(child=serializers.CharField(), min_length=2, max_length=2, required=False)

    def create(self, validated_data):
        return CartesianCoupling(
            validated_data['coeffs_A'], validated_data['coeffs_B'],
            axes=tuple(validated_data.get('axes', ('X', 'Y'))),
        )


class ComplexModelSerializer(StrictSerializerMixin, serializers.Serializer):
    kind = serializers.ChoiceField(choices=['complex'])
    K = serializers.FloatField(default=1.0)
    mu = serializers.FloatField(required=False)
    q_plus = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()), required=False)
    q_minus = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()), required=False)

    def get_fields(self):
        fields = super().get_fields()
        fields['lambda'] = serializers.FloatField(required=False)
        return fields

    def validate(self, attrs):
        quartic = 'mu' in attrs or 'lambda' in attrs
        series = 'q_plus' in attrs or 'q_minus' in attrs
        if quartic and series:
            raise serializers.ValidationError("Give either mu/lambda or q_plus/q_minus, not both.")
        return attrs

    def create(self, validated_data):
        if 'q_plus' in validated_data or 'q_minus' in validated_data:
            return ComplexCoupling(
                K=validated_data['K'],
                q_plus=validated_data.get('q_plus', []),
                q_minus=validated_data.get('q_minus', []),
            )
        return ComplexCoupling.quartic(
            validated_data.get('mu', 0.0), validated_data.get('lambda', 0.0), K=validated_data['K']
        )


class BerryModelSerializer(StrictSerializerMixin, serializers.Serializer):
    kind = serializers.ChoiceField(choices=['berry'])
    b = serializers.FloatField(min_value=0.0)
    alpha = serializers.FloatField(default=1.0)
    beta = serializers.FloatField(default=1.0)
    active_axis = serializers.ChoiceField(choices=list(ACTIVE_AXES), default=Z_CARRIES_B)

    def create(self, validated_data):
        validated_data = dict(validated_data)
        validated_data.pop('kind')
        return BerryModel(**validated_data)


MODEL_SERIALIZERS = {
    'cartesian': CartesianModelSerializer,
    'complex': ComplexModelSerializer,
    'berry': BerryModelSerializer,
}


def model_from_dict(data):
    """Validate a model document and build the model it describes"""
    if not isinstance(data, dict):
        raise ModelParseError("Model document must be a JSON object")
    kind = data.get('kind')
    if kind not in MODEL_SERIALIZERS:
        raise ModelParseError(f"Unknown model kind {kind!r}; expected one of {sorted(MODEL_SERIALIZERS)}")
    serializer = MODEL_SERIALIZERS[kind](data=data)
    if not serializer.is_valid():
        raise ModelParseError(f"Invalid {kind} model: {json.dumps(serializer.errors, sort_keys=True)}")
    try:
        return serializer.save()
    except GeoPhaseError as exc:
        raise ModelParseError(f"Invalid {kind} model: {exc}") from exc


def model_to_dict(model):
    """Inverse of model_from_dict"""
    if isinstance(model, CartesianCoupling):
        return {
            'kind': 'cartesian',
            'coeffs_A': model.terms('A'),
            'coeffs_B': model.terms('B'),
            'axes': list(model.axes),
        }
    if isinstance(model, ComplexCoupling):
        quartic = model.quartic_parameters
        if quartic is not None:
            return {'kind': 'complex', 'K': model.K, 'mu': quartic[0], 'lambda': quartic[1]}
        return {
            'kind': 'complex', 'K': model.K,
            'q_plus': [list(c) for c in model.q_plus],
            'q_minus': [list(c) for c in model.q_minus],
        }
    if isinstance(model, BerryModel):
        return {
            'kind': 'berry', 'b': model.b, 'alpha': model.alpha,
            'beta': model.beta, 'active_axis': model.active_axis,
        }
    raise ModelParseError(f"Cannot serialize {type(model).__name__}")


def load_model(path):
    """Read a model JSON file"""
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ModelParseError(f"Cannot read model file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"Model file {path} is not valid JSON: {exc}") from exc
    model = model_from_dict(data)
    logger.info(f"Loaded {model!r} from {path}")
    return model
