"""
JSON schema of an effective-Hamiltonian document:

  {"C1", "C2", "F", "op1", "op2", "mode", "spin_dim", "Op1", "Op2"}

Arrays are nested lists; an array's entries are either all numbers or all
[re, im] pairs.
"""
import json
import logging

import numpy as np
from rest_framework import serializers

from geophase.exceptions import GeoPhaseError, ModelParseError
from model_core.serializers import StrictSerializerMixin
from .effh import MODES, POINTWISE, EffHSpec

logger = logging.getLogger(__name__)

# tensor rank of every array field
ARRAY_RANKS = {'F': 3, 'op1': 3, 'op2': 4, 'Op1': 3, 'Op2': 4}


def parse_complex_array(value, rank: int) -> np.ndarray:
    try:
        array = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise serializers.ValidationError("Expected a rectangular array of numbers or [re, im] pairs.")
    if array.ndim == rank:
        return array.astype(complex)
    if array.ndim == rank + 1 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]
    raise serializers.ValidationError(f"Expected a rank-{rank} array, got shape {list(array.shape)}.")


def complex_to_json(array) -> list:
    """Nested lists with [re, im] leaves"""
    array = np.asarray(array, dtype=complex)
    return np.stack([array.real, array.imag], axis=-1).tolist()


class ComplexArrayField(serializers.Field):

    def __init__(self, rank: int, **kwargs):
        self.rank = rank
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        return parse_complex_array(data, self.rank)

    def to_representation(self, value):
        return complex_to_json(value)


class EffHSpecSerializer(StrictSerializerMixin, serializers.Serializer):
    C1 = serializers.FloatField(default=0.0)
    C2 = serializers.FloatField(default=0.0)
    F = ComplexArrayField(rank=ARRAY_RANKS['F'])
    op1 = ComplexArrayField(rank=ARRAY_RANKS['op1'], required=False)
    op2 = ComplexArrayField(rank=ARRAY_RANKS['op2'], required=False)
    mode = serializers.ChoiceField(choices=list(MODES), default=POINTWISE)
    spin_dim = serializers.IntegerField(min_value=1, default=1)
    Op1 = ComplexArrayField(rank=ARRAY_RANKS['Op1'], required=False)
    Op2 = ComplexArrayField(rank=ARRAY_RANKS['Op2'], required=False)

    def create(self, validated_data):
        return EffHSpec(**validated_data)


def effh_spec_from_dict(data) -> EffHSpec:
    if not isinstance(data, dict):
        raise ModelParseError("Effective-Hamiltonian document must be a JSON object")
    serializer = EffHSpecSerializer(data=data)
    if not serializer.is_valid():
        raise ModelParseError(f"Invalid effective-Hamiltonian spec: {json.dumps(serializer.errors, sort_keys=True)}")
    try:
        return serializer.save()
    except GeoPhaseError as exc:
        raise ModelParseError(f"Invalid effective-Hamiltonian spec: {exc}") from exc


def effh_spec_to_dict(spec: EffHSpec) -> dict:
    data = {'C1': spec.C1, 'C2': spec.C2, 'F': complex_to_json(spec.F), 'mode': spec.mode, 'spin_dim': spec.spin_dim}
    for name in ('op1', 'op2', 'Op1', 'Op2'):
        value = getattr(spec, name)
        if value is not None:
            data[name] = complex_to_json(value)
    return data


def load_effh_spec(path) -> EffHSpec:
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ModelParseError(f"Cannot read spec file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"Spec file {path} is not valid JSON: {exc}") from exc
    spec = effh_spec_from_dict(data)
    logger.info(f"Loaded effective-Hamiltonian spec ({spec.mode}, dimension {spec.dimension}) from {path}")
    return spec
