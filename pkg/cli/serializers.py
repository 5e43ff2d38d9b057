"""
DRF serializers for command-line run configurations.

Every command validates its options here before any work starts.
"""
import json
import math
import os
from dataclasses import dataclass, field
from typing import Dict, Optional

from django.conf import settings
from rest_framework import serializers

from levy_models.catalog import LevyModel
from levy_models.serializers import model_from_spec
from stick_breaking.services import Weight

MAX_SEED = 2 ** 64 - 1
COMMON_FIELDS = ('model', 'seed', 'n_grid', 'n_replicates', 'horizon', 'out', 'format')


@dataclass(frozen=True)
class RunConfig:
    seed: int
    model: Optional[LevyModel] = None
    n_grid: int = 4096
    n_replicates: int = 1
    horizon: float = 1.0
    out: Optional[str] = None
    format: str = 'csv'
    params: Dict = field(default_factory=dict)


def load_model_spec(text: str) -> Dict:
    """``text`` is a path to a JSON file or an inline JSON object."""
    if os.path.isfile(text):
        with open(text, encoding='utf-8') as handle:
            text = handle.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise serializers.ValidationError(f"Model is neither a JSON file nor inline JSON: {exc}")
    if not isinstance(spec, dict):
        raise serializers.ValidationError("Model JSON must be an object.")
    return spec


def _finite_pair(value, name: str, allow_infinite: bool = False):
    try:
        pair = [float(item) for item in value]
    except (TypeError, ValueError):
        raise serializers.ValidationError(f"{name} needs two numbers.")
    if len(pair) != 2 or any(math.isnan(item) for item in pair):
        raise serializers.ValidationError(f"{name} needs two numbers.")
    if not allow_infinite and not all(math.isfinite(item) for item in pair):
        raise serializers.ValidationError(f"{name} must be finite.")
    if pair[1] < pair[0]:
        raise serializers.ValidationError(f"{name} must be increasing, got {pair[0]} > {pair[1]}.")
    return pair


class RunConfigSerializer(serializers.Serializer):
    """Options shared by all commands."""

    requires_model = True

    model = serializers.CharField(required=False)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, required=False)
    n_grid = serializers.IntegerField(min_value=1, required=False, default=4096)
    n_replicates = serializers.IntegerField(min_value=1, required=False, default=1)
    horizon = serializers.FloatField(required=False, default=1.0)
    out = serializers.CharField(required=False, allow_blank=True)
    format = serializers.ChoiceField(choices=['csv', 'json'], required=False, default='csv')

    def validate_model(self, value):
        try:
            return model_from_spec(load_model_spec(value))
        except serializers.ValidationError as exc:
            raise serializers.ValidationError(exc.detail)

    def validate_horizon(self, value):
        if not value > 0 or not math.isfinite(value):
            raise serializers.ValidationError("Horizon must be positive and finite.")
        return value

    def validate(self, attrs):
        if self.requires_model and attrs.get('model') is None:
            raise serializers.ValidationError({'model': "A model is required (--model)."})
        attrs.setdefault('seed', getattr(settings, 'MINORANT_DEFAULT_SEED', 42))
        return attrs

    def create(self, validated_data) -> RunConfig:
        common = {name: validated_data.pop(name) for name in COMMON_FIELDS if name in validated_data}
        if common.get('out') == '':
            common['out'] = None
        return RunConfig(**common, params=validated_data)


class PathInputSerializer(RunConfigSerializer):
    """Commands that take either a simulated path or one read with --in."""

    requires_model = False

    input = serializers.CharField(required=False)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs.get('model') is None and not attrs.get('input'):
            raise serializers.ValidationError("Give either --model to simulate a path or --in to read one.")
        return attrs


class SticksSerializer(RunConfigSerializer):
    sticks = serializers.IntegerField(min_value=1, required=False)
    as_minorant = serializers.BooleanField(required=False, default=False)


class PppSerializer(RunConfigSerializer):
    theta = serializers.FloatField(required=False)
    sticks = serializers.IntegerField(min_value=1, required=False)
    slope_cap = serializers.FloatField(required=False)
    t_min = serializers.FloatField(required=False, default=0.01)

    def validate_theta(self, value):
        if not value > 0:
            raise serializers.ValidationError("theta must be positive.")
        return value

    def validate_t_min(self, value):
        if not value > 0:
            raise serializers.ValidationError("t_min must be positive.")
        return value

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if (attrs.get('theta') is None) == (attrs.get('slope_cap') is None):
            raise serializers.ValidationError("Give exactly one of --theta (exponential horizon) or --slope-cap.")
        return attrs


class TransformSerializer(PathInputSerializer):
    KIND_CHOICES = ['invariant', 'vervaat', 'three-point', 'knight']

    kind = serializers.ChoiceField(choices=KIND_CHOICES)
    u = serializers.FloatField(required=False)
    u1 = serializers.FloatField(required=False)
    u2 = serializers.FloatField(required=False)
    u3 = serializers.FloatField(required=False)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        needed = {
            'invariant': ('u',),
            'vervaat': (),
            'three-point': ('u1', 'u2', 'u3'),
            'knight': ('u1', 'u2'),
        }[attrs['kind']]
        missing = [name for name in needed if attrs.get(name) is None]
        if missing:
            raise serializers.ValidationError(
                f"--kind {attrs['kind']} needs {', '.join('--' + name for name in missing)}."
            )
        return attrs


class DiscoverSerializer(PathInputSerializer):
    k = serializers.IntegerField(min_value=1, required=False, default=1)


class IntensitySerializer(RunConfigSerializer):
    theta = serializers.FloatField(required=False)
    t = serializers.ListField(min_length=2, max_length=2)
    x = serializers.ListField(min_length=2, max_length=2)
    weight = serializers.ChoiceField(choices=[weight.value for weight in Weight], required=False)
    slope = serializers.FloatField(required=False)

    def validate_t(self, value):
        pair = _finite_pair(value, 't', allow_infinite=True)
        if not pair[0] > 0:
            raise serializers.ValidationError("t must start above 0.")
        return pair

    def validate_x(self, value):
        return _finite_pair(value, 'x', allow_infinite=True)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if 'weight' not in attrs:
            attrs['weight'] = Weight.EXPONENTIAL.value if attrs.get('theta') is not None else Weight.UNIT.value
        if attrs['weight'] == Weight.EXPONENTIAL.value and not (attrs.get('theta') or 0) > 0:
            raise serializers.ValidationError({'theta': "The exponential weight needs --theta > 0."})
        if attrs['weight'] == Weight.BELOW_SLOPE.value and attrs.get('slope') is None:
            raise serializers.ValidationError({'slope': "The below_slope weight needs --slope."})
        return attrs


class VerifySerializer(RunConfigSerializer):
    requires_model = False

    target = serializers.ListField(child=serializers.CharField(), required=False, default=['all'])
    jobs = serializers.IntegerField(min_value=1, required=False)
    reps_scale = serializers.FloatField(required=False, default=1.0)
    check_grid = serializers.IntegerField(min_value=2, required=False)
    save = serializers.BooleanField(required=False, default=False)
    enqueue = serializers.BooleanField(required=False, default=False)

    def validate_reps_scale(self, value):
        if not value > 0:
            raise serializers.ValidationError("Replicate scale must be positive.")
        return value

    def validate_target(self, value):
        from verify.services import check_names

        if value in (['all'], ['list']):
            return value
        unknown = sorted(set(value) - set(check_names()))
        if unknown:
            raise serializers.ValidationError(f"Unknown checks: {', '.join(unknown)}. Use 'verify list'.")
        return value
