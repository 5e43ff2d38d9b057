"""
DRF serializers for Levy model specifications.

Model JSON looks like {"family": "brownian", "sigma": 1.0, "drift": 0.0}.
"""
from typing import Dict

from rest_framework import serializers

from .catalog import Family, LevyModel

FAMILY_FIELDS = {
    Family.BROWNIAN: ('sigma', 'drift'),
    Family.CAUCHY: ('scale',),
    Family.STABLE: ('alpha', 'beta', 'scale'),
    Family.GAMMA: (),
}


class LevyModelSerializer(serializers.Serializer):
    """Validates a model specification and builds the LevyModel."""

    family = serializers.ChoiceField(choices=[family.value for family in Family])
    sigma = serializers.FloatField(required=False, default=1.0)
    drift = serializers.FloatField(required=False, default=0.0)
    scale = serializers.FloatField(required=False, default=1.0)
    alpha = serializers.FloatField(required=False)
    beta = serializers.FloatField(required=False, default=0.0)

    def validate_sigma(self, value):
        if value <= 0:
            raise serializers.ValidationError("Volatility must be positive.")
        return value

    def validate_scale(self, value):
        if value <= 0:
            raise serializers.ValidationError("Scale must be positive.")
        return value

    def validate_beta(self, value):
        if not -1 <= value <= 1:
            raise serializers.ValidationError("Skewness must lie in [-1, 1].")
        return value

    def validate(self, attrs):
        family = Family(attrs['family'])
        allowed = set(FAMILY_FIELDS[family]) | {'family'}
        unknown = sorted(set(self.initial_data) - allowed)
        if unknown:
            raise serializers.ValidationError(
                f"Unknown fields for family {family.value}: {', '.join(unknown)}"
            )

        if family == Family.STABLE:
            alpha = attrs.get('alpha')
            if alpha is None:
                raise serializers.ValidationError({'alpha': "Stable models need an index."})
            if not 0 < alpha <= 2:
                raise serializers.ValidationError({'alpha': "Index must lie in (0, 2]."})
            if alpha == 1 and attrs.get('beta', 0.0) != 0:
                raise serializers.ValidationError(
                    {'beta': "Index 1 is only available without skewness."}
                )
        return attrs

    def create(self, validated_data) -> LevyModel:
        family = Family(validated_data['family'])
        params = {name: validated_data[name] for name in FAMILY_FIELDS[family] if name in validated_data}
        return LevyModel(family, **params)

    def to_representation(self, instance: LevyModel) -> Dict:
        data = {'family': instance.family.value}
        for name in FAMILY_FIELDS[instance.family]:
            data[name] = getattr(instance, name)
        return data


def model_from_spec(spec: Dict) -> LevyModel:
    """Build a LevyModel from its JSON dict; raises ValidationError."""
    serializer = LevyModelSerializer(data=spec)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def model_to_spec(model: LevyModel) -> Dict:
    return dict(LevyModelSerializer(model).data)
