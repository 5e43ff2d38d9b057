"""
DRF Serializers for verification reports
"""
import math

import numpy as np
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer


def _finite(value):
    """JSON has no inf or nan; they travel as strings."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(key): _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    return value


class TestReportSerializer(serializers.Serializer):
    """Serializer for TestReport objects; one JSON object per report."""

    name = serializers.CharField()
    statistic = serializers.FloatField(allow_null=True)
    p_value = serializers.FloatField(allow_null=True)
    z_score = serializers.FloatField(allow_null=True)
    threshold = serializers.FloatField()
    convention = serializers.CharField(source='convention.value')
    passed = serializers.BooleanField()
    verdict = serializers.CharField(read_only=True)
    negative_control = serializers.BooleanField()
    n_replicates = serializers.IntegerField()
    n_grid = serializers.IntegerField()
    master_seed = serializers.IntegerField()
    notes = serializers.CharField(allow_blank=True)
    details = serializers.DictField()

    def to_representation(self, instance):
        return _finite(super().to_representation(instance))


def report_json_line(report) -> str:
    return JSONRenderer().render(TestReportSerializer(report).data).decode('utf-8')


def reports_to_json_lines(reports) -> str:
    return ''.join(report_json_line(report) + '\n' for report in reports)
