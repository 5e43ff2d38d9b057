from django.db import models

from .services.reports import Convention, TestReport


class CheckRun(models.Model):
    """Stored outcome of one verification check."""

    CONVENTION_CHOICES = [
        (Convention.P.value, 'p-value'),
        (Convention.Z.value, 'z-score'),
        (Convention.REL.value, 'Relative error'),
        (Convention.COUNT.value, 'Violation count'),
    ]

    name = models.CharField(max_length=64, db_index=True)

    # Headline statistic
    statistic = models.FloatField(null=True, blank=True)
    p_value = models.FloatField(null=True, blank=True)
    z_score = models.FloatField(null=True, blank=True)
    threshold = models.FloatField()
    convention = models.CharField(max_length=8, choices=CONVENTION_CHOICES)
    passed = models.BooleanField()
    negative_control = models.BooleanField(default=False)

    # Enough to regenerate the run
    n_replicates = models.PositiveIntegerField(default=0)
    n_grid = models.PositiveIntegerField(default=0)
    master_seed = models.CharField(max_length=20, help_text="64-bit seed as decimal text")

    notes = models.TextField(blank=True)
    details = models.JSONField(default=dict, blank=True)

    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.name} seed={self.master_seed}: {'pass' if self.passed else 'fail'}"

    @classmethod
    def from_report(cls, report: TestReport) -> 'CheckRun':
        from .serializers import TestReportSerializer

        data = TestReportSerializer(report).data
        return cls.objects.create(
            name=report.name,
            statistic=report.statistic,
            p_value=report.p_value,
            z_score=report.z_score,
            threshold=report.threshold,
            convention=report.convention.value,
            passed=report.passed,
            negative_control=report.negative_control,
            n_replicates=report.n_replicates,
            n_grid=report.n_grid,
            master_seed=str(report.master_seed),
            notes=report.notes,
            details=data['details'],
        )

    def to_report(self) -> TestReport:
        return TestReport(
            name=self.name,
            statistic=self.statistic,
            threshold=self.threshold,
            convention=Convention(self.convention),
            passed=self.passed,
            p_value=self.p_value,
            z_score=self.z_score,
            n_replicates=self.n_replicates,
            n_grid=self.n_grid,
            master_seed=int(self.master_seed),
            notes=self.notes,
            negative_control=self.negative_control,
            details=self.details,
        )
