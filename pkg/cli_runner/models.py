from django.db import models
from django.utils import timezone


class VerificationRun(models.Model):
    STATUS_CHOICES = [
        ('PENDING', 'Pending'),
        ('RUNNING', 'Running'),
        ('PASS', 'Pass'),
        ('FAIL', 'Fail'),
        ('ERROR', 'Error'),
    ]

    groups = models.CharField(max_length=255, help_text="Comma-separated check groups")
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='PENDING')

    # Results
    total_checks = models.IntegerField(default=0)
    passed_checks = models.IntegerField(default=0)
    elapsed_time = models.FloatField(null=True, blank=True, help_text="Wall time in seconds")
    report = models.TextField(blank=True)

    # Timing
    started_at = models.DateTimeField(default=timezone.now)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-started_at']

    def __str__(self):
        return f"Run {self.pk} [{self.groups}] - {self.status}"

    @property
    def failed_checks(self):
        return self.total_checks - self.passed_checks


class CheckResult(models.Model):
    """Outcome of one golden-value check"""
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='checks')
    name = models.CharField(max_length=200)
    group = models.CharField(max_length=50)
    expected = models.TextField(blank=True)
    actual = models.TextField(blank=True)
    tolerance = models.FloatField(null=True, blank=True)
    status = models.CharField(max_length=20, choices=VerificationRun.STATUS_CHOICES)
    message = models.TextField(blank=True)

    class Meta:
        ordering = ['id']
        unique_together = ['run', 'group', 'name']

    def __str__(self):
        return f"{self.run} - {self.group}/{self.name} - {self.status}"
