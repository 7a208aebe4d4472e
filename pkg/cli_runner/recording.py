import logging

from django.db import transaction
from django.utils import timezone

from .models import CheckResult, VerificationRun

logger = logging.getLogger(__name__)


def start_run(groups) -> VerificationRun:
    return VerificationRun.objects.create(groups=','.join(groups), status='RUNNING')


def finish_run(run: VerificationRun, report, text: str = '') -> VerificationRun:
    """Store every outcome of a finished VerificationReport on its run"""
    with transaction.atomic():
        CheckResult.objects.bulk_create([
            CheckResult(
                run=run, name=outcome.name, group=outcome.group, expected=outcome.expected,
                actual=outcome.actual, tolerance=outcome.tolerance, status=outcome.status,
                message=outcome.message,
            )
            for outcome in report.outcomes
        ])
        run.status = report.status
        run.total_checks = report.total
        run.passed_checks = report.passed_count
        run.elapsed_time = report.elapsed
        run.report = text
        run.finished_at = timezone.now()
        run.save()
    logger.info(f"Recorded verification run {run.pk}: {run.passed_checks}/{run.total_checks} {run.status}")
    return run


def abort_run(run: VerificationRun, message: str):
    run.status = 'ERROR'
    run.report = message
    run.finished_at = timezone.now()
    run.save(update_fields=['status', 'report', 'finished_at'])
