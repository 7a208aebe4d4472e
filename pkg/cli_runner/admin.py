from django.contrib import admin
from django.urls import reverse
from django.utils.html import format_html

from .models import CheckResult, VerificationRun


class CheckResultInline(admin.TabularInline):
    model = CheckResult
    extra = 0
    fields = ['group', 'name', 'expected', 'actual', 'tolerance', 'status', 'message']
    readonly_fields = fields
    can_delete = False


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = [
        'id', 'groups', 'status', 'total_checks', 'passed_checks',
        'elapsed_time', 'started_at', 'check_summary', 'api_link'
    ]
    list_filter = ['status', 'started_at']
    search_fields = ['id', 'groups', 'checks__name']
    readonly_fields = ['started_at', 'finished_at', 'elapsed_time', 'check_summary', 'api_link']
    date_hierarchy = 'started_at'
    inlines = [CheckResultInline]

    fieldsets = (
        ('Run', {
            'fields': ('groups', 'status')
        }),
        ('Results', {
            'fields': ('total_checks', 'passed_checks', 'check_summary', 'elapsed_time')
        }),
        ('Report', {
            'fields': ('report',),
            'classes': ('collapse',)
        }),
        ('Details', {
            'fields': ('started_at', 'finished_at', 'api_link')
        }),
    )

    def check_summary(self, obj):
        if not obj.pk:
            return "N/A"
        results = obj.checks.all()
        total = results.count()
        if total == 0:
            return "No checks"
        passed = results.filter(status='PASS').count()
        return format_html(
            '<span style="color: green;">✓ {}</span> | '
            '<span style="color: red;">✗ {}</span>',
            passed, total - passed
        )
    check_summary.short_description = "Checks"

    def api_link(self, obj):
        if obj.pk:
            url = reverse('cli_runner:run_detail', args=[obj.pk])
            return format_html('<a href="{}" target="_blank">JSON</a>', url)
        return "N/A"
    api_link.short_description = "API"


@admin.register(CheckResult)
class CheckResultAdmin(admin.ModelAdmin):
    list_display = ['run_id', 'group', 'name', 'status', 'expected', 'actual', 'tolerance']
    list_filter = ['status', 'group']
    search_fields = ['name', 'run__id', 'message']

    def get_queryset(self, request):
        return super().get_queryset(request).select_related('run')
