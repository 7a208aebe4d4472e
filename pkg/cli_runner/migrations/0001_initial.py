# Generated by Django 5.2.3 on 2026-10-19 09:12

import django.db.models.deletion
import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('groups', models.CharField(help_text='Comma-separated check groups', max_length=255)),
                ('status', models.CharField(choices=[('PENDING', 'Pending'), ('RUNNING', 'Running'), ('PASS', 'Pass'), ('FAIL', 'Fail'), ('ERROR', 'Error')], default='PENDING', max_length=20)),
                ('total_checks', models.IntegerField(default=0)),
                ('passed_checks', models.IntegerField(default=0)),
                ('elapsed_time', models.FloatField(blank=True, help_text='Wall time in seconds', null=True)),
                ('report', models.TextField(blank=True)),
                ('started_at', models.DateTimeField(default=django.utils.timezone.now)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-started_at'],
            },
        ),
        migrations.CreateModel(
            name='CheckResult',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=200)),
                ('group', models.CharField(max_length=50)),
                ('expected', models.TextField(blank=True)),
                ('actual', models.TextField(blank=True)),
                ('tolerance', models.FloatField(blank=True, null=True)),
                ('status', models.CharField(choices=[('PENDING', 'Pending'), ('RUNNING', 'Running'), ('PASS', 'Pass'), ('FAIL', 'Fail'), ('ERROR', 'Error')], max_length=20)),
                ('message', models.TextField(blank=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='checks', to='cli_runner.verificationrun')),
            ],
            options={
                'ordering': ['id'],
                'unique_together': {('run', 'group', 'name')},
            },
        ),
    ]
