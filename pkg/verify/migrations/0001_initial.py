# Generated by Django 5.1 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CheckRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(db_index=True, max_length=64)),
                ('statistic', models.FloatField(blank=True, null=True)),
                ('p_value', models.FloatField(blank=True, null=True)),
                ('z_score', models.FloatField(blank=True, null=True)),
                ('threshold', models.FloatField()),
                ('convention', models.CharField(choices=[('p', 'p-value'), ('z', 'z-score'), ('rel', 'Relative error'), ('count', 'Violation count')], max_length=8)),
                ('passed', models.BooleanField()),
                ('negative_control', models.BooleanField(default=False)),
                ('n_replicates', models.PositiveIntegerField(default=0)),
                ('n_grid', models.PositiveIntegerField(default=0)),
                ('master_seed', models.CharField(help_text='64-bit seed as decimal text', max_length=20)),
                ('notes', models.TextField(blank=True)),
                ('details', models.JSONField(blank=True, default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
