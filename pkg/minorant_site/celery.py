"""
Celery Configuration for minorant_site project.
"""
import os
from celery import Celery

# Set the default Django settings module
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'minorant_site.settings')

# Create Celery app
app = Celery('minorant_site')

# Load config from Django settings
app.config_from_object('django.conf:settings', namespace='CELERY')

# Auto-discover tasks in all installed apps
app.autodiscover_tasks()

app.conf.timezone = 'UTC'
