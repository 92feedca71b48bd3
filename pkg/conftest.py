import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'taucheck.settings')
django.setup()
