import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "taxobox.settings")
django.setup()
