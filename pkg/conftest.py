import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "conicbundle.settings")
django.setup()
