"""Configuration pytest : initialise Django pour les SimpleTestCase du laboratoire."""
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "RevisionProject"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "Revisia.settings")

import django  # noqa: E402

django.setup()
