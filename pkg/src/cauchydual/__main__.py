"""Module entry point: ``python -m cauchydual``."""

import sys

from .cli import main

sys.exit(main())
