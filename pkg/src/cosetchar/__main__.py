"""Module entry point for `python -m cosetchar`."""

import sys

from .cli import main

sys.exit(main())
