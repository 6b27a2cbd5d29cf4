"""Run the ``adtree`` command line from a source checkout: ``python main.py evaluate @cav``."""

from __future__ import annotations

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
