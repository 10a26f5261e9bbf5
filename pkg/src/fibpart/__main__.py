"""python -m src.fibpart 진입점."""

import sys

from src.fibpart.cli import main

if __name__ == "__main__":
    sys.exit(main())
