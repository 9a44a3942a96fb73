#!/usr/bin/env python3
"""
Main entry point for cyclic-weights.

Installed as the `cyclic-weights` console script; see src/cli.py for the commands.
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
