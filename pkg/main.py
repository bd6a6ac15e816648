#!/usr/bin/env python
"""
picardmult entry point when run from a source checkout

Usage:
    python main.py <command> [--config path] [options]
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from picardmult.cli import main


if __name__ == "__main__":
    sys.exit(main())
